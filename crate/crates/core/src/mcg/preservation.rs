//! Checking that an action on curves respects the stratification of a window.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::multicurve::{decompose, is_disjoint, Multicurve};
use crate::strata::{check_poset_automorphism, StrataPoset, Support};

use super::CurveAction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub check: &'static str,
    pub stratum: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub strata: usize,
    /// One entry per (check, stratum) pair, sorted by stratum.
    pub entries: Vec<Entry>,
    /// Whether the induced map on strata is an order automorphism; `None`
    /// when some image support lies outside the window.
    pub automorphism: Option<bool>,
}

impl PreservationReport {
    pub fn violations(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    /// Count of violations per check name.
    pub fn summary(&self) -> Vec<(&'static str, usize, usize)> {
        let mut out: Vec<(&'static str, usize, usize)> = Vec::new();
        for e in &self.entries {
            match out.iter_mut().find(|x| x.0 == e.check) {
                Some(x) => {
                    x.1 += 1;
                    x.2 += usize::from(!e.passed);
                }
                None => out.push((e.check, 1, usize::from(!e.passed))),
            }
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.violation_count() == 0 && self.automorphism != Some(false)
    }
}

/// Image of a curve, if it is again a connected essential curve.
fn image_of(f: &dyn CurveAction, c: &Multicurve, cap: u64) -> Result<Multicurve, String> {
    let coords = f.act(c).map_err(|e| e.to_string())?;
    let m = Multicurve::try_from(coords).map_err(|e| e.to_string())?;
    match decompose(&m, cap) {
        Ok(d) if d.len() == 1 && d[0].1 == 1 => Ok(m),
        Ok(d) => Err(format!("image has {} components", d.iter().map(|x| x.1).sum::<u64>())),
        Err(e) => Err(e.to_string()),
    }
}

/// For every stratum `s` of `p`:
///
/// * `depth`: the images of its components form a support with as many
///   components;
/// * `order`: `s <= t` iff `f(s) <= f(t)`, for every stratum `t`;
/// * `disjointness`: images of its components are pairwise disjoint;
/// * `connected`: a single curve goes to a single curve.
///
/// When every image support lies in `p`, the induced index map is also
/// tested for being an order automorphism.
pub fn verify_preservation(f: &dyn CurveAction, p: &StrataPoset, cap: u64) -> PreservationReport {
    // intern the curves appearing in the window
    let mut curves: Vec<Multicurve> = p.strata().iter().flat_map(|s| s.support.components().iter().cloned()).collect();
    curves.sort();
    curves.dedup();
    let id: HashMap<&Multicurve, usize> = curves.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let images: Vec<Result<Multicurve, String>> = curves.par_iter().map(|c| image_of(f, c, cap)).collect();

    // intern images so that supports compare as sorted id lists
    let mut distinct: Vec<&Multicurve> = images.iter().filter_map(|m| m.as_ref().ok()).collect();
    distinct.sort();
    distinct.dedup();
    let image_id: Vec<Option<usize>> =
        images.iter().map(|m| m.as_ref().ok().map(|m| distinct.binary_search(&m).unwrap())).collect();

    let members: Vec<Vec<usize>> =
        p.strata().iter().map(|s| s.support.components().iter().map(|c| id[c]).collect()).collect();
    let image_sets: Vec<Option<Vec<usize>>> = members
        .iter()
        .map(|m| {
            let mut v: Vec<usize> = m.iter().map(|&c| image_id[c]).collect::<Option<_>>()?;
            v.sort_unstable();
            Some(v)
        })
        .collect();

    let mut pairs = std::collections::BTreeSet::new();
    for m in &members {
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                pairs.insert((a, b));
            }
        }
    }
    let pair_cache: HashMap<(usize, usize), bool> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let ok = match (&images[a], &images[b]) {
                (Ok(x), Ok(y)) => x != y && matches!(is_disjoint(x, y, cap), Ok(true)),
                _ => false,
            };
            ((a, b), ok)
        })
        .collect();

    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let entries: Vec<Vec<Entry>> = p
        .strata()
        .par_iter()
        .map(|s| {
            let m = &members[s.id];
            let mut out = Vec::with_capacity(4);
            let entry = |check, passed: bool, detail: String| Entry { check, stratum: s.id, passed, detail };

            let disjoint_bad: Vec<String> = (0..m.len())
                .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| !pair_cache[&(m[i], m[j])])
                .map(|(i, j)| format!("components {i} and {j}"))
                .collect();

            let depth_detail = match &image_sets[s.id] {
                None => m
                    .iter()
                    .find_map(|&c| images[c].as_ref().err().cloned())
                    .unwrap_or_default(),
                Some(v) => {
                    let mut u = v.clone();
                    u.dedup();
                    if u.len() != m.len() {
                        format!("{} components go to {}", m.len(), u.len())
                    } else if !disjoint_bad.is_empty() {
                        "image components intersect".to_string()
                    } else {
                        String::new()
                    }
                }
            };
            out.push(entry("depth", depth_detail.is_empty(), depth_detail));

            let order_detail = match &image_sets[s.id] {
                None => "image is not a support".to_string(),
                Some(fs) => p
                    .strata()
                    .iter()
                    .find(|t| {
                        let before = subset(m, &members[t.id]);
                        let after = image_sets[t.id].as_ref().is_some_and(|ft| subset(fs, ft));
                        before != after
                    })
                    .map(|t| format!("relation with stratum {} changes", t.id))
                    .unwrap_or_default(),
            };
            out.push(entry("order", order_detail.is_empty(), order_detail));

            let passed = disjoint_bad.is_empty();
            out.push(entry("disjointness", passed, disjoint_bad.join("; ")));

            if m.len() == 1 {
                let detail = images[m[0]].as_ref().err().cloned().unwrap_or_default();
                out.push(entry("connected", detail.is_empty(), detail));
            }
            out
        })
        .collect();
    let entries: Vec<Entry> = entries.into_iter().flatten().collect();

    let sigma: Option<Vec<usize>> = image_sets
        .iter()
        .map(|fs| {
            let fs = fs.as_ref()?;
            if !fs.windows(2).all(|w| w[0] < w[1]) {
                return None;
            }
            let support = Support::from_sorted(fs.iter().map(|&i| distinct[i].clone()).collect());
            p.find(&support)
        })
        .collect();
    let automorphism = sigma.map(|sigma| matches!(check_poset_automorphism(&p.generic(), &sigma), Ok(true)));

    PreservationReport { strata: p.len(), entries, automorphism }
}

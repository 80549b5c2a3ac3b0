//! Finite windows onto the stratification: every support of total weight at
//! most `K`, ordered by inclusion.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumerate::{budget, connected_curves};
use crate::error::{Error, Result};
use crate::multicurve::{decompose, is_disjoint, sum, trace, Multicurve, DEFAULT_WEIGHT_CAP};
use crate::surface::Triangulation;

use super::{leq, GenericStratifiedSet, Support};

/// Default cap on the number of strata in one window.
pub const DEFAULT_STRATA_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Adjoin the empty lamination as a bottom element.
    pub include_empty: bool,
    pub budget: usize,
    pub cap: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { include_empty: false, budget: budget(DEFAULT_STRATA_BUDGET), cap: DEFAULT_WEIGHT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: usize,
    pub support: Support,
    /// Dimension of the cone of weightings, the component count `k`.
    pub cone_dim: usize,
    /// Longest chain below this stratum: `k - 1`, or `k` when the empty
    /// lamination is adjoined.
    pub depth: usize,
}

/// Strata sorted by component count, then by component list; `id` is the
/// position in that order.
#[derive(Clone, Debug)]
pub struct StrataPoset {
    tri: Arc<Triangulation>,
    limit: Option<u64>,
    include_empty: bool,
    strata: Vec<Stratum>,
    index: HashMap<Support, usize>,
}

impl StrataPoset {
    /// A poset on the given supports as they are, without closing downward.
    pub fn from_supports(tri: Arc<Triangulation>, supports: Vec<Support>, include_empty: bool) -> Self {
        Self::build(tri, None, supports, include_empty)
    }

    fn build(tri: Arc<Triangulation>, limit: Option<u64>, mut supports: Vec<Support>, include_empty: bool) -> Self {
        if include_empty {
            supports.push(Support::from_sorted(Vec::new()));
        }
        supports.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        supports.dedup();
        let shift = usize::from(include_empty);
        let strata: Vec<Stratum> = supports
            .into_iter()
            .enumerate()
            .map(|(id, support)| {
                let k = support.len();
                Stratum { id, cone_dim: k, depth: (k + shift).saturating_sub(1), support }
            })
            .collect();
        let index = strata.iter().map(|s| (s.support.clone(), s.id)).collect();
        StrataPoset { tri, limit, include_empty, strata, index }
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    /// The weight bound of an enumerated window.
    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn includes_empty(&self) -> bool {
        self.include_empty
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn find(&self, s: &Support) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Curves appearing as single-component strata.
    pub fn curves(&self) -> Vec<Multicurve> {
        self.strata.iter().filter(|s| s.cone_dim == 1).map(|s| s.support.components()[0].clone()).collect()
    }

    pub fn max_depth(&self) -> usize {
        self.strata.iter().map(|s| s.depth).max().unwrap_or(0)
    }

    /// Pairs `(lower, upper)` where `upper` has exactly one more component.
    pub fn cover_relation(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in &self.strata {
            let comps = t.support.components();
            for skip in 0..comps.len() {
                let rest: Vec<Multicurve> =
                    comps.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, c)| c.clone()).collect();
                if rest.is_empty() && !self.include_empty {
                    continue;
                }
                if let Some(s) = self.find(&Support::from_sorted(rest)) {
                    out.push((s, t.id));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The order as an abstract stratified set, generated by the covers.
    pub fn generic(&self) -> GenericStratifiedSet {
        let rel: Vec<(usize, usize)> = self.cover_relation().into_iter().map(|(lo, hi)| (hi, lo)).collect();
        GenericStratifiedSet::new(self.len(), &rel).expect("indices in range")
    }

    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| json!({"id": s.id, "components": s.support.to_json(), "depth": s.depth}))
            .collect();
        let covers: Vec<[usize; 2]> = self.cover_relation().into_iter().map(|(a, b)| [a, b]).collect();
        json!({"strata": strata, "cover_relation": covers})
    }

    /// Hasse diagram, lower strata at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
        for s in &self.strata {
            let label: Vec<String> =
                s.support.components().iter().map(|c| crate::multicurve::format_weights(c.weights())).collect();
            let label = if label.is_empty() { "∅".to_string() } else { label.join(" + ") };
            writeln!(out, "  s{} [label=\"{}\\ndepth {}\"];", s.id, label, s.depth).unwrap();
        }
        for (a, b) in self.cover_relation() {
            writeln!(out, "  s{a} -> s{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn weight(c: &Multicurve) -> u64 {
    c.total_weight().to_u64().unwrap_or(u64::MAX)
}

/// Rows of the disjointness relation among distinct connected curves. Two
/// such curves are disjoint when their sum traces out exactly the two of them.
pub fn disjointness(curves: &[Multicurve], cap: u64) -> Result<Vec<Vec<bool>>> {
    let n = curves.len();
    let keys: Vec<Vec<usize>> = curves
        .iter()
        .map(|c| c.weights().iter().map(|x| x.to_usize().unwrap_or(usize::MAX)).collect())
        .collect();
    let upper: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let tri = curves[i].triangulation();
            (i + 1..n)
                .map(|j| {
                    curves[i].check_frame(&curves[j])?;
                    let w: Vec<_> = curves[i].weights().iter().zip(curves[j].weights()).map(|(x, y)| x + y).collect();
                    let parts = trace::components(tri, &w, cap)?;
                    Ok(parts.len() == 2
                        && parts.get(&keys[i]) == Some(&1)
                        && parts.get(&keys[j]) == Some(&1))
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows = vec![vec![false; n]; n];
    for (i, row) in upper.into_iter().enumerate() {
        for (k, d) in row.into_iter().enumerate() {
            rows[i][i + 1 + k] = d;
            rows[i + 1 + k][i] = d;
        }
    }
    Ok(rows)
}

struct Cliques<'a> {
    adj: &'a [Vec<bool>],
    weights: &'a [u64],
    limit: u64,
    budget: usize,
}

impl Cliques<'_> {
    fn grow(&self, clique: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) -> Result<()> {
        if out.len() >= self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        out.push(clique.clone());
        let last = *clique.last().expect("nonempty");
        for j in last + 1..self.adj.len() {
            if used + self.weights[j] <= self.limit && clique.iter().all(|&i| self.adj[i][j]) {
                clique.push(j);
                self.grow(clique, used + self.weights[j], out)?;
                clique.pop();
            }
        }
        Ok(())
    }
}

/// All supports with total weight at most `limit`. Any sub-family of such a
/// support is again one, so the window is closed downward.
pub fn enumerate_strata(tri: &Arc<Triangulation>, limit: u64, opts: &EnumerateOptions) -> Result<StrataPoset> {
    let curves = connected_curves(tri, limit, budget(crate::enumerate::DEFAULT_BUDGET))?;
    let adj = disjointness(&curves, opts.cap)?;
    let weights: Vec<u64> = curves.iter().map(weight).collect();
    let search = Cliques { adj: &adj, weights: &weights, limit, budget: opts.budget };
    let parts: Vec<Result<Vec<Vec<usize>>>> = (0..curves.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            search.grow(&mut vec![i], weights[i], &mut out)?;
            Ok(out)
        })
        .collect();
    let mut supports = Vec::new();
    for p in parts {
        for clique in p? {
            if supports.len() >= opts.budget {
                return Err(Error::BudgetExceeded { budget: opts.budget });
            }
            supports.push(Support::from_sorted(clique.into_iter().map(|i| curves[i].clone()).collect()));
        }
    }
    Ok(StrataPoset::build(tri.clone(), Some(limit), supports, opts.include_empty))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub strata: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub strata: usize,
    pub pairs: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, axiom: &'static str, strata: Vec<usize>, detail: impl Into<String>) {
        self.violations.push(Violation { axiom, strata, detail: detail.into() });
    }
}

type Bits = Vec<u64>;

fn bits(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// Check that the window is a finite stratification:
///
/// * supports are canonical multicurve families and pairwise distinct;
/// * the order is reflexive, antisymmetric and transitive;
/// * every sub-family of a member is a member;
/// * a point of one cone lies in the closure of another cone exactly when the
///   first support is below the second, decided by decomposing sample points
///   rather than by comparing component lists;
/// * two strata sharing a curve whose union is a multicurve within the
///   window's weight bound have that union as a common upper bound.
pub fn check_stratification_axioms(p: &StrataPoset) -> AxiomReport {
    let n = p.len();
    let mut report = AxiomReport { strata: n, pairs: n * n, violations: Vec::new() };
    let cap = DEFAULT_WEIGHT_CAP;
    let strata = p.strata();

    for s in strata {
        let c = s.support.components();
        if !c.windows(2).all(|w| w[0] < w[1]) {
            report.fail("canonical", vec![s.id], "components not strictly sorted");
        }
        for (i, a) in c.iter().enumerate() {
            if !matches!(decompose(a, cap), Ok(d) if d.len() == 1 && d[0].1 == 1) {
                report.fail("canonical", vec![s.id], format!("component {a:?} is not a curve"));
            }
            for b in &c[i + 1..] {
                if !matches!(is_disjoint(a, b, cap), Ok(true)) {
                    report.fail("canonical", vec![s.id], format!("{a:?} and {b:?} intersect"));
                }
            }
        }
    }

    // order as bit rows: row[t] holds every s below or equal to t
    let rows: Vec<Bits> = strata
        .par_iter()
        .map(|t| {
            let mut row = bits(n);
            for s in strata {
                if leq(&s.support, &t.support).unwrap_or(false) {
                    set(&mut row, s.id);
                }
            }
            row
        })
        .collect();
    for t in 0..n {
        if !get(&rows[t], t) {
            report.fail("reflexive", vec![t], "not below itself");
        }
        for s in 0..n {
            if s != t && get(&rows[t], s) && get(&rows[s], t) {
                report.fail("antisymmetric", vec![s, t], "mutually below");
            }
            // s <= t implies every r <= s is <= t
            if get(&rows[t], s) && rows[s].iter().zip(&rows[t]).any(|(a, b)| a & !b != 0) {
                report.fail("transitive", vec![s, t], "down-set of s not inside down-set of t");
            }
        }
    }

    for t in strata {
        let comps = t.support.components();
        if comps.is_empty() {
            continue;
        }
        for skip in 0..comps.len() {
            let rest: Vec<Multicurve> =
                comps.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, c)| c.clone()).collect();
            if rest.is_empty() && !p.includes_empty() {
                continue;
            }
            if p.find(&Support::from_sorted(rest)).is_none() {
                report.fail("downward-closed", vec![t.id], format!("missing the face without component {skip}"));
            }
        }
    }

    // components of two sample points of each cone, recovered by decomposition
    let samples: Vec<Option<[BTreeSet<Vec<num_bigint::BigUint>>; 2]>> = strata
        .par_iter()
        .map(|s| {
            let comps = s.support.components();
            let tri = p.triangulation();
            let refs: Vec<&Multicurve> = comps.iter().collect();
            let plain = sum(tri, &refs).ok()?;
            let mut scaled = Vec::new();
            for (i, c) in comps.iter().enumerate() {
                for _ in 0..=i {
                    scaled.push(c);
                }
            }
            let skewed = sum(tri, &scaled).ok()?;
            let parts = |m: &Multicurve| -> Option<BTreeSet<Vec<num_bigint::BigUint>>> {
                Some(decompose(m, cap).ok()?.into_iter().map(|(c, _)| c.weights().to_vec()).collect())
            };
            Some([parts(&plain)?, parts(&skewed)?])
        })
        .collect();
    for t in strata {
        let closure: BTreeSet<Vec<num_bigint::BigUint>> =
            t.support.components().iter().map(|c| c.weights().to_vec()).collect();
        for s in strata {
            let Some(pts) = &samples[s.id] else {
                report.fail("frontier", vec![s.id], "sample point is not a multicurve");
                continue;
            };
            let meets = pts[0].is_subset(&closure);
            if meets != pts[1].is_subset(&closure) {
                report.fail("frontier", vec![s.id, t.id], "cone meets the closure only partly");
            }
            if meets != get(&rows[t.id], s.id) {
                report.fail("frontier", vec![s.id, t.id], "closure incidence disagrees with the order");
            }
        }
    }

    if let Some(limit) = p.limit() {
        for (i, s) in strata.iter().enumerate() {
            for t in &strata[i + 1..] {
                if get(&rows[t.id], s.id) || get(&rows[s.id], t.id) {
                    continue;
                }
                let (a, b) = (s.support.components(), t.support.components());
                if !a.iter().any(|c| b.contains(c)) {
                    continue;
                }
                let mut union: Vec<Multicurve> = a.iter().chain(b).cloned().collect();
                union.sort();
                union.dedup();
                let total: u64 = union.iter().map(weight).sum();
                let family = union.iter().enumerate().all(|(x, c)| {
                    union[x + 1..].iter().all(|d| matches!(is_disjoint(c, d, cap), Ok(true)))
                });
                if total <= limit && family && p.find(&Support::from_sorted(union)).is_none() {
                    report.fail("join", vec![s.id, t.id], "union of overlapping strata missing from the window");
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pants_decomposition;
    use crate::surface::fixture;

    #[test]
    fn torus_window_has_only_curves() {
        let tri = fixture("s_1_1").unwrap();
        let p = enumerate_strata(&tri, 4, &EnumerateOptions::default()).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.strata().iter().all(|s| s.cone_dim == 1 && s.depth == 0));
        assert!(p.cover_relation().is_empty());
        assert!(check_stratification_axioms(&p).passed());
    }

    #[test]
    fn sphere_window_contains_pants() {
        let tri = fixture("s_0_5").unwrap();
        let p = enumerate_strata(&tri, 8, &EnumerateOptions::default()).unwrap();
        let pants = Support::new(&tri, pants_decomposition("s_0_5").unwrap(), 1000).unwrap();
        let id = p.find(&pants).unwrap();
        assert_eq!(p.strata()[id].depth, 1);
        assert_eq!(p.max_depth(), 1);
        assert!(check_stratification_axioms(&p).passed());
    }

    #[test]
    fn disjointness_rows_match_pairwise_test() {
        let tri = fixture("s_1_2").unwrap();
        let curves = connected_curves(&tri, 8, 1_000_000).unwrap();
        let rows = disjointness(&curves, 1000).unwrap();
        for (i, a) in curves.iter().enumerate() {
            for (j, b) in curves.iter().enumerate() {
                assert_eq!(rows[i][j], i != j && is_disjoint(a, b, 1000).unwrap());
            }
        }
    }

    #[test]
    fn missing_face_is_reported() {
        let tri = fixture("s_0_5").unwrap();
        let pants = pants_decomposition("s_0_5").unwrap();
        let top = Support::new(&tri, pants.clone(), 1000).unwrap();
        let one = Support::new(&tri, vec![pants[0].clone()], 1000).unwrap();
        let p = StrataPoset::from_supports(tri, vec![top, one], false);
        let r = check_stratification_axioms(&p);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, "downward-closed");
    }

    #[test]
    fn empty_poset_passes() {
        let tri = fixture("s_0_5").unwrap();
        assert!(check_stratification_axioms(&StrataPoset::from_supports(tri, vec![], false)).passed());
    }

    #[test]
    fn empty_bottom_shifts_depth() {
        let tri = fixture("s_0_5").unwrap();
        let opts = EnumerateOptions { include_empty: true, ..Default::default() };
        let p = enumerate_strata(&tri, 8, &opts).unwrap();
        assert!(p.strata()[0].support.is_empty());
        assert_eq!(p.max_depth(), 2);
        let g = p.generic();
        assert_eq!(g.depths().unwrap(), p.strata().iter().map(|s| s.depth).collect::<Vec<_>>());
        assert!(check_stratification_axioms(&p).passed());
    }

    #[test]
    fn export_shapes() {
        let tri = fixture("s_0_5").unwrap();
        let p = enumerate_strata(&tri, 8, &EnumerateOptions::default()).unwrap();
        let v = p.to_json();
        assert_eq!(v["strata"].as_array().unwrap().len(), p.len());
        assert_eq!(v["cover_relation"].as_array().unwrap().len(), 2);
        assert!(p.to_dot().starts_with("digraph strata {"));
    }
}

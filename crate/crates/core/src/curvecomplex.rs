//! Finite windows onto the complex of curves and the maps mapping classes
//! induce on them.

use std::fmt::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumerate::{budget, connected_curves, DEFAULT_BUDGET};
use crate::error::Result;
use crate::mcg::CurveAction;
use crate::multicurve::{cut_invariants, decompose, format_weights, is_disjoint, weights_to_json, Multicurve};
use crate::strata::disjointness;
use crate::surface::Triangulation;

/// Connected essential curves of total weight at most `limit`.
pub fn enumerate_vertices(tri: &Arc<Triangulation>, limit: u64) -> Result<Vec<Multicurve>> {
    connected_curves(tri, limit, budget(DEFAULT_BUDGET))
}

/// Vertices with their disjointness graph; simplices are its cliques and only
/// the maximal ones are kept.
#[derive(Clone, Debug)]
pub struct CurveComplexSlice {
    vertices: Vec<Multicurve>,
    adjacent: Vec<Vec<bool>>,
    maximal: Vec<Vec<usize>>,
}

pub fn build_slice(vertices: &[Multicurve], cap: u64) -> Result<CurveComplexSlice> {
    let mut vertices = vertices.to_vec();
    vertices.sort();
    vertices.dedup();
    let adjacent = disjointness(&vertices, cap)?;
    let mut maximal = Vec::new();
    let all: Vec<usize> = (0..vertices.len()).collect();
    bron_kerbosch(&adjacent, &mut Vec::new(), all, Vec::new(), &mut maximal);
    for m in &mut maximal {
        m.sort_unstable();
    }
    maximal.sort();
    Ok(CurveComplexSlice { vertices, adjacent, maximal })
}

fn bron_kerbosch(adj: &[Vec<bool>], r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count()).unwrap();
    let mut p = p;
    let mut x = x;
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

impl CurveComplexSlice {
    pub fn vertices(&self) -> &[Multicurve] {
        &self.vertices
    }

    pub fn maximal_simplices(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn max_simplex_size(&self) -> usize {
        self.maximal.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacent[i][j]
    }

    /// Whether the vertices span a simplex.
    pub fn is_simplex(&self, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(a, &i)| s[a + 1..].iter().all(|&j| self.adjacent[i][j]))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.adjacent[i][j]).collect()
    }

    /// Every simplex, faces included; exponential in the simplex size.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        let mut out = std::collections::BTreeSet::new();
        for m in &self.maximal {
            for mask in 1u64..(1 << m.len()) {
                out.insert(m.iter().enumerate().filter(|&(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>());
            }
        }
        out.into_iter().collect()
    }

    pub fn position(&self, c: &Multicurve) -> Option<usize> {
        self.vertices.binary_search(c).ok()
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Vec<Value>> = self.vertices.iter().map(|c| weights_to_json(c.weights())).collect();
        json!({"vertices": vertices, "maximal_simplices": self.maximal})
    }

    /// The disjointness graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph curves {\n");
        for (i, c) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"{}\"];", format_weights(c.weights())).unwrap();
        }
        for (i, j) in self.edges() {
            writeln!(out, "  v{i} -- v{j};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexImage {
    /// Index of the image in the target window.
    Inside(usize),
    /// A curve beyond the target window.
    OutsideWindow(Vec<String>),
    /// Not a connected essential curve.
    NotACurve(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    pub images: Vec<VertexImage>,
    /// Vertices whose images fall outside the target window.
    pub outside: Vec<usize>,
    /// Every vertex goes to a curve and every edge to an edge.
    pub simplicial: bool,
    /// Distinct vertices have distinct images.
    pub injective: bool,
    pub violations: Vec<String>,
}

impl InducedMap {
    /// Simplicial and injective with every image inside the target window.
    pub fn embeds(&self) -> bool {
        self.simplicial && self.injective && self.outside.is_empty()
    }
}

/// The map `f` induces from `slice` to `target`, a window containing it.
pub fn induced_map(f: &dyn CurveAction, slice: &CurveComplexSlice, target: &CurveComplexSlice, cap: u64) -> Result<InducedMap> {
    let images: Vec<std::result::Result<Multicurve, String>> = slice
        .vertices
        .par_iter()
        .map(|v| {
            let c = f.act(v).map_err(|e| e.to_string())?;
            let m = Multicurve::try_from(c).map_err(|e| e.to_string())?;
            match decompose(&m, cap) {
                Ok(d) if d.len() == 1 && d[0].1 == 1 => Ok(m),
                Ok(_) => Err("image is not connected".to_string()),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();
    let mut violations = Vec::new();
    let mut out = Vec::new();
    let mut outside = Vec::new();
    for (i, im) in images.iter().enumerate() {
        out.push(match im {
            Ok(m) => match target.position(m) {
                Some(j) => VertexImage::Inside(j),
                None => {
                    outside.push(i);
                    VertexImage::OutsideWindow(m.weights().iter().map(|x| x.to_string()).collect())
                }
            },
            Err(e) => {
                violations.push(format!("vertex {i}: {e}"));
                VertexImage::NotACurve(e.clone())
            }
        });
    }
    let edges = slice.edges();
    let broken: Vec<String> = edges
        .par_iter()
        .filter_map(|&(i, j)| match (&images[i], &images[j]) {
            (Ok(a), Ok(b)) => match is_disjoint(a, b, cap) {
                Ok(true) if a != b => None,
                Ok(_) => Some(format!("edge {i}-{j} is not sent to an edge")),
                Err(e) => Some(format!("edge {i}-{j}: {e}")),
            },
            _ => None,
        })
        .collect();
    let simplicial = violations.is_empty() && broken.is_empty();
    violations.extend(broken);
    let mut sorted: Vec<&Multicurve> = images.iter().filter_map(|m| m.as_ref().ok()).collect();
    let valid = sorted.len();
    sorted.sort();
    sorted.dedup();
    let injective = valid == images.len() && sorted.len() == valid;
    if !injective {
        violations.push("two vertices share an image".into());
    }
    Ok(InducedMap { images: out, outside, simplicial, injective, violations })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub separating: Vec<usize>,
    pub nonseparating: Vec<usize>,
}

/// Split vertex indices by whether the curve separates the surface.
pub fn separating_classification(vertices: &[Multicurve], cap: u64) -> Result<Partition> {
    let flags: Vec<bool> =
        vertices.par_iter().map(|c| Ok(cut_invariants(c, cap)?.separating)).collect::<Result<Vec<bool>>>()?;
    let mut p = Partition::default();
    for (i, s) in flags.into_iter().enumerate() {
        if s {
            p.separating.push(i);
        } else {
            p.nonseparating.push(i);
        }
    }
    Ok(p)
}

/// Vertices whose image under `f` lies in the other class of the partition.
pub fn partition_violations(f: &dyn CurveAction, vertices: &[Multicurve], cap: u64) -> Result<Vec<usize>> {
    let bad: Vec<Option<usize>> = vertices
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let image = Multicurve::try_from(f.act(c)?)?;
            let before = cut_invariants(c, cap)?.separating;
            Ok(match cut_invariants(&image, cap) {
                Ok(r) if r.separating == before => None,
                _ => Some(i),
            })
        })
        .collect::<Result<_>>()?;
    Ok(bad.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::{builtin_generators, MappingClass};
    use crate::surface::fixture;

    #[test]
    fn torus_slices_have_no_edges() {
        let tri = fixture("s_1_1").unwrap();
        assert_eq!(enumerate_vertices(&tri, 0).unwrap().len(), 0);
        let s = build_slice(&enumerate_vertices(&tri, 4).unwrap(), 100).unwrap();
        assert_eq!(s.vertices().len(), 6);
        assert!(s.edges().is_empty());
        assert_eq!(s.max_simplex_size(), 1);
        let p = separating_classification(s.vertices(), 100).unwrap();
        assert!(p.separating.is_empty());
    }

    #[test]
    fn sphere_slice_reaches_pants() {
        let tri = fixture("s_0_5").unwrap();
        let s = build_slice(&enumerate_vertices(&tri, 8).unwrap(), 1000).unwrap();
        assert_eq!(s.max_simplex_size(), 2);
        assert!(s.maximal_simplices().iter().all(|m| s.is_simplex(m)));
    }

    #[test]
    fn singleton_slice() {
        let tri = fixture("s_1_1").unwrap();
        let v = enumerate_vertices(&tri, 2).unwrap();
        let s = build_slice(&v[..1], 100).unwrap();
        assert_eq!(s.maximal_simplices(), [vec![0]]);
        assert_eq!(s.simplices(), vec![vec![0]]);
    }

    #[test]
    fn identity_and_reflection_embed() {
        let tri = fixture("s_0_5").unwrap();
        let s = build_slice(&enumerate_vertices(&tri, 6).unwrap(), 1000).unwrap();
        let id = MappingClass::identity(tri.clone());
        let m = induced_map(&id, &s, &s, 1000).unwrap();
        assert!(m.embeds());
        assert_eq!(m.images, (0..s.vertices().len()).map(VertexImage::Inside).collect::<Vec<_>>());
        let r = builtin_generators("s_0_5").unwrap().pop().unwrap();
        assert!(induced_map(&r.class, &s, &s, 1000).unwrap().embeds());
    }
}

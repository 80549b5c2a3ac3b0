//! Arc tracing: splits normal coordinates into connected components.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::surface::Triangulation;

use super::coords::small_weights;
use num_bigint::BigUint;

/// Normal arcs of one family, indexed by global point id.
///
/// Point `j` on edge `e` (counted from the tail) has id `offset[e] + j`.
/// `link[p][s]` is the point reached from `p` through the triangle on side `s`
/// of its edge (`0` = triangle holding `+e`), paired with the side index by
/// which that point is entered.
pub(crate) struct ArcGraph {
    pub offset: Vec<usize>,
    pub edge_of: Vec<usize>,
    pub link: Vec<[(usize, u8); 2]>,
}

/// Family-local chord endpoints in triangle slots: `(slot, position from the
/// side's start)`.
pub(crate) type Chord = ((usize, usize), (usize, usize));

pub(crate) fn small_corner_counts(tri: &Triangulation, w: &[usize], t: usize) -> [usize; 3] {
    let s = tri.triangle(t);
    let x = [w[s[0].edge], w[s[1].edge], w[s[2].edge]];
    let c = |i: usize| (x[(i + 2) % 3] + x[i] - x[(i + 1) % 3]) / 2;
    [c(0), c(1), c(2)]
}

/// Chords of triangle `t`: around corner `i`, the `m`-th arc from the vertex
/// joins position `m` on side `i` to position `w - 1 - m` on side `i - 1`.
pub(crate) fn triangle_chords(tri: &Triangulation, w: &[usize], t: usize) -> Vec<Chord> {
    let s = tri.triangle(t);
    let c = small_corner_counts(tri, w, t);
    let mut out = Vec::new();
    for i in 0..3 {
        let prev = (i + 2) % 3;
        let wp = w[s[prev].edge];
        for m in 0..c[i] {
            out.push(((i, m), (prev, wp - 1 - m)));
        }
    }
    out
}

/// Edge point index of family-local side position `k` on a signed side.
pub(crate) fn edge_index(positive: bool, w: usize, k: usize) -> usize {
    if positive {
        k
    } else {
        w - 1 - k
    }
}

impl ArcGraph {
    pub fn build(tri: &Triangulation, w: &[usize]) -> ArcGraph {
        let mut offset = Vec::with_capacity(w.len());
        let mut total = 0;
        for &x in w {
            offset.push(total);
            total += x;
        }
        let mut edge_of = vec![0; total];
        for (e, &x) in w.iter().enumerate() {
            for j in 0..x {
                edge_of[offset[e] + j] = e;
            }
        }
        let mut link = vec![[(usize::MAX, 0u8); 2]; total];
        for t in 0..tri.triangle_count() {
            let s = tri.triangle(t);
            for ((i, k), (i2, k2)) in triangle_chords(tri, w, t) {
                let (a, b) = (s[i], s[i2]);
                let pa = offset[a.edge] + edge_index(a.positive, w[a.edge], k);
                let pb = offset[b.edge] + edge_index(b.positive, w[b.edge], k2);
                let sa = (!a.positive) as u8;
                let sb = (!b.positive) as u8;
                link[pa][sa as usize] = (pb, sb);
                link[pb][sb as usize] = (pa, sa);
            }
        }
        ArcGraph { offset, edge_of, link }
    }

    /// Each closed component as the cyclic sequence of point ids it visits.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.link.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            let mut leave = 1u8;
            loop {
                seen[p] = true;
                cycle.push(p);
                let (q, enter) = self.link[p][leave as usize];
                p = q;
                leave = 1 - enter;
                if p == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// Components grouped by weight vector, with multiplicities.
    pub fn component_counts(&self, edges: usize) -> BTreeMap<Vec<usize>, u64> {
        let mut out = BTreeMap::new();
        for cycle in self.cycles() {
            let mut w = vec![0usize; edges];
            for p in cycle {
                w[self.edge_of[p]] += 1;
            }
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }
}

/// All components (including vertex links) of a valid weight vector.
pub(crate) fn components(tri: &Triangulation, w: &[BigUint], cap: u64) -> Result<BTreeMap<Vec<usize>, u64>> {
    let small = small_weights(w, cap)?;
    Ok(ArcGraph::build(tri, &small).component_counts(tri.edge_count()))
}

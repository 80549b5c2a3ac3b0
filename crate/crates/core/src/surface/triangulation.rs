use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One side of a triangle: an edge together with the direction in which the
/// triangle's counter-clockwise boundary traverses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: usize,
    pub positive: bool,
}

impl SignedEdge {
    pub fn pos(edge: usize) -> Self {
        SignedEdge { edge, positive: true }
    }

    pub fn neg(edge: usize) -> Self {
        SignedEdge { edge, positive: false }
    }

    pub fn reversed(self) -> Self {
        SignedEdge { edge: self.edge, positive: !self.positive }
    }

    /// File encoding: `±(edge + 1)` so that edge 0 has both orientations.
    pub fn encode(self) -> i64 {
        let m = self.edge as i64 + 1;
        if self.positive {
            m
        } else {
            -m
        }
    }

    pub fn decode(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::MalformedTriangulation("side label 0 is not allowed".into()));
        }
        Ok(SignedEdge { edge: (v.unsigned_abs() - 1) as usize, positive: v > 0 })
    }
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { '+' } else { '-' }, self.edge)
    }
}

/// Topological type of a punctured surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: usize,
    pub punctures: usize,
}

impl SurfaceSig {
    /// `3g - 3 + n`: the number of curves in a pants decomposition.
    pub fn complexity(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.punctures as i64
    }

    pub fn edge_count(&self) -> i64 {
        6 * self.genus as i64 - 6 + 3 * self.punctures as i64
    }

    pub fn triangle_count(&self) -> i64 {
        4 * self.genus as i64 - 4 + 2 * self.punctures as i64
    }

    /// Largest depth of a stratum, `3g - 4 + n`.
    pub fn max_depth(&self) -> i64 {
        self.complexity() - 1
    }
}

/// Serialized form `{"edges": E, "triangles": [[±(e+1), ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationSpec {
    pub edges: usize,
    pub triangles: Vec<[i64; 3]>,
}

/// A validated ideal triangulation of a punctured orientable surface.
///
/// Triangle `t` lists its sides counter-clockwise; side `i` runs from corner
/// `i` to corner `i + 1`. Vertices (punctures) are numbered by their least
/// incident corner `3t + i`.
#[derive(Clone, Debug)]
pub struct Triangulation {
    edge_count: usize,
    triangles: Vec<[SignedEdge; 3]>,
    /// For each edge, the `(triangle, slot)` of its positive and negative side.
    slots: Vec<[(usize, usize); 2]>,
    corner_vertex: Vec<[usize; 3]>,
    /// Tail and head vertex of each edge.
    ends: Vec<[usize; 2]>,
    vertex_count: usize,
    sig: SurfaceSig,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.edge_count == other.edge_count && self.triangles == other.triangles
    }
}

impl Eq for Triangulation {}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn start_end(s: SignedEdge) -> (usize, usize) {
    let tail = 2 * s.edge;
    let head = tail + 1;
    if s.positive {
        (tail, head)
    } else {
        (head, tail)
    }
}

impl Triangulation {
    pub fn new(edge_count: usize, triangles: Vec<[SignedEdge; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::MalformedTriangulation("no triangles".into()));
        }
        let mut occurrences: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); edge_count];
        for (t, tri) in triangles.iter().enumerate() {
            for (i, s) in tri.iter().enumerate() {
                if s.edge >= edge_count {
                    return Err(Error::MalformedTriangulation(format!(
                        "edge {} out of range 0..{}",
                        s.edge, edge_count
                    )));
                }
                occurrences[s.edge].push((t, i, s.positive));
            }
        }
        for (edge, occ) in occurrences.iter().enumerate() {
            if occ.len() != 2 {
                return Err(Error::EdgeDegree { edge, count: occ.len() });
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                for j in i + 1..3 {
                    if tri[i].edge == tri[j].edge {
                        return Err(Error::SelfFolded { triangle: t, edge: tri[i].edge });
                    }
                }
            }
        }
        let mut slots = Vec::with_capacity(edge_count);
        for (edge, occ) in occurrences.iter().enumerate() {
            let (p, n) = match (occ[0].2, occ[1].2) {
                (true, false) => (occ[0], occ[1]),
                (false, true) => (occ[1], occ[0]),
                _ => return Err(Error::NonOrientable { edge }),
            };
            slots.push([(p.0, p.1), (n.0, n.1)]);
        }

        // dual graph connectivity
        let f = triangles.len();
        let mut seen = vec![false; f];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for s in &triangles[t] {
                for &(u, _) in &slots[s.edge] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }

        let mut uf = UnionFind::new(2 * edge_count);
        for tri in &triangles {
            for i in 0..3 {
                let (_, end) = start_end(tri[i]);
                let (start, _) = start_end(tri[(i + 1) % 3]);
                uf.union(end, start);
            }
        }
        let mut label = vec![usize::MAX; 2 * edge_count];
        let mut vertex_count = 0;
        let mut corner_vertex = vec![[0usize; 3]; f];
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                let root = uf.find(start_end(tri[i]).0);
                if label[root] == usize::MAX {
                    label[root] = vertex_count;
                    vertex_count += 1;
                }
                corner_vertex[t][i] = label[root];
            }
        }
        let ends = (0..edge_count)
            .map(|e| [label[uf.find(2 * e)], label[uf.find(2 * e + 1)]])
            .collect();

        // V - E + F = 2 - 2g with n = V punctures
        let twice_genus = 2 + edge_count as i64 - f as i64 - vertex_count as i64;
        let bad = Error::BadEuler { edges: edge_count, triangles: f, vertices: vertex_count };
        if twice_genus < 0 || twice_genus % 2 != 0 || 3 * f != 2 * edge_count {
            return Err(bad);
        }
        let sig = SurfaceSig { genus: (twice_genus / 2) as usize, punctures: vertex_count };
        if sig.complexity() < 1 {
            return Err(bad);
        }
        Ok(Triangulation { edge_count, triangles, slots, corner_vertex, ends, vertex_count, sig })
    }

    pub fn from_spec(spec: &TriangulationSpec) -> Result<Self> {
        let triangles = spec
            .triangles
            .iter()
            .map(|t| Ok([SignedEdge::decode(t[0])?, SignedEdge::decode(t[1])?, SignedEdge::decode(t[2])?]))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(spec.edges, triangles)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TriangulationSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Triangulation::from_spec(&spec)
    }

    pub fn to_spec(&self) -> TriangulationSpec {
        TriangulationSpec {
            edges: self.edge_count,
            triangles: self.triangles.iter().map(|t| [t[0].encode(), t[1].encode(), t[2].encode()]).collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangles(&self) -> &[[SignedEdge; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> [SignedEdge; 3] {
        self.triangles[t]
    }

    pub fn signature(&self) -> SurfaceSig {
        self.sig
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Vertex at corner `i` of triangle `t` (the start of side `i`).
    pub fn corner_vertex(&self, t: usize, i: usize) -> usize {
        self.corner_vertex[t][i]
    }

    /// `[tail, head]` vertices of an edge.
    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    /// `(triangle, slot)` holding the given signed side.
    pub fn slot_of(&self, s: SignedEdge) -> (usize, usize) {
        self.slots[s.edge][if s.positive { 0 } else { 1 }]
    }

    /// The other slot glued to `(t, i)`.
    pub fn partner(&self, t: usize, i: usize) -> (usize, usize) {
        let s = self.triangles[t][i];
        self.slot_of(s.reversed())
    }

    /// Flip `e`, replacing it by the other diagonal of the quadrilateral formed
    /// by its two triangles. The new diagonal keeps label `e`.
    pub fn flip(&self, e: usize) -> Result<(Triangulation, FlipRecord)> {
        if e >= self.edge_count {
            return Err(Error::InvalidInput(format!("edge {e} out of range")));
        }
        let (ta, ia) = self.slot_of(SignedEdge::pos(e));
        let (tb, ib) = self.slot_of(SignedEdge::neg(e));
        if ta == tb {
            return Err(Error::NotFlippable { edge: e });
        }
        let at = self.triangles[ta];
        let bt = self.triangles[tb];
        let (a, b) = (at[(ia + 1) % 3], at[(ia + 2) % 3]);
        let (c, d) = (bt[(ib + 1) % 3], bt[(ib + 2) % 3]);
        if b.edge == c.edge || d.edge == a.edge {
            return Err(Error::NotFlippable { edge: e });
        }
        let mut triangles = self.triangles.clone();
        triangles[ta] = [SignedEdge::pos(e), b, c];
        triangles[tb] = [SignedEdge::neg(e), d, a];
        let tri = Triangulation::new(self.edge_count, triangles)?;
        Ok((tri, FlipRecord { edge: e, quad: [a.edge, b.edge, c.edge, d.edge] }))
    }

    /// Quad sides of `e` without performing the flip.
    pub fn flip_record(&self, e: usize) -> Result<FlipRecord> {
        self.flip(e).map(|(_, r)| r)
    }

    pub fn is_flippable(&self, e: usize) -> bool {
        self.flip(e).is_ok()
    }

    /// Rename edges by `perm` (edge `i` becomes `perm[i]`); with `reverse`,
    /// every triangle is read clockwise, i.e. the surface orientation flips.
    pub fn relabeled(&self, perm: &[usize], reverse: bool) -> Result<Triangulation> {
        check_permutation(perm, self.edge_count)?;
        let map = |s: SignedEdge| SignedEdge { edge: perm[s.edge], positive: s.positive };
        let triangles = self
            .triangles
            .iter()
            .map(|t| {
                if reverse {
                    [map(t[2]).reversed(), map(t[1]).reversed(), map(t[0]).reversed()]
                } else {
                    [map(t[0]), map(t[1]), map(t[2])]
                }
            })
            .collect();
        Triangulation::new(self.edge_count, triangles)
    }

    /// All combinatorial isomorphisms `self -> other` of the requested
    /// orientation character, as edge maps. Sorted lexicographically.
    pub fn isomorphisms(&self, other: &Triangulation, reversing: bool) -> Vec<Isomorphism> {
        let mut out = Vec::new();
        if self.edge_count != other.edge_count || self.triangles.len() != other.triangles.len() {
            return out;
        }
        for t0 in 0..other.triangles.len() {
            for r0 in 0..3 {
                if let Some(iso) = self.extend_isomorphism(other, reversing, t0, r0) {
                    out.push(iso);
                }
            }
        }
        out.sort_by(|a, b| a.edge_map.cmp(&b.edge_map));
        out.dedup();
        out
    }

    /// Whether `edge_map` is induced by an isomorphism `self -> other`.
    pub fn is_isomorphic_via(&self, other: &Triangulation, edge_map: &[usize], reversing: bool) -> bool {
        if edge_map.len() != self.edge_count {
            return false;
        }
        let (t0, i0) = (0usize, 0usize);
        let target = edge_map[self.triangles[t0][i0].edge];
        if target >= other.edge_count {
            return false;
        }
        for &(u, j) in &other.slots[target] {
            // slot i0 of triangle t0 maps to slot j of u
            let r = if reversing { (j + i0) % 3 } else { (j + 3 - i0) % 3 };
            if let Some(iso) = self.extend_isomorphism(other, reversing, u, r) {
                if iso.edge_map == edge_map {
                    return true;
                }
            }
        }
        false
    }

    /// Propagate the assignment "triangle 0 maps to `t0` with rotation `r0`".
    /// Slot `i` of a triangle with rotation `r` maps to slot `r + i`
    /// (orientation preserving) or `r - i` (reversing).
    fn extend_isomorphism(&self, other: &Triangulation, reversing: bool, t0: usize, r0: usize) -> Option<Isomorphism> {
        self.extend_assignment(other, reversing, t0, r0).map(|(iso, _)| iso)
    }

    /// Image of every vertex under an isomorphism `self -> other`, or `None`
    /// if `iso` is not one.
    pub fn vertex_images(&self, other: &Triangulation, iso: &Isomorphism) -> Option<Vec<usize>> {
        let target = iso.edge_map[self.triangles[0][0].edge];
        for &(u, j) in &other.slots[target] {
            let r = if iso.orientation_reversing { j % 3 } else { j };
            let Some((found, assign)) = self.extend_assignment(other, iso.orientation_reversing, u, r) else {
                continue;
            };
            if found.edge_map != iso.edge_map {
                continue;
            }
            let mut image = vec![usize::MAX; self.vertex_count];
            for (t, &(tt, r)) in assign.iter().enumerate() {
                for i in 0..3 {
                    let j = if iso.orientation_reversing { (r + 4 - i) % 3 } else { (r + i) % 3 };
                    image[self.corner_vertex[t][i]] = other.corner_vertex[tt][j];
                }
            }
            return Some(image);
        }
        None
    }

    fn extend_assignment(
        &self,
        other: &Triangulation,
        reversing: bool,
        t0: usize,
        r0: usize,
    ) -> Option<(Isomorphism, Vec<(usize, usize)>)> {
        let f = self.triangles.len();
        let image_slot = |r: usize, i: usize| if reversing { (r + 3 - i) % 3 } else { (r + i) % 3 };
        let mut assign: Vec<Option<(usize, usize)>> = vec![None; f];
        let mut used = vec![false; f];
        assign[0] = Some((t0, r0));
        used[t0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut edge_map = vec![usize::MAX; self.edge_count];
        while let Some(t) = queue.pop_front() {
            let (tt, r) = assign[t].unwrap();
            for i in 0..3 {
                let j = image_slot(r, i);
                let e = self.triangles[t][i].edge;
                let ei = other.triangles[tt][j].edge;
                if edge_map[e] == usize::MAX {
                    edge_map[e] = ei;
                } else if edge_map[e] != ei {
                    return None;
                }
                let (u, k) = self.partner(t, i);
                let (uu, kk) = other.partner(tt, j);
                let ru = if reversing { (kk + k) % 3 } else { (kk + 3 - k) % 3 };
                match assign[u] {
                    Some(prev) => {
                        if prev != (uu, ru) {
                            return None;
                        }
                    }
                    None => {
                        if used[uu] {
                            return None;
                        }
                        used[uu] = true;
                        assign[u] = Some((uu, ru));
                        queue.push_back(u);
                    }
                }
            }
        }
        let mut hit = vec![false; self.edge_count];
        for &m in &edge_map {
            if m == usize::MAX || hit[m] {
                return None;
            }
            hit[m] = true;
        }
        let assign = assign.into_iter().map(|a| a.unwrap()).collect();
        Some((Isomorphism { edge_map, orientation_reversing: reversing }, assign))
    }

    /// Labeling-insensitive key: triangles rotated to their least edge, sorted.
    pub fn canonical_key(&self) -> Vec<[i64; 3]> {
        let mut key: Vec<[i64; 3]> = self
            .triangles
            .iter()
            .map(|t| {
                let r = (0..3).min_by_key(|&i| t[i].edge).unwrap();
                [t[r].encode(), t[(r + 1) % 3].encode(), t[(r + 2) % 3].encode()]
            })
            .collect();
        key.sort();
        key
    }
}

/// Edge map induced by a combinatorial isomorphism of triangulations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    pub edge_map: Vec<usize>,
    pub orientation_reversing: bool,
}

impl Isomorphism {
    pub fn is_identity(&self) -> bool {
        !self.orientation_reversing && self.edge_map.iter().enumerate().all(|(i, &m)| i == m)
    }
}

/// Data of a performed flip: the flipped edge and the quad sides `(a, b, c, d)`
/// in cyclic order, `a, b` from the triangle that held `+e`, `a` opposite `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlipRecord {
    pub edge: usize,
    pub quad: [usize; 4],
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidInput(format!("permutation has length {}, expected {n}", perm.len())));
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || hit[p] {
            return Err(Error::NotBijective);
        }
        hit[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(e: usize, raw: &[[i64; 3]]) -> Result<Triangulation> {
        Triangulation::from_spec(&TriangulationSpec { edges: e, triangles: raw.to_vec() })
    }

    fn torus() -> Triangulation {
        tri(3, &[[1, 2, 3], [-1, -2, -3]]).unwrap()
    }

    #[test]
    fn once_punctured_torus_invariants() {
        let t = torus();
        assert_eq!(t.signature(), SurfaceSig { genus: 1, punctures: 1 });
        assert_eq!(t.signature().complexity(), 1);
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.triangle_count(), 2);
    }

    #[test]
    fn edge_used_three_times() {
        let err = tri(6, &[[1, 2, 5], [-1, -2, 5], [5, 3, 4], [-3, -4, 6]]).unwrap_err();
        assert!(matches!(err, Error::EdgeDegree { edge: 4, count: 3 }), "{err:?}");
    }

    #[test]
    fn self_folded_and_orientation_errors() {
        assert!(matches!(tri(3, &[[1, -1, 2], [3, -2, -3]]).unwrap_err(), Error::SelfFolded { .. }));
        assert!(matches!(tri(3, &[[1, 2, 3], [1, -2, -3]]).unwrap_err(), Error::NonOrientable { edge: 0 }));
    }

    #[test]
    fn disconnected_gluing() {
        let err = tri(6, &[[1, 2, 3], [-1, -2, -3], [4, 5, 6], [-4, -5, -6]]).unwrap_err();
        assert_eq!(err, Error::Disconnected);
    }

    #[test]
    fn bad_euler_for_sphere_with_three_punctures() {
        // two triangles glued along their boundary: a thrice-punctured sphere, xi = 0
        let err = tri(3, &[[1, 2, 3], [-3, -2, -1]]).unwrap_err();
        assert!(matches!(err, Error::BadEuler { vertices: 3, .. }), "{err:?}");
    }

    #[test]
    fn torus_flip_quad() {
        let t = torus();
        let (f, rec) = t.flip(2).unwrap();
        assert_eq!(rec.quad, [0, 1, 0, 1]);
        assert_eq!(f.signature(), t.signature());
        assert_eq!(f.triangle_count(), 2);
    }

    #[test]
    fn double_flip_is_identity_up_to_labeling() {
        let t = torus();
        for e in 0..3 {
            let (f, _) = t.flip(e).unwrap();
            let (ff, _) = f.flip(e).unwrap();
            assert!(ff.is_isomorphic_via(&t, &[0, 1, 2], false));
        }
    }

    #[test]
    fn torus_has_reflections() {
        let t = torus();
        let rev = t.isomorphisms(&t, true);
        assert!(!rev.is_empty());
        let pres = t.isomorphisms(&t, false);
        assert!(pres.iter().any(|i| i.is_identity()));
    }

    #[test]
    fn relabel_roundtrip() {
        let t = torus();
        let r = t.relabeled(&[1, 2, 0], false).unwrap();
        assert!(t.is_isomorphic_via(&r, &[1, 2, 0], false));
    }

    #[test]
    fn json_roundtrip() {
        let t = torus();
        let text = serde_json::to_string(&t.to_spec()).unwrap();
        assert_eq!(text, r#"{"edges":3,"triangles":[[1,2,3],[-1,-2,-3]]}"#);
        assert_eq!(Triangulation::from_json(&text).unwrap(), t);
    }
}

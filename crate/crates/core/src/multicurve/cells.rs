//! Cell structure of one or two normal arc families inside the triangles, and
//! the faces obtained by gluing those cells across edges.

use crate::surface::Triangulation;

use super::trace::{edge_index, triangle_chords, Chord};

/// Combined order of all family points along each edge, from the tail.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    /// `order[e][J] = (family, family-local point index)`.
    pub order: Vec<Vec<(u8, usize)>>,
    /// `pos[f][e][j]` inverts `order`.
    pub pos: Vec<Vec<Vec<usize>>>,
}

impl Layout {
    /// Family 0 first, then family 1, each in its own edge order.
    pub fn stacked(weights: &[Vec<usize>]) -> Layout {
        let edges = weights[0].len();
        let order = (0..edges)
            .map(|e| {
                weights
                    .iter()
                    .enumerate()
                    .flat_map(|(f, w)| (0..w[e]).map(move |j| (f as u8, j)))
                    .collect()
            })
            .collect();
        let mut layout = Layout { order, pos: Vec::new() };
        layout.reindex(weights.len());
        layout
    }

    pub fn reindex(&mut self, families: usize) {
        let mut pos: Vec<Vec<Vec<usize>>> = (0..families)
            .map(|f| {
                self.order
                    .iter()
                    .map(|o| vec![0; o.iter().filter(|x| x.0 as usize == f).count()])
                    .collect()
            })
            .collect();
        for (e, o) in self.order.iter().enumerate() {
            for (k, &(f, j)) in o.iter().enumerate() {
                pos[f as usize][e][j] = k;
            }
        }
        self.pos = pos;
    }

    pub fn swap(&mut self, e: usize, k: usize) {
        let o = &mut self.order[e];
        o.swap(k, k + 1);
        let (a, b) = (o[k], o[k + 1]);
        self.pos[a.0 as usize][e][a.1] = k;
        self.pos[b.0 as usize][e][b.1] = k + 1;
    }
}

/// A complementary region of the arcs inside one triangle.
#[derive(Clone, Debug, Default)]
pub(crate) struct Piece {
    /// `(slot, gap)`: gap `g` on side `i` lies between the `g`-th and
    /// `(g+1)`-th boundary element counted from the side's start vertex.
    pub gaps: Vec<(usize, usize)>,
    /// Local ids of crossings at which this piece has a corner.
    pub crossings: Vec<usize>,
    /// Slots `i` whose start vertex touches this piece.
    pub vertex_corners: Vec<usize>,
}

pub(crate) struct TriangleCells {
    pub pieces: Vec<Piece>,
    pub crossing_count: usize,
}

#[derive(Clone, Copy)]
struct Placed {
    fam: u8,
    p: usize,
    q: usize,
}

/// Cells of triangle `t` for the given families (at most two, only arcs of
/// different families may cross).
pub(crate) fn triangle_cells(
    tri: &Triangulation,
    t: usize,
    weights: &[Vec<usize>],
    chords: &[Vec<Chord>],
    layout: &Layout,
) -> TriangleCells {
    let s = tri.triangle(t);
    let total = |e: usize| layout.order[e].len();
    let mut base = [0usize; 3];
    let mut n = 0;
    for i in 0..3 {
        base[i] = n;
        n += 1 + total(s[i].edge);
    }
    let boundary = |f: usize, (i, k): (usize, usize)| {
        let side = s[i];
        let e = side.edge;
        let j = edge_index(side.positive, weights[f][e], k);
        let big_j = layout.pos[f][e][j];
        let big_k = edge_index(side.positive, total(e), big_j);
        base[i] + 1 + big_k
    };

    let mut placed = Vec::new();
    let mut chord_at = vec![usize::MAX; n];
    for (f, list) in chords.iter().enumerate() {
        for &(a, b) in list {
            let (x, y) = (boundary(f, a), boundary(f, b));
            chord_at[x] = placed.len();
            chord_at[y] = placed.len();
            placed.push(Placed { fam: f as u8, p: x.min(y), q: x.max(y) });
        }
    }

    let inside = |c: &Placed, b: usize| c.p < b && b < c.q;
    let mut crossings: Vec<(usize, usize)> = Vec::new();
    let mut along: Vec<Vec<(usize, usize)>> = vec![Vec::new(); placed.len()];
    for a in 0..placed.len() {
        if placed[a].fam != 0 {
            continue;
        }
        for b in 0..placed.len() {
            if placed[b].fam == 0 {
                continue;
            }
            let (ca, cb) = (placed[a], placed[b]);
            if inside(&ca, cb.p) != inside(&ca, cb.q) {
                let x = crossings.len();
                crossings.push((a, b));
                let ra = if inside(&ca, cb.p) { cb.p } else { cb.q };
                let rb = if inside(&cb, ca.p) { ca.p } else { ca.q };
                along[a].push((ra, x));
                along[b].push((rb, x));
            }
        }
    }
    // position of each crossing on its two chords
    let mut index_on = vec![[0usize; 2]; crossings.len()];
    for (c, list) in along.iter_mut().enumerate() {
        list.sort_unstable();
        for (k, &(_, x)) in list.iter().enumerate() {
            let slot = if crossings[x].0 == c { 0 } else { 1 };
            index_on[x][slot] = k;
        }
    }

    let node_of_crossing = |x: usize| n + x;
    let toward_q = |c: usize, k: usize| -> usize {
        let list = &along[c];
        if k + 1 < list.len() {
            node_of_crossing(list[k + 1].1)
        } else {
            placed[c].q
        }
    };
    let toward_p = |c: usize, k: usize| -> usize {
        if k > 0 {
            node_of_crossing(along[c][k - 1].1)
        } else {
            placed[c].p
        }
    };

    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(n + crossings.len());
    for k in 0..n {
        let fwd = (k + 1) % n;
        let back = (k + n - 1) % n;
        let c = chord_at[k];
        if c == usize::MAX {
            rot.push(vec![fwd, back]);
        } else {
            let first = if placed[c].p == k {
                along[c].first().map(|&(_, x)| node_of_crossing(x)).unwrap_or(placed[c].q)
            } else {
                along[c].last().map(|&(_, x)| node_of_crossing(x)).unwrap_or(placed[c].p)
            };
            rot.push(vec![fwd, first, back]);
        }
    }
    for (x, &(a, b)) in crossings.iter().enumerate() {
        let [ka, kb] = index_on[x];
        let (b_left, b_right) = if inside(&placed[a], placed[b].q) {
            (toward_p(b, kb), toward_q(b, kb))
        } else {
            (toward_q(b, kb), toward_p(b, kb))
        };
        rot.push(vec![toward_q(a, ka), b_left, toward_p(a, ka), b_right]);
    }

    let slot_of_boundary = |u: usize| -> (usize, usize) {
        let i = if u >= base[2] {
            2
        } else if u >= base[1] {
            1
        } else {
            0
        };
        (i, u - base[i])
    };

    let mut visited: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut pieces = Vec::new();
    for u0 in 0..rot.len() {
        for d0 in 0..rot[u0].len() {
            if visited[u0][d0] {
                continue;
            }
            let mut piece = Piece::default();
            let mut outer = false;
            let (mut u, mut d) = (u0, d0);
            loop {
                visited[u][d] = true;
                let v = rot[u][d];
                if u < n && v == (u + 1) % n {
                    piece.gaps.push(slot_of_boundary(u));
                } else if u < n && v == (u + n - 1) % n {
                    outer = true;
                }
                if v >= n {
                    piece.crossings.push(v - n);
                } else if slot_of_boundary(v).1 == 0 {
                    piece.vertex_corners.push(slot_of_boundary(v).0);
                }
                let j = rot[v].iter().position(|&x| x == u).expect("rotation is symmetric");
                let deg = rot[v].len();
                let nd = (j + deg - 1) % deg;
                u = v;
                d = nd;
                if u == u0 && d == d0 {
                    break;
                }
            }
            if !outer {
                pieces.push(piece);
            }
        }
    }
    TriangleCells { pieces, crossing_count: crossings.len() }
}

/// Faces of the arcs on the whole surface.
pub(crate) struct Face {
    /// Euler characteristic of the open face.
    pub chi: i64,
    /// Global crossing ids at the corners of the face.
    pub corners: Vec<usize>,
    /// `(edge, segment)` pairs glued inside the face; segment `k` lies between
    /// points `k - 1` and `k` of the combined edge order.
    pub segments: Vec<(usize, usize)>,
    pub punctures: Vec<usize>,
    /// `(triangle, piece index)` members.
    pub pieces: Vec<(usize, usize)>,
}

pub(crate) struct Faces {
    pub faces: Vec<Face>,
    pub crossing_count: usize,
    /// Face index of every `(triangle, slot, gap)`.
    pub gap_face: Vec<[Vec<usize>; 3]>,
}

pub(crate) fn surface_faces(
    tri: &Triangulation,
    weights: &[Vec<usize>],
    chords: &[Vec<Vec<Chord>>],
    layout: &Layout,
) -> Faces {
    let f = tri.triangle_count();
    let mut all: Vec<(usize, usize, Piece)> = Vec::new();
    let mut crossing_base = vec![0usize; f];
    let mut crossing_total = 0;
    for t in 0..f {
        let per: Vec<Vec<Chord>> = chords.iter().map(|c| c[t].clone()).collect();
        let cells = triangle_cells(tri, t, weights, &per, layout);
        crossing_base[t] = crossing_total;
        crossing_total += cells.crossing_count;
        for (k, p) in cells.pieces.into_iter().enumerate() {
            all.push((t, k, p));
        }
    }
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: Vec<Vec<usize>> = layout.order.iter().map(|o| vec![usize::MAX; o.len() + 1]).collect();
    let mut glued: Vec<(usize, usize, usize)> = Vec::new();
    let mut gap_piece: Vec<[Vec<usize>; 3]> = (0..f)
        .map(|t| {
            let s = tri.triangle(t);
            [0, 1, 2].map(|i| vec![usize::MAX; layout.order[s[i].edge].len() + 1])
        })
        .collect();
    for (idx, (t, _, piece)) in all.iter().enumerate() {
        let s = tri.triangle(*t);
        for &(i, g) in &piece.gaps {
            gap_piece[*t][i][g] = idx;
            let e = s[i].edge;
            let w = layout.order[e].len();
            let seg = if s[i].positive { g } else { w - g };
            if owner[e][seg] == usize::MAX {
                owner[e][seg] = idx;
            } else {
                let other = owner[e][seg];
                glued.push((e, seg, idx));
                let (ra, rb) = (find(&mut parent, idx), find(&mut parent, other));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut face_of_root = vec![usize::MAX; all.len()];
    let mut faces: Vec<Face> = Vec::new();
    let mut piece_face = vec![0usize; all.len()];
    for idx in 0..all.len() {
        let r = find(&mut parent, idx);
        if face_of_root[r] == usize::MAX {
            face_of_root[r] = faces.len();
            faces.push(Face { chi: 0, corners: vec![], segments: vec![], punctures: vec![], pieces: vec![] });
        }
        let fi = face_of_root[r];
        piece_face[idx] = fi;
        let (t, k, piece) = &all[idx];
        let face = &mut faces[fi];
        face.chi += 1;
        face.pieces.push((*t, *k));
        face.corners.extend(piece.crossings.iter().map(|x| crossing_base[*t] + x));
        face.punctures.extend(piece.vertex_corners.iter().map(|&i| tri.corner_vertex(*t, i)));
    }
    for (e, seg, idx) in glued {
        let face = &mut faces[piece_face[idx]];
        face.chi -= 1;
        face.segments.push((e, seg));
    }
    for face in &mut faces {
        face.punctures.sort_unstable();
        face.punctures.dedup();
    }
    let gap_face = gap_piece
        .into_iter()
        .map(|sides| sides.map(|v| v.into_iter().map(|p| if p == usize::MAX { p } else { piece_face[p] }).collect()))
        .collect();
    Faces { faces, crossing_count: crossing_total, gap_face }
}

pub(crate) fn family_chords(tri: &Triangulation, w: &[usize]) -> Vec<Vec<Chord>> {
    (0..tri.triangle_count()).map(|t| triangle_chords(tri, w, t)).collect()
}

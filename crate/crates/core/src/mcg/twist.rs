//! Dehn twists as flip words.
//!
//! A curve is first flipped down until it meets every edge at most once. The
//! triangles it then crosses form an annulus whose spokes are the weight-one
//! edges; sliding the spokes once around the annulus and relabeling realizes
//! the twist. Conjugating by the shortening word brings it back.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::enumerate::connected_curves;
use crate::multicurve::{decompose, intersection_number, transport_weights, Multicurve, NormalCoords};
use crate::surface::Triangulation;

use super::{MappingClass, Move};

/// Node budget of the breadth-first fallback in [`shorten`].
const SEARCH_NODES: usize = 20_000;
const SEARCH_DEPTH: usize = 8;

fn total(w: &[BigUint]) -> BigUint {
    w.iter().sum()
}

fn is_short(w: &[BigUint]) -> bool {
    w.iter().all(|x| *x <= BigUint::one())
}

/// Flip word taking `c` to a frame where it meets every edge at most once,
/// with the final triangulation and weights.
pub fn shorten(c: &Multicurve) -> Result<(Vec<usize>, Triangulation, Vec<BigUint>)> {
    let mut tri = (**c.triangulation()).clone();
    let mut w = c.weights().to_vec();
    let mut word = Vec::new();
    while !is_short(&w) {
        let now = total(&w);
        let mut step = None;
        for e in 0..tri.edge_count() {
            if let Ok((next, rec)) = tri.flip(e) {
                let nw = transport_weights(&w, &rec);
                if total(&nw) < now {
                    step = Some((e, next, nw));
                    break;
                }
            }
        }
        match step {
            Some((e, next, nw)) => {
                word.push(e);
                tri = next;
                w = nw;
            }
            None => {
                let (path, next, nw) = search(&tri, &w)?;
                word.extend(path);
                tri = next;
                w = nw;
            }
        }
    }
    Ok((word, tri, w))
}

/// Breadth-first search over flips that never increase the total weight, for
/// a frame with smaller total or with all weights at most one.
fn search(tri: &Triangulation, w: &[BigUint]) -> Result<(Vec<usize>, Triangulation, Vec<BigUint>)> {
    let start = total(w);
    let mut seen = BTreeSet::new();
    seen.insert((tri.canonical_key(), w.to_vec()));
    let mut queue = VecDeque::from([(Vec::<usize>::new(), tri.clone(), w.to_vec())]);
    while let Some((path, t, cw)) = queue.pop_front() {
        if path.len() >= SEARCH_DEPTH {
            continue;
        }
        for e in 0..t.edge_count() {
            let Ok((next, rec)) = t.flip(e) else { continue };
            let nw = transport_weights(&cw, &rec);
            let s = total(&nw);
            if s > start {
                continue;
            }
            let mut p = path.clone();
            p.push(e);
            if s < start || is_short(&nw) {
                return Ok((p, next, nw));
            }
            if seen.len() >= SEARCH_NODES {
                break;
            }
            if seen.insert((next.canonical_key(), nw.clone())) {
                queue.push_back((p, next, nw));
            }
        }
    }
    Err(Error::NotShortenable { weight: start.to_string() })
}

/// One triangle of the annulus, in the order the curve crosses them.
struct Crossing {
    exit_edge: usize,
    /// The base (weight-zero side) lies to the left of the curve.
    base_left: bool,
}

fn annulus(tri: &Triangulation, w: &[usize]) -> Vec<Crossing> {
    let weight = |t: usize, i: usize| w[tri.triangle(t)[i].edge];
    let start = (0..tri.triangle_count())
        .find(|&t| (0..3).any(|i| weight(t, i) == 1))
        .expect("nonempty curve");
    let base = (0..3).find(|&i| weight(start, i) == 0).expect("one arc per triangle");
    let mut t = start;
    let mut enter = (base + 1) % 3;
    let mut out = Vec::new();
    loop {
        let exit = (0..3).find(|&i| i != enter && weight(t, i) == 1).expect("arc leaves");
        out.push(Crossing { exit_edge: tri.triangle(t)[exit].edge, base_left: exit == (enter + 1) % 3 });
        let (u, k) = tri.partner(t, exit);
        if u == start && k == (base + 1) % 3 {
            break;
        }
        t = u;
        enter = k;
    }
    out
}

/// Whether a vertex map `cur -> tri` is the identity on punctures, matching
/// vertices through the endpoints of edges that were never flipped.
fn fixes_punctures(cur: &Triangulation, tri: &Triangulation, fixed: &[usize], image: &[usize]) -> bool {
    fixed.iter().all(|&f| {
        let [a, b] = cur.edge_ends(f);
        let [x, y] = tri.edge_ends(f);
        image[a] == x && image[b] == y
    })
}

/// Curves near `c` in its short frame: those crossing it, with their
/// intersection numbers, and those disjoint from it.
struct Probes {
    crossing: Vec<(Multicurve, BigUint)>,
    disjoint: Vec<Multicurve>,
}

const PROBES: usize = 8;

fn probes(c: &Multicurve) -> Result<Probes> {
    let tri = c.triangulation();
    let mut limit = 2;
    loop {
        let mut out = Probes { crossing: Vec::new(), disjoint: Vec::new() };
        for b in connected_curves(tri, limit, PROBE_BUDGET)? {
            if b == *c {
                continue;
            }
            let i = intersection_number(c, &b, PROBE_CAP)?;
            if i.is_zero() {
                if out.disjoint.len() < PROBES {
                    out.disjoint.push(b);
                }
            } else if out.crossing.len() < PROBES {
                out.crossing.push((b, i));
            }
        }
        if !out.crossing.is_empty() || limit >= PROBE_LIMIT {
            return Ok(out);
        }
        limit += 2;
    }
}

const PROBE_LIMIT: u64 = 12;
const PROBE_BUDGET: usize = 2_000_000;
const PROBE_CAP: u64 = 1 << 32;

/// Whether the word acts like a single twist about `c` on the probes.
fn acts_as_twist(tri: &Arc<Triangulation>, moves: &[Move], p: &Probes) -> Result<bool> {
    let Ok(g) = MappingClass::new(tri.clone(), moves.to_vec()) else { return Ok(false) };
    for b in &p.disjoint {
        if g.apply_curve(b)? != *b {
            return Ok(false);
        }
    }
    for (b, i) in &p.crossing {
        let gb = g.apply_curve(b)?;
        if intersection_number(&gb, b, PROBE_CAP)? != i * i {
            return Ok(false);
        }
    }
    Ok(!p.crossing.is_empty())
}

/// Relabelings identifying `cur` with `tri` that fix every edge the curve
/// misses together with its ends.
fn closings(cur: &Triangulation, tri: &Triangulation, fixed: &[usize]) -> Vec<Move> {
    cur.isomorphisms(tri, false)
        .into_iter()
        .filter(|iso| {
            fixed.iter().all(|&f| iso.edge_map[f] == f)
                && cur.vertex_images(tri, iso).is_some_and(|v| fixes_punctures(cur, tri, fixed, &v))
        })
        .map(|iso| Move::Relabel { edges: iso.edge_map, reverse: false })
        .collect()
}

fn flip_small(tri: &Triangulation, w: &[usize], e: usize) -> Result<(Triangulation, Vec<usize>)> {
    let (next, rec) = tri.flip(e)?;
    let big: Vec<BigUint> = w.iter().map(|&x| BigUint::from(x)).collect();
    let nw = transport_weights(&big, &rec).iter().map(|x| x.to_usize().unwrap()).collect();
    Ok((next, nw))
}

/// Flips sliding the spokes of the annulus around `w` one step at a time,
/// followed by a relabeling that identifies the result with `tri`.
fn slide(tri: &Arc<Triangulation>, w: &[usize], p: &Probes) -> Result<Option<Vec<Move>>> {
    let fixed: Vec<usize> = (0..w.len()).filter(|&e| w[e] == 0).collect();
    let spokes = w.len() - fixed.len();
    let mut cur = (**tri).clone();
    let mut cw = w.to_vec();
    let mut moves = Vec::new();
    for _ in 0..spokes * spokes + spokes + 2 {
        let ring = annulus(&cur, &cw);
        let n = ring.len();
        let Some(e) = (0..n)
            .filter(|&j| ring[j].base_left && !ring[(j + 1) % n].base_left)
            .map(|j| ring[j].exit_edge)
            .min()
        else {
            return Ok(None);
        };
        (cur, cw) = flip_small(&cur, &cw, e)?;
        moves.push(Move::Flip(e));
        for close in closings(&cur, tri, &fixed) {
            let mut word = moves.clone();
            word.push(close);
            if acts_as_twist(tri, &word, p)? {
                return Ok(Some(word));
            }
        }
    }
    Ok(None)
}

const ANNULUS_NODES: usize = 200_000;

/// Breadth-first search over flips of edges the curve crosses for a frame
/// that closes up to a single twist.
fn annulus_search(tri: &Arc<Triangulation>, w: &[usize], p: &Probes) -> Result<Option<Vec<Move>>> {
    let fixed: Vec<usize> = (0..w.len()).filter(|&e| w[e] == 0).collect();
    let mut seen = BTreeSet::from([tri.canonical_key()]);
    let mut queue = VecDeque::from([(Vec::<usize>::new(), (**tri).clone(), w.to_vec())]);
    while let Some((path, cur, cw)) = queue.pop_front() {
        for e in (0..w.len()).filter(|&e| w[e] > 0) {
            let Ok((next, nw)) = flip_small(&cur, &cw, e) else { continue };
            if !seen.insert(next.canonical_key()) {
                continue;
            }
            let mut p2 = path.clone();
            p2.push(e);
            for close in closings(&next, tri, &fixed) {
                let mut word: Vec<Move> = p2.iter().map(|&x| Move::Flip(x)).collect();
                word.push(close);
                if acts_as_twist(tri, &word, p)? {
                    return Ok(Some(word));
                }
            }
            if seen.len() < ANNULUS_NODES {
                queue.push_back((p2, next, nw));
            }
        }
    }
    Ok(None)
}

/// The Dehn twist about a connected curve.
///
/// Fails with `NotShortenable` when no frame reachable by the search meets the
/// curve at most once per edge; this always happens for a separating curve
/// with an unpunctured side.
pub fn twist(c: &Multicurve, cap: u64) -> Result<MappingClass> {
    let d = decompose(c, cap)?;
    if d.len() != 1 || d[0].1 != 1 {
        return Err(Error::NotConnected);
    }
    let (word, short_tri, short_w) = shorten(c)?;
    let small: Vec<usize> = short_w.iter().map(|x| x.to_usize().unwrap()).collect();
    let short_tri = Arc::new(short_tri);
    let short = Multicurve::from_coords_unchecked(NormalCoords::from_parts_unchecked(short_tri.clone(), short_w));
    let p = probes(&short)?;
    let inner = match slide(&short_tri, &small, &p)? {
        Some(m) => m,
        None => annulus_search(&short_tri, &small, &p)?
            .ok_or(Error::NotShortenable { weight: c.weights().iter().sum::<BigUint>().to_string() })?,
    };
    let mut moves: Vec<Move> = word.iter().map(|&e| Move::Flip(e)).collect();
    moves.extend(inner);
    moves.extend(word.iter().rev().map(|&e| Move::Flip(e)));
    MappingClass::new(Arc::clone(c.triangulation()), moves)
}

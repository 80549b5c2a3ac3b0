//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lamistrat::surface::Triangulation;
use num_bigint::BigUint;

/// Reduced slopes `p/q` with `q >= 0` (and `1/0` for infinity) up to `bound`.
pub fn slopes(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q in 0..=bound {
            if gcd(p.abs(), q) == 1 && (q > 0 || p == 1) {
                out.push((p, q));
            }
        }
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Edge weights of slope `p/q` on the once-punctured torus fixture, whose
/// edges have slopes 0/1, 1/0 and 1/1: the weight on an edge of slope `r/s`
/// is `|ps - qr|`.
pub fn slope_weights(p: i64, q: i64) -> Vec<u64> {
    [(0, 1), (1, 0), (1, 1)].iter().map(|&(r, s)| det(p, q, r, s)).collect()
}

pub fn det(p: i64, q: i64, r: i64, s: i64) -> u64 {
    (p * s - q * r).unsigned_abs()
}

pub fn big(w: &[u64]) -> Vec<BigUint> {
    w.iter().map(|&x| BigUint::from(x)).collect()
}

pub fn small(w: &[BigUint]) -> Vec<u64> {
    w.iter().map(|x| u64::try_from(x).expect("small weight")).collect()
}

/// `(genus, punctures)` of each fixture, read off its name.
pub fn signature(name: &str) -> (i64, i64) {
    let mut it = name.trim_start_matches("s_").split('_').map(|x| x.parse::<i64>().unwrap());
    (it.next().unwrap(), it.next().unwrap())
}

/// Triangle inequalities and parity checked directly on the triangle list.
pub fn satisfies_triangle_conditions(tri: &Triangulation, w: &[u64]) -> bool {
    (0..tri.triangle_count()).all(|t| {
        let s = tri.triangle(t);
        let (x, y, z) = (w[s[0].edge], w[s[1].edge], w[s[2].edge]);
        (x + y + z) % 2 == 0 && x <= y + z && y <= x + z && z <= x + y
    })
}

/// Number of elements in the longest strict chain ending at each set, under
/// inclusion. A chain of `d + 1` sets gives depth `d`.
pub fn chain_lengths(sets: &[BTreeSet<Vec<u64>>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| sets[i].len());
    let mut best = vec![1; sets.len()];
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[..k] {
            if sets[j].len() < sets[i].len() && sets[j].is_subset(&sets[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best
}

/// Size of the largest clique, by plain backtracking.
pub fn max_clique(adj: &[Vec<bool>]) -> usize {
    fn grow(adj: &[Vec<bool>], chosen: &mut Vec<usize>, from: usize, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for v in from..adj.len() {
            if chosen.iter().all(|&u| adj[u][v]) {
                chosen.push(v);
                grow(adj, chosen, v + 1, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(adj, &mut Vec::new(), 0, &mut best);
    best
}

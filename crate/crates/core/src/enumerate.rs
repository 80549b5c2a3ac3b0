//! Finite windows: normal coordinates and curves of bounded total weight.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multicurve::{Multicurve, NormalCoords};
use crate::surface::Triangulation;

/// Environment variable overriding enumeration budgets.
pub const BUDGET_VAR: &str = "LAMISTRAT_BUDGET";

/// Default cap on the number of weight vectors an enumeration may produce.
pub const DEFAULT_BUDGET: usize = 20_000_000;

/// The budget in force: `LAMISTRAT_BUDGET` if set and numeric, else `default`.
pub fn budget(default: usize) -> usize {
    std::env::var(BUDGET_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

/// Edge order in which every triangle is completed as early as possible, and
/// for each position the triangles that become fully assigned there.
fn schedule(tri: &Triangulation) -> (Vec<usize>, Vec<Vec<usize>>) {
    let e = tri.edge_count();
    let mut order = Vec::with_capacity(e);
    let mut placed = vec![false; e];
    for t in 0..tri.triangle_count() {
        for s in tri.triangle(t) {
            if !placed[s.edge] {
                placed[s.edge] = true;
                order.push(s.edge);
            }
        }
    }
    let mut rank = vec![0; e];
    for (k, &x) in order.iter().enumerate() {
        rank[x] = k;
    }
    let mut done = vec![Vec::new(); e];
    for t in 0..tri.triangle_count() {
        let last = tri.triangle(t).iter().map(|s| rank[s.edge]).max().unwrap();
        done[last].push(t);
    }
    (order, done)
}

fn triangle_ok(tri: &Triangulation, w: &[u64], t: usize) -> bool {
    let s = tri.triangle(t);
    let (x, y, z) = (w[s[0].edge], w[s[1].edge], w[s[2].edge]);
    (x + y + z) % 2 == 0 && x <= y + z && y <= z + x && z <= x + y
}

struct Search<'a> {
    tri: &'a Triangulation,
    order: &'a [usize],
    done: &'a [Vec<usize>],
    limit: u64,
    budget: usize,
}

impl Search<'_> {
    fn run(&self, w: &mut Vec<u64>, k: usize, used: u64, out: &mut Vec<Vec<u64>>) -> Result<()> {
        if k == self.order.len() {
            if out.len() >= self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            out.push(w.clone());
            return Ok(());
        }
        let e = self.order[k];
        for x in 0..=(self.limit - used) {
            w[e] = x;
            if self.done[k].iter().all(|&t| triangle_ok(self.tri, w, t)) {
                self.run(w, k + 1, used + x, out)?;
            }
        }
        w[e] = 0;
        Ok(())
    }
}

/// All weight vectors satisfying the triangle conditions with total at most
/// `limit`, in lexicographic order.
pub fn valid_weights(tri: &Triangulation, limit: u64, budget: usize) -> Result<Vec<Vec<u64>>> {
    let (order, done) = schedule(tri);
    let search = Search { tri, order: &order, done: &done, limit, budget };
    let e = tri.edge_count();
    let first = order[0];
    let parts: Vec<Result<Vec<Vec<u64>>>> = (0..=limit)
        .into_par_iter()
        .map(|x| {
            let mut w = vec![0u64; e];
            w[first] = x;
            let mut out = Vec::new();
            if done[0].iter().all(|&t| triangle_ok(tri, &w, t)) {
                search.run(&mut w, 1, x, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
        if all.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
    }
    all.sort_unstable();
    Ok(all)
}

/// Connected essential curves with total weight at most `limit`, sorted by
/// weight vector.
pub fn connected_curves(tri: &Arc<Triangulation>, limit: u64, budget: usize) -> Result<Vec<Multicurve>> {
    let all = valid_weights(tri, limit, budget)?;
    let mut curves: Vec<Multicurve> = all
        .par_iter()
        .filter_map(|w| {
            let small: Vec<usize> = w.iter().map(|&x| x as usize).collect();
            if small.iter().all(|&x| x == 0) {
                return None;
            }
            let graph = crate::multicurve::trace::ArcGraph::build(tri, &small);
            let cycles = graph.cycles();
            if cycles.len() != 1 {
                return None;
            }
            let coords = NormalCoords::from_parts_unchecked(tri.clone(), w.iter().map(|&x| BigUint::from(x)).collect());
            Multicurve::try_from(coords).ok()
        })
        .collect();
    curves.sort();
    Ok(curves)
}

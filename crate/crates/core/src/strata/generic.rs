//! Finite stratified sets given by an explicit order relation.

use serde::Serialize;

use crate::error::{Error, Result};

/// Indices `0..n` with relations `(a, b)` meaning stratum `b` lies strictly
/// below stratum `a`. The relation need not be transitively closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericStratifiedSet {
    n: usize,
    below: Vec<Vec<usize>>,
}

impl GenericStratifiedSet {
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut below = vec![Vec::new(); n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("relation ({a}, {b}) outside 0..{n}")));
            }
            below[a].push(b);
        }
        for l in &mut below {
            l.sort_unstable();
            l.dedup();
        }
        Ok(GenericStratifiedSet { n, below })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Longest-chain depth of every index.
    pub fn depths(&self) -> Result<Vec<usize>> {
        // 0 unvisited, 1 on the stack, 2 done
        let mut state = vec![0u8; self.n];
        let mut depth = vec![0usize; self.n];
        for root in 0..self.n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&w) = self.below[v].get(*next) {
                    *next += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return Err(Error::CycleDetected { index: w }),
                        _ => {}
                    }
                } else {
                    depth[v] = self.below[v].iter().map(|&w| depth[w] + 1).max().unwrap_or(0);
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        Ok(depth)
    }

    /// Strict order after transitive closure: `reach[a][b]` iff `b < a`.
    pub fn closure(&self) -> Result<Vec<Vec<bool>>> {
        let depths = self.depths()?;
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| depths[v]);
        let mut reach = vec![vec![false; self.n]; self.n];
        for &v in &order {
            for &w in &self.below[v] {
                reach[v][w] = true;
                let row = reach[w].clone();
                for (x, y) in reach[v].iter_mut().zip(row) {
                    *x |= y;
                }
            }
        }
        Ok(reach)
    }
}

/// Length of the longest descending chain starting at `i`.
pub fn generic_depth(g: &GenericStratifiedSet, i: usize) -> Result<usize> {
    if i >= g.n {
        return Err(Error::InvalidInput(format!("index {i} outside 0..{}", g.n)));
    }
    Ok(g.depths()?[i])
}

/// Supremum of the depths; zero for the empty set.
pub fn max_depth(g: &GenericStratifiedSet) -> Result<usize> {
    Ok(g.depths()?.into_iter().max().unwrap_or(0))
}

/// Whether `sigma` is an order automorphism: a bijection such that `b < a`
/// iff `sigma(b) < sigma(a)`.
pub fn check_poset_automorphism(g: &GenericStratifiedSet, sigma: &[usize]) -> Result<bool> {
    if sigma.len() != g.n {
        return Err(Error::NotBijective);
    }
    let mut hit = vec![false; g.n];
    for &s in sigma {
        if s >= g.n || hit[s] {
            return Err(Error::NotBijective);
        }
        hit[s] = true;
    }
    let reach = g.closure()?;
    Ok((0..g.n).all(|a| (0..g.n).all(|b| reach[a][b] == reach[sigma[a]][sigma[b]])))
}

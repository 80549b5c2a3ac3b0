//! Named curves on the fixture surfaces, found by enumeration and pinned here
//! so that tests and the command line agree on them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multicurve::{validate, Multicurve};
use crate::surface::{fixture, Triangulation};

struct Entry {
    pants: &'static [&'static [u64]],
    separating: Option<&'static [u64]>,
    twists: &'static [&'static [u64]],
}

fn entry(name: &str) -> Result<Entry> {
    Ok(match name {
        "s_1_1" => Entry { pants: &[&[0, 1, 1]], separating: None, twists: &[&[0, 1, 1], &[1, 0, 1]] },
        "s_0_5" => Entry {
            pants: &[&[0, 0, 1, 0, 1, 0, 1, 0, 1], &[1, 0, 1, 0, 0, 1, 0, 1, 0]],
            separating: Some(&[0, 0, 1, 0, 1, 0, 1, 0, 1]),
            twists: &[
                &[0, 0, 1, 0, 1, 0, 1, 0, 1],
                &[0, 1, 0, 0, 1, 1, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 1, 1, 1],
                &[1, 0, 0, 1, 0, 1, 1, 1, 1],
                &[1, 0, 1, 0, 0, 1, 0, 1, 0],
            ],
        },
        "s_1_2" => Entry {
            pants: &[&[0, 1, 1, 0, 0, 1], &[0, 1, 1, 1, 1, 0]],
            separating: Some(&[2, 2, 2, 0, 2, 2]),
            twists: &[
                &[0, 1, 1, 0, 0, 1],
                &[0, 1, 1, 1, 1, 0],
                &[1, 0, 1, 0, 1, 1],
                &[1, 0, 1, 1, 0, 0],
                &[1, 1, 0, 0, 1, 0],
                &[1, 1, 0, 1, 0, 1],
            ],
        },
        "s_2_1" => Entry {
            pants: &[
                &[0, 0, 0, 1, 0, 0, 0, 0, 1],
                &[0, 0, 2, 2, 0, 0, 0, 2, 2],
                &[1, 0, 0, 0, 1, 0, 0, 0, 0],
                &[2, 2, 0, 0, 2, 2, 0, 0, 0],
            ],
            separating: Some(&[2, 2, 0, 0, 2, 2, 0, 0, 0]),
            twists: &[
                &[0, 0, 0, 1, 0, 0, 0, 0, 1],
                &[0, 0, 1, 0, 0, 0, 0, 1, 1],
                &[0, 0, 1, 1, 0, 0, 0, 1, 0],
                &[0, 1, 0, 0, 1, 1, 0, 0, 0],
                &[1, 0, 0, 0, 1, 0, 0, 0, 0],
                &[1, 1, 0, 0, 0, 1, 0, 0, 0],
            ],
        },
        _ => return Err(Error::UnknownFixture(name.to_string())),
    })
}

fn curves(tri: &Arc<Triangulation>, list: &[&[u64]]) -> Result<Vec<Multicurve>> {
    list.iter().map(|w| validate(tri, crate::multicurve::big(w))).collect()
}

/// A pants decomposition (3g-3+n disjoint curves) of small total weight.
pub fn pants_decomposition(name: &str) -> Result<Vec<Multicurve>> {
    curves(&fixture(name)?, entry(name)?.pants)
}

/// A separating curve, if the surface has one.
pub fn separating_curve(name: &str) -> Result<Option<Multicurve>> {
    let tri = fixture(name)?;
    entry(name)?.separating.map(|w| validate(&tri, crate::multicurve::big(w))).transpose()
}

/// Cores of the built-in twist generators.
pub fn twist_curves(name: &str) -> Result<Vec<Multicurve>> {
    curves(&fixture(name)?, entry(name)?.twists)
}

/// The curve of slope `p/q` on the once-punctured torus fixture. Its edges
/// have slopes 0/1, 1/0 and 1/1, and a curve meets an edge of slope `r/s`
/// in `|ps - qr|` points.
pub fn torus_slope(p: i64, q: i64) -> Result<Multicurve> {
    let tri = fixture("s_1_1")?;
    let w: Vec<u64> = [(0, 1), (1, 0), (1, 1)].iter().map(|&(r, s)| (p * s - q * r).unsigned_abs()).collect();
    validate(&tri, crate::multicurve::big(&w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicurve::{cut_invariants, is_connected, is_disjoint};
    use crate::surface::FIXTURE_NAMES;

    #[test]
    fn pants_are_maximal_disjoint_families() {
        for name in FIXTURE_NAMES {
            let p = pants_decomposition(name).unwrap();
            assert_eq!(p.len() as i64, fixture(name).unwrap().signature().complexity(), "{name}");
            for (i, a) in p.iter().enumerate() {
                assert!(is_connected(a, 1000).unwrap());
                for b in &p[i + 1..] {
                    assert!(a != b && is_disjoint(a, b, 1000).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn separating_curves_separate() {
        for name in FIXTURE_NAMES {
            if let Some(c) = separating_curve(name).unwrap() {
                assert!(cut_invariants(&c, 1000).unwrap().separating, "{name}");
            }
        }
        assert!(separating_curve("s_1_1").unwrap().is_none());
    }
}

//! Normal coordinates of multicurves, their components, intersections and cuts.

mod arrangement;
pub(crate) mod cells;
mod coords;
mod cut;
mod json;
mod lamination;
pub(crate) mod trace;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::Result;
use crate::surface::Triangulation;

pub use arrangement::intersection_number;
pub use coords::{
    format_weights, strip_peripheral, validate, vertex_link, FlipStep, Multicurve, NormalCoords,
    DEFAULT_WEIGHT_CAP,
};
pub(crate) use coords::{big, transport_weights};
pub use cut::{cut_invariants, is_separating, CutReport, Region};
pub use json::{parse_weights, weights_from_json, weights_to_json, MulticurveJson};
pub use lamination::{lam_intersection, RationalLamination};

/// Split a multicurve into its connected components with multiplicities,
/// sorted by weight vector.
pub fn decompose(m: &Multicurve, cap: u64) -> Result<Vec<(Multicurve, u64)>> {
    let tri = m.triangulation();
    let counts = trace::components(tri, m.weights(), cap)?;
    Ok(to_components(tri, counts))
}

fn to_components(tri: &Arc<Triangulation>, counts: BTreeMap<Vec<usize>, u64>) -> Vec<(Multicurve, u64)> {
    counts
        .into_iter()
        .map(|(w, k)| {
            let weights = w.into_iter().map(BigUint::from).collect();
            let c = NormalCoords::from_parts_unchecked(tri.clone(), weights);
            (Multicurve::from_coords_unchecked(c), k)
        })
        .collect()
}

/// Whether the component count of the multicurve is one.
pub fn is_connected(m: &Multicurve, cap: u64) -> Result<bool> {
    let d = decompose(m, cap)?;
    Ok(d.len() == 1 && d[0].1 == 1)
}

/// Disjointness by normal-form additivity: the components of `a + b` are
/// exactly those of `a` together with those of `b`.
pub fn is_disjoint(a: &Multicurve, b: &Multicurve, cap: u64) -> Result<bool> {
    a.check_frame(b)?;
    let tri = a.triangulation();
    let sum = a.coords().add(b.coords())?;
    let joint = trace::components(tri, sum.weights(), cap)?;
    let mut parts = trace::components(tri, a.weights(), cap)?;
    for (w, k) in trace::components(tri, b.weights(), cap)? {
        *parts.entry(w).or_insert(0) += k;
    }
    Ok(joint == parts)
}

/// The multicurve with the same components, each taken once.
pub fn support_curve(m: &Multicurve, cap: u64) -> Result<Multicurve> {
    let tri = m.triangulation();
    let mut w = vec![BigUint::from(0u32); tri.edge_count()];
    for (c, _) in decompose(m, cap)? {
        for (x, y) in w.iter_mut().zip(c.weights()) {
            *x += y;
        }
    }
    Ok(Multicurve::from_coords_unchecked(NormalCoords::from_parts_unchecked(tri.clone(), w)))
}

/// Sum of pairwise disjoint multicurves.
pub fn sum(tri: &Arc<Triangulation>, parts: &[&Multicurve]) -> Result<Multicurve> {
    let mut acc = NormalCoords::zero(tri.clone());
    for p in parts {
        acc = acc.add(p.coords())?;
    }
    Multicurve::try_from(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::fixture;

    fn curve(name: &str, w: &[u64]) -> Multicurve {
        validate(&fixture(name).unwrap(), big(w)).unwrap()
    }

    fn weights(d: &[(Multicurve, u64)]) -> Vec<(Vec<BigUint>, u64)> {
        d.iter().map(|(c, k)| (c.weights().to_vec(), *k)).collect()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&curve("s_1_1", &[0, 2, 2]), 100).unwrap();
        assert_eq!(weights(&d), vec![(big(&[0, 1, 1]), 2)]);
        let d = decompose(&curve("s_1_1", &[1, 1, 2]), 100).unwrap();
        assert_eq!(weights(&d), vec![(big(&[1, 1, 2]), 1)]);
        assert!(decompose(&curve("s_1_1", &[0, 0, 0]), 100).unwrap().is_empty());
    }

    #[test]
    fn decompose_is_idempotent() {
        let m = curve("s_1_1", &[2, 5, 3]);
        for (c, _) in decompose(&m, 100).unwrap() {
            assert_eq!(weights(&decompose(&c, 100).unwrap()), vec![(c.weights().to_vec(), 1)]);
        }
    }

    #[test]
    fn disjointness_examples() {
        let a = curve("s_1_1", &[0, 1, 1]);
        let b = curve("s_1_1", &[1, 0, 1]);
        assert!(is_disjoint(&a, &a, 100).unwrap());
        assert!(!is_disjoint(&a, &b, 100).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let a = curve("s_1_1", &[0, 1, 1]);
        let b = curve("s_1_1", &[1, 0, 1]);
        assert_eq!(intersection_number(&a, &b, 100).unwrap(), BigUint::from(1u32));
        assert_eq!(intersection_number(&a, &a, 100).unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn cap_is_enforced() {
        let m = curve("s_1_1", &[0, 2, 2]);
        assert!(matches!(decompose(&m, 1), Err(crate::Error::WeightCapExceeded { .. })));
    }
}

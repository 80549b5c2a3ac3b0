mod common;

use lamistrat::multicurve::{
    cut_invariants, decompose, intersection_number, is_disjoint, validate, Multicurve,
};
use lamistrat::surface::fixture;
use num_bigint::BigUint;

use common::{big, det, slope_weights, slopes};

const CAP: u64 = 10_000;

fn torus_curve(p: i64, q: i64) -> Multicurve {
    validate(&fixture("s_1_1").unwrap(), big(&slope_weights(p, q))).unwrap()
}

#[test]
fn torus_slopes_are_connected_curves() {
    for (p, q) in slopes(8) {
        let c = torus_curve(p, q);
        let d = decompose(&c, CAP).unwrap();
        assert_eq!(d.len(), 1, "slope {p}/{q}");
        assert_eq!(d[0].1, 1);
        let cut = cut_invariants(&c, CAP).unwrap();
        assert!(!cut.separating);
    }
}

#[test]
fn torus_intersections_match_determinant() {
    let all = slopes(8);
    let curves: Vec<_> = all.iter().map(|&(p, q)| torus_curve(p, q)).collect();
    for (a, &(p, q)) in curves.iter().zip(&all) {
        for (b, &(r, s)) in curves.iter().zip(&all) {
            let expected = det(p, q, r, s);
            let got = intersection_number(a, b, CAP).unwrap();
            assert_eq!(got, BigUint::from(expected), "{p}/{q} vs {r}/{s}");
            assert_eq!(is_disjoint(a, b, CAP).unwrap(), expected == 0);
        }
    }
}

#[test]
fn multiples_scale_intersections() {
    let tri = fixture("s_1_1").unwrap();
    let a = validate(&tri, big(&[0, 3, 3])).unwrap();
    let b = torus_curve(2, 3);
    assert_eq!(intersection_number(&a, &b, CAP).unwrap(), BigUint::from(3 * det(0, 1, 2, 3)));
}

//! Dimension counts attached to a signature.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dimensions {
    pub ml: i64,
    pub pml: i64,
    /// Unmeasured laminations near a simple closed curve.
    pub u_curve: i64,
    /// Near a minimal lamination filling a subsurface of genus `g̃` with `ñ`
    /// cusps and `p` boundary components, when those were given.
    pub u_minimal: Option<i64>,
    /// The minimal-lamination count is negative, so it describes no space.
    pub degenerate: bool,
}

/// `6g-6+2n`, `6g-7+2n`, `6g-8+2n` and, given `(g̃, ñ, p)`, `6g̃-12+2ñ+3p`
/// taken literally.
pub fn dim_formulas(g: i64, n: i64, minimal: Option<(i64, i64, i64)>) -> Dimensions {
    let u_minimal = minimal.map(|(gt, nt, p)| 6 * gt - 12 + 2 * nt + 3 * p);
    Dimensions {
        ml: 6 * g - 6 + 2 * n,
        pml: 6 * g - 7 + 2 * n,
        u_curve: 6 * g - 8 + 2 * n,
        u_minimal,
        degenerate: u_minimal.is_some_and(|d| d < 0),
    }
}

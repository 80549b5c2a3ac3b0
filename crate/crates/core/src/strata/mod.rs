//! Strata of rational measured laminations indexed by their supports, the
//! inclusion order, depth, and a generic engine for finite stratified sets.

mod dims;
mod generic;
mod poset;

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::multicurve::{decompose, is_disjoint, weights_to_json, Multicurve, RationalLamination};
use crate::surface::Triangulation;

pub use dims::{dim_formulas, Dimensions};
pub use generic::{check_poset_automorphism, generic_depth, max_depth, GenericStratifiedSet};
pub use poset::{
    disjointness,
    check_stratification_axioms, enumerate_strata, AxiomReport, EnumerateOptions, StrataPoset, Stratum,
};

/// Pairwise disjoint, distinct connected curves in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support {
    components: Vec<Multicurve>,
}

impl Support {
    /// Check and sort a family of curves.
    pub fn new(tri: &Arc<Triangulation>, mut components: Vec<Multicurve>, cap: u64) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyLamination);
        }
        for c in &components {
            if **c.triangulation() != **tri {
                return Err(Error::FrameMismatch);
            }
            let d = decompose(c, cap)?;
            if d.len() != 1 || d[0].1 != 1 {
                return Err(Error::NotConnected);
            }
        }
        components.sort();
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                if a == b || !is_disjoint(a, b, cap)? {
                    return Err(Error::NotAMulticurve);
                }
            }
        }
        Ok(Support { components })
    }

    /// Components of a multicurve, multiplicities dropped.
    pub fn of_multicurve(m: &Multicurve, cap: u64) -> Result<Self> {
        let components: Vec<Multicurve> = decompose(m, cap)?.into_iter().map(|(c, _)| c).collect();
        if components.is_empty() {
            return Err(Error::EmptyLamination);
        }
        Ok(Support { components })
    }

    /// Trusted constructor for families already known to be canonical.
    pub(crate) fn from_sorted(components: Vec<Multicurve>) -> Self {
        debug_assert!(components.windows(2).all(|w| w[0] < w[1]));
        Support { components }
    }

    pub fn components(&self) -> &[Multicurve] {
        &self.components
    }

    /// Number of components `k`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn depth(&self) -> usize {
        depth(self)
    }

    pub fn to_json(&self) -> Value {
        json!(self.components.iter().map(|c| weights_to_json(c.weights())).collect::<Vec<_>>())
    }
}

/// The support of a lamination: its component curves with weights forgotten.
pub fn support_of(l: &RationalLamination) -> Result<Support> {
    if l.is_empty() {
        return Err(Error::EmptyLamination);
    }
    Ok(Support { components: l.components().iter().map(|(c, _)| c.clone()).collect() })
}

/// `k - 1` for a support with `k` components.
pub fn depth(s: &Support) -> usize {
    s.len().saturating_sub(1)
}

/// Every component of `s` is a component of `t`.
pub fn leq(s: &Support, t: &Support) -> Result<bool> {
    if let (Some(a), Some(b)) = (s.components.first(), t.components.first()) {
        a.check_frame(b)?;
    }
    Ok(s.components.iter().all(|c| t.components.binary_search(c).is_ok()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::pants_decomposition;
    use crate::multicurve::{big, validate};
    use crate::surface::fixture;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ratio(p: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(p))
    }

    #[test]
    fn support_forgets_weights() {
        let tri = fixture("s_1_1").unwrap();
        let a = validate(&tri, big(&[0, 1, 1])).unwrap();
        let l = RationalLamination::new(tri.clone(), vec![(a.clone(), ratio(3))], 100).unwrap();
        let s = support_of(&l).unwrap();
        assert_eq!(s.components(), [a]);
        assert_eq!(support_of(&l.scaled(&ratio(7)).unwrap()).unwrap(), s);
        assert_eq!(support_of(&RationalLamination::empty(tri)), Err(Error::EmptyLamination));
    }

    #[test]
    fn pants_depths() {
        for (name, d) in [("s_0_5", 1), ("s_1_2", 1), ("s_2_1", 3)] {
            let tri = fixture(name).unwrap();
            let s = Support::new(&tri, pants_decomposition(name).unwrap(), 1000).unwrap();
            assert_eq!(depth(&s), d, "{name}");
        }
    }

    #[test]
    fn order_on_sub_supports() {
        let tri = fixture("s_0_5").unwrap();
        let p = pants_decomposition("s_0_5").unwrap();
        let one = Support::new(&tri, vec![p[0].clone()], 100).unwrap();
        let two = Support::new(&tri, p.clone(), 100).unwrap();
        assert!(leq(&one, &two).unwrap());
        assert!(!leq(&two, &one).unwrap());
        assert!(leq(&two, &two).unwrap());
    }

    #[test]
    fn rejects_crossing_families() {
        let tri = fixture("s_1_1").unwrap();
        let a = validate(&tri, big(&[0, 1, 1])).unwrap();
        let b = validate(&tri, big(&[1, 0, 1])).unwrap();
        assert_eq!(Support::new(&tri, vec![a, b], 100), Err(Error::NotAMulticurve));
        assert_eq!(Support::new(&tri, vec![], 100), Err(Error::EmptyLamination));
    }
}

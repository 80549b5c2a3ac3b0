//! Measured laminations at rational points: weighted disjoint curves.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::surface::Triangulation;

use super::coords::{same_frame, Multicurve};
use super::json::{weights_from_json, weights_to_json};
use super::{decompose, intersection_number, is_disjoint, validate};

/// A finite sum of pairwise disjoint, distinct connected curves with positive
/// rational coefficients, sorted by weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLamination {
    tri: Arc<Triangulation>,
    components: Vec<(Multicurve, BigRational)>,
}

impl RationalLamination {
    pub fn empty(tri: Arc<Triangulation>) -> Self {
        RationalLamination { tri, components: Vec::new() }
    }

    pub fn new(tri: Arc<Triangulation>, mut components: Vec<(Multicurve, BigRational)>, cap: u64) -> Result<Self> {
        for (c, x) in &components {
            if !same_frame(c.triangulation(), &tri) {
                return Err(Error::FrameMismatch);
            }
            if !x.is_positive() {
                return Err(Error::InvalidInput(format!("coefficient {x} is not positive")));
            }
            let d = decompose(c, cap)?;
            if d.len() != 1 || d[0].1 != 1 {
                return Err(Error::NotConnected);
            }
        }
        components.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (a, _)) in components.iter().enumerate() {
            for (b, _) in &components[i + 1..] {
                if a == b || !is_disjoint(a, b, cap)? {
                    return Err(Error::NotAMulticurve);
                }
            }
        }
        Ok(RationalLamination { tri, components })
    }

    /// Components of an integral multicurve weighted by multiplicity.
    pub fn from_multicurve(m: &Multicurve, cap: u64) -> Result<Self> {
        let components = decompose(m, cap)?
            .into_iter()
            .map(|(c, k)| (c, BigRational::from_integer(BigInt::from(k))))
            .collect();
        Ok(RationalLamination { tri: m.triangulation().clone(), components })
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn components(&self) -> &[(Multicurve, BigRational)] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scaled(&self, k: &BigRational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::InvalidInput(format!("scale {k} is not positive")));
        }
        let components = self.components.iter().map(|(c, x)| (c.clone(), x * k)).collect();
        Ok(RationalLamination { tri: self.tri.clone(), components })
    }

    /// Sum with a lamination whose support is disjoint from this one, merging
    /// coefficients of shared curves.
    pub fn disjoint_sum(&self, other: &Self, cap: u64) -> Result<Self> {
        if !same_frame(&self.tri, &other.tri) {
            return Err(Error::FrameMismatch);
        }
        let mut merged = self.components.clone();
        for (c, x) in &other.components {
            match merged.iter_mut().find(|(d, _)| d == c) {
                Some((_, y)) => *y += x,
                None => merged.push((c.clone(), x.clone())),
            }
        }
        RationalLamination::new(self.tri.clone(), merged, cap)
    }

    /// Integral multicurve with the same support (each curve once).
    pub fn support_weights(&self) -> Vec<BigUint> {
        let mut w = vec![BigUint::zero(); self.tri.edge_count()];
        for (c, _) in &self.components {
            for (x, y) in w.iter_mut().zip(c.weights()) {
                *x += y;
            }
        }
        w
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(c, x)| json!({"weights": weights_to_json(c.weights()), "coeff": format_ratio(x)}))
            .collect();
        json!({ "components": comps })
    }

    pub fn from_json(tri: &Arc<Triangulation>, v: &Value, cap: u64) -> Result<Self> {
        let bad = || Error::InvalidInput("lamination JSON needs {\"components\": [{\"weights\", \"coeff\"}]}".into());
        let list = v.get("components").and_then(Value::as_array).ok_or_else(bad)?;
        let mut components = Vec::new();
        for item in list {
            let w = item.get("weights").and_then(Value::as_array).ok_or_else(bad)?;
            let c = validate(tri, weights_from_json(w)?)?;
            let x = match item.get("coeff") {
                Some(Value::String(s)) => parse_ratio(s)?,
                Some(Value::Number(n)) if n.is_u64() => BigRational::from_integer(BigInt::from(n.as_u64().unwrap())),
                _ => return Err(bad()),
            };
            components.push((c, x));
        }
        RationalLamination::new(tri.clone(), components, cap)
    }
}

pub fn format_ratio(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}/1", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("coefficient {s:?} is not of the form p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Weight-bilinear extension of the curve intersection number.
pub fn lam_intersection(a: &RationalLamination, b: &RationalLamination, cap: u64) -> Result<BigRational> {
    if !same_frame(&a.tri, &b.tri) {
        return Err(Error::FrameMismatch);
    }
    let mut total = BigRational::zero();
    for (c, x) in &a.components {
        for (d, y) in &b.components {
            let i = intersection_number(c, d, cap)?;
            if !i.is_zero() {
                total += x * y * BigRational::from_integer(BigInt::from(i));
            }
        }
    }
    Ok(total)
}

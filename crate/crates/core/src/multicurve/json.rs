//! JSON forms of weight vectors and multicurves.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// `{"triangulation": <fixture name or path>, "weights": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MulticurveJson {
    pub triangulation: String,
    pub weights: Vec<Value>,
}

/// Weights that fit in `u64` become numbers, larger ones strings.
pub fn weights_to_json(w: &[BigUint]) -> Vec<Value> {
    w.iter()
        .map(|x| match x.to_u64() {
            Some(v) => Value::from(v),
            None => Value::String(x.to_string()),
        })
        .collect()
}

pub fn weights_from_json(values: &[Value]) -> Result<Vec<BigUint>> {
    values
        .iter()
        .map(|v| match v {
            Value::Number(n) => n
                .as_u64()
                .map(BigUint::from)
                .ok_or_else(|| Error::InvalidInput(format!("weight {n} is not a nonnegative integer"))),
            Value::String(s) => s
                .trim()
                .parse::<BigUint>()
                .map_err(|_| Error::InvalidInput(format!("weight {s:?} is not a nonnegative integer"))),
            other => Err(Error::InvalidInput(format!("weight {other} is not a nonnegative integer"))),
        })
        .collect()
}

/// Accepts `1,2,3`, `(1,2,3)` or a JSON array.
pub fn parse_weights(text: &str) -> Result<Vec<BigUint>> {
    let t = text.trim();
    if t.starts_with('[') {
        let values: Vec<Value> =
            serde_json::from_str(t).map_err(|e| Error::InvalidInput(format!("weights: {e}")))?;
        return weights_from_json(&values);
    }
    let t = t.trim_start_matches('(').trim_end_matches(')');
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|s| {
            s.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::InvalidInput(format!("weight {:?} is not a nonnegative integer", s.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_large() {
        let w = vec![BigUint::from(3u32), BigUint::from(u64::MAX) * 4u32];
        let j = weights_to_json(&w);
        assert!(j[0].is_number() && j[1].is_string());
        assert_eq!(weights_from_json(&j).unwrap(), w);
    }

    #[test]
    fn parse_forms() {
        let w = vec![BigUint::from(0u32), BigUint::from(1u32), BigUint::from(1u32)];
        assert_eq!(parse_weights("0,1,1").unwrap(), w);
        assert_eq!(parse_weights(" (0, 1,1)").unwrap(), w);
        assert_eq!(parse_weights("[0,1,\"1\"]").unwrap(), w);
        assert!(parse_weights("0,-1,1").is_err());
        assert!(parse_weights("[0.5]").is_err());
    }
}

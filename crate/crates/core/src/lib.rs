pub mod catalog;
pub mod curvecomplex;
pub mod enumerate;
pub mod error;
pub mod mcg;
pub mod strata;
pub mod multicurve;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};

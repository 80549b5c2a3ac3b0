use std::sync::Arc;

use crate::error::{Error, Result};

use super::Triangulation;

/// Built-in surfaces, in the order `fixtures` lists them.
pub const FIXTURE_NAMES: [&str; 4] = ["s_1_1", "s_0_5", "s_1_2", "s_2_1"];

const S_1_1: &str = include_str!("../../fixtures/s_1_1.json");
const S_0_5: &str = include_str!("../../fixtures/s_0_5.json");
const S_1_2: &str = include_str!("../../fixtures/s_1_2.json");
const S_2_1: &str = include_str!("../../fixtures/s_2_1.json");

pub fn fixture_names() -> &'static [&'static str] {
    &FIXTURE_NAMES
}

/// Load a built-in triangulation by name (`s_<genus>_<punctures>`).
pub fn fixture(name: &str) -> Result<Arc<Triangulation>> {
    let text = match name {
        "s_1_1" => S_1_1,
        "s_0_5" => S_0_5,
        "s_1_2" => S_1_2,
        "s_2_1" => S_2_1,
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    Triangulation::from_json(text).map(Arc::new)
}

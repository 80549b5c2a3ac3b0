//! Built-in generators of the fixture surfaces: twists about the catalog
//! curves and one orientation-reversing symmetry.

use std::sync::Arc;

use crate::catalog::twist_curves;
use crate::error::{Error, Result};
use crate::multicurve::{format_weights, DEFAULT_WEIGHT_CAP};
use crate::surface::{fixture, Triangulation};

use super::{twist, MappingClass, Move};

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub class: MappingClass,
}

/// The first orientation-reversing self-isomorphism of `tri`, as a relabeling.
pub fn reflection(tri: &Arc<Triangulation>) -> Result<MappingClass> {
    let iso = tri
        .isomorphisms(tri, true)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidInput("triangulation has no orientation-reversing symmetry".into()))?;
    MappingClass::new(tri.clone(), vec![Move::Relabel { edges: iso.edge_map, reverse: true }])
}

/// Twists `T(c)` about each catalog curve, then the reflection `R`.
pub fn builtin_generators(name: &str) -> Result<Vec<Generator>> {
    let tri = fixture(name)?;
    let mut out = Vec::new();
    for c in twist_curves(name)? {
        let class = twist(&c, DEFAULT_WEIGHT_CAP)?;
        out.push(Generator { name: format!("T{}", format_weights(c.weights())), class });
    }
    out.push(Generator { name: "R".into(), class: reflection(&tri)? });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicurve::{big, validate};

    #[test]
    fn torus_generators() {
        let g = builtin_generators("s_1_1").unwrap();
        let names: Vec<&str> = g.iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, ["T(0,1,1)", "T(1,0,1)", "R"]);
        assert!(g[2].class.is_orientation_reversing());
        assert!(!g[0].class.is_orientation_reversing());
    }

    #[test]
    fn reflection_is_an_involution_up_to_action() {
        let tri = fixture("s_1_2").unwrap();
        let r = reflection(&tri).unwrap();
        let m = validate(&tri, big(&[1, 0, 1, 0, 1, 1])).unwrap();
        let image = r.apply_curve(&m).unwrap();
        assert_eq!(r.invert().apply_curve(&image).unwrap(), m);
    }
}

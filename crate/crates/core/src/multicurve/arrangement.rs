//! Geometric intersection numbers by bigon removal.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::Result;

use super::cells::{family_chords, surface_faces, Layout};
use super::coords::{small_weights, Multicurve};

/// Minimal number of transverse crossings between two multicurves.
///
/// The normal representatives are placed side by side on every edge and
/// innermost bigons are pushed across edges until none remain.
pub fn intersection_number(a: &Multicurve, b: &Multicurve, cap: u64) -> Result<BigUint> {
    a.check_frame(b)?;
    let tri = a.triangulation();
    let weights = vec![small_weights(a.weights(), cap)?, small_weights(b.weights(), cap)?];
    let chords = vec![family_chords(tri, &weights[0]), family_chords(tri, &weights[1])];
    let mut layout = Layout::stacked(&weights);
    loop {
        let faces = surface_faces(tri, &weights, &chords, &layout);
        let mut used_corners = BTreeSet::new();
        let mut used_points = BTreeSet::new();
        let mut swaps = Vec::new();
        for face in &faces.faces {
            if face.chi != 1
                || !face.punctures.is_empty()
                || face.corners.len() != 2
                || face.corners[0] == face.corners[1]
            {
                continue;
            }
            if face.corners.iter().any(|c| used_corners.contains(c)) {
                continue;
            }
            let points: Vec<(usize, usize)> =
                face.segments.iter().flat_map(|&(e, k)| [(e, k - 1), (e, k)]).collect();
            if points.iter().any(|p| used_points.contains(p)) {
                continue;
            }
            used_corners.extend(face.corners.iter().copied());
            used_points.extend(points);
            swaps.extend(face.segments.iter().map(|&(e, k)| (e, k - 1)));
        }
        if swaps.is_empty() {
            return Ok(BigUint::from(faces.crossing_count));
        }
        for (e, k) in swaps {
            debug_assert_ne!(layout.order[e][k].0, layout.order[e][k + 1].0);
            layout.swap(e, k);
        }
    }
}

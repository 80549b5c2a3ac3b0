//! Topology of the surface cut along a curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cells::{family_chords, surface_faces, Layout};
use super::coords::{small_weights, Multicurve};
use super::trace::ArcGraph;

/// One complementary region of a cut: genus, punctures, boundary circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Region {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

impl Region {
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64 - self.boundary as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    /// Regions sorted in decreasing order.
    pub regions: Vec<Region>,
    pub separating: bool,
}

/// Cut the surface along a connected curve.
pub fn cut_invariants(c: &Multicurve, cap: u64) -> Result<CutReport> {
    let tri = c.triangulation();
    let w = small_weights(c.weights(), cap)?;
    let graph = ArcGraph::build(tri, &w);
    let cycles = graph.cycles();
    if cycles.len() != 1 {
        return Err(Error::NotConnected);
    }
    let weights = vec![w.clone()];
    let chords = vec![family_chords(tri, &w)];
    let layout = Layout::stacked(&weights);
    let faces = surface_faces(tri, &weights, &chords, &layout);

    // Both sides of the curve at one of its points on edge e.
    let p = cycles[0][0];
    let e = graph.edge_of[p];
    let j = p - graph.offset[e];
    let (t, i) = tri.slot_of(crate::surface::SignedEdge::pos(e));
    let left = faces.gap_face[t][i][j];
    let right = faces.gap_face[t][i][j + 1];

    let mut boundary = vec![0u32; faces.faces.len()];
    boundary[left] += 1;
    boundary[right] += 1;
    let mut regions: Vec<Region> = faces
        .faces
        .iter()
        .zip(&boundary)
        .map(|(f, &b)| {
            let n = f.punctures.len() as i64;
            let twice_g = 2 - f.chi - n - b as i64;
            debug_assert!(twice_g >= 0 && twice_g % 2 == 0);
            Region { genus: (twice_g / 2) as u32, punctures: n as u32, boundary: b }
        })
        .collect();
    regions.sort_unstable_by(|a, b| b.cmp(a));
    let separating = regions.len() == 2;
    Ok(CutReport { regions, separating })
}

pub fn is_separating(c: &Multicurve, cap: u64) -> Result<bool> {
    Ok(cut_invariants(c, cap)?.separating)
}

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::surface::{FlipRecord, Triangulation};

/// Per-edge cap used before any O(weight) combinatorial walk.
pub const DEFAULT_WEIGHT_CAP: u64 = 1_000_000;

/// Intersection counts of a normal multicurve with the edges of a triangulation.
///
/// Holds the parity and triangle-inequality conditions in every triangle, so
/// corner counts are nonnegative integers. Vertex-linking components are
/// allowed here; [`Multicurve`] excludes them.
#[derive(Clone)]
pub struct NormalCoords {
    tri: Arc<Triangulation>,
    weights: Vec<BigUint>,
}

impl fmt::Debug for NormalCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalCoords({})", format_weights(&self.weights))
    }
}

impl PartialEq for NormalCoords {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && same_frame(&self.tri, &other.tri)
    }
}

impl Eq for NormalCoords {}

pub fn format_weights(w: &[BigUint]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn same_frame(a: &Arc<Triangulation>, b: &Arc<Triangulation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

/// Weights as machine integers, refusing anything above `cap`.
pub(crate) fn small_weights(w: &[BigUint], cap: u64) -> Result<Vec<usize>> {
    w.iter()
        .map(|x| match x.to_u64() {
            Some(v) if v <= cap => Ok(v as usize),
            _ => Err(Error::WeightCapExceeded { weight: x.to_string(), cap: cap.to_string() }),
        })
        .collect()
}

fn check_triangles(tri: &Triangulation, w: &[BigUint]) -> Result<()> {
    if w.len() != tri.edge_count() {
        return Err(Error::WeightCount { expected: tri.edge_count(), got: w.len() });
    }
    for (t, sides) in tri.triangles().iter().enumerate() {
        let [x, y, z] = sides.map(|s| &w[s.edge]);
        if (x + y + z).bit(0) {
            return Err(Error::ParityViolation { triangle: t });
        }
        if x > &(y + z) || y > &(z + x) || z > &(x + y) {
            return Err(Error::TriangleInequalityViolation { triangle: t });
        }
    }
    Ok(())
}

impl NormalCoords {
    pub fn new(tri: Arc<Triangulation>, weights: Vec<BigUint>) -> Result<Self> {
        check_triangles(&tri, &weights)?;
        Ok(NormalCoords { tri, weights })
    }

    pub fn from_u64(tri: Arc<Triangulation>, weights: &[u64]) -> Result<Self> {
        NormalCoords::new(tri, big(weights))
    }

    pub fn zero(tri: Arc<Triangulation>) -> Self {
        let weights = vec![BigUint::zero(); tri.edge_count()];
        NormalCoords { tri, weights }
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<BigUint> {
        self.weights
    }

    pub fn total_weight(&self) -> BigUint {
        self.weights.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    pub fn check_frame(&self, other: &NormalCoords) -> Result<()> {
        if same_frame(&self.tri, &other.tri) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn add(&self, other: &NormalCoords) -> Result<NormalCoords> {
        self.check_frame(other)?;
        let weights = self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect();
        Ok(NormalCoords { tri: self.tri.clone(), weights })
    }

    pub fn scaled(&self, k: &BigUint) -> NormalCoords {
        NormalCoords { tri: self.tri.clone(), weights: self.weights.iter().map(|w| w * k).collect() }
    }

    /// Corner counts of triangle `t`; entry `i` counts arcs around corner `i`,
    /// which joins side `i - 1` to side `i`.
    pub fn corner_counts(&self, t: usize) -> [BigUint; 3] {
        corner_counts(&self.tri, &self.weights, t)
    }

    /// Number of vertex-linking components around each puncture.
    pub fn peripheral_multiplicities(&self) -> Vec<BigUint> {
        let mut min: Vec<Option<BigUint>> = vec![None; self.tri.vertex_count()];
        for t in 0..self.tri.triangle_count() {
            let c = self.corner_counts(t);
            for (i, ci) in c.into_iter().enumerate() {
                let v = self.tri.corner_vertex(t, i);
                min[v] = Some(match min[v].take() {
                    Some(m) if m <= ci => m,
                    _ => ci,
                });
            }
        }
        min.into_iter().map(|m| m.unwrap_or_default()).collect()
    }

    /// Re-express these coordinates after flipping `rec.edge`.
    pub fn transport_flip(&self, step: &FlipStep) -> Result<NormalCoords> {
        if !same_frame(&self.tri, &step.source) {
            return Err(Error::FrameMismatch);
        }
        let weights = transport_weights(&self.weights, &step.record);
        Ok(NormalCoords { tri: step.target.clone(), weights })
    }

    pub(crate) fn from_parts_unchecked(tri: Arc<Triangulation>, weights: Vec<BigUint>) -> NormalCoords {
        NormalCoords { tri, weights }
    }
}

pub(crate) fn corner_counts(tri: &Triangulation, w: &[BigUint], t: usize) -> [BigUint; 3] {
    let s = tri.triangle(t);
    let x = [&w[s[0].edge], &w[s[1].edge], &w[s[2].edge]];
    let c = |i: usize| (x[(i + 2) % 3] + x[i] - x[(i + 1) % 3]) >> 1u32;
    [c(0), c(1), c(2)]
}

/// `max(a + c, b + d) - e` on the flipped edge, all other weights unchanged.
pub(crate) fn transport_weights(w: &[BigUint], rec: &FlipRecord) -> Vec<BigUint> {
    let [a, b, c, d] = rec.quad.map(|q| &w[q]);
    let ac = a + c;
    let bd = b + d;
    let m = if ac >= bd { ac } else { bd };
    let mut out = w.to_vec();
    out[rec.edge] = m - &w[rec.edge];
    out
}

/// A flip together with the frames on either side of it.
#[derive(Clone, Debug)]
pub struct FlipStep {
    pub source: Arc<Triangulation>,
    pub target: Arc<Triangulation>,
    pub record: FlipRecord,
}

impl FlipStep {
    pub fn new(source: &Arc<Triangulation>, edge: usize) -> Result<FlipStep> {
        let (target, record) = source.flip(edge)?;
        Ok(FlipStep { source: source.clone(), target: Arc::new(target), record })
    }
}

/// Coordinates of the curve that links puncture `v`: each edge gets the number
/// of its endpoints at `v`.
pub fn vertex_link(tri: &Arc<Triangulation>, v: usize) -> NormalCoords {
    let weights = (0..tri.edge_count())
        .map(|e| {
            let [a, b] = tri.edge_ends(e);
            BigUint::from((a == v) as u32 + (b == v) as u32)
        })
        .collect();
    NormalCoords { tri: tri.clone(), weights }
}

/// An essential multicurve: normal coordinates with no vertex-linking component.
/// The all-zero vector is the empty multicurve.
#[derive(Clone, PartialEq, Eq)]
pub struct Multicurve(NormalCoords);

impl fmt::Debug for Multicurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multicurve({})", format_weights(self.weights()))
    }
}

impl PartialOrd for Multicurve {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multicurve {
    /// Canonical order: lexicographic on weight vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weights().cmp(other.weights())
    }
}

impl std::hash::Hash for Multicurve {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.weights().hash(state);
    }
}

impl Multicurve {
    pub fn coords(&self) -> &NormalCoords {
        &self.0
    }

    pub fn into_coords(self) -> NormalCoords {
        self.0
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.0.weights
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.0.tri
    }

    pub fn total_weight(&self) -> BigUint {
        self.0.total_weight()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn check_frame(&self, other: &Multicurve) -> Result<()> {
        self.0.check_frame(&other.0)
    }

    pub(crate) fn from_coords_unchecked(c: NormalCoords) -> Multicurve {
        Multicurve(c)
    }
}

impl TryFrom<NormalCoords> for Multicurve {
    type Error = Error;

    fn try_from(c: NormalCoords) -> Result<Multicurve> {
        if let Some(v) = c.peripheral_multiplicities().iter().position(|m| !m.is_zero()) {
            return Err(Error::PeripheralComponent { puncture: v });
        }
        Ok(Multicurve(c))
    }
}

/// Check the triangle conditions and essentialness of a weight vector.
pub fn validate(tri: &Arc<Triangulation>, weights: Vec<BigUint>) -> Result<Multicurve> {
    Multicurve::try_from(NormalCoords::new(tri.clone(), weights)?)
}

/// Remove vertex-linking components; returns the essential remainder and the
/// punctures whose links were removed (each listed once).
pub fn strip_peripheral(tri: &Arc<Triangulation>, weights: Vec<BigUint>) -> Result<(Multicurve, Vec<usize>)> {
    let c = NormalCoords::new(tri.clone(), weights)?;
    let mult = c.peripheral_multiplicities();
    let mut w = c.weights;
    let mut stripped = Vec::new();
    for (v, m) in mult.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        stripped.push(v);
        let link = vertex_link(tri, v);
        for (x, l) in w.iter_mut().zip(link.weights()) {
            *x -= l * m;
        }
    }
    let rest = NormalCoords::new(tri.clone(), w)?;
    debug_assert!(rest.peripheral_multiplicities().iter().all(Zero::is_zero));
    Ok((Multicurve(rest), stripped))
}

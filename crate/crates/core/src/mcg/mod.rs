//! Mapping classes as flip words acting on normal coordinates.

mod generators;
mod preservation;
mod twist;

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multicurve::{transport_weights, Multicurve, NormalCoords};
use crate::surface::{check_permutation, FlipRecord, Triangulation};

pub use generators::{builtin_generators, reflection, Generator};
pub use preservation::{verify_preservation, Entry, PreservationReport};
pub use twist::{shorten, twist};

/// One letter of a mapping-class word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    /// Flip an edge; the new diagonal keeps its label.
    Flip(usize),
    /// Rename edge `i` to `edges[i]`; `reverse` also flips the orientation.
    Relabel { edges: Vec<usize>, reverse: bool },
}

#[derive(Clone, Debug)]
enum Step {
    Flip(FlipRecord),
    Relabel(Vec<usize>),
}

/// A word of flips and relabelings that returns to its starting labeled
/// triangulation, hence acts on coordinates in that frame.
#[derive(Clone, Debug)]
pub struct MappingClass {
    source: Arc<Triangulation>,
    moves: Vec<Move>,
    steps: Vec<Step>,
    reversing: bool,
}

impl PartialEq for MappingClass {
    fn eq(&self, other: &Self) -> bool {
        self.moves == other.moves && *self.source == *other.source
    }
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    moves: Vec<Move>,
}

/// Whether two labeled triangulations agree up to the identity edge map.
pub(crate) fn same_labels(a: &Triangulation, b: &Triangulation) -> bool {
    let id: Vec<usize> = (0..a.edge_count()).collect();
    a == b || a.is_isomorphic_via(b, &id, false)
}

impl MappingClass {
    pub fn identity(source: Arc<Triangulation>) -> Self {
        MappingClass { source, moves: Vec::new(), steps: Vec::new(), reversing: false }
    }

    /// Check that the word is performable and closes up.
    pub fn new(source: Arc<Triangulation>, moves: Vec<Move>) -> Result<Self> {
        let mut cur = (*source).clone();
        let mut steps = Vec::with_capacity(moves.len());
        let mut reversing = false;
        for m in &moves {
            match m {
                Move::Flip(e) => {
                    let (next, rec) = cur.flip(*e)?;
                    steps.push(Step::Flip(rec));
                    cur = next;
                }
                Move::Relabel { edges, reverse } => {
                    check_permutation(edges, cur.edge_count())?;
                    cur = cur.relabeled(edges, *reverse)?;
                    steps.push(Step::Relabel(edges.clone()));
                    reversing ^= reverse;
                }
            }
        }
        if !same_labels(&cur, &source) {
            return Err(Error::WordNotClosed);
        }
        Ok(MappingClass { source, moves, steps, reversing })
    }

    pub fn source(&self) -> &Arc<Triangulation> {
        &self.source
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.reversing
    }

    pub fn is_identity_word(&self) -> bool {
        self.moves.is_empty()
    }

    fn check_source(&self, tri: &Arc<Triangulation>) -> Result<()> {
        if Arc::ptr_eq(tri, &self.source) || same_labels(tri, &self.source) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Image weights, refusing any intermediate weight above `cap`.
    pub fn apply_weights(&self, w: &[BigUint], cap: Option<&BigUint>) -> Result<Vec<BigUint>> {
        let mut w = w.to_vec();
        for s in &self.steps {
            match s {
                Step::Flip(rec) => {
                    w = transport_weights(&w, rec);
                    if let Some(cap) = cap {
                        if w[rec.edge] > *cap {
                            return Err(Error::WeightCapExceeded {
                                weight: w[rec.edge].to_string(),
                                cap: cap.to_string(),
                            });
                        }
                    }
                }
                Step::Relabel(perm) => {
                    let mut next = w.clone();
                    for (i, x) in w.into_iter().enumerate() {
                        next[perm[i]] = x;
                    }
                    w = next;
                }
            }
        }
        Ok(w)
    }

    pub fn apply(&self, m: &NormalCoords) -> Result<NormalCoords> {
        self.apply_capped(m, None)
    }

    pub fn apply_capped(&self, m: &NormalCoords, cap: Option<&BigUint>) -> Result<NormalCoords> {
        self.check_source(m.triangulation())?;
        let w = self.apply_weights(m.weights(), cap)?;
        Ok(NormalCoords::from_parts_unchecked(self.source.clone(), w))
    }

    pub fn apply_curve(&self, m: &Multicurve) -> Result<Multicurve> {
        let c = self.apply(m.coords())?;
        Ok(Multicurve::from_coords_unchecked(c))
    }

    /// Apply `self`, then `then`.
    pub fn then(&self, then: &MappingClass) -> Result<MappingClass> {
        if !same_labels(&self.source, &then.source) {
            return Err(Error::FrameMismatch);
        }
        let mut moves = self.moves.clone();
        moves.extend(then.moves.iter().cloned());
        let mut steps = self.steps.clone();
        steps.extend(then.steps.iter().cloned());
        Ok(MappingClass {
            source: self.source.clone(),
            moves,
            steps,
            reversing: self.reversing ^ then.reversing,
        })
    }

    /// The word read backwards; flips undo themselves and relabelings invert.
    pub fn invert(&self) -> MappingClass {
        let moves: Vec<Move> = self
            .moves
            .iter()
            .rev()
            .map(|m| match m {
                Move::Flip(e) => Move::Flip(*e),
                Move::Relabel { edges, reverse } => {
                    let mut inv = vec![0; edges.len()];
                    for (i, &p) in edges.iter().enumerate() {
                        inv[p] = i;
                    }
                    Move::Relabel { edges: inv, reverse: *reverse }
                }
            })
            .collect();
        MappingClass::new(self.source.clone(), moves).expect("inverse of a closed word closes")
    }

    /// `self` composed `k` times (`k = 0` is the identity).
    pub fn power(&self, k: usize) -> MappingClass {
        let mut out = MappingClass::identity(self.source.clone());
        for _ in 0..k {
            out = out.then(self).expect("same frame");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WordJson { moves: self.moves.clone() }).expect("serializable")
    }

    pub fn from_json(source: Arc<Triangulation>, v: &serde_json::Value) -> Result<Self> {
        let w: WordJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("mapping class JSON: {e}")))?;
        MappingClass::new(source, w.moves)
    }
}

/// `f` after `g`.
pub fn compose(f: &MappingClass, g: &MappingClass) -> Result<MappingClass> {
    g.then(f)
}

pub fn invert(f: &MappingClass) -> MappingClass {
    f.invert()
}

/// Anything that moves multicurves within a fixed frame.
pub trait CurveAction: Sync {
    fn frame(&self) -> &Arc<Triangulation>;
    fn act(&self, m: &Multicurve) -> Result<NormalCoords>;
}

impl CurveAction for MappingClass {
    fn frame(&self) -> &Arc<Triangulation> {
        &self.source
    }

    fn act(&self, m: &Multicurve) -> Result<NormalCoords> {
        self.apply(m.coords())
    }
}

/// Permutes raw weights without regard to the triangulation. Not a mapping
/// class in general; used as a negative control.
pub struct WeightPermutation {
    pub frame: Arc<Triangulation>,
    pub perm: Vec<usize>,
}

impl CurveAction for WeightPermutation {
    fn frame(&self) -> &Arc<Triangulation> {
        &self.frame
    }

    fn act(&self, m: &Multicurve) -> Result<NormalCoords> {
        let mut w = m.weights().to_vec();
        for (i, x) in m.weights().iter().enumerate() {
            w[self.perm[i]] = x.clone();
        }
        NormalCoords::new(self.frame.clone(), w)
    }
}

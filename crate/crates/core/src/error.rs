use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants carry enough context to be surfaced as structured JSON by the
/// command-line front end; see [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} is used {count} times (expected exactly 2)")]
    EdgeDegree { edge: usize, count: usize },
    #[error("edge {edge} is glued with matching orientations; the surface would not be orientable")]
    NonOrientable { edge: usize },
    #[error("the dual gluing graph is disconnected")]
    Disconnected,
    #[error("triangle {triangle} uses edge {edge} twice")]
    SelfFolded { triangle: usize, edge: usize },
    #[error("no signature (g, n >= 1) matches E = {edges}, F = {triangles}, V = {vertices}")]
    BadEuler { edges: usize, triangles: usize, vertices: usize },
    #[error("malformed triangulation: {0}")]
    MalformedTriangulation(String),
    #[error("edge {edge} is not flippable")]
    NotFlippable { edge: usize },
    #[error("coordinates live on a different triangulation")]
    FrameMismatch,
    #[error("odd weight sum in triangle {triangle}")]
    ParityViolation { triangle: usize },
    #[error("triangle inequality fails in triangle {triangle}")]
    TriangleInequalityViolation { triangle: usize },
    #[error("weights contain a curve around puncture {puncture}")]
    PeripheralComponent { puncture: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("multicurve is not connected")]
    NotConnected,
    #[error("lamination is empty")]
    EmptyLamination,
    #[error("components are not pairwise disjoint and distinct")]
    NotAMulticurve,
    #[error("weight {weight} exceeds the cap {cap}")]
    WeightCapExceeded { weight: String, cap: String },
    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("order relation contains a cycle through index {index}")]
    CycleDetected { index: usize },
    #[error("index map is not a bijection")]
    NotBijective,
    #[error("could not shorten the curve below weight {weight}")]
    NotShortenable { weight: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("mapping class word does not close up on its source triangulation")]
    WordNotClosed,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EdgeDegree { .. } => "EdgeDegree",
            Error::NonOrientable { .. } => "NonOrientable",
            Error::Disconnected => "Disconnected",
            Error::SelfFolded { .. } => "SelfFolded",
            Error::BadEuler { .. } => "BadEuler",
            Error::MalformedTriangulation(_) => "MalformedTriangulation",
            Error::NotFlippable { .. } => "NotFlippable",
            Error::FrameMismatch => "FrameMismatch",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::TriangleInequalityViolation { .. } => "TriangleInequalityViolation",
            Error::PeripheralComponent { .. } => "PeripheralComponent",
            Error::WeightCount { .. } => "WeightCount",
            Error::NotConnected => "NotConnected",
            Error::EmptyLamination => "EmptyLamination",
            Error::NotAMulticurve => "NotAMulticurve",
            Error::WeightCapExceeded { .. } => "WeightCapExceeded",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::CycleDetected { .. } => "CycleDetected",
            Error::NotBijective => "NotBijective",
            Error::NotShortenable { .. } => "NotShortenable",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::WordNotClosed => "WordNotClosed",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

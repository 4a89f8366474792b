use thiserror::Error;

/// Which normality condition a curve failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// A vertex lies on (or within tolerance of) another edge.
    VertexOnEdge,
    /// Two edges overlap along a common line.
    CollinearOverlap,
    /// Two edges touch without crossing, or cross at too shallow an angle.
    Tangential,
    /// Three or more strands meet at one point.
    TriplePoint,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("curve is not normal ({kind:?}) near edges {edges:?}")]
    NormalityViolation { kind: Violation, edges: (usize, usize) },
    #[error("could not perturb curve to a normal one after {rounds} rounds")]
    PerturbationFailed { rounds: usize },
    #[error("crossing {0} is not a self-crossing of this subcurve")]
    NotASelfCrossing(usize),
    #[error("arrangement topology check failed: {0}")]
    Topology(String),
    #[error("point lies on the curve")]
    OnCurve,
    #[error("numerically unstable turning sum (residual {residual})")]
    NumericalInstability { residual: f64 },
    #[error("inconsistent immersion witness: {0}")]
    InconsistentWitness(String),
    #[error("{what} exceeds cap: {count} > {cap}")]
    CapExceeded { what: &'static str, count: usize, cap: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("graph is disconnected: no path from {from} to {to}")]
    Disconnected { from: String, to: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use crate::model::Vertex;

/// Errors raised anywhere in the lab.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("uniformity r={r} invalid for n={n}")]
    InvalidUniformity { n: usize, r: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("delta {0} outside (0, 1)")]
    InvalidDelta(f64),
    #[error("spine is not a path of the graph: {0}")]
    InvalidSpine(String),
    #[error("arity k={k} outside 2..={r}")]
    InvalidArity { k: usize, r: usize },
    #[error("acquaintance ledger of C({n},{k}) bits exceeds the 2^27 cap")]
    LedgerTooLarge { n: usize, k: usize },
    #[error("round {round}: swaps share vertex {vertex}")]
    NotAMatching { round: usize, vertex: Vertex },
    #[error("round {round}: swap {{{u},{v}}} is not an edge of the underlying graph")]
    IllegalSwap { round: usize, u: Vertex, v: Vertex },
    #[error("|S|={s} differs from |T|={t}")]
    SizeMismatch { s: usize, t: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid good tree: {0}")]
    InvalidTree(String),
    #[error("block size {s} does not divide {n}")]
    NotDivisible { n: usize, s: usize },
    #[error("invalid routing target: {0}")]
    InvalidTarget(String),
    #[error("structural assumption violated: {0}")]
    StructuralAssumptionViolated(String),
    #[error("no loose Hamilton path found within budget")]
    PathUnavailable,
    #[error("no edges: C({n},{k}) tuples can never be acquainted")]
    Unacquaintable { n: usize, k: usize },
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

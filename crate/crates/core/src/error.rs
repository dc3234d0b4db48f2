use thiserror::Error;

/// Errors raised by the library. Variants map one-to-one onto the failure
/// modes of the individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {index} has all-zero coefficients")]
    ZeroLine { index: usize },
    #[error("lines {first} and {second} are proportional")]
    DuplicateLine { first: usize, second: usize },
    #[error("an arrangement needs at least two lines, got {0}")]
    TooFewLines(usize),
    #[error("flats {first:?} and {second:?} share two or more lines")]
    PairCollision { first: Vec<usize>, second: Vec<usize> },
    #[error("bad line index: {0}")]
    BadIndex(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("invalid flat collection: {0}")]
    BadCollection(String),

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("off-diagonal entry ({0}, {1}) = {2} is not 0 or -1")]
    BadOffDiagonal(usize, usize, i64),
    #[error("positive semidefinite block without a unique positive kernel vector: {0}")]
    InternalTrichotomyError(String),
    #[error("block pattern violates the finite/affine/indefinite trichotomy: {0}")]
    TrichotomyViolation(String),

    #[error("weight coordinates sum to {0}, expected 0")]
    NotSumZero(String),
    #[error("weight is identically zero")]
    ZeroWeight,
    #[error("weight has {got} coordinates, arrangement has {expected} lines")]
    WeightLength { expected: usize, got: usize },
    #[error("a-posteriori verification failed: {0}")]
    VerificationFailed(String),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("graph is not connected")]
    Disconnected,
    #[error("vector is not in N(graph): {0}")]
    NotInN(String),
    #[error("labeling is not affine")]
    NotAffine,

    #[error("bad matrix: {0}")]
    BadMatrix(String),
    #[error("permutation arrays are not disjoint: {0}")]
    NotDisjoint(String),
    #[error("permutation arrays are not normalized: {0}")]
    BadNormalization(String),
    #[error("hypotheses not met: {0}")]
    Inapplicable(String),

    #[error("flat {0:?} is not a multiple point of the arrangement")]
    FlatNotInArrangement(Vec<usize>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

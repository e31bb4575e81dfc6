use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("declared rank {declared} but matrix has {actual} rows")]
    RankMismatch { declared: usize, actual: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry {0} is not 1")]
    BadDiagonal(usize),
    #[error("off-diagonal entry ({0}, {1}) = {2}; expected 0 (infinity) or an integer >= 2")]
    BadOffDiagonal(usize, usize, i64),
    #[error("generator subset does not induce a connected diagram")]
    NotConnected,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("root is not in the inventory")]
    OutOfInventory,
    #[error("inventory too shallow: {0}")]
    DepthInsufficient(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("the two roots define the same wall")]
    SameWall,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("half-spaces are not strictly nested")]
    NotNested,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("ladder hypothesis ({0}) violated")]
    HypothesisViolated(u8),
    #[error("generated subgroup is not finite")]
    NotFinite,
    #[error("walls are not pairwise crossing")]
    NotPairwiseCrossing,
    #[error("epsilon is undefined: no nested pair with value above 1")]
    EpsilonUndefined,
    #[error("parabolic closure is not finite")]
    ClosureNotFinite,
    #[error("matrix has an infinite entry; the group is not 2-spherical")]
    Not2Spherical,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) | Error::SearchExhausted(_) => 3,
            Error::InvariantViolation(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

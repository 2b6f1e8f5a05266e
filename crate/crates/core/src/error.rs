use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported prime {0}: only 2, 3, 5 and 7 are supported")]
    UnsupportedPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace is not invariant under the action")]
    NotInvariant,

    #[error("matrix is singular")]
    Singular,

    #[error("module data violates an invariant: {0}")]
    InvalidModule(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("operation undefined on the zero module: {0}")]
    ZeroModule(&'static str),

    #[error("size guardrail exceeded: {0}")]
    Guardrail(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("module is indecomposable but not absolutely indecomposable (End/rad has dimension {residue_dim})")]
    NotAbsolutelyIndecomposable { residue_dim: usize },

    #[error("decomposition failed to split a decomposable module after {attempts} attempts")]
    DecompositionStalled { attempts: usize },

    #[error("indecomposability violated for {context}: End has dimension {end_dim}, End/rad has dimension {residue_dim}")]
    NotIndecomposable { context: String, end_dim: usize, residue_dim: usize },

    #[error("closure did not stabilise within {0} rounds")]
    NoFixpoint(usize),

    #[error("closure violation: {0}")]
    ClosureViolation(String),

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("duplicate summands in module set: {0} and {1} are isomorphic")]
    DuplicateSummand(String, String),

    #[error("module set does not contain the regular module")]
    MissingRegular,

    #[error("projective resolution exceeded {0} steps")]
    ResolutionCap(usize),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Sylow embedding: {0}")]
    InvalidSylow(String),
}

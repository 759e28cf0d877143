use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("invalid root system type {0}")]
    InvalidType(String),

    #[error("rank {rank} exceeds the configured cap {cap} (raise the cap explicitly to enumerate larger groups)")]
    RankCap { rank: usize, cap: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cocharacter {0:?} does not lie in the lattice Y")]
    NotInLattice(Vec<i64>),

    #[error("cocharacter {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("elements belong to different root data")]
    DatumMismatch,

    #[error("search radius {radius} exceeds the cap {cap}")]
    RadiusCap { radius: usize, cap: usize },

    #[error("invalid index set: {0}")]
    InvalidSubset(String),

    #[error("dimension parameters out of range: dim A' = {dim_a} with dim T = {dim_t}")]
    SignRange { dim_t: i64, dim_a: i64 },

    #[error("invalid unipotent datum: {0}")]
    InvalidUnipotent(String),

    #[error("module rejected: {0}")]
    Module(String),

    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("weight system mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial is not quasi-homogeneous of weighted degree 2: {0}")]
    NotQuasiHomogeneous(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("Milnor ring is infinite dimensional (critical locus is not isolated)")]
    InfiniteMilnor,
    #[error("invalid matrix factorisation: {0}")]
    InvalidFactorisation(String),
    #[error("potentials do not match: {0}")]
    PotentialMismatch(String),
    #[error("reduction did not stabilise: {0}")]
    NonStabilizing(String),
    #[error("transport left the certified window: {0}")]
    OutsideWindow(String),
    #[error("not ambidextrous: {0}")]
    NotAmbidextrous(String),
    #[error("quantum dimension is not invertible: {0}")]
    NonInvertibleDimension(String),
    #[error("no isomorphism found: {0}")]
    NoIsomorphism(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("degree beyond certified cap: {0}")]
    BeyondCap(String),
    #[error("invalid module or bimodule: {0}")]
    InvalidModule(String),
    #[error("not an algebra map: {0}")]
    NotAlgebraMap(String),
    #[error("not projective: {0}")]
    NotProjective(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid gap set: {0}")]
    InvalidGamma(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("undefined for zero polynomial")]
    ZeroPolynomial,
    #[error("degree too large for exact oracle (degree {degree} > cap {cap})")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("matrix is not square ({rows} exponents, {cols} nodes)")]
    NotSquare { rows: usize, cols: usize },
    #[error("total positivity hypothesis violated: {0}")]
    TotalPositivityHypothesis(String),
    #[error("determinant-in-s cap exceeded (#Γ = {size} > cap {cap})")]
    DetCap { size: usize, cap: usize },
    #[error("invalid points: {0}")]
    InvalidPoints(String),
    #[error("exponent cap {cap} below N-1 = {needed}")]
    ExponentCap { cap: u32, needed: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("measure is not orthogonal to the system (residual {0:e})")]
    NotOrthogonal(f64),
    #[error("grid too coarse to certify a witness interval: {0}")]
    GridTooCoarse(String),
    #[error("configuration error: {0}")]
    Config(String),
}

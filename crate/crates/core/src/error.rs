use std::path::PathBuf;
use thiserror::Error;

/// Errors surfaced by the library and the benchmark harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("jitter bound {0} outside the Kadec range [0, 1/4]")]
    JitterBound(f64),
    #[error("index {index} outside the frame range |j| <= {half_width}")]
    IndexOutOfRange { index: i64, half_width: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("quadrature needs panels >= 1 and order >= 2, got panels={panels} order={order}")]
    QuadratureSize { panels: usize, order: usize },
    #[error(
        "quadrature under-resolved: panels*order = {got}, but half-width {half_width} \
         requires at least {required} nodes"
    )]
    UnderResolvedQuadrature {
        got: usize,
        required: usize,
        half_width: usize,
    },
    #[error("unknown target function `{name}`; valid names: {valid}")]
    UnknownFunction { name: String, valid: &'static str },
    #[error("unknown method `{0}`; valid: new, cc, finite-section, fourier")]
    UnknownMethod(String),
    #[error("unknown m-selection rule `{0}`; valid: cc, inverse, reconstruction, fourier")]
    UnknownRule(String),
    #[error("parameter out of domain: {0}")]
    ParamDomain(String),
    #[error("matrix too small for a localization fit: {got} off-diagonal offsets, need {required}")]
    TooSmallForFit { got: usize, required: usize },
    #[error("probe half-width {got} too small, need at least {required}")]
    ProbeTooSmall { got: usize, required: usize },
    #[error("linear system numerically singular (condition number ~{cond:.3e})")]
    SingularSystem { cond: f64 },
    #[error("rank-deficient least-squares system: numerical rank {rank} of {cols} columns")]
    RankDeficient { rank: usize, cols: usize },
    #[error("frame mismatch: coefficients tagged `{coef}` evaluated against frame `{frame}`")]
    FrameMismatch { coef: String, frame: String },
    #[error("conjugate gradient breakdown at iteration {0}: curvature below 1e-300 (stagnation)")]
    CgBreakdown(usize),
    #[error("iteration diverged: residual grew over {0} consecutive steps")]
    Diverged(usize),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

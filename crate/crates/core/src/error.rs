use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// `κ − ε` must exceed 1/16 for the quadratic condition to have a positive root.
    #[error("infeasible constants: kappa - epsilon = {gap} must exceed 1/16 (hypothesis kappa > 1/16 + epsilon)")]
    Infeasible { gap: f64 },

    #[error("spectral data is not Hermitian-symmetric (max defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("frame tilt {tilt} is not a multiple of the remap tilt {period}")]
    NonCommensurateTilt { tilt: f64, period: f64 },

    #[error("kernel time must be positive, got t = {0}")]
    NonPositiveTime(f64),

    /// The periodic box is too small (or too coarse) for a whole-space kernel.
    #[error("truncation check failed: {what} ratio {ratio:.3e} exceeds {tolerance:.1e}")]
    Truncation {
        what: &'static str,
        ratio: f64,
        tolerance: f64,
    },

    #[error("quadrature did not converge after {refinements} refinements (last change {change:.3e})")]
    NoConvergence { refinements: usize, change: f64 },

    #[error("fit needs at least {needed} positive points, got {got}")]
    BadSeries { needed: usize, got: usize },

    #[error("series spans {decades:.2} decades, at least {required} required")]
    ShortSpan { decades: f64, required: f64 },

    #[error("series abscissae must be strictly increasing (row {row})")]
    Unordered { row: usize },

    #[error("invalid initial data: {0}")]
    InvalidInit(String),

    #[error("invalid run configuration: {0}")]
    InvalidRun(String),

    #[error("blow-up sentinel at t = {t}: {reason}")]
    BlowUp { t: f64, reason: String },

    #[error("line {line}: {key}: {msg}")]
    Config {
        line: usize,
        key: String,
        msg: String,
    },

    #[error("{path}: row {row}: {msg}")]
    Csv {
        path: PathBuf,
        row: usize,
        msg: String,
    },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("unsupported snapshot version {0}")]
    UnsupportedVersion(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

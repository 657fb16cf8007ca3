use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised while validating inputs or evaluating the game.
///
/// Agent and row indices carried by variants are zero-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("network needs at least 2 agents, got {n}")]
    TooSmall { n: usize },

    #[error("influence matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("row {row} of the influence matrix is not stochastic: {reason}")]
    NotStochastic { row: usize, reason: String },

    #[error("influence graph is not strongly connected ({components} components)")]
    NotStronglyConnected { components: usize },

    #[error("influence graph is periodic with period {period}")]
    NotAperiodic { period: usize },

    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("self-confidence z[{index}] = {value} is outside [0, 1]")]
    InvalidProfile { index: usize, value: f64 },

    #[error("noise variance sigma2[{index}] = {value} must be finite and positive")]
    InvalidNoise { index: usize, value: f64 },

    #[error("stubborn agents present: {agents:?}")]
    StubbornPresent { agents: Vec<usize> },

    #[error("linear solver breakdown: {0}")]
    SolverFailure(String),

    #[error("alpha = {alpha} is outside (0, {alpha_star}]")]
    AlphaOutOfRange { alpha: f64, alpha_star: f64 },

    #[error("diagnostic `{check}` violated at step {step}")]
    DiagnosticViolation { step: u64, check: &'static str },

    #[error("empty input: {0}")]
    Empty(&'static str),
}

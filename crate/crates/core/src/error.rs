use thiserror::Error;

/// Rejections from parameter validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("N must be even, got {0}")]
    OddRing(u32),
    #[error("{name} must lie in [0, 1], got {value}")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    #[error("degenerate channel: p_s must be > 0")]
    DegenerateChannel,
    #[error("battery capacity B must be >= 1")]
    ZeroBattery,
    #[error("VAoI cap delta_max must be >= 1")]
    ZeroVaoiCap,
    #[error("horizon T must be >= 1")]
    ZeroHorizon,
    #[error("mc_iterations must be >= 1")]
    ZeroIterations,
    #[error("node index {index} outside ring of N = {ring}")]
    NodeOutOfRange { index: i64, ring: u32 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("relative value iteration did not converge after {iterations} iterations (span {span:e})")]
    NotConverged { iterations: usize, span: f64 },
    #[error("invalid policy table: {0}")]
    Policy(String),
    #[error("standard errors need at least 2 Monte Carlo iterations, got {0}")]
    TooFewIterations(usize),
    #[error("invalid experiment: {0}")]
    Experiment(String),
    #[error("config: {0}")]
    Config(#[from] toml::de::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

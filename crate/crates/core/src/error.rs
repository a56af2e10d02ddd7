use thiserror::Error;

/// Errors raised by graph construction, path machinery, scoring and the
/// eigensolver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex `{label}`")]
    SelfLoop { line: usize, label: String },

    #[error("graph needs at least 2 distinct vertices, found {found}")]
    TooSmall { found: usize },

    #[error("no connected G(n, p) sample after {attempts} attempts")]
    DisconnectedSample { attempts: usize },

    #[error("graph is not connected: vertex {vertex} (`{label}`) is unreachable from vertex 0")]
    NotConnected { vertex: usize, label: String },

    #[error("more than {cap} shortest paths; oracle not applicable at this size")]
    CapExceeded { cap: usize },

    #[error("invalid flow for pair ({u}, {v}) at vertex {vertex}: imbalance {imbalance:e}")]
    InvalidFlow {
        u: usize,
        v: usize,
        vertex: usize,
        imbalance: f64,
    },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("vector is constant; the Fiedler quotient is undefined")]
    ConstantVector,

    #[error("Lu bound denominator {denominator} is not positive")]
    NonPositiveDenominator { denominator: f64 },

    #[error("linear program is infeasible or unbounded")]
    LinearProgram,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

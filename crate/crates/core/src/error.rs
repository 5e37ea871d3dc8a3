use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Gamma or zeta factor sits on (or within the refusal radius of) a pole.
    #[error("pole of {factor} at {at}")]
    Pole { factor: &'static str, at: f64 },

    #[error("{function}: {reason}")]
    Domain {
        function: &'static str,
        reason: String,
    },

    /// A power-law lattice sum was requested outside its region of absolute convergence.
    #[error(
        "direct sum does not converge for nu = {nu} in {dim} dimension(s) (needs nu > {dim}/2)"
    )]
    NonConvergent { nu: f64, dim: usize },

    /// Truncation hit `max_index` before the tolerance was met.
    #[error("truncation budget exhausted at index {max_index} (estimate {estimate:e}, error {error_bound:e})")]
    Budget {
        max_index: usize,
        estimate: f64,
        error_bound: f64,
    },

    #[error("{function} overflows double precision")]
    Overflow { function: &'static str },

    /// The effective-potential series started growing with the order.
    #[error("effective potential series grows at order s = {order}; the series is asymptotic and is not resummed")]
    Divergent { order: usize },

    /// The gap defect has no root with m^2 >= 0.
    #[error("no disordered-phase solution: defect at m^2 = {m_sq:e} is {defect:e} > 0")]
    NoSolution { m_sq: f64, defect: f64 },

    #[error("gap solver did not converge after {iterations} iterations (residual {residual:e})")]
    SolverStalled { iterations: usize, residual: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

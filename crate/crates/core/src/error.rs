use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("iteration limit of {0} reached")]
    MaxIterations(usize),

    #[error("quadrature did not converge: value {value}, error estimate {error}")]
    NonConvergence { value: f64, error: f64 },

    #[error("channel regime {0} does not admit this operation")]
    Regime(String),

    #[error("doublet is not normalizable (decay rate {0})")]
    NonNormalizable(f64),

    #[error("integrator step size underflow at r = {0}")]
    Stiffness(f64),
}

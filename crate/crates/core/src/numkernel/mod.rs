//! Real-argument special functions, bracketed root finding and
//! semi-infinite quadrature used by the spectral solvers.

mod bessel;
mod gamma;
mod quadrature;
mod roots;

pub use bessel::{bessel_j, bessel_k, bessel_y};
pub use gamma::{cos_pi, digamma, gamma_fn, log_gamma, sin_pi, EULER_GAMMA};
pub use quadrature::{integrate_semiline, integrate_semiline_with, QuadratureOptions, QuadratureResult};
pub use roots::{expand_bracket, find_root_bracketed, Bracket};

//! Bound-state spectra, wave functions and continuum spectral densities of
//! massive fermions in point-flux backgrounds: the relativistic
//! Aharonov-Bohm Dirac problem in 2+1 dimensions and the nonrelativistic
//! Aharonov-Casher problem, for every self-adjoint extension of the
//! singular radial Hamiltonian.
//!
//! All energies are measured in units of the mass `m` and all radii in
//! units of `1/m`; `m` is still carried explicitly so that dimensional
//! round trips can be checked.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod ab_spectrum;
pub mod ac_spectrum;
pub mod doublet;
pub mod error;
pub mod extension;
pub mod numkernel;
pub mod oracle;

pub use error::{Error, Result};
pub use extension::Extension;

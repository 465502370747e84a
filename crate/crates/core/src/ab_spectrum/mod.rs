//! Aharonov-Bohm Dirac sector in 2+1 dimensions.
//!
//! Radial components obey
//!
//! ```text
//!  s f2' + nt f2 / r = (E - m) f1
//! -s f1' + nt f1 / r = (E + m) f2
//! ```
//!
//! with `nt = l + mu + s/2`. The extension parameter `xi` is reported in
//! the orientation where bound states exist exactly for `xi < 0`.

mod density;
mod master;
mod paper;
mod wavefunction;

use std::fmt;

use crate::error::{Error, Result};

pub use density::{paper_omega_xi_continued, spectral_density, SpectralPoint};
pub use master::{master_xi_of_energy, solve_bound_energy, zero_mode};
pub use paper::{lev0_lhs, lev1_lhs, paper_level_lhs, paper_omega, paper_omega_xi, solve_paper_level, LevelVariant};
pub use wavefunction::{
    bound_doublet, conjugate_channel, continuum_doublet, dirac_residual, fit_boundary_xi,
};

/// Tolerance band around critical index values.
pub const CRITICAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `0 < nu < 1/2`: one-parameter family of extensions.
    Extended,
    /// `nu >= 1/2`: essentially self-adjoint, continuum only.
    Regular,
    /// `nu = 0` or `nu` a half-integer.
    Critical,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Extended => "extended",
            Regime::Regular => "regular",
            Regime::Critical => "critical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Oracle,
}

/// Integer and fractional part of the flux, `mu = n + beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxParts {
    pub n: i64,
    pub beta: f64,
}

pub fn flux_decompose(mu: f64) -> FluxParts {
    let n = mu.floor();
    let beta = mu - n;
    if beta >= 1.0 {
        // mu is a tiny negative number whose fractional part rounds to 1
        return FluxParts { n: n as i64 + 1, beta: 0.0 };
    }
    FluxParts { n: n as i64, beta }
}

/// One angular-momentum/spin sector: mass `m`, orbital number `l`,
/// spin label `s = +-1` and flux `mu` in units of the flux quantum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracChannel {
    m: f64,
    l: i64,
    s: i32,
    mu: f64,
}

impl DiracChannel {
    pub fn new(m: f64, l: i64, s: i32, mu: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Domain(format!("mass must be positive, got {m}")));
        }
        if s != 1 && s != -1 {
            return Err(Error::Domain(format!("spin label must be +1 or -1, got {s}")));
        }
        if !mu.is_finite() {
            return Err(Error::Domain(format!("flux must be finite, got {mu}")));
        }
        Ok(Self { m, l, s, mu })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn s(&self) -> i32 {
        self.s
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `nt = j + mu` with `j = l + s/2` (exact), so channels sharing `j` agree bitwise.
    pub fn nu_tilde(&self) -> f64 {
        self.j() + self.mu
    }

    pub fn j(&self) -> f64 {
        self.l as f64 + 0.5 * self.s as f64
    }

    pub fn nu(&self) -> f64 {
        self.nu_tilde().abs()
    }

    /// `x = s * nt`; the component carrying `r^{+nu}` is `f1` when `x > 0`.
    pub(crate) fn x(&self) -> f64 {
        self.s as f64 * self.nu_tilde()
    }

    pub fn classify(&self) -> ChannelIndices {
        classify_channel(self)
    }

    pub(crate) fn require_extended(&self) -> Result<ChannelIndices> {
        let idx = self.classify();
        if idx.regime != Regime::Extended {
            return Err(Error::Regime(format!("{} (nu = {})", idx.regime, idx.nu)));
        }
        Ok(idx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelIndices {
    pub nu_tilde: f64,
    pub nu: f64,
    /// Energy orientation of the master equation, `-s sign(nt)`; `None` at `nt = 0`.
    pub tau: Option<i32>,
    pub j: f64,
    pub regime: Regime,
    pub flux: FluxParts,
}

pub fn classify_channel(ch: &DiracChannel) -> ChannelIndices {
    let nu_tilde = ch.nu_tilde();
    let nu = nu_tilde.abs();
    let tau = if nu_tilde == 0.0 { None } else { Some(-ch.s * nu_tilde.signum() as i32) };
    let half_steps = 2.0 * nu;
    let regime = if (half_steps - half_steps.round()).abs() <= 2.0 * CRITICAL_TOL {
        Regime::Critical
    } else if nu < 0.5 {
        Regime::Extended
    } else {
        Regime::Regular
    };
    ChannelIndices {
        nu_tilde,
        nu,
        tau,
        j: ch.j(),
        regime,
        flux: flux_decompose(ch.mu),
    }
}

/// A solved bound state. Energies and `lambda = sqrt(m^2 - E^2)` are in
/// absolute units; see [`BoundLevel::e_over_m`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundLevel {
    pub energy: f64,
    pub lambda: f64,
    pub xi: f64,
    pub channel: DiracChannel,
    /// `|xi(E) - xi| / max(1, |xi|)`.
    pub residual: f64,
    pub provenance: Provenance,
}

impl BoundLevel {
    pub fn e_over_m(&self) -> f64 {
        self.energy / self.channel.m
    }

    pub fn lambda_over_m(&self) -> f64 {
        self.lambda / self.channel.m
    }
}

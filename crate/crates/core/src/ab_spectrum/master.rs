use super::{BoundLevel, ChannelIndices, DiracChannel, Provenance, CRITICAL_TOL};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::numkernel::{expand_bracket, find_root_bracketed, log_gamma};

/// `ln(Gamma(1/2 + nu) / Gamma(1/2 - nu))`.
pub(crate) fn log_gamma_ratio(nu: f64) -> Result<f64> {
    Ok(log_gamma(0.5 + nu)? - log_gamma(0.5 - nu)?)
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `ln|xi|` as a function of the rapidity `y = ln((m + u)/(m - u))`, `u = tau E`.
/// Uses `(m+u)/(m-u) = e^y` and `ln(2m/lambda) = ln(2 cosh(y/2))`.
fn log_abs_xi_of_rapidity(nu: f64, log_g: f64, y: f64) -> f64 {
    let a = y.abs();
    0.5 * y + log_g + 2.0 * nu * (0.5 * a + softplus(-a))
}

/// Extension parameter whose boundary condition the decaying solution at
/// energy `E` satisfies:
/// `xi(E) = -sqrt((m + tau E)/(m - tau E)) Gamma(1/2+nu)/Gamma(1/2-nu) (2m/lambda)^{2 nu}`.
pub fn master_xi_of_energy(ch: &DiracChannel, energy: f64) -> Result<f64> {
    let idx = ch.require_extended()?;
    let m = ch.m();
    if !(energy.abs() < m) {
        return Err(Error::Domain(format!("bound energy must satisfy |E| < m, got E = {energy}")));
    }
    let tau = tau_of(&idx);
    let u = tau * energy;
    let lambda = ((m - energy) * (m + energy)).sqrt();
    let log_xi = 0.5 * ((m + u) / (m - u)).ln() + log_gamma_ratio(idx.nu)? + 2.0 * idx.nu * (2.0 * m / lambda).ln();
    Ok(-log_xi.exp())
}

pub(crate) fn tau_of(idx: &ChannelIndices) -> f64 {
    idx.tau.expect("extended channels have nt != 0") as f64
}

/// The unique bound level of an extended channel for `xi < 0`; `None` for
/// `xi >= 0` or `xi = inf`.
pub fn solve_bound_energy(ch: &DiracChannel, ext: &Extension) -> Result<Option<BoundLevel>> {
    let idx = ch.require_extended()?;
    if !ext.binds() {
        return Ok(None);
    }
    let xi = ext.xi();
    let target = (-xi).ln();
    let log_g = log_gamma_ratio(idx.nu)?;
    let f = |y: f64| log_abs_xi_of_rapidity(idx.nu, log_g, y) - target;
    let bracket = expand_bracket(f, -1.0, 1.0, 64)?;
    let y = find_root_bracketed(f, bracket, 0.0, 0.0)?;

    let m = ch.m();
    let tau = tau_of(&idx);
    let energy = tau * m * (0.5 * y).tanh();
    let lambda = m / (0.5 * y).cosh();
    let residual = (log_abs_xi_of_rapidity(idx.nu, log_g, y) - target).exp_m1().abs();
    Ok(Some(BoundLevel { energy, lambda, xi, channel: *ch, residual, provenance: Provenance::Analytic }))
}

/// The `E = 0`, `xi = -1` state of a channel with `nt = 0`.
pub fn zero_mode(ch: &DiracChannel) -> Result<BoundLevel> {
    if ch.nu() > CRITICAL_TOL {
        return Err(Error::Regime(format!("zero mode needs nt = 0, got nu = {}", ch.nu())));
    }
    Ok(BoundLevel {
        energy: 0.0,
        lambda: ch.m(),
        xi: -1.0,
        channel: *ch,
        residual: 0.0,
        provenance: Provenance::Analytic,
    })
}

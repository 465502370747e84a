use std::f64::consts::PI;

use num_complex::Complex64;

use super::master::{log_gamma_ratio, tau_of};
use super::DiracChannel;
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::numkernel::gamma_fn;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub energy: f64,
    pub density: f64,
}

/// First-sheet continuation of `lambda = sqrt(m^2 - E^2)` to `E + i0`, `|E| > m`.
fn lambda_above_cut(m: f64, energy: f64) -> Complex64 {
    let k = ((energy - m) * (energy + m)).sqrt();
    Complex64::new(0.0, -energy.signum() * k)
}

fn check_continuum(ch: &DiracChannel, energy: f64) -> Result<()> {
    if !(energy.abs() > ch.m()) || !energy.is_finite() {
        return Err(Error::Domain(format!("continuum needs |E| > m, got E = {energy}")));
    }
    Ok(())
}

/// `dsigma/dE = (1/pi) Im[-tau / (xi - xi_M(E + i0))]`, with the master
/// function continued as `xi_M = -G (2m)^{2nu} (m + tau E) lambda^{-1-2nu}`.
pub fn spectral_density(ch: &DiracChannel, ext: &Extension, energy: f64) -> Result<SpectralPoint> {
    let idx = ch.require_extended()?;
    check_continuum(ch, energy)?;
    if ext.is_infinite() {
        return Err(Error::Domain("spectral density needs finite xi".into()));
    }
    let m = ch.m();
    let nu = idx.nu;
    let tau = tau_of(&idx);
    let lambda = lambda_above_cut(m, energy);
    let scale = (log_gamma_ratio(nu)? + 2.0 * nu * (2.0 * m).ln()).exp();
    let xi_m = -scale * (m + tau * energy) * lambda.powf(-1.0 - 2.0 * nu);
    let g = Complex64::new(-tau, 0.0) / (ext.xi() - xi_m);
    Ok(SpectralPoint { energy, density: g.im / PI })
}

/// Printed `omega_xi = omega + 4 s lambda xi` continued to `E + i0`.
pub fn paper_omega_xi_continued(ch: &DiracChannel, ext: &Extension, energy: f64) -> Result<Complex64> {
    ch.require_extended()?;
    check_continuum(ch, energy)?;
    if ext.is_infinite() {
        return Err(Error::Domain("printed Wronskian needs finite xi".into()));
    }
    let m = ch.m();
    let nu = ch.nu();
    let s = ch.s() as f64;
    let h = 0.5 * (1.0 - s);
    let pref = gamma_fn(2.0 * nu)? * gamma_fn(-nu + h)? / (gamma_fn(-2.0 * nu)? * gamma_fn(nu + h)?);
    let lambda = lambda_above_cut(m, energy);
    let omega = pref * (lambda * (2.0 / m)).powf(-2.0 * nu) * lambda * (4.0 * s);
    Ok(omega + lambda * (4.0 * s * ext.xi()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(l: i64, s: i32, mu: f64) -> DiracChannel {
        DiracChannel::new(1.0, l, s, mu).unwrap()
    }

    fn energies() -> Vec<f64> {
        let mut v = Vec::new();
        for i in 0..400 {
            let e = 1.001 * (10.0f64 / 1.001).powf(i as f64 / 399.0);
            v.push(e);
            v.push(-e);
        }
        v
    }

    #[test]
    fn density_is_nonnegative_and_finite() {
        for c in [ch(0, -1, 0.2), ch(0, -1, 0.8), ch(-1, 1, 0.3), ch(2, 1, -2.9)] {
            for xi in [-3.0, -1.0, -0.1, 0.0, 0.4, 5.0] {
                let ext = Extension::from_xi(xi).unwrap();
                for e in energies() {
                    let p = spectral_density(&c, &ext, e).unwrap();
                    assert!(p.density.is_finite() && p.density >= 0.0, "{c:?} xi={xi} E={e}: {}", p.density);
                }
            }
        }
    }

    #[test]
    fn printed_wronskian_never_vanishes_on_the_cuts() {
        let c = ch(0, -1, 0.3);
        for xi in [-1.0, 0.0, 2.0] {
            let ext = Extension::from_xi(xi).unwrap();
            for e in energies() {
                assert!(paper_omega_xi_continued(&c, &ext, e).unwrap().norm() > 0.0);
            }
        }
    }

    #[test]
    fn continuous_in_xi() {
        let c = ch(0, -1, 0.35);
        let d0 = spectral_density(&c, &Extension::from_xi(0.0).unwrap(), 2.0).unwrap().density;
        let d1 = spectral_density(&c, &Extension::from_xi(-1e-9).unwrap(), 2.0).unwrap().density;
        assert!((d0 - d1).abs() < 1e-8);
    }

    #[test]
    fn gap_energies_rejected() {
        let ext = Extension::from_xi(-1.0).unwrap();
        assert!(spectral_density(&ch(0, -1, 0.3), &ext, 0.5).is_err());
        assert!(spectral_density(&ch(0, -1, 0.3), &ext, 1.0).is_err());
        assert!(spectral_density(&ch(0, -1, 0.3), &Extension::from_xi(f64::INFINITY).unwrap(), 2.0).is_err());
    }
}

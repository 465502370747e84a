use std::f64::consts::PI;

use super::integrate::dopri5;
use super::{frobenius_t, k_asymptotic, local_root, observed_order, scan_roots, OracleResult, ShootingConfig};
use crate::ab_spectrum::{DiracChannel, Regime, CRITICAL_TOL};
use crate::error::{Error, Result};
use crate::extension::Extension;

/// Boundary doublet `(mr)^nu e+ - s xi (mr)^{-nu} e-` continued to `r` by
/// the Frobenius series of the radial system.
fn boundary_seed(ch: &DiracChannel, xi: f64, energy: f64, r: f64) -> [f64; 2] {
    let m = ch.m();
    let s = ch.s() as f64;
    let nt = ch.nu_tilde();
    let x = s * nt;
    let k2 = energy * energy - m * m;
    let mr = m * r;
    // U_A ~ (mr)^x on f1, U_B ~ (mr)^{-x} on f2
    let ua = [
        mr.powf(x) * frobenius_t(x - 0.5, k2, r),
        m.powf(x) * s * (energy - m) / (2.0 * (x + 0.5)) * r.powf(x + 1.0) * frobenius_t(x + 0.5, k2, r),
    ];
    let ub = [
        -m.powf(-x) * s * (energy + m) / (2.0 * (0.5 - x)) * r.powf(1.0 - x) * frobenius_t(0.5 - x, k2, r),
        mr.powf(-x) * frobenius_t(-x - 0.5, k2, r),
    ];
    let (up, um) = if x >= 0.0 { (ua, ub) } else { (ub, ua) };
    if xi.is_infinite() {
        return [-s * um[0], -s * um[1]];
    }
    [up[0] - s * xi * um[0], up[1] - s * xi * um[1]]
}


/// Mismatch between the integrated solution `F` and the decaying one `D`
/// at `r_max`: the cross product `F1 D2 - F2 D1`. The system is traceless
/// in `ln r`, so this is the conserved Wronskian of the two solutions:
/// smooth in `E` and zero exactly at a level.
pub fn dirac_miss(ch: &DiracChannel, ext: &Extension, energy: f64, cfg: &ShootingConfig) -> Result<f64> {
    let m = ch.m();
    if !(energy.abs() < m) {
        return Err(Error::Domain(format!("bound energy must satisfy |E| < m, got {energy}")));
    }
    let s = ch.s() as f64;
    let x = s * ch.nu_tilde();
    let lambda = ((m - energy) * (m + energy)).sqrt();
    let r_min = cfg.r_min / m;
    let r_max = cfg.r_max.map_or(40.0 / lambda, |r| r / m);
    let y0 = boundary_seed(ch, ext.xi(), energy, r_min);
    let (ep, em) = (energy + m, energy - m);
    let rhs = |t: f64, y: [f64; 2]| {
        let r = t.exp();
        [x * y[0] - s * ep * r * y[1], s * em * r * y[0] - x * y[1]]
    };
    let (y, _) = dopri5(rhs, r_min.ln(), r_max.ln(), y0, cfg.tol, f64::exp)?;
    let z = lambda * r_max;
    let w = lambda / (m + energy);
    // sqrt(z) K_a(z) ~ sqrt(pi/2) e^{-z} P_a(z)
    let scale = (0.5 * PI).sqrt() * (-z).exp();
    let d = [scale * k_asymptotic(x - 0.5, z).0, scale * s * w * k_asymptotic(x + 0.5, z).0];
    Ok(y[0] * d[1] - y[1] * d[0])
}

fn energy_of(m: f64, v: f64) -> f64 {
    m * (0.5 * v).tanh()
}

fn rapidity_of(m: f64, e: f64) -> f64 {
    2.0 * (e / m).atanh()
}

/// Bound level of the radial Dirac problem by outward shooting from the
/// boundary template; `None` when `xi >= 0` or the scan finds no level.
pub fn dirac_shoot(ch: &DiracChannel, ext: &Extension, cfg: &ShootingConfig) -> Result<Option<OracleResult>> {
    cfg.validate()?;
    // nt = 0 has no logarithms in this system, so the zero-mode channel is
    // admitted; nu >= 1/2 (half-integers included) has no extension at all
    let nu = ch.nu();
    if nu >= 0.5 - CRITICAL_TOL {
        return Ok(None);
    }
    if ch.classify().regime != Regime::Extended && nu > CRITICAL_TOL {
        return Err(Error::Regime(format!("{} (nu = {nu})", ch.classify().regime)));
    }
    if !ext.binds() {
        return Ok(None);
    }
    let m = ch.m();
    let (lo, hi) = cfg.energy_bracket;
    let (lo, hi) = (lo.max(-1.0 + 1e-15) * m, hi.min(1.0 - 1e-15) * m);
    let miss_at = |c: ShootingConfig| move |v: f64| dirac_miss(ch, ext, energy_of(m, v), &c);

    let roots = scan_roots(miss_at(*cfg), rapidity_of(m, lo), rapidity_of(m, hi), cfg.scan_points)?;
    let Some(&(v, residual)) = roots.first() else {
        return Ok(None);
    };
    let energy = energy_of(m, v);

    let half = ShootingConfig { r_min: 0.5 * cfg.r_min, ..*cfg };
    let (v_half, _) = local_root(miss_at(half), v, 1e-3)?;
    let fine = ShootingConfig { tol: cfg.tol / 32.0, ..*cfg };
    let finer = ShootingConfig { tol: cfg.tol / 1024.0, ..*cfg };
    let (v1, _) = local_root(miss_at(fine), v, 1e-3)?;
    let (v2, _) = local_root(miss_at(finer), v, 1e-3)?;

    Ok(Some(OracleResult {
        energy,
        match_residual: residual,
        convergence_order_estimate: observed_order([energy, energy_of(m, v1), energy_of(m, v2)]),
        r_min_sensitivity: (energy - energy_of(m, v_half)).abs(),
        levels_found: roots.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(l: i64, s: i32, mu: f64) -> DiracChannel {
        DiracChannel::new(1.0, l, s, mu).unwrap()
    }

    fn xi(v: f64) -> Extension {
        Extension::from_xi(v).unwrap()
    }

    #[test]
    fn seed_solves_the_system_near_origin() {
        let c = ch(0, -1, 0.3);
        let e = 0.2;
        let r = 1e-3;
        let h = 1e-7;
        let f = |r| boundary_seed(&c, -0.7, e, r);
        let (a, b) = (f(r - h), f(r + h));
        let d = [(b[0] - a[0]) / (2.0 * h), (b[1] - a[1]) / (2.0 * h)];
        let y = f(r);
        let (s, nt) = (-1.0, c.nu_tilde());
        let row1 = s * d[1] + nt * y[1] / r - (e - 1.0) * y[0];
        let row2 = -s * d[0] + nt * y[0] / r - (e + 1.0) * y[1];
        assert!(row1.abs() < 1e-5 * (nt * y[1] / r).abs());
        assert!(row2.abs() < 1e-5 * (nt * y[0] / r).abs());
    }

    #[test]
    fn golden_level_by_shooting() {
        let r = dirac_shoot(&ch(0, -1, 0.25), &xi(-1.0), &ShootingConfig::dirac()).unwrap().unwrap();
        assert!((r.energy + 0.566_001_999_692_191_1).abs() < 1e-7, "{r:?}");
        assert_eq!(r.levels_found, 1);
        assert!(r.match_residual < 1e-9, "{r:?}");
    }

    #[test]
    fn weak_binding_from_upper_continuum() {
        let r = dirac_shoot(&ch(0, -1, 0.25), &xi(-0.05), &ShootingConfig::dirac()).unwrap().unwrap();
        assert!(r.energy > 0.99, "{r:?}");
    }

    #[test]
    fn zero_mode_channel() {
        let r = dirac_shoot(&ch(0, -1, 0.5), &xi(-1.0), &ShootingConfig::dirac()).unwrap().unwrap();
        assert!(r.energy.abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn no_level_without_extension() {
        assert!(dirac_shoot(&ch(0, 1, 0.0), &xi(-1.0), &ShootingConfig::dirac()).unwrap().is_none());
        assert!(dirac_shoot(&ch(0, -1, 0.3), &xi(0.5), &ShootingConfig::dirac()).unwrap().is_none());
    }
}

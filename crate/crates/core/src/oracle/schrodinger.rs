use std::f64::consts::PI;

use super::integrate::numerov;
use super::{frobenius_tail, k_asymptotic, local_root, observed_order, scan_roots, OracleResult, ShootingConfig};
use crate::ac_spectrum::{ac_classify, AcChannel, AcRegime};
use crate::error::{Error, Result};
use crate::extension::Extension;

/// Numerov start for the stripped radial function `g = f / sqrt(mr)`
/// seeded as `(mr)^gamma + xi (mr)^{-gamma}` (each with its Frobenius
/// series): `g(t0)` and the first difference `g(t0 + h) - g(t0)`. Each part
/// advances by the exact growth factor of the discrete recurrence near the
/// origin, so the dominant `r^{-gamma}` part does not leak into the
/// `r^{gamma}` mode through the start values.
fn seed_start(gamma: f64, m: f64, xi: f64, energy: f64, t0: f64, h: f64) -> (f64, f64) {
    let k2 = 2.0 * m * energy;
    let (r0, r1) = (t0.exp(), (t0 + h).exp());
    let hg2 = h * h * gamma * gamma;
    let c = hg2 / (2.0 * (1.0 - hg2 / 12.0));
    let theta = (c + (c * (2.0 + c)).sqrt()).ln_1p();
    let part = |p: f64, step: f64| {
        let (a0, a1) = (frobenius_tail(p, k2, r0), frobenius_tail(p, k2, r1));
        let y0 = (m * r0).powf(p) * (1.0 + a0);
        (y0, y0 * (step + ((a1 - a0) / (1.0 + a0)).ln_1p()).exp_m1())
    };
    let (a0, da) = part(gamma, theta);
    let (b0, db) = part(-gamma, -theta);
    (a0 + xi * b0, da + xi * db)
}

/// Numerov steps for every energy of the scan: the widest log-radius span
/// of the bracket at a step shrinking like `tol^{1/5}` (one factor 32 of
/// tolerance halves it). Fixing the count keeps the miss continuous in E.
fn step_count(m: f64, cfg: &ShootingConfig) -> usize {
    let kappa_min = (2.0 * m * m * -cfg.energy_bracket.1).sqrt();
    let r_max = cfg.r_max.map_or(40.0 / kappa_min, |r| r / m);
    let span = (r_max / (cfg.r_min / m)).ln().max(1.0);
    let target = 0.5 * cfg.tol.powf(0.2);
    (span / target).ceil() as usize
}

/// Wronskian in `ln r` of the integrated `g` with the decaying
/// `K_gamma(kappa r)` at `r_max`; conserved, smooth in `E`, zero at a level.
pub fn schrodinger_miss(ch: &AcChannel, ext: &Extension, energy: f64, cfg: &ShootingConfig) -> Result<f64> {
    let (gamma, _) = ac_classify(ch);
    let m = ch.m();
    if !(energy < 0.0) {
        return Err(Error::Domain(format!("bound energy must be negative, got {energy}")));
    }
    let kappa = (-2.0 * m * energy).sqrt();
    let r_min = cfg.r_min / m;
    let r_max = cfg.r_max.map_or(40.0 / kappa, |r| r / m);
    if !(r_max > r_min) {
        return Err(Error::Domain(format!("matching radius {r_max} inside the inner cutoff {r_min}")));
    }
    let (t0, t1) = (r_min.ln(), r_max.ln());
    let n = step_count(m, cfg);
    let h = (t1 - t0) / n as f64;
    let (y0, delta) = seed_start(gamma, m, ext.xi(), energy, t0, h);
    let g2 = gamma * gamma;
    let k2 = kappa * kappa;
    let (y, dy) = numerov(|t| g2 + k2 * (2.0 * t).exp(), t0, h, n, y0, delta);
    if !y.is_finite() || !dy.is_finite() {
        return Err(Error::Stiffness(r_max));
    }
    let z = kappa * r_max;
    let (p, zdp) = k_asymptotic(gamma, z);
    let d = (0.5 * PI / z).sqrt() * (-z).exp() * p;
    let dt = d * (-0.5 - z + zdp);
    Ok(y * dt - dy * d)
}

/// Bound level of the Schrodinger problem by Numerov shooting; `None`
/// for `xi >= 0`, regular channels, or when the scan finds no level.
pub fn schrodinger_shoot(ch: &AcChannel, ext: &Extension, cfg: &ShootingConfig) -> Result<Option<OracleResult>> {
    cfg.validate()?;
    match ac_classify(ch) {
        (_, AcRegime::Regular) => return Ok(None),
        (g, AcRegime::LogCritical) => return Err(Error::Regime(format!("{} (gamma = {g})", AcRegime::LogCritical))),
        _ => {}
    }
    if !ext.binds() {
        return Ok(None);
    }
    let m = ch.m();
    let (lo, hi) = cfg.energy_bracket;
    if !(hi < 0.0) {
        return Err(Error::Domain(format!("energy bracket must be negative, got ({lo}, {hi})")));
    }
    // scan variable v = ln(-E/m)
    let energy_of = |v: f64| -m * v.exp();
    let miss_at = |c: ShootingConfig| move |v: f64| schrodinger_miss(ch, ext, energy_of(v), &c);

    let roots = scan_roots(miss_at(*cfg), (-hi).ln(), (-lo).ln(), cfg.scan_points)?;
    let Some(&(v, residual)) = roots.first() else {
        return Ok(None);
    };
    let energy = energy_of(v);
    let half = ShootingConfig { r_min: 0.5 * cfg.r_min, ..*cfg };
    let (v_half, _) = local_root(miss_at(half), v, 1e-3)?;
    let (v1, _) = local_root(miss_at(ShootingConfig { tol: cfg.tol / 32.0, ..*cfg }), v, 1e-3)?;
    let (v2, _) = local_root(miss_at(ShootingConfig { tol: cfg.tol / 1024.0, ..*cfg }), v, 1e-3)?;
    Ok(Some(OracleResult {
        energy,
        match_residual: residual,
        convergence_order_estimate: observed_order([energy, energy_of(v1), energy_of(v2)]),
        r_min_sensitivity: (energy - energy_of(v_half)).abs(),
        levels_found: roots.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(v: f64) -> Extension {
        Extension::from_xi(v).unwrap()
    }

    #[test]
    fn half_index_level() {
        let c = AcChannel::with_gamma(1.0, 0.5).unwrap();
        let r = schrodinger_shoot(&c, &xi(-1.0), &ShootingConfig::schrodinger()).unwrap().unwrap();
        assert!((r.energy + 0.5).abs() < 1e-6, "{r:?}");
        assert_eq!(r.levels_found, 1);
    }

    #[test]
    fn no_level_for_positive_xi_or_regular_channel() {
        let c = AcChannel::with_gamma(1.0, 0.4).unwrap();
        assert!(schrodinger_shoot(&c, &xi(0.3), &ShootingConfig::schrodinger()).unwrap().is_none());
        let reg = AcChannel::with_gamma(1.0, 1.3).unwrap();
        assert!(schrodinger_shoot(&reg, &xi(-1.0), &ShootingConfig::schrodinger()).unwrap().is_none());
        let log = AcChannel::with_gamma(1.0, 0.0).unwrap();
        assert!(schrodinger_shoot(&log, &xi(-1.0), &ShootingConfig::schrodinger()).is_err());
    }
}

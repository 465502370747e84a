//! Aharonov-Casher sector: a neutral fermion with anomalous magnetic
//! moment in the field of a charged thread, in the nonrelativistic limit.
//!
//! The radial equation is Bessel's with index `gamma = |l + zeta Ma|`.
//! Bound states exist for `xi < 0` in the orientation used throughout.

use std::f64::consts::PI;
use std::fmt;

use crate::doublet::{fit_two_series, RadialDoublet};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::numkernel::{bessel_k, expand_bracket, find_root_bracketed, log_gamma, sin_pi, EULER_GAMMA};

pub const CRITICAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcRegime {
    /// `0 < gamma < 1`.
    Extended,
    /// `gamma = 0`.
    LogCritical,
    /// `gamma >= 1`.
    Regular,
}

impl fmt::Display for AcRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AcRegime::Extended => "extended",
            AcRegime::LogCritical => "log-critical",
            AcRegime::Regular => "regular",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcChannel {
    m: f64,
    coupling: f64,
    l: i64,
    zeta: i32,
}

impl AcChannel {
    /// `coupling` is the product `M a` of the anomalous moment and the
    /// thread charge parameter; `zeta = +-1` is the spin projection.
    pub fn new(m: f64, coupling: f64, l: i64, zeta: i32) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Domain(format!("mass must be positive, got {m}")));
        }
        if zeta != 1 && zeta != -1 {
            return Err(Error::Domain(format!("spin projection must be +1 or -1, got {zeta}")));
        }
        if !coupling.is_finite() {
            return Err(Error::Domain(format!("coupling must be finite, got {coupling}")));
        }
        Ok(Self { m, coupling, l, zeta })
    }

    /// Channel with `l = 0, zeta = 1` and the given index.
    pub fn with_gamma(m: f64, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0) {
            return Err(Error::Domain(format!("index must be nonnegative, got {gamma}")));
        }
        Self::new(m, -gamma, 0, 1)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn zeta(&self) -> i32 {
        self.zeta
    }

    pub fn gamma(&self) -> f64 {
        (self.l as f64 + self.zeta as f64 * self.coupling).abs()
    }
}

pub fn ac_classify(ch: &AcChannel) -> (f64, AcRegime) {
    let g = ch.gamma();
    let regime = if g <= CRITICAL_TOL {
        AcRegime::LogCritical
    } else if g < 1.0 - CRITICAL_TOL {
        AcRegime::Extended
    } else {
        AcRegime::Regular
    };
    (g, regime)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcLevel {
    pub energy: f64,
    pub kappa: f64,
    pub xi: f64,
    pub channel: AcChannel,
    pub residual: f64,
}

impl AcLevel {
    pub fn e_over_m(&self) -> f64 {
        self.energy / self.channel.m
    }

    pub fn kappa_over_m(&self) -> f64 {
        self.kappa / self.channel.m
    }
}

fn log_gamma_ratio(g: f64) -> Result<f64> {
    Ok(log_gamma(1.0 + g)? - log_gamma(1.0 - g)?)
}

fn require_extended(ch: &AcChannel) -> Result<f64> {
    match ac_classify(ch) {
        (g, AcRegime::Extended) => Ok(g),
        (g, r) => Err(Error::Regime(format!("{r} (gamma = {g})"))),
    }
}

/// `omega(E) = Gamma(1+gamma)/Gamma(1-gamma) (2m/kappa)^{2 gamma}`, `kappa = sqrt(-2mE)`.
pub fn ac_wronskian(ch: &AcChannel, energy: f64) -> Result<f64> {
    let g = require_extended(ch)?;
    if !(energy < 0.0) {
        return Err(Error::Domain(format!("Wronskian needs E < 0, got {energy}")));
    }
    let m = ch.m;
    // (2m/kappa)^2 = 2m / (-E)
    Ok((log_gamma_ratio(g)? + g * (2.0 * m / -energy).ln()).exp())
}

fn level(ch: &AcChannel, energy: f64, xi: f64, residual: f64) -> AcLevel {
    AcLevel { energy, kappa: (-2.0 * ch.m * energy).sqrt(), xi, channel: *ch, residual }
}

/// Closed-form bound level:
/// `E = -2m (-xi Gamma(1-gamma)/Gamma(1+gamma))^{-1/gamma}` for `0 < gamma < 1`
/// and `E = -4m exp(2(xi - C))` at `gamma = 0`. `None` unless `-inf < xi < 0`.
pub fn ac_bound_energy(ch: &AcChannel, ext: &Extension) -> Result<Option<AcLevel>> {
    let (g, regime) = ac_classify(ch);
    if regime == AcRegime::Regular {
        return Err(Error::Regime(format!("{regime} (gamma = {g})")));
    }
    if !ext.binds() {
        return Ok(None);
    }
    let xi = ext.xi();
    let m = ch.m;
    if regime == AcRegime::LogCritical {
        let energy = -4.0 * m * (2.0 * (xi - EULER_GAMMA)).exp();
        let back = 0.5 * (-energy / (4.0 * m)).ln() + EULER_GAMMA;
        return Ok(Some(level(ch, energy, xi, (back - xi).abs() / xi.abs().max(1.0))));
    }
    let energy = -2.0 * m * (-((-xi).ln() - log_gamma_ratio(g)?) / g).exp();
    let residual = (ac_wronskian(ch, energy)? / -xi - 1.0).abs();
    Ok(Some(level(ch, energy, xi, residual)))
}

/// Same level found by bracketed root search on `omega(E) = -xi` in `ln(-E)`.
pub fn ac_solve_cross_check(ch: &AcChannel, ext: &Extension) -> Result<Option<AcLevel>> {
    let g = require_extended(ch)?;
    if !ext.binds() {
        return Ok(None);
    }
    let xi = ext.xi();
    let m = ch.m;
    let target = (-xi).ln();
    let log_g = log_gamma_ratio(g)?;
    let f = |t: f64| log_g + g * ((2.0 * m).ln() - t) - target;
    let start = (2.0 * m).ln();
    let bracket = expand_bracket(f, start - 1.0, start + 1.0, 64)?;
    let t = find_root_bracketed(f, bracket, 0.0, 0.0)?;
    let energy = -t.exp();
    let residual = (ac_wronskian(ch, energy)? / -xi - 1.0).abs();
    Ok(Some(level(ch, energy, xi, residual)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialLevels {
    /// `l = 0` channels.
    pub e0: f64,
    /// `l = +-1` channels.
    pub e_pm1: f64,
}

/// Levels of the `l = 0` and `l = +-1` channels for `-Ma = c in (0, 1)`.
pub fn ac_special_levels(m: f64, c: f64, ext: &Extension) -> Result<SpecialLevels> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0, 1), got {c}")));
    }
    if !ext.binds() {
        return Err(Error::Domain(format!("special levels need xi < 0, got {}", ext.xi())));
    }
    let lx = (-ext.xi()).ln();
    let e0 = -2.0 * m * (-(lx + log_gamma(1.0 - c)? - log_gamma(1.0 + c)?) / c).exp();
    let e_pm1 = -2.0 * m * ((lx + log_gamma(c)? - log_gamma(2.0 - c)?) / (c - 1.0)).exp();
    Ok(SpecialLevels { e0, e_pm1 })
}

/// `int_0^inf z K_a(z)^2 dz` for `|a| < 1`.
fn k_square_moment(a: f64) -> f64 {
    if a == 0.0 {
        0.5
    } else {
        PI * a / (2.0 * sin_pi(a))
    }
}

/// Normalized `N sqrt(mr) K_gamma(kappa r)` as a single-component doublet.
pub fn ac_wavefunction(level: &AcLevel) -> Result<RadialDoublet> {
    let ch = level.channel;
    let (g, regime) = ac_classify(&ch);
    if regime == AcRegime::Regular || !(level.kappa > 0.0) {
        return Err(Error::Domain(format!("not a valid bound level: gamma = {g}, kappa = {}", level.kappa)));
    }
    let (m, kappa) = (ch.m, level.kappa);
    let n = kappa / (m * k_square_moment(g)).sqrt();
    let eval = move |r: f64| ((m * r).sqrt() * bessel_k(g, kappa * r).unwrap_or(f64::NAN), 0.0);
    Ok(RadialDoublet::new(eval, (0.5 - g, f64::INFINITY), kappa).scaled(n))
}

/// `xi` read off the small-r expansion `sqrt(mr) A [(mr)^gamma + xi (mr)^{-gamma}]`.
pub fn ac_fit_boundary_xi(ch: &AcChannel, d: &RadialDoublet) -> Result<f64> {
    let g = require_extended(ch)?;
    let (m, kappa) = (ch.m, d.decay_rate());
    // fit in z = kappa r, then convert to powers of mr
    let (cp, cm) = fit_two_series(|z| d.eval(z / kappa).0 / (m * z / kappa).sqrt(), g, -g)?;
    Ok(cm / cp * (kappa / m).powf(-2.0 * g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(v: f64) -> Extension {
        Extension::from_xi(v).unwrap()
    }

    #[test]
    fn classification() {
        let (g, r) = ac_classify(&AcChannel::new(1.0, -0.3, 0, 1).unwrap());
        assert!((g - 0.3).abs() < 1e-15 && r == AcRegime::Extended);
        assert_eq!(ac_classify(&AcChannel::new(1.0, -1.0, 1, 1).unwrap()), (0.0, AcRegime::LogCritical));
        let (g, r) = ac_classify(&AcChannel::new(1.0, -0.3, 2, 1).unwrap());
        assert!((g - 1.7).abs() < 1e-15 && r == AcRegime::Regular);
        assert_eq!(ac_classify(&AcChannel::with_gamma(1.0, 1.0).unwrap()).1, AcRegime::Regular);
    }

    #[test]
    fn wronskian_values() {
        let c = AcChannel::with_gamma(1.0, 0.5).unwrap();
        assert!((ac_wronskian(&c, -0.5).unwrap() - 1.0).abs() < 1e-14);
        let tiny = AcChannel::with_gamma(1.0, 1e-7).unwrap();
        assert!((ac_wronskian(&tiny, -0.3).unwrap() - 1.0).abs() < 1e-5);
        let mut last = f64::INFINITY;
        for i in 1..50 {
            let w = ac_wronskian(&c, -0.1 * i as f64).unwrap();
            assert!(w < last);
            last = w;
        }
    }

    #[test]
    fn closed_forms() {
        let c = AcChannel::with_gamma(1.0, 0.5).unwrap();
        let lv = ac_bound_energy(&c, &xi(-1.0)).unwrap().unwrap();
        assert!((lv.energy + 0.5).abs() < 1e-12);
        assert!((lv.kappa - 1.0).abs() < 1e-12);
        let z = AcChannel::with_gamma(1.0, 0.0).unwrap();
        let lv = ac_bound_energy(&z, &xi(-1.0)).unwrap().unwrap();
        let expect = -4.0 * (2.0 * (-1.0 - EULER_GAMMA)).exp();
        assert!((lv.energy - expect).abs() < 1e-12);
        assert!((lv.energy + 0.170_65).abs() < 1e-5);
    }

    #[test]
    fn root_finder_agrees_with_closed_form() {
        for g in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for x in [-10.0, -2.0, -1.0, -0.3, -0.1] {
                let c = AcChannel::with_gamma(1.0, g).unwrap();
                let a = ac_bound_energy(&c, &xi(x)).unwrap().unwrap();
                let b = ac_solve_cross_check(&c, &xi(x)).unwrap().unwrap();
                assert!((a.energy - b.energy).abs() <= 1e-9 * a.energy.abs().max(1.0), "g={g} xi={x}");
                assert!(a.residual <= 1e-10 && b.residual <= 1e-10);
            }
        }
    }

    #[test]
    fn levels_scale_with_mass() {
        let e1 = ac_bound_energy(&AcChannel::with_gamma(1.0, 0.3).unwrap(), &xi(-2.0)).unwrap().unwrap().energy;
        let e7 = ac_bound_energy(&AcChannel::with_gamma(7.0, 0.3).unwrap(), &xi(-2.0)).unwrap().unwrap().energy;
        assert!((e7 / 7.0 - e1).abs() < 1e-14 * e1.abs());
    }

    #[test]
    fn no_level_outside_negative_xi() {
        let c = AcChannel::with_gamma(1.0, 0.4).unwrap();
        for x in [0.0, 1.0, f64::INFINITY] {
            assert!(ac_bound_energy(&c, &xi(x)).unwrap().is_none());
        }
        assert!(ac_bound_energy(&AcChannel::with_gamma(1.0, 1.4).unwrap(), &xi(-1.0)).is_err());
    }

    #[test]
    fn special_levels_are_degenerate() {
        let half = ac_special_levels(1.0, 0.5, &xi(-1.0)).unwrap();
        assert!((half.e0 + 0.5).abs() < 1e-12 && (half.e_pm1 + 0.5).abs() < 1e-12);
        let a = ac_special_levels(1.0, 0.3, &xi(-1.0)).unwrap();
        let b = ac_special_levels(1.0, 0.7, &xi(-1.0)).unwrap();
        assert!((a.e0 - b.e_pm1).abs() < 1e-12 * a.e0.abs());
        let direct = ac_bound_energy(&AcChannel::with_gamma(1.0, 0.3).unwrap(), &xi(-1.0)).unwrap().unwrap();
        assert!((a.e0 - direct.energy).abs() < 1e-12 * a.e0.abs());
        assert!(ac_special_levels(1.0, 1.0, &xi(-1.0)).is_err());
    }

    #[test]
    fn wavefunction_norm_and_boundary_ratio() {
        for (g, x) in [(0.5, -1.0), (0.3, -2.0), (0.8, -0.4), (0.15, -5.0)] {
            let c = AcChannel::with_gamma(1.0, g).unwrap();
            let lv = ac_bound_energy(&c, &xi(x)).unwrap().unwrap();
            let d = ac_wavefunction(&lv).unwrap();
            assert!((d.norm_squared().unwrap() - 1.0).abs() < 1e-8, "g={g}");
            let got = ac_fit_boundary_xi(&c, &d).unwrap();
            assert!((got - x).abs() < 1e-8 * x.abs(), "g={g}: {got} vs {x}");
        }
        let c = AcChannel::with_gamma(1.0, 0.5).unwrap();
        let d = ac_wavefunction(&ac_bound_energy(&c, &xi(-1.0)).unwrap().unwrap()).unwrap();
        // K_{1/2}: sqrt(r) K_{1/2}(r) = sqrt(pi/2) e^{-r}, normalized to sqrt(2) e^{-r}
        assert!((d.eval(0.7).0 - 2f64.sqrt() * (-0.7f64).exp()).abs() < 1e-12);
    }
}

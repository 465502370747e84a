//! Independent shooting eigensolver for the radial Dirac and Schrodinger
//! problems with mixed `r^{+-index}` boundary data at the origin.
//!
//! Nothing here uses the closed-form level equations or the Bessel
//! routines: boundary data come from Frobenius series, the outer match
//! from the large-argument expansion of the decaying solution.

mod dirac;
mod integrate;
mod schrodinger;

use crate::error::{Error, Result};
use crate::numkernel::{expand_bracket, find_root_bracketed, Bracket};

pub use dirac::{dirac_miss, dirac_shoot};
pub use integrate::{dopri5, numerov, IntegrationStats};
pub use schrodinger::{schrodinger_miss, schrodinger_shoot};

use crate::ab_spectrum::DiracChannel;
use crate::ac_spectrum::AcChannel;
use crate::extension::Extension;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Inner cutoff in units of `1/m`.
    pub r_min: f64,
    /// Outer cutoff in units of `1/m`; `None` matches at `40 / decay rate`.
    pub r_max: Option<f64>,
    /// Relative integration tolerance.
    pub tol: f64,
    /// Energy search interval in units of `m`.
    pub energy_bracket: (f64, f64),
    /// Number of scan points used to locate sign changes.
    pub scan_points: usize,
}

impl ShootingConfig {
    pub fn dirac() -> Self {
        Self { r_min: 1e-6, r_max: None, tol: 1e-9, energy_bracket: (-1.0 + 1e-9, 1.0 - 1e-9), scan_points: 48 }
    }

    pub fn schrodinger() -> Self {
        Self { r_min: 1e-6, r_max: None, tol: 1e-9, energy_bracket: (-1e6, -1e-6), scan_points: 64 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) || self.r_max.is_some_and(|r| !(r > self.r_min)) {
            return Err(Error::Domain(format!("need 0 < r_min < r_max, got {} and {:?}", self.r_min, self.r_max)));
        }
        if !(self.tol > 1e-14 && self.tol < 1e-4) {
            return Err(Error::Domain(format!("tolerance must lie in (1e-14, 1e-4), got {}", self.tol)));
        }
        let (lo, hi) = self.energy_bracket;
        if !(lo < hi) || self.scan_points < 2 {
            return Err(Error::Domain(format!("bad energy bracket ({lo}, {hi}) or scan size")));
        }
        Ok(())
    }

    /// One rung finer: `r_min` halved, tolerance divided by 32.
    pub fn refined(&self) -> Self {
        Self { r_min: 0.5 * self.r_min, tol: self.tol / 32.0, ..*self }
    }

    /// `base` followed by `rungs - 1` successive refinements.
    pub fn ladder(base: Self, rungs: usize) -> Vec<Self> {
        std::iter::successors(Some(base), |c| Some(c.refined())).take(rungs).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub energy: f64,
    /// `|W|` at the returned energy, `W` the Wronskian of the shot solution
    /// (unit template coefficient) with the decaying one.
    pub match_residual: f64,
    /// Observed order over the tolerances `tol, tol/32, tol/1024`,
    /// counting each factor 32 as one halving of the step.
    pub convergence_order_estimate: f64,
    /// `|E(r_min) - E(r_min/2)|`.
    pub r_min_sensitivity: f64,
    /// Sign changes of the miss function seen in the scan.
    pub levels_found: usize,
}

/// Roots of `miss(v)` on `[lo, hi]`: scan for sign changes, then Brent.
pub(crate) fn scan_roots<F: FnMut(f64) -> Result<f64>>(mut miss: F, lo: f64, hi: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..points {
        let v = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let f = miss(v)?;
        if let Some((pv, pf)) = prev {
            if pf == 0.0 {
                roots.push((pv, 0.0));
            } else if f != 0.0 && pf.signum() != f.signum() {
                let b = Bracket::from_values(pv, v, pf, f)?;
                let root = refine(&mut miss, b)?;
                roots.push(root);
            }
        }
        prev = Some((v, f));
    }
    if let Some((pv, 0.0)) = prev {
        roots.push((pv, 0.0));
    }
    Ok(roots)
}

fn refine<F: FnMut(f64) -> Result<f64>>(miss: &mut F, b: Bracket) -> Result<(f64, f64)> {
    let mut failure = None;
    let root = find_root_bracketed(
        |v| match miss(v) {
            Ok(f) => f,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        b,
        0.0,
        0.0,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let residual = miss(root)?.abs();
    Ok((root, residual))
}

/// Re-solves near `v0` with a different miss function (used for the
/// nested-cutoff and tolerance checks).
pub(crate) fn local_root<F: FnMut(f64) -> Result<f64>>(mut miss: F, v0: f64, width: f64) -> Result<(f64, f64)> {
    let mut failure = None;
    let b = expand_bracket(
        |v| match miss(v) {
            Ok(f) => f,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        v0 - width,
        v0 + width,
        20,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    refine(&mut miss, b)
}

/// Observed order from three successive values, the step halving per rung.
pub(crate) fn observed_order(e: [f64; 3]) -> f64 {
    let d1 = e[0] - e[1];
    let d2 = e[1] - e[2];
    (d1 / d2).abs().log2()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleProblem {
    Dirac(DiracChannel, Extension),
    Schrodinger(AcChannel, Extension),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Energy at each rung, in units of `m`.
    pub energies: Vec<f64>,
    pub extrapolated: f64,
    pub observed_order: f64,
    /// Successive differences shrink with constant sign.
    pub monotone: bool,
}

/// Solves on each rung of `ladder` (at least three) and extrapolates.
pub fn convergence_study(problem: &OracleProblem, ladder: &[ShootingConfig]) -> Result<ConvergenceReport> {
    if ladder.len() < 3 {
        return Err(Error::Domain("convergence study needs at least three configurations".into()));
    }
    let mut energies = Vec::with_capacity(ladder.len());
    for cfg in ladder {
        let res = match problem {
            OracleProblem::Dirac(ch, ext) => dirac_shoot(ch, ext, cfg)?.map(|r| r.energy / ch.m()),
            OracleProblem::Schrodinger(ch, ext) => schrodinger_shoot(ch, ext, cfg)?.map(|r| r.energy / ch.m()),
        };
        energies.push(res.ok_or_else(|| Error::Domain("no level found on a ladder rung".into()))?);
    }
    let n = energies.len();
    let tail = [energies[n - 3], energies[n - 2], energies[n - 1]];
    let d1 = tail[0] - tail[1];
    let d2 = tail[1] - tail[2];
    let observed = observed_order(tail);
    // Aitken: geometric error model E_i = E + C q^i
    let extrapolated = if d1 != d2 { tail[2] - d2 * d2 / (d1 - d2) } else { tail[2] };
    let monotone = energies
        .windows(3)
        .all(|w| {
            let (a, b) = (w[0] - w[1], w[1] - w[2]);
            b == 0.0 || (a.signum() == b.signum() && b.abs() < a.abs())
        });
    Ok(ConvergenceReport { energies, extrapolated, observed_order: observed, monotone })
}

/// Large-argument expansion of `K_a(z)` without its `sqrt(pi/2z) e^{-z}`
/// prefactor, and `z d/dz` of its logarithm.
pub(crate) fn k_asymptotic(a: f64, z: f64) -> (f64, f64) {
    let mu = 4.0 * a * a;
    let t1 = (mu - 1.0) / (8.0 * z);
    let t2 = (mu - 1.0) * (mu - 9.0) / (2.0 * 64.0 * z * z);
    let t3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / (6.0 * 512.0 * z * z * z);
    let p = 1.0 + t1 + t2 + t3;
    let zdp = -t1 - 2.0 * t2 - 3.0 * t3;
    (p, zdp / p)
}

/// `sum_j (-k2 r^2/4)^j / (j! (p+1)_j)`.
pub(crate) fn frobenius_t(p: f64, k2: f64, r: f64) -> f64 {
    1.0 + frobenius_tail(p, k2, r)
}

/// [`frobenius_t`] without its leading `1`.
pub(crate) fn frobenius_tail(p: f64, k2: f64, r: f64) -> f64 {
    let x = -0.25 * k2 * r * r;
    let mut term = 1.0;
    let mut sum = 0.0;
    for j in 1..200 {
        term *= x / (j as f64 * (p + j as f64));
        sum += term;
        if term.abs() <= 1e-17 * (1.0 + sum.abs()) {
            break;
        }
    }
    sum
}

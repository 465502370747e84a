//! The level equations exactly as printed, kept for comparison with the
//! master equation.

use super::{DiracChannel, Regime};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::numkernel::{find_root_bracketed, gamma_fn, Bracket};

// lambda = m / cosh(Y_MAX) is far below any resolvable binding
const Y_MAX: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelVariant {
    /// `Gamma(2nu)Gamma(-nu+(1-s)/2) / (Gamma(-2nu)Gamma(nu+(1-s)/2)) (lambda/m)^{-2nu}`.
    Levab,
    /// `l+n = 0, s = -1` (or `l+n = -1, s = 1`) with `0 < beta < 1/2`.
    Lev0,
    /// Same channels with `1/2 < beta < 1`.
    Lev1,
}

fn gamma_prefactor(ch: &DiracChannel) -> Result<f64> {
    let nu = ch.nu();
    let h = 0.5 * (1.0 - ch.s() as f64);
    Ok(gamma_fn(2.0 * nu)? * gamma_fn(-nu + h)? / (gamma_fn(-2.0 * nu)? * gamma_fn(nu + h)?))
}

fn lambda_of(ch: &DiracChannel, energy: f64) -> Result<f64> {
    let m = ch.m();
    if !(energy.abs() < m) {
        return Err(Error::Domain(format!("printed Wronskian needs |E| < m, got E = {energy}")));
    }
    Ok(((m - energy) * (m + energy)).sqrt())
}

/// Printed Wronskian
/// `omega(E) = [Gamma(2nu)Gamma(-nu+(1-s)/2) / (Gamma(-2nu)Gamma(nu+(1-s)/2))] (2 lambda/m)^{-2nu} 4 s lambda`.
pub fn paper_omega(ch: &DiracChannel, energy: f64) -> Result<f64> {
    require_extended(ch)?;
    let lambda = lambda_of(ch, energy)?;
    let nu = ch.nu();
    Ok(gamma_prefactor(ch)? * (2.0 * lambda / ch.m()).powf(-2.0 * nu) * 4.0 * ch.s() as f64 * lambda)
}

/// `omega(E) + 4 s lambda xi`.
pub fn paper_omega_xi(ch: &DiracChannel, ext: &Extension, energy: f64) -> Result<f64> {
    if ext.is_infinite() {
        return Err(Error::Domain("printed Wronskian needs finite xi".into()));
    }
    let lambda = lambda_of(ch, energy)?;
    Ok(paper_omega(ch, energy)? + 4.0 * ch.s() as f64 * lambda * ext.xi())
}

/// `Gamma(1-2b)Gamma(1/2+b) / (Gamma(2b-1)Gamma(3/2-b)) (m/lambda)^{2b-1}`.
pub fn lev0_lhs(beta: f64, lambda_over_m: f64) -> Result<f64> {
    let g = gamma_fn(1.0 - 2.0 * beta)? * gamma_fn(0.5 + beta)? / (gamma_fn(2.0 * beta - 1.0)? * gamma_fn(1.5 - beta)?);
    Ok(g * lambda_over_m.powf(1.0 - 2.0 * beta))
}

/// `Gamma(2b-1)Gamma(3/2-b) / (Gamma(1-2b)Gamma(1/2+b)) (m/lambda)^{1-2b}`.
pub fn lev1_lhs(beta: f64, lambda_over_m: f64) -> Result<f64> {
    let g = gamma_fn(2.0 * beta - 1.0)? * gamma_fn(1.5 - beta)? / (gamma_fn(1.0 - 2.0 * beta)? * gamma_fn(0.5 + beta)?);
    Ok(g * lambda_over_m.powf(2.0 * beta - 1.0))
}

/// Left-hand side of a printed level equation (`lhs = xi` at a level).
pub fn paper_level_lhs(ch: &DiracChannel, energy: f64, variant: LevelVariant) -> Result<f64> {
    let lambda = lambda_of(ch, energy)?;
    level_lhs_of_lambda(ch, lambda / ch.m(), variant)
}

fn require_extended(ch: &DiracChannel) -> Result<()> {
    let regime = ch.classify().regime;
    if regime != Regime::Extended {
        return Err(Error::Regime(format!("{regime} (nu = {})", ch.nu())));
    }
    Ok(())
}

fn level_lhs_of_lambda(ch: &DiracChannel, lm: f64, variant: LevelVariant) -> Result<f64> {
    match variant {
        LevelVariant::Levab => {
            require_extended(ch)?;
            Ok(gamma_prefactor(ch)? * lm.powf(-2.0 * ch.nu()))
        }
        LevelVariant::Lev0 | LevelVariant::Lev1 => {
            let flux = ch.classify().flux;
            let ln = ch.l() + flux.n;
            let family = (ln == 0 && ch.s() == -1) || (ln == -1 && ch.s() == 1);
            if !family {
                return Err(Error::Regime(format!(
                    "printed lev0/lev1 cover l+n = 0, s = -1 and l+n = -1, s = 1; got l+n = {ln}, s = {}",
                    ch.s()
                )));
            }
            let b = flux.beta;
            match variant {
                LevelVariant::Lev0 if b > 0.0 && b < 0.5 => lev0_lhs(b, lm),
                LevelVariant::Lev1 if b > 0.5 && b < 1.0 => lev1_lhs(b, lm),
                _ if b == 0.5 => Err(Error::Pole(0.0)),
                _ => Err(Error::Domain(format!("beta = {b} outside the range of {variant:?}"))),
            }
        }
    }
}

/// Solves a printed equation `lhs(lambda) = xi` over `lambda in (0, m)`.
///
/// The printed forms depend on `E` only through `lambda`, so the sign of
/// the energy is not determined; the root is reported as `E >= 0`.
/// Returns `None` when the printed left-hand side never reaches `xi`.
pub fn solve_paper_level(ch: &DiracChannel, ext: &Extension, variant: Option<LevelVariant>) -> Result<Option<(f64, f64)>> {
    if ext.is_infinite() {
        return Ok(None);
    }
    let xi = ext.xi();
    // lambda = m / cosh(y)
    let lhs = |y: f64| -> Result<f64> {
        let lm = 1.0 / y.cosh();
        match variant {
            Some(v) => level_lhs_of_lambda(ch, lm, v),
            None => {
                require_extended(ch)?;
                Ok(gamma_prefactor(ch)? * (2.0 * lm).powf(-2.0 * ch.nu()))
            }
        }
    };
    // `None` is the Wronskian form omega = -4 s lambda xi.
    let target = if variant.is_some() { xi } else { -xi };
    let probe = lhs(0.0)?;
    if probe == 0.0 || target == 0.0 || probe.signum() != target.signum() {
        return Ok(None);
    }
    let f = |y: f64| match lhs(y) {
        Ok(v) => v.abs().ln() - target.abs().ln(),
        Err(_) => f64::NAN,
    };
    // every printed form is a power of lambda, hence monotone in y >= 0
    let bracket = match Bracket::new(f, 0.0, Y_MAX) {
        Ok(b) => b,
        Err(_) => return Ok(None),
    };
    let y = find_root_bracketed(f, bracket, 0.0, 0.0)?;
    let energy = ch.m() * y.tanh();
    let residual = f(y).exp_m1().abs();
    Ok(Some((energy, residual)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ab_spectrum::master_xi_of_energy;

    fn ch(l: i64, s: i32, mu: f64) -> DiracChannel {
        DiracChannel::new(1.0, l, s, mu).unwrap()
    }

    #[test]
    fn omega_is_finite_with_constant_sign() {
        for c in [ch(0, -1, 0.3), ch(0, 1, -0.2), ch(-1, 1, 0.7)] {
            let sign = paper_omega(&c, 0.0).unwrap().signum();
            for i in 1..100 {
                let e = -0.99 + 0.02 * i as f64;
                let w = paper_omega(&c, e).unwrap();
                assert!(w.is_finite() && w.signum() == sign);
            }
        }
    }

    #[test]
    fn omega_at_zero_matches_master_magnitude() {
        for mu in [0.05, 0.2, 0.35, 0.6, 0.9] {
            for (l, s) in [(0, -1), (-1, 1)] {
                let c = ch(l, s, mu);
                let w = paper_omega(&c, 0.0).unwrap() / (4.0 * s as f64);
                let xi = master_xi_of_energy(&c, 0.0).unwrap();
                assert!((w.abs() - xi.abs()).abs() < 1e-10 * xi.abs(), "mu={mu}: {w} vs {xi}");
            }
        }
    }

    #[test]
    fn omega_xi_is_linear_in_xi() {
        let c = ch(0, -1, 0.3);
        let e: f64 = 0.4;
        let lambda = (1.0 - e * e).sqrt();
        let w0 = paper_omega_xi(&c, &Extension::from_xi(0.0).unwrap(), e).unwrap();
        assert_eq!(w0, paper_omega(&c, e).unwrap());
        let w1 = paper_omega_xi(&c, &Extension::from_xi(-0.7).unwrap(), e).unwrap();
        let w2 = paper_omega_xi(&c, &Extension::from_xi(1.9).unwrap(), e).unwrap();
        assert!(((w1 - w2) - -4.0 * lambda * (-0.7 - 1.9)).abs() < 1e-12);
    }

    #[test]
    fn lev0_tends_to_minus_one_at_half_flux() {
        for k in 3..9 {
            let b = 0.5 - 10f64.powi(-k);
            let v = lev0_lhs(b, 0.6).unwrap();
            assert!((v + 1.0).abs() < 10.0 * 10f64.powi(-k), "beta={b}: {v}");
        }
        assert!(lev0_lhs(0.5, 0.6).is_err());
    }

    #[test]
    fn lev1_mirrors_lev0() {
        for lm in [0.1, 0.5, 0.99] {
            let a = lev0_lhs(0.3, lm).unwrap();
            let b = lev1_lhs(0.7, lm).unwrap();
            assert!((a - b).abs() < 1e-12 * a.abs());
        }
    }

    #[test]
    fn levab_differs_from_wronskian_by_power_of_two() {
        let c = ch(0, -1, 0.3);
        let nu = c.nu();
        for e in [-0.5f64, 0.0, 0.8] {
            let lambda = (1.0 - e * e).sqrt();
            let lev = paper_level_lhs(&c, e, LevelVariant::Levab).unwrap();
            let w = paper_omega(&c, e).unwrap() / (4.0 * c.s() as f64 * lambda);
            assert!((lev / w - 2f64.powf(2.0 * nu)).abs() < 1e-12);
        }
    }

    #[test]
    fn lev_family_checks() {
        assert!(paper_level_lhs(&ch(0, -1, 0.3), 0.0, LevelVariant::Lev0).is_ok());
        assert!(paper_level_lhs(&ch(-1, 1, 0.3), 0.0, LevelVariant::Lev0).is_ok());
        assert!(paper_level_lhs(&ch(0, -1, 0.3), 0.0, LevelVariant::Lev1).is_err());
        assert!(paper_level_lhs(&ch(1, -1, 0.3), 0.0, LevelVariant::Lev0).is_err());
        assert_eq!(paper_level_lhs(&ch(0, -1, 0.5), 0.0, LevelVariant::Lev0), Err(Error::Pole(0.0)));
    }

    #[test]
    fn printed_roots_solve_their_equations() {
        let c = ch(0, -1, 0.3);
        let ext = Extension::from_xi(-1.0).unwrap();
        // |lev0| is bounded by its lambda = m value, about 0.755 at beta = 0.3
        assert!(solve_paper_level(&c, &ext, Some(LevelVariant::Lev0)).unwrap().is_none());
        let half = Extension::from_xi(-0.5).unwrap();
        let (e, res) = solve_paper_level(&c, &half, Some(LevelVariant::Lev0)).unwrap().unwrap();
        let lhs = paper_level_lhs(&c, e, LevelVariant::Lev0).unwrap();
        assert!((lhs + 0.5).abs() < 1e-10 && res < 1e-10);
        // the printed Wronskian form of this channel has the opposite sign convention
        assert!(solve_paper_level(&c, &ext, None).unwrap().is_none());
        let (e, _) = solve_paper_level(&c, &Extension::from_xi(1.0).unwrap(), None).unwrap().unwrap();
        let w = paper_omega_xi(&c, &Extension::from_xi(1.0).unwrap(), e).unwrap();
        assert!(w.abs() < 1e-9);
    }
}

use std::f64::consts::PI;

use super::{BoundLevel, DiracChannel, Regime};
use crate::doublet::{fit_two_series, RadialDoublet};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::numkernel::{bessel_j, bessel_k, gamma_fn, sin_pi};

/// `int_0^inf z K_a(z)^2 dz` for `|a| < 1`.
fn k_square_moment(a: f64) -> f64 {
    if a == 0.0 {
        0.5
    } else {
        PI * a / (2.0 * sin_pi(a))
    }
}

/// Normalized decaying doublet of a bound level:
/// `C sqrt(lambda r) (K_{x-1/2}(lambda r), s w K_{x+1/2}(lambda r))`
/// with `x = s nt` and `w = sqrt((m - E)/(m + E))`.
pub fn bound_doublet(level: &BoundLevel) -> Result<RadialDoublet> {
    let ch = level.channel;
    let (m, e, lambda) = (ch.m(), level.energy, level.lambda);
    if !(lambda > 0.0) || !(e.abs() < m) || ch.nu() >= 0.5 {
        return Err(Error::Domain(format!("not a valid bound level: E = {e}, lambda = {lambda}")));
    }
    let x = ch.x();
    let s = ch.s() as f64;
    let w = lambda / (m + e);
    let (a, b) = (x - 0.5, x + 0.5);
    let n2 = (k_square_moment(a.abs()) + w * w * k_square_moment(b.abs())) / lambda;
    let c = 1.0 / n2.sqrt();
    let eval = move |r: f64| {
        let z = lambda * r;
        let root = z.sqrt();
        let k1 = bessel_k(a, z).unwrap_or(f64::NAN);
        let k2 = bessel_k(b, z).unwrap_or(f64::NAN);
        (root * k1, s * w * root * k2)
    };
    Ok(RadialDoublet::new(eval, (x, -x), lambda).scaled(c))
}

/// Oscillating doublet `U_1 - xi U_2` at `|E| > m`, normalized to the
/// boundary template `(mr)^nu e+ - s xi (mr)^{-nu} e-`; `xi = inf` gives
/// `-U_2`. Regular channels return `U_1` and ignore `xi`.
pub fn continuum_doublet(ch: &DiracChannel, ext: &Extension, energy: f64) -> Result<RadialDoublet> {
    let regime = ch.classify().regime;
    if regime == Regime::Critical {
        return Err(Error::Regime(format!("{regime} (nu = {})", ch.nu())));
    }
    let m = ch.m();
    if !(energy.abs() > m) || !energy.is_finite() {
        return Err(Error::Domain(format!("continuum needs |E| > m, got E = {energy}")));
    }
    let k = ((energy - m) * (energy + m)).sqrt();
    let x = ch.x();
    let s = ch.s() as f64;
    let q = s * k / (energy + m);

    // A ~ (r^x, r^{x+1}), B ~ (r^{1-x}, r^{-x}); leading coefficients in powers of mr
    let coef_a = || -> Result<f64> { Ok((0.5 * k).powf(x - 0.5) * m.powf(-x) / gamma_fn(x + 0.5)?) };
    let coef_b = || -> Result<f64> { Ok(-q * (0.5 * k).powf(-x - 0.5) * m.powf(x) / gamma_fn(0.5 - x)?) };
    let regular_is_a = x > 0.0;

    let (u1, u2) = if regular_is_a {
        (1.0 / coef_a()?, if regime == Regime::Extended { s / coef_b()? } else { 0.0 })
    } else {
        (1.0 / coef_b()?, if regime == Regime::Extended { s / coef_a()? } else { 0.0 })
    };
    // weights of the raw A and B solutions
    let (wu1, wu2) = match regime {
        Regime::Extended if ext.is_infinite() => (0.0, -1.0),
        Regime::Extended => (1.0, -ext.xi()),
        _ => (1.0, 0.0),
    };
    let (wa, wb) = if regular_is_a { (wu1 * u1, wu2 * u2) } else { (wu2 * u2, wu1 * u1) };

    let mut p1 = f64::INFINITY;
    let mut p2 = f64::INFINITY;
    if wa != 0.0 {
        p1 = p1.min(x);
        p2 = p2.min(x + 1.0);
    }
    if wb != 0.0 {
        p1 = p1.min(1.0 - x);
        p2 = p2.min(-x);
    }

    let eval = move |r: f64| {
        let z = k * r;
        let root = r.sqrt();
        let mut f1 = 0.0;
        let mut f2 = 0.0;
        if wa != 0.0 {
            f1 += wa * root * bessel_j(x - 0.5, z).unwrap_or(f64::NAN);
            f2 += wa * q * root * bessel_j(x + 0.5, z).unwrap_or(f64::NAN);
        }
        if wb != 0.0 {
            f1 += wb * root * bessel_j(0.5 - x, z).unwrap_or(f64::NAN);
            f2 -= wb * q * root * bessel_j(-x - 0.5, z).unwrap_or(f64::NAN);
        }
        (f1, f2)
    };
    Ok(RadialDoublet::new(eval, (p1, p2), 0.0))
}

/// Radial charge conjugation `(l, s, mu) -> (-l, -s, -mu)`: `nt -> -nt`
/// with `nu` and `tau` unchanged. The spinor picks up `sigma_3`, which
/// flips the lower component together with `s`, so `xi` is preserved.
pub fn conjugate_channel(ch: &DiracChannel, ext: &Extension) -> (DiracChannel, Extension) {
    let c = DiracChannel::new(ch.m(), -ch.l(), -ch.s(), -ch.mu()).expect("conjugate of a valid channel");
    (c, *ext)
}

/// Relative residual of the radial system at `r`, derivatives by a
/// five-point stencil.
pub fn dirac_residual(ch: &DiracChannel, energy: f64, d: &RadialDoublet, r: f64) -> f64 {
    let h = 1e-3 * r;
    let at = |k: f64| d.eval(r + k * h);
    let (a2, a1, b1, b2) = (at(-2.0), at(-1.0), at(1.0), at(2.0));
    let diff = |m2: f64, m1: f64, p1: f64, p2: f64| (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d1 = diff(a2.0, a1.0, b1.0, b2.0);
    let d2 = diff(a2.1, a1.1, b1.1, b2.1);
    let (f1, f2) = d.eval(r);
    let s = ch.s() as f64;
    let nt = ch.nu_tilde();
    let m = ch.m();
    let row1 = [s * d2, nt * f2 / r, -(energy - m) * f1];
    let row2 = [-s * d1, nt * f1 / r, -(energy + m) * f2];
    let scale = row1.iter().chain(&row2).fold(0.0_f64, |a, v| a.max(v.abs()));
    let res = row1.iter().sum::<f64>().abs().max(row2.iter().sum::<f64>().abs());
    if scale > 0.0 {
        res / scale
    } else {
        0.0
    }
}

/// Recovers `xi` from the small-r behaviour of a doublet: each component
/// is fitted with its two `r^{+-nu}` series and `xi = -s c_- / c_+` is read
/// off in powers of `mr`. Oscillating doublets are sampled on the scale `1/m`.
pub fn fit_boundary_xi(ch: &DiracChannel, d: &RadialDoublet) -> Result<f64> {
    let nu = ch.nu();
    let m = ch.m();
    let scale = if d.decay_rate() > 0.0 { d.decay_rate() } else { m };
    let plus_first = ch.x() >= 0.0;
    let comp = |z: f64, upper: bool| {
        let (f1, f2) = d.eval(z / scale);
        if upper { f1 } else { f2 }
    };
    // e+ carries z^{nu} and z^{1-nu}; e- carries z^{-nu} and z^{1+nu}
    let (cp, _) = fit_two_series(|z| comp(z, plus_first), nu, 1.0 - nu)?;
    let (cm, _) = fit_two_series(|z| comp(z, !plus_first), -nu, 1.0 + nu)?;
    Ok(-(ch.s() as f64) * cm / cp * (scale / m).powf(-2.0 * nu))
}

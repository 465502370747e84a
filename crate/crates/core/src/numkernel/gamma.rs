use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// Taylor coefficients of 1/Gamma(z) about z = 0, starting at z^2.
const RECIP_GAMMA_EVEN: [f64; 10] = [
    0.577_215_664_901_532_86,
    -0.042_002_635_034_095_236,
    -0.042_197_734_555_544_337,
    0.007_218_943_246_663_099_5,
    -0.000_215_241_674_114_950_97,
    -0.000_020_134_854_780_788_239,
    1.133_027_231_981_695_9e-6,
    6.116_095_104_481_415_8e-9,
    -1.181_274_570_487_020_1e-9,
    7.782_263_439_905_071e-12,
];

/// sin(pi x), exact at the integers and half-integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = (2.0 * x).round();
    let y = x - 0.5 * n;
    let (s, c) = (PI * y).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// cos(pi x), exact at the integers and half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (x + i as f64 + 1.0))
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Gamma function on the real line.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        return Ok(PI / (sin_pi(x) * gamma_fn(1.0 - x)?));
    }
    if x == x.floor() && x <= 171.0 {
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power so that Gamma stays finite up to x ~ 171
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z))
}

/// ln Gamma(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok(log_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Digamma for x > 0 (recurrence up to x >= 12, then the asymptotic series).
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let tail = inv2
        * (1.0 / 12.0
            - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    Ok(acc + x.ln() - 0.5 / x - tail)
}

/// Temme's auxiliary gammas for |mu| <= 1/2:
/// (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) with
/// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 = their mean.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    if mu == 0.0 {
        return (-EULER_GAMMA, 1.0, 1.0, 1.0);
    }
    let gampl = 1.0 / gamma_fn(1.0 + mu).expect("1+mu > 0");
    let gammi = 1.0 / gamma_fn(1.0 - mu).expect("1-mu > 0");
    let gam1 = if mu.abs() < 0.2 {
        let mu2 = mu * mu;
        -RECIP_GAMMA_EVEN.iter().rev().fold(0.0, |acc, c| acc * mu2 + c)
    } else {
        (gammi - gampl) / (2.0 * mu)
    };
    (gam1, 0.5 * (gammi + gampl), gampl, gammi)
}

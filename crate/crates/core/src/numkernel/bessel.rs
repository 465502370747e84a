//! Bessel functions of real order: Temme's series below z = 2 and
//! Steed's continued fractions above, with downward/upward recurrence
//! to reach the requested order.

use std::f64::consts::PI;

use super::gamma::{cos_pi, gamma_fn, log_gamma, sin_pi, temme_gammas};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;

fn check_argument(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel argument must be positive and finite, got {z}")))
    }
}

/// (J_nu(x), Y_nu(x)) for nu >= 0, x > 0.
fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = if x < XMIN {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_nu / J_nu by modified Lentz
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::MaxIterations(MAXIT));
    }

    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::MaxIterations(MAXIT));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq by Steed's method
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::MaxIterations(MAXIT));
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let j = rjl1 * (rjmu / rjl);
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok((j, rymu))
}

/// Direct ascending series; only used when the recurrence route overflows
/// (very small z at large order).
fn bessel_j_series(order: f64, z: f64) -> f64 {
    if order < 0.0 && order == order.floor() {
        let sign = if (order as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return sign * bessel_j_series(-order, z);
    }
    let half = 0.5 * z;
    let lead = if order + 1.0 > 0.0 {
        (order * half.ln() - log_gamma(order + 1.0).unwrap_or(f64::INFINITY)).exp()
    } else {
        half.powf(order) / gamma_fn(order + 1.0).unwrap_or(f64::INFINITY)
    };
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let fk = k as f64;
        term *= -half * half / (fk * (order + fk));
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// J_order(z) for real order and z > 0.
pub fn bessel_j(order: f64, z: f64) -> Result<f64> {
    check_argument(z)?;
    let nu = order.abs();
    let value = if order >= 0.0 {
        bessel_jy(nu, z)?.0
    } else {
        let (j, y) = bessel_jy(nu, z)?;
        let s = sin_pi(nu);
        if s == 0.0 {
            cos_pi(nu) * j
        } else {
            cos_pi(nu) * j - s * y
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Ok(bessel_j_series(order, z))
    }
}

/// Y_order(z) for real order and z > 0.
pub fn bessel_y(order: f64, z: f64) -> Result<f64> {
    check_argument(z)?;
    let nu = order.abs();
    let (j, y) = bessel_jy(nu, z)?;
    if order >= 0.0 {
        Ok(y)
    } else {
        let s = sin_pi(nu);
        Ok(s * j + cos_pi(nu) * y)
    }
}

/// MacDonald function K_order(z) for real order and z > 0. Even in the order.
pub fn bessel_k(order: f64, z: f64) -> Result<f64> {
    check_argument(z)?;
    let nu = order.abs();
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let x = z;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let (mut rkmu, mut rk1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::MaxIterations(MAXIT));
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::MaxIterations(MAXIT));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }

    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    Ok(rkmu)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_closed_forms() {
        for z in [1e-6, 0.01, 0.3, 1.0, 1.99, 2.0, 2.01, 7.5, 40.0, 300.0, 1000.0] {
            let env = (2.0 / (PI * z)).sqrt();
            let j = bessel_j(0.5, z).unwrap();
            assert!((j - env * z.sin()).abs() <= 1e-10 * env, "J_1/2({z})");
            let jm = bessel_j(-0.5, z).unwrap();
            assert!((jm - env * z.cos()).abs() <= 1e-10 * env, "J_-1/2({z})");
            let k = bessel_k(0.5, z).unwrap();
            let kk = (PI / (2.0 * z)).sqrt() * (-z).exp();
            if kk > 0.0 {
                assert!(((k - kk) / kk).abs() < 1e-10, "K_1/2({z}): {k} vs {kk}");
            }
        }
    }

    #[test]
    fn small_argument_limits() {
        assert!((bessel_j(0.0, 1e-12).unwrap() - 1.0).abs() < 1e-15);
        assert!(bessel_j(1.0, 1e-12).unwrap().abs() < 1e-11);
    }

    #[test]
    fn k_is_even_in_order() {
        for a in [0.1, 0.7, 1.3, 2.5] {
            for z in [0.05, 2.0, 9.0] {
                assert_eq!(bessel_k(-a, z).unwrap(), bessel_k(a, z).unwrap());
            }
        }
    }

    #[test]
    fn integer_order_reference_values() {
        // A&S table values
        assert!((bessel_j(0.0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1.0, 2.5).unwrap() - 0.497_094_102_464_274_5).abs() < 1e-14);
        assert!((bessel_y(0.0, 1.0).unwrap() - 0.088_256_964_215_676_96).abs() < 1e-14);
        assert!((bessel_k(0.0, 1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-15);
        assert!((bessel_k(1.0, 2.0).unwrap() - 0.139_865_881_816_522_4).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(0.3, 0.0).is_err());
        assert!(bessel_k(0.3, -1.0).is_err());
        assert!(bessel_y(0.3, f64::NAN).is_err());
    }
}

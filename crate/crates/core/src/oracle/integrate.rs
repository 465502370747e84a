//! Fixed-purpose integrators: Dormand-Prince 5(4) for 2x2 first-order
//! systems and Numerov for `y'' = q(t) y`.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type V2 = [f64; 2];

fn axpy(y: V2, terms: &[(f64, V2)], h: f64) -> V2 {
    let mut out = y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

fn norm(v: V2) -> f64 {
    v[0].hypot(v[1])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` with error per step kept
/// below `tol * |y|`. `t_to_r` maps the independent variable to a radius
/// for error reporting.
pub fn dopri5<F>(mut f: F, t0: f64, t1: f64, y0: V2, tol: f64, t_to_r: impl Fn(f64) -> f64) -> Result<(V2, IntegrationStats)>
where
    F: FnMut(f64, V2) -> V2,
{
    let mut t = t0;
    let mut y = y0;
    let span = t1 - t0;
    let mut h = (0.01 * span).min(1e-2);
    let h_min = 1e-12 * span.abs().max(1.0);
    let mut k1 = f(t, y);
    let mut stats = IntegrationStats { accepted: 0, rejected: 0 };
    while t < t1 {
        if t + h > t1 {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, axpy(y, &[(A21, k1)], h));
        let k3 = f(t + C3 * h, axpy(y, &[(A31, k1), (A32, k2)], h));
        let k4 = f(t + C4 * h, axpy(y, &[(A41, k1), (A42, k2), (A43, k3)], h));
        let k5 = f(t + C5 * h, axpy(y, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)], h));
        let k6 = f(t + h, axpy(y, &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)], h));
        let y_new = axpy(y, &[(B1, k1), (B3, k3), (B4, k4), (B5, k5), (B6, k6)], h);
        let k7 = f(t + h, y_new);
        let err = axpy([0.0, 0.0], &[(E1, k1), (E3, k3), (E4, k4), (E5, k5), (E6, k6), (E7, k7)], h);
        let scale = tol * norm(y).max(norm(y_new));
        let ratio = if scale > 0.0 { norm(err) / scale } else { f64::INFINITY };
        if !ratio.is_finite() && !norm(y_new).is_finite() {
            return Err(Error::Stiffness(t_to_r(t)));
        }
        if ratio <= 1.0 {
            t += h;
            y = y_new;
            k1 = k7;
            stats.accepted += 1;
        } else {
            stats.rejected += 1;
        }
        let grow = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= grow;
        if h < h_min && t < t1 {
            return Err(Error::Stiffness(t_to_r(t)));
        }
    }
    Ok((y, stats))
}

/// Running sum with Neumaier compensation.
#[derive(Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn new(v: f64) -> Self {
        Self { sum: v, carry: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        self.carry += if self.sum.abs() >= v.abs() { (self.sum - t) + v } else { (v - t) + self.sum };
        self.sum = t;
    }

    /// Adds the product `a b` without rounding it first.
    fn add_product(&mut self, a: f64, b: f64) {
        let p = a * b;
        self.carry += a.mul_add(b, -p);
        self.add(p);
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Numerov march of `y'' = q(t) y` on the uniform grid `t0 + i h`,
/// `i = 0..=n`, from `y_0` and the first difference `y_1 - y_0`.
/// Returns `(y_n, y'_n)`; the derivative uses one extra step past `t_n`.
///
/// The recurrence runs in summed form on `u = (1 - h^2 q / 12) y` with
/// compensated accumulation, so the start difference and each step keep
/// their own relative precision when a dominant solution is present.
pub fn numerov<Q: Fn(f64) -> f64>(q: Q, t0: f64, h: f64, n: usize, y0: f64, delta: f64) -> (f64, f64) {
    let h2 = h * h;
    let w = |qv: f64| 1.0 - h2 * qv / 12.0;
    let (q0, mut qn) = (q(t0), q(t0 + h));
    let mut y = y0 + delta;
    // u_1 - u_0 = (w_1 - w_0) y_0 + w_1 delta
    let mut du = Compensated::new(-h2 * (qn - q0) / 12.0 * y0 + w(qn) * delta);
    let mut u = Compensated::new(0.0);
    u.add_product(w(qn), y0);
    u.add_product(w(qn), delta);
    let mut du_prev;
    let mut y_prev = y0;
    for i in 1..=n {
        du_prev = du.value();
        du.add(h2 * qn * y);
        u.add(du.value());
        qn = q(t0 + (i + 1) as f64 * h);
        let y_next = u.value() / w(qn);
        if i == n {
            // (1 - h^2 q / 6) y = 2u - y at both neighbours of t_n
            let d = (2.0 * (du.value() + du_prev) - (y_next - y_prev)) / (2.0 * h);
            return (y, d);
        }
        y_prev = y;
        y = y_next;
    }
    unreachable!("loop returns at i == n");
}

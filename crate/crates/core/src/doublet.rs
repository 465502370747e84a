use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numkernel::{integrate_semiline_with, QuadratureOptions};

type Evaluator = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;

/// A radial two-spinor `r -> (f1(r), f2(r))`, normalized with the flat
/// measure `int (f1^2 + f2^2) dr`.
///
/// Small-r exponents describe the leading power of each component;
/// `f64::INFINITY` marks a component that vanishes identically (the
/// single-component Schrodinger wave functions).
#[derive(Clone)]
pub struct RadialDoublet {
    eval: Evaluator,
    small_r_exponents: (f64, f64),
    decay_rate: f64,
    norm: f64,
}

impl fmt::Debug for RadialDoublet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialDoublet")
            .field("small_r_exponents", &self.small_r_exponents)
            .field("decay_rate", &self.decay_rate)
            .field("norm", &self.norm)
            .finish_non_exhaustive()
    }
}

impl RadialDoublet {
    pub fn new<F>(eval: F, small_r_exponents: (f64, f64), decay_rate: f64) -> Self
    where
        F: Fn(f64) -> (f64, f64) + Send + Sync + 'static,
    {
        Self { eval: Arc::new(eval), small_r_exponents, decay_rate, norm: 1.0 }
    }

    pub fn eval(&self, r: f64) -> (f64, f64) {
        let (f1, f2) = (self.eval)(r);
        (self.norm * f1, self.norm * f2)
    }

    pub fn small_r_exponents(&self) -> (f64, f64) {
        self.small_r_exponents
    }

    /// Exponential decay rate at large r; zero for oscillating states.
    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    /// Overall constant multiplying the raw evaluator.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { norm: self.norm * factor, ..self.clone() }
    }

    pub fn is_single_component(&self) -> bool {
        self.small_r_exponents.1.is_infinite()
    }

    /// `int_0^inf (f1^2 + f2^2) dr` by graded adaptive quadrature.
    pub fn norm_squared(&self) -> Result<f64> {
        self.norm_squared_with(1)
    }

    /// As [`Self::norm_squared`] with the initial mesh refined `refine` times.
    pub fn norm_squared_with(&self, refine: usize) -> Result<f64> {
        if !(self.decay_rate > 0.0) {
            return Err(Error::NonNormalizable(self.decay_rate));
        }
        let (p1, p2) = self.small_r_exponents;
        let lowest = p1.min(p2);
        let mut opts = QuadratureOptions::for_singularity(-2.0 * lowest);
        opts.initial_intervals *= refine.max(1);
        opts.rel_tol = 1e-12;
        let q = integrate_semiline_with(
            |r| {
                let (f1, f2) = self.eval(r);
                f1 * f1 + f2 * f2
            },
            self.decay_rate,
            &opts,
        )?;
        Ok(q.value)
    }
}

/// Rescales a decaying doublet to unit norm.
pub fn normalize_doublet(d: &RadialDoublet) -> Result<RadialDoublet> {
    let n2 = d.norm_squared()?;
    if !(n2 > 0.0) || !n2.is_finite() {
        return Err(Error::NonNormalizable(d.decay_rate));
    }
    Ok(d.scaled(1.0 / n2.sqrt()))
}

/// Least-squares coefficients of `sum_j c_j r^{p_j}` fitted to `(r, y)`
/// samples. Columns are scaled to unit norm before the SVD solve.
pub fn fit_powers(r: &[f64], y: &[f64], powers: &[f64]) -> Result<Vec<f64>> {
    if r.len() != y.len() || r.len() < powers.len() {
        return Err(Error::Domain("power fit needs at least as many samples as powers".into()));
    }
    let mut a = DMatrix::from_fn(r.len(), powers.len(), |i, j| r[i].powf(powers[j]));
    let mut scales = Vec::with_capacity(powers.len());
    for j in 0..powers.len() {
        let n = a.column(j).norm();
        let n = if n > 0.0 { n } else { 1.0 };
        a.column_mut(j).unscale_mut(n);
        scales.push(n);
    }
    let b = DVector::from_column_slice(y);
    let svd = a.svd(true, true);
    let c = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::Domain(format!("power fit failed: {e}")))?;
    Ok(c.iter().zip(&scales).map(|(c, s)| c / s).collect())
}

/// Leading coefficients of a function whose small-z expansion is
/// `sum_k (a_k z^{p+2k} + b_k z^{q+2k})`, fitted on `z in [1e-5, 0.1]`.
/// Returns `(a_0, b_0)`.
pub fn fit_two_series<F: Fn(f64) -> f64>(f: F, p: f64, q: f64) -> Result<(f64, f64)> {
    let z = log_grid(1e-5, 0.1, 96);
    let y: Vec<f64> = z.iter().map(|&z| f(z)).collect();
    let mut powers = Vec::with_capacity(8);
    for k in 0..4 {
        powers.push(p + 2.0 * k as f64);
        powers.push(q + 2.0 * k as f64);
    }
    let c = fit_powers(&z, &y, &powers)?;
    Ok((c[0], c[1]))
}

/// Log-spaced sample radii on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Least-squares slope of `ln|f|` against `ln r`.
pub fn loglog_slope(r: &[f64], f: &[f64]) -> f64 {
    let xs: Vec<f64> = r.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = f.iter().map(|f| f.abs().ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

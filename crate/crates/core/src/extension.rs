use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Self-adjoint extension parameter: angle `theta` in `[0, 2 pi)` with
/// `xi = tan(theta / 2)`. `theta = pi` is the point `xi = inf`
/// (`+inf` and `-inf` are the same extension).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extension {
    theta: f64,
    xi: f64,
}

impl Extension {
    pub fn from_theta(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::Domain(format!("extension angle must be finite, got {theta}")));
        }
        let theta = theta.rem_euclid(2.0 * PI);
        let xi = if theta == PI { f64::INFINITY } else { (0.5 * theta).tan() };
        Ok(Self { theta, xi })
    }

    /// `xi = +-inf` maps to `theta = pi`.
    pub fn from_xi(xi: f64) -> Result<Self> {
        if xi.is_nan() {
            return Err(Error::Domain("extension parameter xi is NaN".into()));
        }
        if xi.is_infinite() {
            return Ok(Self { theta: PI, xi: f64::INFINITY });
        }
        let theta = (2.0 * xi.atan()).rem_euclid(2.0 * PI);
        Ok(Self { theta, xi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn is_infinite(&self) -> bool {
        self.xi.is_infinite()
    }

    /// Extensions that carry a bound state (`-inf < xi < 0`).
    pub fn binds(&self) -> bool {
        self.xi < 0.0 && self.xi.is_finite()
    }
}

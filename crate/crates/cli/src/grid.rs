use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid must be `lo:hi:n`, got {0:?}")]
    Shape(String),
    #[error("grid bound {0:?} is not a finite number")]
    Bound(String),
    #[error("grid point count {0:?} is not an integer >= 2")]
    Count(String),
    #[error("grid needs lo < hi, got {lo} and {hi}")]
    Order { lo: f64, hi: f64 },
}

/// Uniform grid `lo:hi:n` with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

pub const MAX_POINTS: usize = 1_000_000;

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| if i + 1 == self.n { self.hi } else { self.lo + (self.hi - self.lo) * (i as f64 / last) })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(GridError::Shape(s.to_string()));
        };
        let bound = |b: &str| match b.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(GridError::Bound(b.to_string())),
        };
        let (lo, hi) = (bound(lo)?, bound(hi)?);
        let n = match n.trim().parse::<usize>() {
            Ok(n) if (2..=MAX_POINTS).contains(&n) => n,
            _ => return Err(GridError::Count(n.to_string())),
        };
        if !(lo < hi) {
            return Err(GridError::Order { lo, hi });
        }
        Ok(Grid { lo, hi, n })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.n)
    }
}

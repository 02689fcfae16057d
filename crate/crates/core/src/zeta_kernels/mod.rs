//! Riemann zeta, McCarthy's weighted zeta functions `Z_α(s) = Σ n^{-s} log^{-α}(n+1)`,
//! their singular-part remainders, and the gamma functions they lean on.
//!
//! Everything here is Euler–Maclaurin summation: a head sum up to `N - 1`, the
//! tail integral from `N`, and Bernoulli corrections built from the Taylor
//! coefficients of the summand at `N`. `N` is chosen per call from the size of
//! the first omitted correction.

mod euler_maclaurin;
pub mod special;
mod weighted;
mod zeta;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use special::{eval_gamma, eval_upper_gamma, EULER_GAMMA};
pub use weighted::{eval_weighted_remainder, eval_weighted_zeta};
pub use zeta::{eval_zeta, eval_zeta_remainder};

/// Number of explicitly summed terms the evaluators use at `s` for weight `α`.
pub fn truncation_point(s: num_complex::Complex64, alpha: f64, cfg: &EvalConfig) -> Result<usize> {
    euler_maclaurin::choose_truncation(s, alpha, cfg)
}

/// Accuracy and work limits for the zeta evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    tol: f64,
    max_terms: usize,
    em_order: usize,
}

impl EvalConfig {
    pub fn new(tol: f64, max_terms: usize, em_order: usize) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tol must be positive, got {tol}")));
        }
        if max_terms < 16 {
            return Err(Error::Domain(format!("max_terms must be at least 16, got {max_terms}")));
        }
        if !(1..=12).contains(&em_order) {
            return Err(Error::Domain(format!("em_order must lie in [1, 12], got {em_order}")));
        }
        Ok(Self { tol, max_terms, em_order })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn em_order(&self) -> usize {
        self.em_order
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Self::new(tol, self.max_terms, self.em_order)
    }

    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Self::new(self.tol, max_terms, self.em_order)
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_terms: 1_000_000, em_order: 8 }
    }
}

/// The weight exponent `α ≤ 1` of `Z_α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedZetaParams {
    alpha: f64,
}

impl WeightedZetaParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha <= 1.0) {
            return Err(Error::Domain(format!("weight exponent must satisfy alpha <= 1, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

use num_complex::Complex64;

use super::euler_maclaurin::{choose_truncation, endpoint_corrections, summand_jet};
use super::special::exprel;
use super::EvalConfig;
use crate::error::{Error, Result};

const POLE_GUARD: f64 = 1e-14;

/// `Σ_{n < N} n^{-s}` plus the Bernoulli corrections at `N`; the tail
/// integral `N^{1-s}/(s-1)` is left to the caller.
fn head_and_corrections(s: Complex64, cfg: &EvalConfig) -> Result<(Complex64, f64)> {
    if !(s.re > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("zeta evaluator needs Re s > 0, got {s}")));
    }
    let n = choose_truncation(s, 0.0, cfg)?;
    let mut head = Complex64::new(0.0, 0.0);
    for k in 1..n {
        head += (-s * (k as f64).ln()).exp();
    }
    let jet = summand_jet(n as f64, s, 0.0, 2 * cfg.em_order() + 2);
    Ok((head + endpoint_corrections(&jet, cfg.em_order()), (n as f64).ln()))
}

/// Riemann zeta function for `Re s > 0`, `s ≠ 1`.
pub fn eval_zeta(s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    if (s - 1.0).norm() < POLE_GUARD {
        return Err(Error::Pole(format!("zeta has a pole at s = 1, got {s}")));
    }
    let (regular, log_n) = head_and_corrections(s, cfg)?;
    let w = s - 1.0;
    Ok(regular + (-w * log_n).exp() / w)
}

/// `h(z) = ζ(z) - 1/(z - 1)`, entire; finite at `z = 1`.
///
/// The tail integral and the pole are combined as `(N^{1-z} - 1)/(z - 1)`,
/// which is evaluated without cancellation.
pub fn eval_zeta_remainder(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    let (regular, log_n) = head_and_corrections(z, cfg)?;
    let w = z - 1.0;
    Ok(regular - exprel(-w * log_n) * log_n)
}

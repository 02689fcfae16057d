//! Gamma, upper incomplete gamma and a few small helpers used by the
//! zeta evaluators.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_2, B_4, ..., B_26`.
pub(crate) const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

// Lanczos approximation, g = 7, n = 9.
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

/// Gamma function on the positive real axis.
pub fn eval_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_positive(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Upper incomplete gamma function `Γ(a, z) = ∫_z^∞ t^{a-1} e^{-t} dt` for
/// real `a` and `Re z > 0`.
///
/// Uses the power series for `|z| < a + 1` (with the exponential-integral
/// series at `a = 0`), the Legendre continued fraction otherwise, and the
/// recurrence `Γ(a, z) = (Γ(a+1, z) - z^a e^{-z}) / a` to reach `a ≥ 0`
/// from negative orders at small `|z|`.
pub fn eval_upper_gamma(a: f64, z: Complex64, max_terms: usize) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.is_finite() || !a.is_finite() {
        return Err(Error::Domain(format!("upper gamma requires Re z > 0, got z = {z}")));
    }
    if z.norm() >= (a + 1.0).max(1.5) {
        return upper_gamma_cf(a, z, max_terms);
    }
    if a < 0.0 {
        let up = eval_upper_gamma(a + 1.0, z, max_terms)?;
        return Ok((up - (a * z.ln() - z).exp()) / a);
    }
    if a == 0.0 {
        return exp_integral_e1_series(z, max_terms);
    }
    let lower = lower_gamma_series(a, z, max_terms)?;
    Ok(Complex64::new(gamma_positive(a), 0.0) - lower)
}

/// `γ(a, z) = z^a e^{-z} Σ_k z^k / (a (a+1) ... (a+k))`, `a > 0`.
fn lower_gamma_series(a: f64, z: Complex64, max_terms: usize) -> Result<Complex64> {
    let mut term = Complex64::new(1.0 / a, 0.0);
    let mut sum = term;
    for k in 1..max_terms {
        term = term * z / (a + k as f64);
        sum += term;
        if term.norm() <= f64::EPSILON * sum.norm() {
            return Ok(sum * (a * z.ln() - z).exp());
        }
    }
    Err(Error::Convergence(format!(
        "incomplete gamma series for a = {a}, z = {z} did not converge in {max_terms} terms"
    )))
}

/// `E_1(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k k!)`.
fn exp_integral_e1_series(z: Complex64, max_terms: usize) -> Result<Complex64> {
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..max_terms {
        power = -power * z / k as f64;
        let term = power / k as f64;
        sum += term;
        if term.norm() <= f64::EPSILON * sum.norm().max(1e-300) {
            return Ok(-EULER_GAMMA - z.ln() - sum);
        }
    }
    Err(Error::Convergence(format!("E1 series at z = {z} did not converge")))
}

fn upper_gamma_cf(a: f64, z: Complex64, max_terms: usize) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let mut b = z + 1.0 - a;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..max_terms {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = d * an + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + c.inv() * an;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = d.inv();
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok((a * z.ln() - z).exp() * h);
        }
    }
    Err(Error::Convergence(format!(
        "incomplete gamma continued fraction for a = {a}, z = {z} did not converge in {max_terms} terms"
    )))
}

/// `(e^x - 1) / x`, accurate near `x = 0`.
pub(crate) fn exprel(x: Complex64) -> Complex64 {
    if x.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..40 {
            term = term * x / k as f64;
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (x.exp() - 1.0) / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(eval_gamma(2.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(eval_gamma(1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert!((eval_gamma(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-10);
        assert_relative_eq!(eval_gamma(5.0).unwrap(), 24.0, max_relative = 1e-13);
        assert_relative_eq!(eval_gamma(0.1).unwrap(), 9.513_507_698_668_732, max_relative = 1e-12);
        assert_relative_eq!(eval_gamma(10.5).unwrap(), 1_133_278.388_948_785_6, max_relative = 1e-12);
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(matches!(eval_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_gamma(-1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_recurrence() {
        for &x in &[0.3, 0.75, 1.4, 2.9, 7.2] {
            let lhs = eval_gamma(x + 1.0).unwrap();
            let rhs = x * eval_gamma(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }

    #[test]
    fn upper_gamma_order_one_is_exponential() {
        let v = eval_upper_gamma(1.0, c(1.0, 0.0), 10_000).unwrap();
        assert!((v - c((-1.0f64).exp(), 0.0)).norm() < 1e-12);
        let v = eval_upper_gamma(1.0, c(0.001, 0.0), 10_000).unwrap();
        assert!((v.re - 0.999_000_499_833_375).abs() < 1e-12);
        for z in [c(0.3, 2.0), c(2.5, -7.0), c(12.0, 40.0)] {
            let v = eval_upper_gamma(1.0, z, 10_000).unwrap();
            assert!((v - (-z).exp()).norm() < 1e-12 * (-z).exp().norm().max(1.0));
        }
    }

    #[test]
    fn upper_gamma_half_is_erfc() {
        // Γ(1/2, x) = √π erfc(√x); erfc(√2) = 0.04550026389635842
        let v = eval_upper_gamma(0.5, c(2.0, 0.0), 10_000).unwrap();
        let expect = std::f64::consts::PI.sqrt() * 0.045_500_263_896_358_42;
        assert!((v.re - expect).abs() < 1e-12);
    }

    #[test]
    fn upper_gamma_zero_order_matches_e1() {
        // E1(1) = 0.21938393439552029, E1(0.1) = 1.8229239584193906
        let v = eval_upper_gamma(0.0, c(1.0, 0.0), 10_000).unwrap();
        assert!((v.re - 0.219_383_934_395_520_3).abs() < 1e-12);
        let v = eval_upper_gamma(0.0, c(0.1, 0.0), 10_000).unwrap();
        assert!((v.re - 1.822_923_958_419_390_6).abs() < 1e-12);
    }

    #[test]
    fn upper_gamma_recurrence_holds_across_branches() {
        for &a in &[-2.0, -1.5, -0.5, 0.0, 0.5, 1.5, 3.0] {
            for z in [c(0.2, 0.1), c(0.9, -0.4), c(2.0, 3.0), c(5.0, 0.0)] {
                let lhs = eval_upper_gamma(a + 1.0, z, 10_000).unwrap();
                let rhs = eval_upper_gamma(a, z, 10_000).unwrap() * a + (a * z.ln() - z).exp();
                assert!(
                    (lhs - rhs).norm() < 1e-11 * lhs.norm().max(1.0),
                    "a = {a}, z = {z}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn upper_gamma_conjugate_symmetry() {
        let z = c(0.7, 1.3);
        let a = eval_upper_gamma(0.4, z, 10_000).unwrap();
        let b = eval_upper_gamma(0.4, z.conj(), 10_000).unwrap();
        assert!((a - b.conj()).norm() < 1e-13);
    }

    #[test]
    fn exprel_small_and_large() {
        assert!((exprel(c(0.0, 0.0)) - 1.0).norm() < 1e-16);
        let x = c(1e-9, 2e-9);
        assert!((exprel(x) - (1.0 + x / 2.0)).norm() < 1e-17);
        let x = c(1.0, 1.0);
        assert!((exprel(x) - (x.exp() - 1.0) / x).norm() < 1e-15);
    }
}

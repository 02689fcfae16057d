//! Empirical constants for the embedding inequalities of Dirichlet
//! polynomials: the mean square on a unit segment of the critical line, and
//! weighted area integrals over the half-strip `Q_θ = {σ > 1/2, θ < t < θ + 1}`.
//!
//! Integrals are evaluated term by term in closed form. The quadrature
//! versions exist as independent cross-checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_real, QuadOptions};
use crate::space::DirichletPolynomial;
use crate::zeta_kernels::eval_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingResult {
    pub ratio: f64,
    pub theta: f64,
    pub alpha: Option<f64>,
    pub quadrature_error: f64,
}

pub const MAX_LINE_DEGREE: usize = 10_000;
pub const MAX_STRIP_DEGREE: usize = 1_000;

/// `∫_θ^{θ+1} e^{iωt} dt = e^{iω(θ + 1/2)} · sin(ω/2) / (ω/2)`.
fn unit_segment_integral(omega: f64, theta: f64) -> Complex64 {
    let half = 0.5 * omega;
    let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
    Complex64::from_polar(sinc, omega * (theta + 0.5))
}

/// `Σ_{m,n} b_m conj(b_n) w(m, n) ∫_θ^{θ+1} (n/m)^{it} dt` for a real pair weight `w`.
/// Returns the value and a rounding-error estimate.
fn pair_sum(b: &[(usize, Complex64)], theta: f64, weight: impl Fn(usize, usize) -> f64 + Sync) -> (f64, f64) {
    let logs: Vec<f64> = b.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let rows: Vec<(f64, f64)> = (0..b.len())
        .into_par_iter()
        .map(|i| {
            let (m, bm) = b[i];
            let mut acc = bm.norm_sqr() * weight(m, m);
            let mut mag = acc.abs();
            for j in i + 1..b.len() {
                let (n, bn) = b[j];
                let term = bm * bn.conj() * weight(m, n) * unit_segment_integral(logs[j] - logs[i], theta);
                acc += 2.0 * term.re;
                mag += 2.0 * term.norm();
            }
            (acc, mag)
        })
        .collect();
    let (value, magnitude) = rows.iter().fold((0.0, 0.0), |x, y| (x.0 + y.0, x.1 + y.1));
    (value, magnitude * b.len() as f64 * f64::EPSILON)
}

fn nonzero_terms(f: &DirichletPolynomial) -> Vec<(usize, Complex64)> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, &a)| (i + 1, a))
        .collect()
}

/// `∫_θ^{θ+1} |f(1/2 + it)|² dt / ‖f‖²_𝓗`.
pub fn line_embedding_ratio(f: &DirichletPolynomial, theta: f64) -> Result<EmbeddingResult> {
    if f.is_zero() {
        return Err(Error::Domain("embedding ratio of the zero polynomial".into()));
    }
    if f.degree() > MAX_LINE_DEGREE {
        return Err(Error::Size(format!("degree {} exceeds {MAX_LINE_DEGREE}", f.degree())));
    }
    let terms = nonzero_terms(f);
    let (lhs, err) = pair_sum(&terms, theta, |m, n| ((m * n) as f64).sqrt().recip());
    let norm = f.norm_sq();
    Ok(EmbeddingResult { ratio: lhs.max(0.0) / norm, theta, alpha: None, quadrature_error: err / norm })
}

/// Same integral by adaptive Gauss–Kronrod quadrature of `|f(1/2 + it)|²`.
pub fn line_embedding_quadrature(f: &DirichletPolynomial, theta: f64) -> Result<EmbeddingResult> {
    if f.is_zero() {
        return Err(Error::Domain("embedding ratio of the zero polynomial".into()));
    }
    let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-13, initial_panels: f.degree().clamp(4, 64), ..Default::default() };
    let (lhs, err) = integrate_real(|t| f.eval(Complex64::new(0.5, t)).norm_sqr(), theta, theta + 1.0, opts)?;
    let norm = f.norm_sq();
    Ok(EmbeddingResult { ratio: lhs / norm, theta, alpha: None, quadrature_error: err / norm })
}

fn check_strip(f: &DirichletPolynomial, alpha: f64) -> Result<()> {
    if alpha == 0.0 || alpha > 1.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!("half-strip embedding needs α ≤ 1, α ≠ 0, got {alpha}")));
    }
    if alpha < 0.0 && f.coeffs()[0].norm_sqr() > 0.0 {
        return Err(Error::Domain("for α < 0 the integral diverges unless a_1 = 0".into()));
    }
    if f.is_zero() {
        return Err(Error::Domain("embedding ratio of the zero polynomial".into()));
    }
    if f.degree() > MAX_STRIP_DEGREE {
        return Err(Error::Size(format!("degree {} exceeds {MAX_STRIP_DEGREE}", f.degree())));
    }
    Ok(())
}

/// For `α < 0`: `∫_{Q_θ} |f|² (σ - 1/2)^{-α-1} dm / ‖f‖²_{𝓗_α}`.
/// For `0 < α ≤ 1`: `∫_{Q_θ} |f'|² (σ - 1/2)^{1-α} dm / ‖f‖²_{𝓗_α}`.
///
/// With `u = σ - 1/2` each pair contributes
/// `∫_0^∞ u^β (mn)^{-u} du = Γ(β + 1) / log(mn)^{β + 1}`.
pub fn halfstrip_embedding_ratio(f: &DirichletPolynomial, theta: f64, alpha: f64) -> Result<EmbeddingResult> {
    check_strip(f, alpha)?;
    let (terms, beta) = strip_terms(f, alpha);
    let gamma = eval_gamma(beta + 1.0)?;
    let (lhs, err) = pair_sum(&terms, theta, |m, n| {
        let mn = (m * n) as f64;
        gamma / (mn.sqrt() * mn.ln().powf(beta + 1.0))
    });
    let norm = f.weighted_norm_sq(alpha);
    Ok(EmbeddingResult { ratio: lhs.max(0.0) / norm, theta, alpha: Some(alpha), quadrature_error: err / norm })
}

/// Coefficients that enter the strip integral (`f` itself or `f'`) and the
/// exponent `β` of the weight `u^β`.
fn strip_terms(f: &DirichletPolynomial, alpha: f64) -> (Vec<(usize, Complex64)>, f64) {
    let terms = nonzero_terms(f);
    if alpha < 0.0 {
        (terms, -alpha - 1.0)
    } else {
        let d = terms.into_iter().filter(|&(n, _)| n > 1).map(|(n, a)| (n, -a * (n as f64).ln())).collect();
        (d, 1.0 - alpha)
    }
}

/// Cut-off of the `σ`-integration in [`halfstrip_embedding_quadrature`].
pub const STRIP_QUADRATURE_WIDTH: f64 = 60.0 / std::f64::consts::LN_2;

/// Two-dimensional quadrature version of [`halfstrip_embedding_ratio`].
/// The `σ`-integral uses `u = v^q` with `q = 1/(β + 1)` when `β < 0`, which
/// removes the endpoint singularity of the weight.
pub fn halfstrip_embedding_quadrature(f: &DirichletPolynomial, theta: f64, alpha: f64) -> Result<EmbeddingResult> {
    check_strip(f, alpha)?;
    let (terms, beta) = strip_terms(f, alpha);
    if terms.is_empty() {
        return Ok(EmbeddingResult { ratio: 0.0, theta, alpha: Some(alpha), quadrature_error: 0.0 });
    }
    let g = |s: Complex64| -> Complex64 { terms.iter().map(|&(n, b)| b * (-s * (n as f64).ln()).exp()).sum() };
    let q = if beta < 0.0 { 1.0 / (beta + 1.0) } else { 1.0 };
    let v_max = STRIP_QUADRATURE_WIDTH.powf(1.0 / q);
    let inner_opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-12, initial_panels: 16, max_segments: 4000 };
    let inner = |t: f64| -> Result<f64> {
        let h = |v: f64| {
            if v <= 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let u = v.powf(q);
            // u^β du = q v^{qβ + q - 1} dv
            let jac = q * v.powf(q * beta + q - 1.0);
            Complex64::new(g(Complex64::new(0.5 + u, t)).norm_sqr() * jac, 0.0)
        };
        Ok(integrate(h, 0.0, v_max, inner_opts)?.value.re)
    };
    let failure = std::cell::RefCell::new(None);
    let outer = integrate(
        |t| match inner(t) {
            Ok(v) => Complex64::new(v, 0.0),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        theta,
        theta + 1.0,
        QuadOptions { abs_tol: 1e-12, rel_tol: 1e-11, initial_panels: 4, max_segments: 400 },
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let norm = f.weighted_norm_sq(alpha);
    Ok(EmbeddingResult { ratio: outer.value.re / norm, theta, alpha: Some(alpha), quadrature_error: outer.error / norm })
}

/// `count` random polynomials from a ChaCha8 stream seeded with `seed`.
///
/// Each polynomial draws its degree `d` uniformly from `1..=max_degree`, then
/// `a_n = (X_n + iY_n) / sqrt(2d)` with independent standard normal `X_n, Y_n`,
/// so `E‖f‖²_𝓗 = 1`.
pub fn random_polynomial_corpus(count: usize, max_degree: usize, seed: u64) -> Result<Vec<DirichletPolynomial>> {
    if max_degree == 0 {
        return Err(Error::Domain("max_degree must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.random_range(1..=max_degree);
            let scale = (2.0 * d as f64).sqrt().recip();
            let coeffs = (0..d)
                .map(|_| {
                    let x: f64 = rng.sample(StandardNormal);
                    let y: f64 = rng.sample(StandardNormal);
                    Complex64::new(x, y) * scale
                })
                .collect();
            DirichletPolynomial::new(coeffs)
        })
        .collect()
}

/// One CSV row of an embedding sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRow {
    pub theta: f64,
    pub alpha: Option<f64>,
    pub degree: usize,
    pub ratio: f64,
}

/// Ratios for every corpus element at every `θ`; `alpha = None` selects
/// the critical-line ratio. Rows are ordered by `θ`, then corpus index.
pub fn embedding_sweep(corpus: &[DirichletPolynomial], thetas: &[f64], alpha: Option<f64>) -> Result<Vec<EmbeddingRow>> {
    let mut rows = Vec::with_capacity(corpus.len() * thetas.len());
    for &theta in thetas {
        let part = corpus
            .par_iter()
            .map(|f| {
                let r = match alpha {
                    None => line_embedding_ratio(f, theta)?,
                    Some(a) => halfstrip_embedding_ratio(f, theta, a)?,
                };
                Ok(EmbeddingRow { theta, alpha, degree: f.degree(), ratio: r.ratio })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(part);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_term_ratio_is_reciprocal() {
        for n in [1usize, 2, 5, 100] {
            let f = DirichletPolynomial::monomial(n, c(0.3, -2.0)).unwrap();
            let r = line_embedding_ratio(&f, 7.0).unwrap();
            assert!((r.ratio - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn segment_integral_limits() {
        assert!((unit_segment_integral(0.0, 3.0) - 1.0).norm() < 1e-16);
        let w = 0.7;
        let direct = ((c(0.0, w) * 4.0).exp() - (c(0.0, w) * 3.0).exp()) / c(0.0, w);
        assert!((unit_segment_integral(w, 3.0) - direct).norm() < 1e-15);
    }

    #[test]
    fn two_term_matches_quadrature() {
        let f = DirichletPolynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let a = line_embedding_ratio(&f, 0.0).unwrap();
        let b = line_embedding_quadrature(&f, 0.0).unwrap();
        assert!((a.ratio - b.ratio).abs() < 1e-8);
    }

    #[test]
    fn bergman_single_term() {
        // ∫_0^∞ 2^{-1-2u} du = 1/(4 log 2); ‖2^{-s}‖² = 1/log 3
        let f = DirichletPolynomial::monomial(2, c(1.0, 0.0)).unwrap();
        let r = halfstrip_embedding_ratio(&f, 0.0, -1.0).unwrap();
        let expect = 3f64.ln() / (4.0 * 2f64.ln());
        assert!((r.ratio - expect).abs() < 1e-14);
        let q = halfstrip_embedding_quadrature(&f, 0.0, -1.0).unwrap();
        assert!((q.ratio - expect).abs() < 1e-9, "{}", q.ratio);
    }

    #[test]
    fn dirichlet_case_kills_constants() {
        let f = DirichletPolynomial::new(vec![c(2.0, 1.0)]).unwrap();
        assert_eq!(halfstrip_embedding_ratio(&f, 0.0, 0.5).unwrap().ratio, 0.0);
        assert_eq!(halfstrip_embedding_ratio(&f, 0.0, 1.0).unwrap().ratio, 0.0);
    }

    #[test]
    fn strip_domain_errors() {
        let f = DirichletPolynomial::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(halfstrip_embedding_ratio(&f, 0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(halfstrip_embedding_ratio(&f, 0.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(halfstrip_embedding_ratio(&f, 0.0, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = random_polynomial_corpus(5, 10, 42).unwrap();
        let b = random_polynomial_corpus(5, 10, 42).unwrap();
        assert_eq!(a, b);
        assert!(random_polynomial_corpus(0, 10, 42).unwrap().is_empty());
        assert_ne!(a, random_polynomial_corpus(5, 10, 43).unwrap());
    }
}

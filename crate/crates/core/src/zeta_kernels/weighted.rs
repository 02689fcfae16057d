use num_complex::Complex64;

use super::euler_maclaurin::{choose_truncation, endpoint_corrections, summand_jet};
use super::special::{eval_gamma, eval_upper_gamma, EULER_GAMMA};
use super::{EvalConfig, WeightedZetaParams};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};

/// Below this `|(s-1) log N|` the singular part is split off analytically.
const SERIES_RADIUS: f64 = 1.0;

struct Pieces {
    /// head sum + endpoint corrections + `∫_N^∞ x^{-s}(log^{-α}(x+1) - log^{-α}x) dx`
    regular: Complex64,
    /// `s - 1`
    w: Complex64,
    /// `log N`
    log_n: f64,
}

fn check_domain(s: Complex64) -> Result<()> {
    if !(s.re > 1.0) || !s.is_finite() {
        return Err(Error::Domain(format!("weighted zeta needs Re s > 1, got {s}")));
    }
    Ok(())
}

/// `log^{-α}(x+1) - log^{-α}(x)` without cancellation.
fn weight_difference(x: f64, alpha: f64) -> f64 {
    let l = x.ln();
    let d = (1.0 / x).ln_1p();
    l.powf(-alpha) * (-alpha * (d / l).ln_1p()).exp_m1()
}

/// `∫_N^∞ x^{-s} (log^{-α}(x+1) - log^{-α}(x)) dx` after `x = N e^v`.
fn tail_correction(s: Complex64, alpha: f64, n: f64, cfg: &EvalConfig) -> Result<Complex64> {
    if alpha == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let log_n = n.ln();
    let sigma = s.re;
    // |integrand| ≲ |α| N^{-σ} e^{-σ v} (log N + v)^{-α-1}
    let growth = (-alpha - 1.0).max(0.0) * (log_n + 200.0).ln();
    let scale = (alpha.abs().max(1.0) / cfg.tol()).ln() - sigma * log_n + growth + 12.0;
    let upper = (scale / sigma).clamp(1.0, 400.0);
    let panels = ((upper * s.im.abs().max(1.0)) / 2.0).ceil() as usize;
    let one_minus_s = 1.0 - s;
    let integrand = |v: f64| {
        let x = n * v.exp();
        (one_minus_s * (log_n + v)).exp() * weight_difference(x, alpha)
    };
    let opts = QuadOptions {
        abs_tol: 0.05 * cfg.tol(),
        rel_tol: 1e-15,
        initial_panels: panels,
        max_segments: panels + 50_000,
    };
    Ok(integrate(integrand, 0.0, upper, opts)?.value)
}

fn pieces(alpha: f64, s: Complex64, cfg: &EvalConfig) -> Result<Pieces> {
    check_domain(s)?;
    let n = choose_truncation(s, alpha, cfg)?;
    let mut head = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let kf = k as f64;
        head += (-s * kf.ln()).exp() * (kf + 1.0).ln().powf(-alpha);
    }
    let jet = summand_jet(n as f64, s, alpha, 2 * cfg.em_order() + 2);
    let regular =
        head + endpoint_corrections(&jet, cfg.em_order()) + tail_correction(s, alpha, n as f64, cfg)?;
    Ok(Pieces { regular, w: s - 1.0, log_n: (n as f64).ln() })
}

/// `L^a Σ_k (-z)^k / (k! (a + k)) = ∫_0^L e^{-w v} v^{a-1} dv` with `z = wL`, `a > 0`.
fn truncated_gamma_integral(a: f64, w: Complex64, log_n: f64) -> Complex64 {
    let z = w * log_n;
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0 / a, 0.0);
    for k in 1..200 {
        power = -power * z / k as f64;
        let term = power / (a + k as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum * log_n.powf(a)
}

/// `E_1(wL) + ln w = -γ - ln L - Σ_{k≥1} (-wL)^k / (k k!)`.
fn log_singularity_offset(w: Complex64, log_n: f64) -> Complex64 {
    let z = w * log_n;
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        power = -power * z / k as f64;
        let term = power / k as f64;
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - log_n.ln() - sum
}

/// The singular part `Γ(1-α)(s-1)^{α-1}` (or `log 1/(s-1)` at `α = 1`).
fn singular_part(alpha: f64, w: Complex64) -> Result<Complex64> {
    if alpha == 1.0 {
        Ok(-w.ln())
    } else {
        let a = 1.0 - alpha;
        Ok(w.powf(-a) * eval_gamma(a)?)
    }
}

/// Returns `(Z_α(s), Z_α(s) - singular part)`.
fn weighted_with_remainder(
    p: &WeightedZetaParams,
    s: Complex64,
    cfg: &EvalConfig,
) -> Result<(Complex64, Complex64)> {
    let alpha = p.alpha();
    let Pieces { regular, w, log_n } = pieces(alpha, s, cfg)?;
    let a = 1.0 - alpha;
    if (w * log_n).norm() <= SERIES_RADIUS {
        let remainder = if alpha == 1.0 {
            regular + log_singularity_offset(w, log_n)
        } else {
            regular - truncated_gamma_integral(a, w, log_n)
        };
        Ok((remainder + singular_part(alpha, w)?, remainder))
    } else {
        // ∫_N^∞ x^{-s} log^{-α} x dx = (s-1)^{α-1} Γ(1-α, (s-1) log N)
        let tail = w.powf(-a) * eval_upper_gamma(a, w * log_n, cfg.max_terms())?;
        let value = regular + tail;
        Ok((value, value - singular_part(alpha, w)?))
    }
}

/// `Z_α(s) = Σ_{n≥1} n^{-s} log^{-α}(n+1)` for `Re s > 1`.
pub fn eval_weighted_zeta(p: &WeightedZetaParams, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(weighted_with_remainder(p, s, cfg)?.0)
}

/// `Z_α(z) - Γ(1-α)(z-1)^{α-1}` for `α < 1`, `Z_1(z) - log(1/(z-1))` for `α = 1`.
/// Principal branches throughout.
pub fn eval_weighted_remainder(p: &WeightedZetaParams, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(weighted_with_remainder(p, z, cfg)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta_kernels::{eval_zeta, eval_zeta_remainder};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(alpha: f64) -> WeightedZetaParams {
        WeightedZetaParams::new(alpha).unwrap()
    }

    #[test]
    fn weight_difference_matches_direct_at_moderate_x() {
        for &alpha in &[-2.0, -1.0, 0.5, 1.0] {
            let x: f64 = 7.0;
            let direct = (x + 1.0).ln().powf(-alpha) - x.ln().powf(-alpha);
            assert!((weight_difference(x, alpha) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn alpha_zero_reduces_to_zeta() {
        let cfg = EvalConfig::default();
        for s in [c(2.0, 0.0), c(1.2, 3.0), c(3.0, -15.0), c(1.01, 0.5)] {
            let z = eval_weighted_zeta(&params(0.0), s, &cfg).unwrap();
            let r = eval_zeta(s, &cfg).unwrap();
            assert!((z - r).norm() < 2.0 * cfg.tol(), "s = {s}: {z} vs {r}");
        }
        let r0 = eval_weighted_remainder(&params(0.0), c(2.0, 0.0), &cfg).unwrap();
        let h = eval_zeta_remainder(c(2.0, 0.0), &cfg).unwrap();
        assert!((r0 - h).norm() < 2.0 * cfg.tol());
    }

    #[test]
    fn alpha_one_is_bounded_by_zeta() {
        // termwise 0 < 1/log(n+1) <= 1/log 2
        let cfg = EvalConfig::default();
        let v = eval_weighted_zeta(&params(1.0), c(3.0, 0.0), &cfg).unwrap();
        let z3 = eval_zeta(c(3.0, 0.0), &cfg).unwrap();
        assert!(v.re > 0.0 && v.re < z3.re / std::f64::consts::LN_2);
        assert!(v.im.abs() < 1e-15);
        assert!((v.re - 1.604_633_997_887_403_8).abs() < 1e-10, "{v}");
    }

    #[test]
    fn branches_agree_across_series_radius() {
        // the two ways of splitting off the singular part must agree
        let cfg = EvalConfig::default();
        for &alpha in &[-1.0, 0.5, 1.0] {
            let p = params(alpha);
            let s = c(1.0 + 0.5 / 4.0_f64.max(1.0), 0.0);
            let (value, rem) = weighted_with_remainder(&p, s, &cfg).unwrap();
            let sing = singular_part(alpha, s - 1.0).unwrap();
            assert!((value - rem - sing).norm() < 1e-9 * value.norm().max(1.0));
        }
    }

    #[test]
    fn domain_errors() {
        let cfg = EvalConfig::default();
        assert!(matches!(eval_weighted_zeta(&params(0.5), c(1.0, 2.0), &cfg), Err(Error::Domain(_))));
        assert!(matches!(eval_weighted_remainder(&params(0.5), c(0.9, 0.0), &cfg), Err(Error::Domain(_))));
    }
}

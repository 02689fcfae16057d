use num_complex::Complex64;

use super::special::BERNOULLI_EVEN;
use super::EvalConfig;
use crate::error::{Error, Result};

/// Smallest truncation point tried.
pub(crate) const MIN_TRUNCATION: usize = 16;

/// Taylor coefficients `c_k = f^{(k)}(N) / k!`, `k < len`, of the summand
/// `f(x) = x^{-s} log^{-α}(x + 1)`.
pub(crate) fn summand_jet(n: f64, s: Complex64, alpha: f64, len: usize) -> Vec<Complex64> {
    // (N + h)^{-s} = N^{-s} Σ binom(-s, k) (h/N)^k
    let lead = (-s * n.ln()).exp();
    let mut power = Vec::with_capacity(len);
    let mut c = lead;
    power.push(c);
    for k in 1..len {
        c = c * (-s - (k - 1) as f64) / (k as f64 * n);
        power.push(c);
    }
    if alpha == 0.0 {
        return power;
    }

    // log(N + 1 + h) = Λ (1 + v(h)), v = log1p(h / (N + 1)) / Λ
    let lam = (n + 1.0).ln();
    let mut v = vec![0.0; len];
    let mut inv = 1.0;
    for (k, vk) in v.iter_mut().enumerate().skip(1) {
        inv /= n + 1.0;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        *vk = sign * inv / (k as f64 * lam);
    }
    // q = (1 + v)^p with p = -α: k q_k = Σ_{j=1}^k ((p + 1) j - k) v_j q_{k-j}
    let p = -alpha;
    let mut q = vec![0.0; len];
    q[0] = lam.powf(p);
    for k in 1..len {
        let mut acc = 0.0;
        for j in 1..=k {
            acc += ((p + 1.0) * j as f64 - k as f64) * v[j] * q[k - j];
        }
        q[k] = acc / k as f64;
    }

    (0..len)
        .map(|k| (0..=k).map(|j| power[j] * q[k - j]).sum())
        .collect()
}

/// `f(N)/2 - Σ_{k=1}^{K} B_{2k}/(2k) · c_{2k-1}`.
pub(crate) fn endpoint_corrections(jet: &[Complex64], order: usize) -> Complex64 {
    let mut acc = jet[0] * 0.5;
    for k in 1..=order {
        acc -= jet[2 * k - 1] * (BERNOULLI_EVEN[k - 1] / (2 * k) as f64);
    }
    acc
}

/// Size of the first omitted correction, inflated by the usual
/// `|s + 2K + 1| / (σ + 2K + 1)` factor.
pub(crate) fn remainder_estimate(jet: &[Complex64], s: Complex64, order: usize) -> f64 {
    let k = order + 1;
    let next = (jet[2 * k - 1] * (BERNOULLI_EVEN[k - 1] / (2 * k) as f64)).norm();
    let shift = (2 * order + 1) as f64;
    next * (s + shift).norm() / (s.re + shift)
}

/// Picks the smallest truncation point whose remainder estimate meets the
/// tolerance: doubling, then bisection.
pub(crate) fn choose_truncation(s: Complex64, alpha: f64, cfg: &EvalConfig) -> Result<usize> {
    let order = cfg.em_order();
    let len = 2 * order + 2;
    // weighted summands get a safety factor; the bound is only heuristic there
    let target = if alpha == 0.0 { 0.25 * cfg.tol() } else { 0.05 * cfg.tol() };
    let ok = |n: usize| {
        let jet = summand_jet(n as f64, s, alpha, len);
        remainder_estimate(&jet, s, order) <= target
    };
    let mut hi = MIN_TRUNCATION.max((s.im.abs() / (2.0 * std::f64::consts::PI)) as usize);
    if ok(hi) {
        return Ok(hi);
    }
    loop {
        if hi >= cfg.max_terms() {
            return Err(Error::Convergence(format!(
                "Euler-Maclaurin remainder at s = {s} exceeds tol = {:e} within {} terms",
                cfg.tol(),
                cfg.max_terms()
            )));
        }
        hi = (2 * hi).min(cfg.max_terms());
        if ok(hi) {
            break;
        }
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_matches_finite_differences() {
        let s = Complex64::new(1.3, 2.0);
        for &alpha in &[0.0, 0.5, -1.0, 1.0] {
            let f = |x: f64| (-s * x.ln()).exp() * (x + 1.0).ln().powf(-alpha);
            let n = 20.0;
            let jet = summand_jet(n, s, alpha, 4);
            assert!((jet[0] - f(n)).norm() < 1e-15);
            let h = 1e-4;
            let d1 = (f(n + h) - f(n - h)) / (2.0 * h);
            let d2 = (f(n + h) - f(n) * 2.0 + f(n - h)) / (h * h);
            assert!((jet[1] - d1).norm() < 1e-9, "alpha {alpha}: {} vs {d1}", jet[1]);
            assert!((jet[2] - d2 / 2.0).norm() < 1e-6, "alpha {alpha}: {} vs {}", jet[2], d2 / 2.0);
        }
    }

    #[test]
    fn truncation_grows_with_height() {
        let cfg = EvalConfig::default();
        let low = choose_truncation(Complex64::new(2.0, 0.0), 0.0, &cfg).unwrap();
        let high = choose_truncation(Complex64::new(2.0, 1000.0), 0.0, &cfg).unwrap();
        assert!(low >= MIN_TRUNCATION);
        assert!(high > low);
    }

    #[test]
    fn truncation_cap_reports_convergence_error() {
        let cfg = EvalConfig::new(1e-14, 16, 1).unwrap();
        let err = choose_truncation(Complex64::new(0.5, 5000.0), 0.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Convergence(_)));
    }
}

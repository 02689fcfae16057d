//! Reproducing kernels of the Dirichlet-series spaces and their half-plane
//! counterparts, kernel norms, and the pseudohyperbolic metric of `C_{1/2}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::space::{HalfPlanePoint, SpaceId};
use crate::zeta_kernels::{eval_weighted_zeta, eval_zeta, EvalConfig, WeightedZetaParams};

/// `c_α` in `k^{D_α}_w(s) = c_α (w̄ + s - 1)^{α-1}`, `α < 1`, `α ≠ 0`.
pub fn bergman_dirichlet_constant(alpha: f64) -> f64 {
    if alpha < 0.0 {
        -alpha * 2f64.powf(-alpha - 1.0)
    } else {
        2f64.powf(alpha - 1.0) / (1.0 - alpha)
    }
}

fn dirichlet_space_kernel(w: Complex64, s: Complex64) -> Complex64 {
    // (3 + 2w̄)/(1 + 2w̄) · (3 + 2s)/(1 + 2s) · [log((1 + 2w̄)(1 + 2s)/2³) + log(1/(w̄ + s - 1))]
    let wb = w.conj();
    let factor = |z: Complex64| (3.0 + 2.0 * z) / (1.0 + 2.0 * z);
    let logs = (1.0 + 2.0 * wb).ln() + (1.0 + 2.0 * s).ln() - 3.0 * std::f64::consts::LN_2
        - (wb + s - 1.0).ln();
    factor(wb) * factor(s) * logs
}

/// `k_w(s)` for the selected space.
pub fn kernel_value(space: &SpaceId, w: &HalfPlanePoint, s: &HalfPlanePoint, cfg: &EvalConfig) -> Result<Complex64> {
    let (w, s) = (w.to_complex(), s.to_complex());
    let z = s + w.conj();
    match *space {
        SpaceId::HardyDirichlet => eval_zeta(z, cfg),
        SpaceId::WeightedDirichlet { alpha } => eval_weighted_zeta(&WeightedZetaParams::new(alpha)?, z, cfg),
        SpaceId::HardyHalfPlane => Ok((z - 1.0).inv()),
        SpaceId::BergmanDirichletHalfPlane { alpha } if alpha == 1.0 => Ok(dirichlet_space_kernel(w, s)),
        SpaceId::BergmanDirichletHalfPlane { alpha } => {
            if alpha == 0.0 || alpha > 1.0 {
                return Err(Error::Domain(format!("d_alpha undefined for alpha = {alpha}")));
            }
            Ok((z - 1.0).powf(alpha - 1.0) * bergman_dirichlet_constant(alpha))
        }
    }
}

/// `‖k_w‖ = sqrt(k_w(w))`. The imaginary residue of the diagonal value must
/// be below `1e-10` (relative to `max(1, |Re|)`) and is then dropped.
pub fn kernel_norm(space: &SpaceId, w: &HalfPlanePoint, cfg: &EvalConfig) -> Result<f64> {
    let diag = kernel_value(space, w, w, cfg)?;
    if diag.im.abs() >= 1e-10 * diag.re.abs().max(1.0) {
        return Err(Error::Numerical(format!("kernel diagonal at {w:?} in {space} is not real: {diag}")));
    }
    if !(diag.re > 0.0) {
        return Err(Error::Numerical(format!("kernel diagonal at {w:?} in {space} is not positive: {diag}")));
    }
    Ok(diag.re.sqrt())
}

/// `ρ(s, w) = |s - w| / |s + w̄ - 1|`.
pub fn pseudohyperbolic_distance(s: &HalfPlanePoint, w: &HalfPlanePoint) -> f64 {
    let (s, w) = (s.to_complex(), w.to_complex());
    (s - w).norm() / (s + w.conj() - 1.0).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(sigma: f64, t: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(sigma, t).unwrap()
    }

    #[test]
    fn hardy_half_plane_kernel() {
        let cfg = EvalConfig::default();
        let v = kernel_value(&SpaceId::HardyHalfPlane, &pt(1.0, 0.0), &pt(1.0, 0.0), &cfg).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        let n = kernel_norm(&SpaceId::HardyHalfPlane, &pt(1.0, 7.0), &cfg).unwrap();
        assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bergman_constant_at_minus_one() {
        assert_eq!(bergman_dirichlet_constant(-1.0), 1.0);
        let cfg = EvalConfig::default();
        let space = SpaceId::bergman_dirichlet(-1.0).unwrap();
        let v = kernel_value(&space, &pt(1.0, 0.0), &pt(1.0, 0.0), &cfg).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn hardy_dirichlet_kernel_is_shifted_zeta() {
        let cfg = EvalConfig::default();
        let v = kernel_value(&SpaceId::HardyDirichlet, &pt(1.0, 0.0), &pt(1.0, 0.0), &cfg).unwrap();
        assert!((v - 1.644_934_066_848_226_4).norm() < 1e-9);
        let n = kernel_norm(&SpaceId::HardyDirichlet, &pt(20.0, 3.0), &cfg).unwrap();
        assert!((n - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hardy_dirichlet_norm_near_boundary() {
        // ζ(1.02) = 1/0.02 + h(1.02)
        let cfg = EvalConfig::default();
        let n = kernel_norm(&SpaceId::HardyDirichlet, &pt(0.51, 0.0), &cfg).unwrap();
        assert!((n * n - 50.5783).abs() < 0.01);
    }

    #[test]
    fn dirichlet_kernel_is_log_plus_bounded() {
        let cfg = EvalConfig::default();
        let space = SpaceId::bergman_dirichlet(1.0).unwrap();
        let mut spread: Vec<f64> = Vec::new();
        for k in 1..=6 {
            let w = pt(0.5 + 10f64.powi(-k), 0.3);
            let v = kernel_value(&space, &w, &w, &cfg).unwrap();
            let z = w.to_complex();
            let weight = ((3.0 + 2.0 * z) / (1.0 + 2.0 * z)).norm_sqr();
            let lead = -weight * (2.0 * w.sigma() - 1.0).ln();
            spread.push((v.re - lead).abs());
        }
        let max = spread.iter().cloned().fold(0.0, f64::max);
        assert!(max < 10.0, "{spread:?}");
    }

    #[test]
    fn pseudohyperbolic_examples() {
        let a = pt(1.0, 0.0);
        assert_eq!(pseudohyperbolic_distance(&a, &a), 0.0);
        assert!((pseudohyperbolic_distance(&a, &pt(1.5, 0.0)) - 1.0 / 3.0).abs() < 1e-15);
        let b = pt(0.7, 3.0);
        assert!(pseudohyperbolic_distance(&a, &b) < 1.0);
    }
}

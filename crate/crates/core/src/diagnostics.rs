//! Finite-section diagnostics for interpolating sequences.
//!
//! Every verdict here concerns the finite sequence that was passed in. The
//! thresholds are caller-supplied; no statement about an infinite sequence
//! is implied.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::{gram_matrix, smallest_eigenvalue};
use crate::kernel::{kernel_norm, kernel_value, pseudohyperbolic_distance};
use crate::space::{HalfPlanePoint, PointSequence, SpaceId};
use crate::zeta_kernels::{truncation_point, EvalConfig};

/// `min_{j≠k} ρ(s_j, s_k)`.
pub fn separation_constant(seq: &PointSequence) -> Result<f64> {
    if seq.len() < 2 {
        return Err(Error::Size("separation needs at least two points".into()));
    }
    let pts = seq.points();
    let mut best = f64::INFINITY;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            best = best.min(pseudohyperbolic_distance(p, q));
        }
    }
    Ok(best)
}

/// `Σ_j (σ_j - 1/2)`.
pub fn blaschke_sum(seq: &PointSequence) -> f64 {
    seq.iter().map(|p| p.sigma() - 0.5).sum()
}

/// A box `{1/2 < σ ≤ 1/2 + side, |t - t_anchor| ≤ side/2}` together with the
/// indices of the sequence points it contained when it was built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlesonBox {
    pub anchor: usize,
    pub side: f64,
    pub members: Vec<usize>,
}

const MAX_DYADIC_STEPS: usize = 200;

/// Point-anchored dyadic boxes: for each `s_k` the sides
/// `2(σ_k - 1/2)·2^m`, `m = 0, 1, ...`, up to the first side that covers the
/// whole sequence.
pub fn carleson_boxes(seq: &PointSequence) -> Vec<CarlesonBox> {
    let pts = seq.points();
    if pts.is_empty() {
        return Vec::new();
    }
    let max_height = pts.iter().map(|p| p.sigma() - 0.5).fold(0.0, f64::max);
    let t_min = pts.iter().map(|p| p.t()).fold(f64::INFINITY, f64::min);
    let t_max = pts.iter().map(|p| p.t()).fold(f64::NEG_INFINITY, f64::max);
    let diameter = max_height.max(2.0 * (t_max - t_min));
    let mut boxes = Vec::new();
    for (k, anchor) in pts.iter().enumerate() {
        let mut side = 2.0 * (anchor.sigma() - 0.5);
        for _ in 0..MAX_DYADIC_STEPS {
            let members = pts
                .iter()
                .enumerate()
                .filter(|(_, p)| p.sigma() - 0.5 <= side && (p.t() - anchor.t()).abs() <= 0.5 * side)
                .map(|(i, _)| i)
                .collect();
            boxes.push(CarlesonBox { anchor: k, side, members });
            if side >= diameter {
                break;
            }
            side *= 2.0;
        }
    }
    boxes
}

/// Intensity over a frozen box family, using the current heights of `seq`.
pub fn intensity_over_boxes(seq: &PointSequence, boxes: &[CarlesonBox]) -> f64 {
    let pts = seq.points();
    boxes
        .iter()
        .map(|b| b.members.iter().map(|&i| pts[i].sigma() - 0.5).sum::<f64>() / b.side)
        .fold(0.0, f64::max)
}

/// `sup_Q Σ_{s_j ∈ Q} (σ_j - 1/2) / ℓ(Q)` over [`carleson_boxes`].
pub fn carleson_intensity(seq: &PointSequence) -> f64 {
    intensity_over_boxes(seq, &carleson_boxes(seq))
}

/// `m = sqrt(max(λ_min(G), 0))` for the normalized Gram matrix of `seq`.
pub fn boas_bound(space: &SpaceId, seq: &PointSequence, cfg: &EvalConfig) -> Result<f64> {
    let g = gram_matrix(space, seq, cfg)?;
    Ok(smallest_eigenvalue(&g)?.max(0.0).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceReport {
    /// Minimal pseudohyperbolic distance; 1 for a single point.
    pub separation: f64,
    pub carleson: f64,
    pub blaschke_sum: f64,
    /// Boas bound keyed by space tag.
    pub boas: BTreeMap<String, f64>,
    /// Separation and Carleson thresholds both met.
    pub verdict_h2: bool,
}

fn separation_or_one(seq: &PointSequence) -> f64 {
    if seq.len() < 2 {
        1.0
    } else {
        separation_constant(seq).expect("length checked")
    }
}

/// Geometric H² test on the finite section: separation at least
/// `delta_min` and Carleson intensity at most `carleson_max`.
pub fn shapiro_shields_test(seq: &PointSequence, delta_min: f64, carleson_max: f64) -> (bool, SequenceReport) {
    let separation = separation_or_one(seq);
    let carleson = carleson_intensity(seq);
    let verdict = separation >= delta_min && carleson <= carleson_max;
    let report = SequenceReport {
        separation,
        carleson,
        blaschke_sum: blaschke_sum(seq),
        boas: BTreeMap::new(),
        verdict_h2: verdict,
    };
    (verdict, report)
}

/// [`shapiro_shields_test`] plus Boas bounds for the listed spaces.
pub fn sequence_report(
    seq: &PointSequence,
    spaces: &[SpaceId],
    delta_min: f64,
    carleson_max: f64,
    cfg: &EvalConfig,
) -> Result<SequenceReport> {
    let (_, mut report) = shapiro_shields_test(seq, delta_min, carleson_max);
    for space in spaces {
        report.boas.insert(space.to_string(), boas_bound(space, seq, cfg)?);
    }
    Ok(report)
}

/// Greedy partition into parts whose normalized Gram matrices have every
/// off-diagonal row sum at most `1 - m_target`, so `λ_min ≥ m_target` on each
/// part. Points are visited in order of decreasing `σ`; each goes to the
/// first part that stays dominant. Returns indices into `seq`.
pub fn gershgorin_partition(
    space: &SpaceId,
    seq: &PointSequence,
    m_target: f64,
    cfg: &EvalConfig,
) -> Result<Vec<Vec<usize>>> {
    if !(m_target > 0.0 && m_target < 1.0) {
        return Err(Error::Domain(format!("m_target must lie in (0, 1), got {m_target}")));
    }
    if seq.is_empty() {
        return Ok(Vec::new());
    }
    let g = gram_matrix(space, seq, cfg)?;
    let e = g.entries();
    let budget = 1.0 - m_target;
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by(|&a, &b| seq.points()[b].sigma().total_cmp(&seq.points()[a].sigma()));
    // (members, off-diagonal row sums of the members)
    let mut parts: Vec<(Vec<usize>, Vec<f64>)> = Vec::new();
    for &i in &order {
        let slot = parts.iter().position(|(members, sums)| {
            let own: f64 = members.iter().map(|&j| e[(i, j)].norm()).sum();
            own <= budget && members.iter().zip(sums).all(|(&j, s)| s + e[(j, i)].norm() <= budget)
        });
        match slot {
            Some(k) => {
                let (members, sums) = &mut parts[k];
                let own: f64 = members.iter().map(|&j| e[(i, j)].norm()).sum();
                for (&j, s) in members.iter().zip(sums.iter_mut()) {
                    *s += e[(j, i)].norm();
                }
                members.push(i);
                sums.push(own);
            }
            None => parts.push((vec![i], vec![0.0])),
        }
    }
    Ok(parts.into_iter().map(|(m, _)| m).collect())
}

/// [`gershgorin_partition`] as point sequences.
pub fn gershgorin_split(
    space: &SpaceId,
    seq: &PointSequence,
    m_target: f64,
    cfg: &EvalConfig,
) -> Result<Vec<PointSequence>> {
    Ok(gershgorin_partition(space, seq, m_target, cfg)?.iter().map(|idx| seq.select(idx)).collect())
}

/// Window accepted by [`space_equivalence_report`].
pub const EQUIVALENCE_MAX_ABS_T: f64 = 40.0;
pub const EQUIVALENCE_MAX_SIGMA: f64 = 4.0;
pub const EQUIVALENCE_MAX_POINTS: usize = 128;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub dirichlet_space: SpaceId,
    pub half_plane_space: SpaceId,
    pub m_dirichlet: f64,
    pub m_half_plane: f64,
    /// `m_dirichlet / m_half_plane`; absent when the half-plane bound is 0.
    pub ratio: Option<f64>,
    pub separation: f64,
    pub carleson: f64,
    pub blaschke_sum: f64,
}

/// Boas bounds of `seq` in a Dirichlet-series space and its half-plane
/// counterpart: `(𝓗, H²)` without `alpha`, `(𝓗_α, D_α)` with it
/// (`α = 0` pairs with `H²`).
pub fn space_equivalence_report(seq: &PointSequence, alpha: Option<f64>, cfg: &EvalConfig) -> Result<EquivalenceReport> {
    if seq.is_empty() || seq.len() > EQUIVALENCE_MAX_POINTS {
        return Err(Error::Size(format!(
            "equivalence report takes 1..={EQUIVALENCE_MAX_POINTS} points, got {}",
            seq.len()
        )));
    }
    let bb = seq.bound_box();
    if bb.max_sigma > EQUIVALENCE_MAX_SIGMA || bb.max_abs_t > EQUIVALENCE_MAX_ABS_T {
        return Err(Error::Domain(format!(
            "points must satisfy σ ≤ {EQUIVALENCE_MAX_SIGMA} and |t| ≤ {EQUIVALENCE_MAX_ABS_T}"
        )));
    }
    let dirichlet_space = match alpha {
        None => SpaceId::HardyDirichlet,
        Some(a) => SpaceId::weighted_dirichlet(a)?,
    };
    let half_plane_space = dirichlet_space.half_plane_counterpart();
    let m_dirichlet = boas_bound(&dirichlet_space, seq, cfg)?;
    let m_half_plane = boas_bound(&half_plane_space, seq, cfg)?;
    Ok(EquivalenceReport {
        dirichlet_space,
        half_plane_space,
        m_dirichlet,
        m_half_plane,
        ratio: (m_half_plane > 0.0).then(|| m_dirichlet / m_half_plane),
        separation: separation_or_one(seq),
        carleson: carleson_intensity(seq),
        blaschke_sum: blaschke_sum(seq),
    })
}

/// Anchors of [`merging_family`].
pub const MERGING_ANCHORS: [(f64, f64); 4] = [(0.6, 0.0), (0.8, 3.0), (1.0, -4.0), (0.7, 8.0)];

/// 8 points: each anchor `a` together with `a + i d_a`, where `d_a` puts
/// the pair at pseudohyperbolic distance `delta`. Other pairs stay far
/// apart, so the separation of the family is exactly `delta`.
pub fn merging_family(delta: f64) -> Result<PointSequence> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    let mut points = Vec::with_capacity(2 * MERGING_ANCHORS.len());
    for &(sigma, t) in &MERGING_ANCHORS {
        // |i d| / |2σ - 1 + i d| = delta
        let d = (2.0 * sigma - 1.0) * delta / (1.0 - delta * delta).sqrt();
        points.push(HalfPlanePoint::new(sigma, t)?);
        points.push(HalfPlanePoint::new(sigma, t + d)?);
    }
    PointSequence::new(points)
}

pub const PROBE_MAX_T: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeHit {
    pub tau: f64,
    pub correlation: f64,
    pub pseudohyperbolic_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub hit: Option<ProbeHit>,
    /// Largest correlation seen, with its `τ`.
    pub best_tau: f64,
    pub best_correlation: f64,
    pub grid_step: f64,
    pub evaluations: usize,
}

/// Kernel correlation `|k_s(s + iτ)| / (‖k_s‖ ‖k_{s+iτ}‖)`.
pub fn kernel_correlation(space: &SpaceId, s: &HalfPlanePoint, tau: f64, cfg: &EvalConfig) -> Result<f64> {
    let norm = kernel_norm(space, s, cfg)?;
    let v = kernel_value(space, s, &s.shifted(tau), cfg)?;
    Ok(v.norm() / (norm * norm))
}

/// Scans `τ ∈ (1, t_max]` for the first kernel correlation of at least
/// `target_corr`.
///
/// The grid step is `2π / (20 log q)` with `q` the summation length the
/// evaluator needs at height `t_max`. Grid local maxima within `slack` of
/// the target are refined by golden-section search over the neighbouring
/// cells, where `slack` is the largest rise the derivative bound allows
/// between grid points.
pub fn almost_periodicity_probe(
    space: &SpaceId,
    s: &HalfPlanePoint,
    t_max: f64,
    target_corr: f64,
    cfg: &EvalConfig,
) -> Result<ProbeOutcome> {
    let alpha = match space {
        SpaceId::HardyDirichlet => 0.0,
        SpaceId::WeightedDirichlet { alpha } => *alpha,
        _ => return Err(Error::Domain(format!("probe runs on Dirichlet-series spaces, not {space}"))),
    };
    if !(t_max > 1.0 && t_max <= PROBE_MAX_T) {
        return Err(Error::Domain(format!("t_max must lie in (1, {PROBE_MAX_T}], got {t_max}")));
    }
    let two_sigma = 2.0 * s.sigma();
    let q = truncation_point(Complex64::new(two_sigma, t_max), alpha, cfg)? as f64;
    let step = 2.0 * std::f64::consts::PI / (20.0 * q.ln());
    let norm_sq = kernel_norm(space, s, cfg)?.powi(2);
    let mut evaluations = 0usize;
    let mut corr = |tau: f64| -> Result<f64> {
        evaluations += 1;
        Ok(kernel_value(space, s, &s.shifted(tau), cfg)?.norm() / norm_sq)
    };
    // |d/dτ k| ≤ Σ a_n log n n^{-2σ}, bounded here by the log-weighted tail at 2σ
    let slack = derivative_bound(two_sigma, alpha) * step / norm_sq;
    let hit = |tau: f64, c: f64| ProbeHit {
        tau,
        correlation: c,
        pseudohyperbolic_distance: pseudohyperbolic_distance(s, &s.shifted(tau)),
    };
    let n_steps = ((t_max - 1.0) / step).floor() as usize;
    let mut best = (1.0, 0.0);
    let (mut prev2, mut prev1) = (f64::NAN, f64::NAN);
    for k in 1..=n_steps {
        let tau = 1.0 + k as f64 * step;
        let c = corr(tau)?;
        if c > best.1 {
            best = (tau, c);
        }
        if c >= target_corr {
            let outcome = ProbeOutcome {
                hit: Some(hit(tau, c)),
                best_tau: tau,
                best_correlation: c,
                grid_step: step,
                evaluations,
            };
            return Ok(outcome);
        }
        // prev1 is a grid local maximum
        if prev1 >= prev2 && prev1 >= c && prev1 + slack >= target_corr {
            let centre = tau - step;
            let (t_ref, c_ref) = golden_max(&mut corr, centre - step, centre + step)?;
            if c_ref > best.1 {
                best = (t_ref, c_ref);
            }
            if c_ref >= target_corr {
                return Ok(ProbeOutcome {
                    hit: Some(hit(t_ref, c_ref)),
                    best_tau: t_ref,
                    best_correlation: c_ref,
                    grid_step: step,
                    evaluations,
                });
            }
        }
        prev2 = prev1;
        prev1 = c;
    }
    Ok(ProbeOutcome { hit: None, best_tau: best.0, best_correlation: best.1, grid_step: step, evaluations })
}

/// `Σ_n log n · n^{-x} log^{-α}(n+1)` summed until the terms are negligible,
/// a bound for the τ-derivative of `k_s(s + iτ)` at `x = 2σ`.
fn derivative_bound(x: f64, alpha: f64) -> f64 {
    let mut acc = 0.0;
    for n in 2..200_000u64 {
        let nf = n as f64;
        let term = nf.ln() * nf.powf(-x) * (nf + 1.0).ln().powf(-alpha);
        acc += term;
        if term < 1e-12 * acc {
            break;
        }
    }
    // integral tail past the cut is small next to the leading terms
    acc * 1.01
}

fn golden_max(f: &mut impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..40 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        }
        if b - a < 1e-9 {
            break;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

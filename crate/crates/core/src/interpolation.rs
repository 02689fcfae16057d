//! Finite interpolation: prime-power Blaschke-type products with their
//! Lagrange-style interpolant, and minimal-norm kernel interpolants.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::{gram_matrix, solve_hermitian_pd};
use crate::kernel::{kernel_norm, kernel_value};
use crate::space::{HalfPlanePoint, PointSequence, SpaceId};
use crate::zeta_kernels::EvalConfig;

/// Node cap for the Blaschke path.
pub const MAX_BLASCHKE_NODES: usize = 64;
/// Primes are searched below this bound.
pub const PRIME_SEARCH_LIMIT: u64 = 10_000;
/// Minimal distance from a foreign node to the zero set of a factor.
pub const ZERO_CLEARANCE: f64 = 1e-8;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn primes_below(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit];
    let mut out = Vec::new();
    for i in 2..limit {
        if sieve[i] {
            out.push(i as u64);
            let mut k = i * i;
            while k < limit {
                sieve[k] = false;
                k += i;
            }
        }
    }
    out
}

/// Distance from `s` to `{center + 2πik / log p : k ∈ Z}`.
fn distance_to_zero_set(center: &HalfPlanePoint, p: u64, s: &HalfPlanePoint) -> f64 {
    let spacing = TWO_PI / (p as f64).ln();
    let dt = s.t() - center.t();
    let k = (dt / spacing).round();
    let ds = s.sigma() - center.sigma();
    ds.hypot(dt - k * spacing)
}

/// Greedy choice of one prime per node: the first prime whose factor
/// `1 - p^{s_j - s}` keeps every other node at distance at least
/// [`ZERO_CLEARANCE`] from its zero set.
pub fn select_primes(nodes: &PointSequence) -> Result<Vec<u64>> {
    if nodes.len() > MAX_BLASCHKE_NODES {
        return Err(Error::Size(format!("{} nodes exceed the Blaschke cap {MAX_BLASCHKE_NODES}", nodes.len())));
    }
    let primes = primes_below(PRIME_SEARCH_LIMIT);
    let pts = nodes.points();
    pts.iter()
        .enumerate()
        .map(|(j, sj)| {
            primes
                .iter()
                .copied()
                .find(|&p| {
                    pts.iter()
                        .enumerate()
                        .all(|(l, sl)| l == j || distance_to_zero_set(sj, p, sl) >= ZERO_CLEARANCE)
                })
                .ok_or_else(|| {
                    Error::Exhaustion(format!("no prime below {PRIME_SEARCH_LIMIT} clears node {j} ({sj:?})"))
                })
        })
        .collect()
}

/// `e^z - 1` without cancellation for small `|z|`.
fn exp_m1(z: Complex64) -> Complex64 {
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * z.im.cos() - 2.0 * half * half, z.re.exp() * z.im.sin())
}

/// `B(s) = ∏_j (1 - p_j^{s_j - s})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletBlaschke {
    nodes: PointSequence,
    primes: Vec<u64>,
}

impl DirichletBlaschke {
    pub fn new(nodes: PointSequence, primes: Vec<u64>) -> Result<Self> {
        if primes.len() != nodes.len() {
            return Err(Error::Size(format!("{} primes for {} nodes", primes.len(), nodes.len())));
        }
        if primes.iter().any(|&p| p < 2) {
            return Err(Error::Domain("factor bases must be at least 2".into()));
        }
        Ok(Self { nodes, primes })
    }

    /// Builds the product with primes from [`select_primes`].
    pub fn for_nodes(nodes: PointSequence) -> Result<Self> {
        let primes = select_primes(&nodes)?;
        Self::new(nodes, primes)
    }

    pub fn nodes(&self) -> &PointSequence {
        &self.nodes
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The `j`-th factor `1 - p_j^{s_j - s}`.
    pub fn factor(&self, j: usize, s: Complex64) -> Complex64 {
        let sj = self.nodes.points()[j].to_complex();
        -exp_m1((sj - s) * (self.primes[j] as f64).ln())
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (0..self.primes.len()).map(|j| self.factor(j, s)).product()
    }

    /// `B_j(s)`, the product with factor `j` left out.
    pub fn partial(&self, j: usize, s: Complex64) -> Complex64 {
        (0..self.primes.len()).filter(|&l| l != j).map(|l| self.factor(l, s)).product()
    }

    /// `B'(s_j) = log p_j · B_j(s_j)`.
    pub fn derivative_at_node(&self, j: usize) -> Complex64 {
        (self.primes[j] as f64).ln() * self.partial(j, self.nodes.points()[j].to_complex())
    }

    /// Dirichlet-series expansion `Σ b_n n^{-s}` of `Σ_j c_j B_j(s)`, keyed
    /// by `n`. Fails with a size error if some `n` overflows `u128`.
    pub fn expand_combination(&self, coefficients: &[Complex64]) -> Result<BTreeMap<u128, Complex64>> {
        let mut total: BTreeMap<u128, Complex64> = BTreeMap::new();
        for (j, &cj) in coefficients.iter().enumerate() {
            if cj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut terms: BTreeMap<u128, Complex64> = BTreeMap::from([(1u128, cj)]);
            for (l, &p) in self.primes.iter().enumerate() {
                if l == j {
                    continue;
                }
                // 1 - p^{s_l} p^{-s}
                let shift = -(self.nodes.points()[l].to_complex() * (p as f64).ln()).exp();
                let mut next = terms.clone();
                for (&n, &b) in &terms {
                    let m = n
                        .checked_mul(p as u128)
                        .ok_or_else(|| Error::Size("Dirichlet expansion index overflows u128".into()))?;
                    *next.entry(m).or_insert(Complex64::new(0.0, 0.0)) += b * shift;
                }
                terms = next;
            }
            for (n, b) in terms {
                *total.entry(n).or_insert(Complex64::new(0.0, 0.0)) += b;
            }
        }
        Ok(total)
    }
}

/// Evaluates a sparse Dirichlet series `Σ b_n n^{-s}`.
pub fn eval_sparse(terms: &BTreeMap<u128, Complex64>, s: Complex64) -> Complex64 {
    terms.iter().map(|(&n, &b)| b * (-s * (n as f64).ln()).exp()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// `f = Σ c_j k_{s_j}`
    KernelCombination,
    /// `f = Σ c_j B_j` with `c_j = a_j / B_j(s_j)`
    BlaschkeLagrange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub per_node: Vec<f64>,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interpolant {
    space: SpaceId,
    nodes: PointSequence,
    coefficients: Vec<Complex64>,
    representation: Representation,
    targets: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primes: Option<Vec<u64>>,
    /// Space norm of the interpolant, when known in closed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<f64>,
    /// `sqrt(Σ |a_j|² / ‖k_{s_j}‖²)`
    target_weighted_l2: f64,
    residual: ResidualReport,
}

impl Interpolant {
    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn nodes(&self) -> &PointSequence {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn targets(&self) -> &[Complex64] {
        &self.targets
    }

    pub fn primes(&self) -> Option<&[u64]> {
        self.primes.as_deref()
    }

    pub fn norm(&self) -> Option<f64> {
        self.norm
    }

    pub fn target_weighted_l2(&self) -> f64 {
        self.target_weighted_l2
    }

    pub fn residual(&self) -> &ResidualReport {
        &self.residual
    }

    fn blaschke(&self) -> Option<DirichletBlaschke> {
        self.primes.as_ref().map(|p| DirichletBlaschke { nodes: self.nodes.clone(), primes: p.clone() })
    }

    pub fn eval(&self, s: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
        match self.representation {
            Representation::BlaschkeLagrange => {
                let b = self.blaschke().ok_or_else(|| Error::Numerical("Blaschke interpolant without primes".into()))?;
                Ok(self.coefficients.iter().enumerate().map(|(j, c)| c * b.partial(j, s)).sum())
            }
            Representation::KernelCombination => {
                let at = HalfPlanePoint::from_complex(s)?;
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, w) in self.coefficients.iter().zip(self.nodes.iter()) {
                    acc += c * kernel_value(&self.space, w, &at, cfg)?;
                }
                Ok(acc)
            }
        }
    }

    /// Dirichlet-series expansion of a Blaschke interpolant.
    pub fn expansion(&self) -> Result<BTreeMap<u128, Complex64>> {
        let b = self
            .blaschke()
            .ok_or_else(|| Error::Domain("only Blaschke interpolants expand into finite Dirichlet series".into()))?;
        b.expand_combination(&self.coefficients)
    }

    fn with_residuals(mut self, cfg: &EvalConfig) -> Result<Self> {
        let per_node = self
            .nodes
            .iter()
            .zip(&self.targets)
            .map(|(p, a)| Ok((self.eval(p.to_complex(), cfg)? - a).norm()))
            .collect::<Result<Vec<f64>>>()?;
        let max = per_node.iter().cloned().fold(0.0, f64::max);
        self.residual = ResidualReport { per_node, max };
        Ok(self)
    }
}

fn check_targets(nodes: &PointSequence, targets: &[Complex64]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::Size("interpolation needs at least one node".into()));
    }
    if nodes.len() != targets.len() {
        return Err(Error::Size(format!("{} targets for {} nodes", targets.len(), nodes.len())));
    }
    Ok(())
}

fn weighted_l2(targets: &[Complex64], norms: &[f64]) -> f64 {
    targets.iter().zip(norms).map(|(a, k)| a.norm_sqr() / (k * k)).sum::<f64>().sqrt()
}

/// `f_0(s) = Σ_j a_j B_j(s) / B_j(s_j)`, a Dirichlet polynomial in `𝓗`.
pub fn finite_interpolant(nodes: &PointSequence, targets: &[Complex64], cfg: &EvalConfig) -> Result<Interpolant> {
    check_targets(nodes, targets)?;
    let b = DirichletBlaschke::for_nodes(nodes.clone())?;
    let coefficients = (0..nodes.len())
        .map(|j| {
            let bj = b.partial(j, nodes.points()[j].to_complex());
            if bj.norm() < 1e-12 {
                return Err(Error::Numerical(format!("|B_{j}(s_{j})| = {:e} is below 1e-12", bj.norm())));
            }
            Ok(targets[j] / bj)
        })
        .collect::<Result<Vec<_>>>()?;
    let space = SpaceId::HardyDirichlet;
    let norms = nodes.iter().map(|w| kernel_norm(&space, w, cfg)).collect::<Result<Vec<_>>>()?;
    Interpolant {
        space,
        nodes: nodes.clone(),
        coefficients,
        representation: Representation::BlaschkeLagrange,
        targets: targets.to_vec(),
        primes: Some(b.primes),
        norm: None,
        target_weighted_l2: weighted_l2(targets, &norms),
        residual: ResidualReport { per_node: Vec::new(), max: 0.0 },
    }
    .with_residuals(cfg)
}

/// Minimal-norm solution `f = Σ c_j k_{s_j}` of `f(s_j) = a_j`.
///
/// With `K = D G D` (`D` the diagonal of kernel norms, `G` the normalized
/// Gram matrix) the system `K c = a` is solved as `G y = D⁻¹ a`, `c = D⁻¹ y`.
pub fn min_norm_interpolant(
    space: &SpaceId,
    nodes: &PointSequence,
    targets: &[Complex64],
    cfg: &EvalConfig,
) -> Result<Interpolant> {
    check_targets(nodes, targets)?;
    let g = gram_matrix(space, nodes, cfg)?;
    let norms = g.kernel_norms().to_vec();
    let rhs: Vec<Complex64> = targets.iter().zip(&norms).map(|(a, k)| a / k).collect();
    let y = solve_hermitian_pd(&g, &rhs)?;
    let coefficients: Vec<Complex64> = y.iter().zip(&norms).map(|(y, k)| y / k).collect();
    let norm_sq: Complex64 = targets.iter().zip(&coefficients).map(|(a, c)| a.conj() * c).sum();
    Interpolant {
        space: space.clone(),
        nodes: nodes.clone(),
        coefficients,
        representation: Representation::KernelCombination,
        targets: targets.to_vec(),
        primes: None,
        norm: Some(norm_sq.re.max(0.0).sqrt()),
        target_weighted_l2: weighted_l2(targets, &norms),
        residual: ResidualReport { per_node: Vec::new(), max: 0.0 },
    }
    .with_residuals(cfg)
}

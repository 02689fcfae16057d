//! Normalized Gram matrices of reproducing kernels.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{kernel_norm, kernel_value};
use crate::linalg::{smallest_eigenpair, solve_hermitian_pd_matrix, CMatrix};
use crate::space::{PointSequence, SpaceId};
use crate::zeta_kernels::EvalConfig;

pub const DEFAULT_GRAM_CAP: usize = 512;

/// `G[l][j] = k_{s_j}(s_l) / (‖k_{s_j}‖ ‖k_{s_l}‖)`.
#[derive(Debug, Clone, Serialize)]
pub struct GramMatrix {
    entries: CMatrix,
    space: SpaceId,
    sequence: PointSequence,
    norms: Vec<f64>,
}

impl GramMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn sequence(&self) -> &PointSequence {
        &self.sequence
    }

    /// Kernel norms `‖k_{s_j}‖` used for the normalization.
    pub fn kernel_norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    /// Principal submatrix on the given indices.
    pub fn restrict(&self, indices: &[usize]) -> Result<GramMatrix> {
        let mut m = CMatrix::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m[(a, b)] = self.entries[(i, j)];
            }
        }
        Ok(GramMatrix {
            entries: m,
            space: self.space.clone(),
            sequence: self.sequence.select(indices),
            norms: indices.iter().map(|&i| self.norms[i]).collect(),
        })
    }
}

pub fn gram_matrix(space: &SpaceId, seq: &PointSequence, cfg: &EvalConfig) -> Result<GramMatrix> {
    gram_matrix_with_cap(space, seq, cfg, DEFAULT_GRAM_CAP)
}

pub fn gram_matrix_with_cap(space: &SpaceId, seq: &PointSequence, cfg: &EvalConfig, cap: usize) -> Result<GramMatrix> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::Size("Gram matrix of an empty sequence".into()));
    }
    if n > cap {
        return Err(Error::Size(format!("sequence length {n} exceeds the Gram cap {cap}")));
    }
    let pts = seq.points();
    let norms = pts.par_iter().map(|w| kernel_norm(space, w, cfg)).collect::<Result<Vec<f64>>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|l| (l + 1..n).map(move |j| (l, j))).collect();
    let off = pairs
        .par_iter()
        .map(|&(l, j)| kernel_value(space, &pts[j], &pts[l], cfg).map(|v| v / (norms[j] * norms[l])))
        .collect::<Result<Vec<Complex64>>>()?;
    let mut entries = CMatrix::zeros(n);
    for l in 0..n {
        entries[(l, l)] = Complex64::new(1.0, 0.0);
    }
    for (&(l, j), v) in pairs.iter().zip(off) {
        entries[(l, j)] = v;
        entries[(j, l)] = v.conj();
    }
    Ok(GramMatrix { entries, space: space.clone(), sequence: seq.clone(), norms })
}

pub fn smallest_eigenvalue(g: &GramMatrix) -> Result<f64> {
    Ok(smallest_eigenpair(&g.entries)?.0)
}

pub fn solve_hermitian_pd(g: &GramMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    solve_hermitian_pd_matrix(&g.entries, b)
}

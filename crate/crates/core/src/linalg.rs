//! Dense complex matrices with the two Hermitian primitives the Gram
//! computations need: cyclic Jacobi eigen-decomposition and Cholesky solves.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Size("matrix rows must all have length n".into()));
        }
        Ok(Self { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `max |A - A*|` over all entries.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    fn off_diagonal_norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc
    }

    fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues (ascending) and matching unit eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi for Hermitian matrices. Each rotation first removes the
/// phase of the pivot `a_pq`, then applies the real symmetric rotation.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen> {
    let n = a.dim();
    let mut m = a.clone();
    // symmetrize so tiny input asymmetries cannot stall the sweeps
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm_sq().max(f64::MIN_POSITIVE);
    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if m.off_diagonal_norm_sq() <= 1e-32 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && m.off_diagonal_norm_sq() > 1e-28 * scale {
        return Err(Error::Convergence(format!("Jacobi sweeps did not converge for n = {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|i| v[(i, k)]).collect()).collect();
    Ok(HermitianEigen { values, vectors })
}

fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let n = m.dim();
    let g = m[(p, q)];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // phase d makes g·d real and positive
    let d = g.conj() / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        let new_kp = akp * c - akq * d * s;
        let new_kq = akp * s + akq * d * c;
        m[(k, p)] = new_kp;
        m[(p, k)] = new_kp.conj();
        m[(k, q)] = new_kq;
        m[(q, k)] = new_kq.conj();
    }
    m[(p, p)] = Complex64::new(app - t * mag, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * d * s;
        v[(k, q)] = vkp * s + vkq * d * c;
    }
}

/// Smallest eigenvalue with a residual certificate `‖Av - λv‖ ≤ 1e-10`.
pub fn smallest_eigenpair(a: &CMatrix) -> Result<(f64, Vec<Complex64>)> {
    if a.dim() == 0 {
        return Err(Error::Size("empty matrix has no eigenvalues".into()));
    }
    let eig = hermitian_eigen(a)?;
    let lambda = eig.values[0];
    let vec = eig.vectors[0].clone();
    let av = a.mul_vec(&vec);
    let residual = vec_norm(&av.iter().zip(&vec).map(|(x, y)| x - y * lambda).collect::<Vec<_>>());
    if residual > 1e-10 {
        return Err(Error::Convergence(format!("eigen residual {residual:e} exceeds 1e-10")));
    }
    Ok((lambda, vec))
}

/// Lower-triangular Cholesky factor `A = L L*`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: CMatrix,
}

/// Pivots below this abort the factorization.
pub const CHOLESKY_MIN_PIVOT: f64 = 1e-12;

impl Cholesky {
    pub fn factor(a: &CMatrix) -> Result<Self> {
        let n = a.dim();
        let mut l = CMatrix::zeros(n);
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if !(d >= CHOLESKY_MIN_PIVOT) {
                return Err(Error::IllConditioned(format!(
                    "Cholesky pivot {d:e} at column {j} is below {CHOLESKY_MIN_PIVOT:e}"
                )));
            }
            let djj = d.sqrt();
            l[(j, j)] = Complex64::new(djj, 0.0);
            for i in j + 1..n {
                let mut acc = a[(i, j)];
                for k in 0..j {
                    acc -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = acc / djj;
            }
        }
        Ok(Self { l })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.l.dim();
        let mut y = vec![ZERO; n];
        for i in 0..n {
            let mut acc = b[i];
            for k in 0..i {
                acc -= self.l[(i, k)] * y[k];
            }
            y[i] = acc / self.l[(i, i)];
        }
        let mut x = vec![ZERO; n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            for k in i + 1..n {
                acc -= self.l[(k, i)].conj() * x[k];
            }
            x[i] = acc / self.l[(i, i)];
        }
        x
    }
}

/// Solves `A x = b` for Hermitian positive definite `A`, with one step of
/// iterative refinement, and checks `‖Ax - b‖ ≤ 1e-10 ‖b‖`.
pub fn solve_hermitian_pd_matrix(a: &CMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    if b.len() != a.dim() {
        return Err(Error::Size(format!("rhs length {} does not match n = {}", b.len(), a.dim())));
    }
    let chol = Cholesky::factor(a)?;
    let mut x = chol.solve(b);
    let residual = |x: &[Complex64]| -> Vec<Complex64> {
        a.mul_vec(x).iter().zip(b).map(|(ax, bi)| bi - ax).collect()
    };
    let r = residual(&x);
    let dx = chol.solve(&r);
    for (xi, di) in x.iter_mut().zip(&dx) {
        *xi += di;
    }
    let rn = vec_norm(&residual(&x));
    let bn = vec_norm(b);
    if rn > 1e-10 * bn {
        return Err(Error::IllConditioned(format!("solve residual {rn:e} exceeds 1e-10·‖b‖ = {:e}", 1e-10 * bn)));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eigen(&CMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn two_by_two_real() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.5, 0.0)], vec![c(0.5, 0.0), c(1.0, 0.0)]]).unwrap();
        let (l, _) = smallest_eigenpair(&a).unwrap();
        assert!((l - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_complex_phase() {
        let g = c(0.3, -0.4);
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), g], vec![g.conj(), c(1.0, 0.0)]]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0] - 0.5).abs() < 1e-14);
        assert!((e.values[1] - 1.5).abs() < 1e-14);
    }

    #[test]
    fn jacobi_reconstructs_matrix() {
        let a = CMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.3, 0.1), c(-0.2, 0.4)],
            vec![c(0.3, -0.1), c(1.0, 0.0), c(0.0, 0.7)],
            vec![c(-0.2, -0.4), c(0.0, -0.7), c(3.0, 0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&a).unwrap();
        for (lambda, v) in e.values.iter().zip(&e.vectors) {
            let av = a.mul_vec(v);
            for (x, y) in av.iter().zip(v) {
                assert!((x - y * lambda).norm() < 1e-13);
            }
            assert!((vec_norm(v) - 1.0).abs() < 1e-13);
        }
        let sum: f64 = e.values.iter().sum();
        assert!((sum - 6.0).abs() < 1e-13);
    }

    #[test]
    fn cholesky_identity_and_zero_rhs() {
        let a = CMatrix::identity(4);
        let b = vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0), c(7.0, -1.0)];
        assert_eq!(solve_hermitian_pd_matrix(&a, &b).unwrap(), b);
        let zero = vec![ZERO; 4];
        assert_eq!(solve_hermitian_pd_matrix(&a, &zero).unwrap(), zero);
    }

    #[test]
    fn cholesky_rejects_singular() {
        let a = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]]).unwrap();
        let err = solve_hermitian_pd_matrix(&a, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::IllConditioned(_)));
    }
}

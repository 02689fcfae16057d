//! Python bindings. Points are `(sigma, t)` tuples, complex values are
//! Python `complex`, spaces are text tags (`"h"`, `"h2"`, `"h_alpha:-1"`,
//! `"d_alpha:0.5"`).

use dirichlet_rkhs::diagnostics;
use dirichlet_rkhs::embeddings;
use dirichlet_rkhs::interpolation;
use dirichlet_rkhs::zeta_kernels::{self, WeightedZetaParams};
use dirichlet_rkhs::{EvalConfig, HalfPlanePoint, PointSequence, SpaceId};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

pyo3::create_exception!(dirichlet_rkhs, DirichletRkhsError, PyValueError);

fn err(e: dirichlet_rkhs::Error) -> PyErr {
    DirichletRkhsError::new_err(format!("{}: {e}", e.name()))
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for dirichlet_rkhs::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn config(tol: f64, max_terms: usize) -> PyResult<EvalConfig> {
    EvalConfig::default().with_tol(tol).and_then(|c| c.with_max_terms(max_terms)).py()
}

fn space(tag: &str) -> PyResult<SpaceId> {
    tag.parse().py()
}

fn point(s: Complex64) -> PyResult<HalfPlanePoint> {
    HalfPlanePoint::from_complex(s).py()
}

fn sequence(points: Vec<(f64, f64)>) -> PyResult<PointSequence> {
    PointSequence::from_pairs(&points).py()
}

fn polynomial(coeffs: Vec<Complex64>) -> PyResult<dirichlet_rkhs::DirichletPolynomial> {
    dirichlet_rkhs::DirichletPolynomial::new(coeffs).py()
}

/// Riemann zeta function for `Re s > 0`, `s != 1`.
#[pyfunction]
#[pyo3(signature = (s, tol = 1e-10, max_terms = 1_000_000))]
fn zeta(s: Complex64, tol: f64, max_terms: usize) -> PyResult<Complex64> {
    zeta_kernels::eval_zeta(s, &config(tol, max_terms)?).py()
}

/// `h(z) = zeta(z) - 1/(z - 1)`, finite at `z = 1`.
#[pyfunction]
#[pyo3(signature = (z, tol = 1e-10, max_terms = 1_000_000))]
fn zeta_remainder(z: Complex64, tol: f64, max_terms: usize) -> PyResult<Complex64> {
    zeta_kernels::eval_zeta_remainder(z, &config(tol, max_terms)?).py()
}

#[pyfunction]
#[pyo3(signature = (alpha, s, tol = 1e-10, max_terms = 1_000_000))]
fn weighted_zeta(alpha: f64, s: Complex64, tol: f64, max_terms: usize) -> PyResult<Complex64> {
    let p = WeightedZetaParams::new(alpha).py()?;
    zeta_kernels::eval_weighted_zeta(&p, s, &config(tol, max_terms)?).py()
}

#[pyfunction]
#[pyo3(signature = (alpha, z, tol = 1e-10, max_terms = 1_000_000))]
fn weighted_remainder(alpha: f64, z: Complex64, tol: f64, max_terms: usize) -> PyResult<Complex64> {
    let p = WeightedZetaParams::new(alpha).py()?;
    zeta_kernels::eval_weighted_remainder(&p, z, &config(tol, max_terms)?).py()
}

/// `k_w(s)` in the given space.
#[pyfunction]
fn kernel(space_tag: &str, w: Complex64, s: Complex64) -> PyResult<Complex64> {
    dirichlet_rkhs::kernel_value(&space(space_tag)?, &point(w)?, &point(s)?, &EvalConfig::default()).py()
}

#[pyfunction]
fn kernel_norm(space_tag: &str, w: Complex64) -> PyResult<f64> {
    dirichlet_rkhs::kernel_norm(&space(space_tag)?, &point(w)?, &EvalConfig::default()).py()
}

#[pyfunction]
fn pseudohyperbolic_distance(s: Complex64, w: Complex64) -> PyResult<f64> {
    Ok(dirichlet_rkhs::pseudohyperbolic_distance(&point(s)?, &point(w)?))
}

/// Normalized Gram matrix of unit kernels.
#[pyclass(module = "dirichlet_rkhs", frozen)]
struct Gram {
    inner: dirichlet_rkhs::GramMatrix,
}

#[pymethods]
impl Gram {
    #[new]
    fn new(space_tag: &str, points: Vec<(f64, f64)>) -> PyResult<Self> {
        let inner = dirichlet_rkhs::gram_matrix(&space(space_tag)?, &sequence(points)?, &EvalConfig::default()).py()?;
        Ok(Self { inner })
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<Complex64>> {
        self.inner.entries().rows()
    }

    #[getter]
    fn kernel_norms(&self) -> Vec<f64> {
        self.inner.kernel_norms().to_vec()
    }

    fn smallest_eigenvalue(&self) -> PyResult<f64> {
        dirichlet_rkhs::smallest_eigenvalue(&self.inner).py()
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }
}

#[pyclass(module = "dirichlet_rkhs", frozen)]
struct Interpolant {
    inner: interpolation::Interpolant,
}

#[pymethods]
impl Interpolant {
    fn __call__(&self, s: Complex64) -> PyResult<Complex64> {
        self.inner.eval(s, &EvalConfig::default()).py()
    }

    #[getter]
    fn coefficients(&self) -> Vec<Complex64> {
        self.inner.coefficients().to_vec()
    }

    #[getter]
    fn norm(&self) -> Option<f64> {
        self.inner.norm()
    }

    #[getter]
    fn primes(&self) -> Option<Vec<u64>> {
        self.inner.primes().map(|p| p.to_vec())
    }

    #[getter]
    fn max_residual(&self) -> f64 {
        self.inner.residual().max
    }

    #[getter]
    fn space(&self) -> String {
        self.inner.space().to_string()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// Dirichlet polynomial in `h` through the Blaschke–Lagrange construction.
#[pyfunction]
fn finite_interpolant(points: Vec<(f64, f64)>, targets: Vec<Complex64>) -> PyResult<Interpolant> {
    let inner = interpolation::finite_interpolant(&sequence(points)?, &targets, &EvalConfig::default()).py()?;
    Ok(Interpolant { inner })
}

/// Minimal-norm kernel combination attaining the targets.
#[pyfunction]
fn min_norm_interpolant(space_tag: &str, points: Vec<(f64, f64)>, targets: Vec<Complex64>) -> PyResult<Interpolant> {
    let inner =
        interpolation::min_norm_interpolant(&space(space_tag)?, &sequence(points)?, &targets, &EvalConfig::default())
            .py()?;
    Ok(Interpolant { inner })
}

#[pyfunction]
fn boas_bound(space_tag: &str, points: Vec<(f64, f64)>) -> PyResult<f64> {
    diagnostics::boas_bound(&space(space_tag)?, &sequence(points)?, &EvalConfig::default()).py()
}

#[pyfunction]
fn separation_constant(points: Vec<(f64, f64)>) -> PyResult<f64> {
    diagnostics::separation_constant(&sequence(points)?).py()
}

#[pyfunction]
fn carleson_intensity(points: Vec<(f64, f64)>) -> PyResult<f64> {
    Ok(diagnostics::carleson_intensity(&sequence(points)?))
}

/// Separation, Carleson intensity, Blaschke sum, H² verdict and Boas bounds.
#[pyfunction]
#[pyo3(signature = (points, spaces = vec!["h".to_string(), "h2".to_string()], delta_min = 0.1, carleson_max = 4.0))]
fn diagnose<'py>(
    py: Python<'py>,
    points: Vec<(f64, f64)>,
    spaces: Vec<String>,
    delta_min: f64,
    carleson_max: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let ids = spaces.iter().map(|t| space(t)).collect::<PyResult<Vec<_>>>()?;
    let r = diagnostics::sequence_report(&sequence(points)?, &ids, delta_min, carleson_max, &EvalConfig::default()).py()?;
    let d = PyDict::new(py);
    d.set_item("separation", r.separation)?;
    d.set_item("carleson", r.carleson)?;
    d.set_item("blaschke_sum", r.blaschke_sum)?;
    d.set_item("verdict_h2", r.verdict_h2)?;
    d.set_item("boas", r.boas)?;
    Ok(d)
}

#[pyfunction]
fn gershgorin_partition(space_tag: &str, points: Vec<(f64, f64)>, m_target: f64) -> PyResult<Vec<Vec<usize>>> {
    diagnostics::gershgorin_partition(&space(space_tag)?, &sequence(points)?, m_target, &EvalConfig::default()).py()
}

/// Vertical-shift search; returns a dict with `hit` (or `None`) and the best value seen.
#[pyfunction]
#[pyo3(signature = (s, t_max, target, space_tag = "h"))]
fn probe<'py>(py: Python<'py>, s: Complex64, t_max: f64, target: f64, space_tag: &str) -> PyResult<Bound<'py, PyDict>> {
    let out =
        diagnostics::almost_periodicity_probe(&space(space_tag)?, &point(s)?, t_max, target, &EvalConfig::default()).py()?;
    let d = PyDict::new(py);
    match out.hit {
        Some(h) => {
            let hit = PyDict::new(py);
            hit.set_item("tau", h.tau)?;
            hit.set_item("correlation", h.correlation)?;
            hit.set_item("pseudohyperbolic_distance", h.pseudohyperbolic_distance)?;
            d.set_item("hit", hit)?;
        }
        None => d.set_item("hit", py.None())?,
    }
    d.set_item("best_tau", out.best_tau)?;
    d.set_item("best_correlation", out.best_correlation)?;
    d.set_item("grid_step", out.grid_step)?;
    d.set_item("evaluations", out.evaluations)?;
    Ok(d)
}

/// `∫_θ^{θ+1} |f(1/2 + it)|² dt / ‖f‖²` for `f = Σ coeffs[n-1] n^{-s}`.
#[pyfunction]
fn line_embedding_ratio(coeffs: Vec<Complex64>, theta: f64) -> PyResult<f64> {
    Ok(embeddings::line_embedding_ratio(&polynomial(coeffs)?, theta).py()?.ratio)
}

#[pyfunction]
fn halfstrip_embedding_ratio(coeffs: Vec<Complex64>, theta: f64, alpha: f64) -> PyResult<f64> {
    Ok(embeddings::halfstrip_embedding_ratio(&polynomial(coeffs)?, theta, alpha).py()?.ratio)
}

#[pymodule]
#[pyo3(name = "dirichlet_rkhs")]
fn dirichlet_rkhs_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DirichletRkhsError", m.py().get_type::<DirichletRkhsError>())?;
    m.add_class::<Gram>()?;
    m.add_class::<Interpolant>()?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_remainder, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_remainder, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_norm, m)?)?;
    m.add_function(wrap_pyfunction!(pseudohyperbolic_distance, m)?)?;
    m.add_function(wrap_pyfunction!(finite_interpolant, m)?)?;
    m.add_function(wrap_pyfunction!(min_norm_interpolant, m)?)?;
    m.add_function(wrap_pyfunction!(boas_bound, m)?)?;
    m.add_function(wrap_pyfunction!(separation_constant, m)?)?;
    m.add_function(wrap_pyfunction!(carleson_intensity, m)?)?;
    m.add_function(wrap_pyfunction!(diagnose, m)?)?;
    m.add_function(wrap_pyfunction!(gershgorin_partition, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    m.add_function(wrap_pyfunction!(line_embedding_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(halfstrip_embedding_ratio, m)?)?;
    Ok(())
}

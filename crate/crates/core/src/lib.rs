//! Reproducing-kernel Hilbert spaces of ordinary Dirichlet series: kernel
//! evaluation, Gram-matrix diagnostics for interpolating sequences, explicit
//! and minimal-norm interpolants, and numerical embedding constants.

pub mod diagnostics;
pub mod embeddings;
pub mod error;
pub mod gram;
pub mod interpolation;
pub mod kernel;
pub mod linalg;
pub mod quadrature;
pub mod space;
pub mod zeta_kernels;

pub use error::{Error, Result};
pub use gram::{gram_matrix, gram_matrix_with_cap, smallest_eigenvalue, solve_hermitian_pd, GramMatrix, DEFAULT_GRAM_CAP};
pub use kernel::{kernel_norm, kernel_value, pseudohyperbolic_distance};
pub use space::{BoundBox, DirichletPolynomial, HalfPlanePoint, PointSequence, SpaceId};
pub use zeta_kernels::{EvalConfig, WeightedZetaParams};

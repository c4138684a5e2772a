//! Eigenvalue counting by inertia, smallest eigenvalues, Dirichlet-Neumann
//! bracketing and discrete Poincare constants.

mod count;
mod dense;
mod eigen;
mod inertia;
mod lanczos;
mod ldlt;
mod poincare;
mod report;

pub use count::{
    bracketing_counts, check_partition, count_matrix, count_negative, zero_band, BracketingReport, Convention,
    CountReport, DEFAULT_REL_TOL,
};
pub use dense::{symmetric_eigen, symmetric_eigenvalues, tridiagonal_eigen};
pub use eigen::{min_eigenvalue, EigenEstimate, EigenMethod, LANCZOS_MAX_ITER};
pub use inertia::{inertia, InertiaMethod, InertiaResult, DENSE_CUTOFF, DENSE_LIMIT, MAX_ENVELOPE, MAX_ORDER};
pub use poincare::{constructive_poincare_constant, poincare_constant, ConstructivePoincare, PoincareResult};
pub use report::{spectral_report, SpectralReport};

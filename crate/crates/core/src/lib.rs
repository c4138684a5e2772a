//! Numerical laboratory for the lattice Anderson Hamiltonian
//! `H = -Δ + h eps(x) - w(x)` with a Bernoulli potential `eps`.
//!
//! The crate covers site percolation of the potential (cluster labeling,
//! coarse-graining, lattice animals, clearings), assembly of the operator on
//! boxes and sub-domains, inertia-based counting of its negative eigenvalues,
//! Dirichlet-Neumann bracketing, closed-form bounds, and reproducible
//! Monte-Carlo experiments that check those bounds.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the usual `f64` instantiation.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod lattice;
pub mod operator;
pub mod percolation;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type SparseMatrix = operator::SparseSymmetric<f64>;
pub type SparseMatrixF32 = operator::SparseSymmetric<f32>;
pub type BoundReport = bounds::BoundReport<f64>;

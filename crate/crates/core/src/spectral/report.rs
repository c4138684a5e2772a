use serde::Serialize;

use super::count::{count_matrix, Convention};
use super::eigen::min_eigenvalue;
use crate::error::Result;
use crate::operator::{assemble, HamiltonianSpec};

/// Inertia counts and smallest eigenvalue of one assembled Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub order: usize,
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
    pub tol: f64,
    pub lambda_min: f64,
    pub residual: f64,
    pub domain_size: usize,
}

pub fn spectral_report(spec: &HamiltonianSpec<'_>, tol: Option<f64>, rel_tol: f64) -> Result<SpectralReport> {
    let m = assemble::<f64>(spec)?;
    let c = count_matrix(&m, Convention::Strict, tol)?;
    let e = min_eigenvalue(&m, rel_tol)?;
    Ok(SpectralReport {
        order: m.order(),
        n_neg: c.inertia.n_neg,
        n_zero: c.inertia.n_zero,
        n_pos: c.inertia.n_pos,
        tol: c.inertia.tol,
        lambda_min: e.value,
        residual: e.residual,
        domain_size: spec.domain.count(),
    })
}

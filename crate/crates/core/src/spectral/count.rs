use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::inertia::{inertia, InertiaResult};
use crate::error::{Error, Result};
use crate::operator::{assemble, BoundaryCondition, DomainMask, HamiltonianSpec, SparseSymmetric};

/// Relative zero-band half-width used when none is given.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Whether eigenvalues inside the zero band are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Only eigenvalues below `-tol`.
    #[default]
    Strict,
    /// Eigenvalues up to `+tol`.
    Weak,
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(Self::Strict),
            "weak" => Ok(Self::Weak),
            _ => Err(Error::Input(format!("unknown counting convention {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountReport {
    pub inertia: InertiaResult,
    pub strict: usize,
    pub weak: usize,
    pub convention: Convention,
    /// The count under `convention`.
    pub count: usize,
}

impl CountReport {
    fn new(inertia: InertiaResult, convention: Convention) -> Self {
        let strict = inertia.n_neg;
        let weak = inertia.n_neg + inertia.n_zero;
        let count = match convention {
            Convention::Strict => strict,
            Convention::Weak => weak,
        };
        CountReport { inertia, strict, weak, convention, count }
    }
}

/// Absolute zero band: `tol` if given, else `DEFAULT_REL_TOL * ||m||_inf`.
pub fn zero_band(m: &SparseSymmetric<f64>, tol: Option<f64>) -> f64 {
    tol.unwrap_or_else(|| DEFAULT_REL_TOL * m.norm_inf()).max(f64::MIN_POSITIVE)
}

/// Counts negative eigenvalues of an assembled matrix.
pub fn count_matrix(m: &SparseSymmetric<f64>, convention: Convention, tol: Option<f64>) -> Result<CountReport> {
    Ok(CountReport::new(inertia(m, 0.0, zero_band(m, tol))?, convention))
}

/// Counts negative eigenvalues of the Hamiltonian described by `spec`.
pub fn count_negative(spec: &HamiltonianSpec<'_>, convention: Convention, tol: Option<f64>) -> Result<CountReport> {
    count_matrix(&assemble::<f64>(spec)?, convention, tol)
}

/// Counts for the Dirichlet-decoupled, the full, and the Neumann-decoupled
/// operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketingReport {
    pub dirichlet_strict: usize,
    pub dirichlet_weak: usize,
    pub full_strict: usize,
    pub full_weak: usize,
    pub neumann_strict: usize,
    pub neumann_weak: usize,
    pub parts: usize,
    pub tol: f64,
    /// `dirichlet_weak <= full_weak <= neumann_weak`
    pub ordered: bool,
}

impl BracketingReport {
    /// `(N_D, N_full, N_N)` under the weak convention.
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.dirichlet_weak, self.full_weak, self.neumann_weak)
    }
}

/// Checks that `masks` are pairwise disjoint and cover the box of `base`.
pub fn check_partition(base: &HamiltonianSpec<'_>, masks: &[DomainMask]) -> Result<()> {
    let bx = base.field.box_spec();
    let mut cover = vec![false; bx.len()];
    for (k, m) in masks.iter().enumerate() {
        if m.box_spec() != bx {
            return Err(Error::Set(format!("part {k} lives on a different box")));
        }
        for i in m.indices() {
            if std::mem::replace(&mut cover[i], true) {
                return Err(Error::Set(format!("site {i} belongs to more than one part")));
            }
        }
    }
    if let Some(i) = cover.iter().position(|&c| !c) {
        return Err(Error::Set(format!("site {i} is not covered by the partition")));
    }
    Ok(())
}

/// Counts the full-box operator of `base` and the direct sums of its
/// restrictions to `partition` with Dirichlet and with Neumann cuts. The box
/// edge keeps `base.outer` throughout; one absolute zero band (from `tol` or
/// the largest matrix norm) serves all operators.
pub fn bracketing_counts(base: &HamiltonianSpec<'_>, partition: &[DomainMask], tol: Option<f64>) -> Result<BracketingReport> {
    if !base.domain.is_full() {
        return Err(Error::Set("bracketing needs the full-box operator as base".into()));
    }
    check_partition(base, partition)?;
    let restrict = |bc: BoundaryCondition, dom: &DomainMask| HamiltonianSpec {
        bc,
        domain: dom.clone(),
        ..base.clone()
    };
    let full = assemble::<f64>(base)?;
    let build = |bc| -> Result<Vec<SparseSymmetric<f64>>> {
        partition.par_iter().map(|dom| assemble::<f64>(&restrict(bc, dom))).collect()
    };
    let dir = build(BoundaryCondition::Dirichlet)?;
    let neu = build(BoundaryCondition::Neumann)?;
    let norm = dir.iter().chain(&neu).map(|m| m.norm_inf()).fold(full.norm_inf(), f64::max);
    let band = tol.unwrap_or(DEFAULT_REL_TOL * norm).max(f64::MIN_POSITIVE);

    let sum = |ms: &[SparseSymmetric<f64>]| -> Result<(usize, usize)> {
        let counts: Vec<InertiaResult> = ms.par_iter().map(|m| inertia(m, 0.0, band)).collect::<Result<_>>()?;
        Ok(counts.iter().fold((0, 0), |(s, w), c| (s + c.n_neg, w + c.n_neg + c.n_zero)))
    };
    let (ds, dw) = sum(&dir)?;
    let (ns, nw) = sum(&neu)?;
    let f = inertia(&full, 0.0, band)?;
    let (fs, fw) = (f.n_neg, f.n_neg + f.n_zero);
    Ok(BracketingReport {
        dirichlet_strict: ds,
        dirichlet_weak: dw,
        full_strict: fs,
        full_weak: fw,
        neumann_strict: ns,
        neumann_weak: nw,
        parts: partition.len(),
        tol: band,
        ordered: dw <= fw && fw <= nw,
    })
}

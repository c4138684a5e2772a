use serde::Serialize;

use super::eigen::min_eigenvalue;
use crate::bounds::neumann_gap;
use crate::error::{Error, Result};
use crate::lattice::{BoxSpec, PerturbationSpec, PotentialField};
use crate::operator::{assemble, BoundaryCondition, HamiltonianSpec};
use crate::scalar::Scalar;

/// Best constant `C` in `sum_Q u^2 <= C (h sum_{Q'} u^2 + sum |grad u|^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincareResult<T> {
    /// `1 / lambda_min`; infinite when `Q'` is empty.
    pub c_opt: T,
    pub lambda_min: T,
    pub residual: T,
}

/// Optimal constant for the cube of edge `l` in dimension `d`, with `subset`
/// given as indices into the cube's sites (row-major, first axis slowest).
pub fn poincare_constant<T: Scalar>(l: usize, d: usize, subset: &[usize], h: T) -> Result<PoincareResult<T>> {
    if !(h > T::zero() && h.is_finite()) {
        return Err(Error::Domain(format!("h={h} must be positive")));
    }
    let cube = BoxSpec::new(d, l, &vec![0; d])?;
    if subset.is_empty() {
        return Ok(PoincareResult { c_opt: T::infinity(), lambda_min: T::zero(), residual: T::zero() });
    }
    let field = PotentialField::uniform(cube, 0.5, 0)?;
    let w = PerturbationSpec::zero(d);
    let spec = HamiltonianSpec::full_box(&field, 1.0, &w, BoundaryCondition::Neumann)?;
    let mut m = assemble::<T>(&spec)?;
    let mut bump = vec![T::zero(); cube.len()];
    for &i in subset {
        *bump.get_mut(i).ok_or_else(|| Error::Shape(format!("subset index {i} outside cube")))? = h;
    }
    m.add_diagonal(&bump);
    let e = min_eigenvalue(&m, T::epsilon() * T::of(256.0))?;
    Ok(PoincareResult { c_opt: e.value.recip(), lambda_min: e.value, residual: e.residual })
}

/// Constant obtained by splitting `u` into its mean and a mean-zero part,
/// valid whenever `|Q'| >= (p/2) |Q|`:
/// `max(4 / (p h), (4/p + 1) / gap)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstructivePoincare {
    /// With the exact lattice Neumann gap `2 (1 - cos(pi / l))`.
    pub discrete: f64,
    /// With the continuum gap `pi^2 / l^2`.
    pub continuum: f64,
}

pub fn constructive_poincare_constant(l: usize, h: f64, p: f64) -> Result<ConstructivePoincare> {
    if l == 0 || !(h > 0.0) || !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!("need l >= 1, h > 0, 0 < p <= 1 (l={l}, h={h}, p={p})")));
    }
    let mean_part = 4.0 / (p * h);
    if l == 1 {
        return Ok(ConstructivePoincare { discrete: mean_part, continuum: mean_part });
    }
    let build = |gap: f64| mean_part.max((4.0 / p + 1.0) / gap);
    let lf = l as f64;
    Ok(ConstructivePoincare {
        discrete: build(neumann_gap::<f64>(l)),
        continuum: build(std::f64::consts::PI.powi(2) / (lf * lf)),
    })
}

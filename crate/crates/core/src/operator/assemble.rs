use super::domain::{BoundaryCondition, DomainMask};
use super::sparse::SparseSymmetric;
use crate::error::{Error, Result};
use crate::lattice::{neighbor_offsets, Connectivity, PerturbationSpec, PotentialField};
use crate::scalar::Scalar;

/// Everything needed to build `H = -Δ + h eps - w` restricted to a domain.
///
/// `bc` governs couplings cut by the domain inside the box; `outer` governs
/// couplings that leave the box. For a full-box domain only `outer` matters.
#[derive(Debug, Clone)]
pub struct HamiltonianSpec<'a> {
    pub field: &'a PotentialField,
    pub h: f64,
    pub w: &'a PerturbationSpec,
    pub bc: BoundaryCondition,
    pub outer: BoundaryCondition,
    pub domain: DomainMask,
    /// Replace `w` by `min(h / 2, w)`.
    pub clamp_w: bool,
}

impl<'a> HamiltonianSpec<'a> {
    pub fn new(
        field: &'a PotentialField,
        h: f64,
        w: &'a PerturbationSpec,
        bc: BoundaryCondition,
        domain: DomainMask,
    ) -> Result<Self> {
        let spec = HamiltonianSpec { field, h, w, bc, outer: bc, domain, clamp_w: false };
        spec.validate()?;
        Ok(spec)
    }

    /// Whole box with the given condition on its edge.
    pub fn full_box(field: &'a PotentialField, h: f64, w: &'a PerturbationSpec, bc: BoundaryCondition) -> Result<Self> {
        Self::new(field, h, w, bc, DomainMask::full(*field.box_spec()))
    }

    pub fn with_outer(mut self, outer: BoundaryCondition) -> Self {
        self.outer = outer;
        self
    }

    pub fn with_clamp_w(mut self, clamp: bool) -> Self {
        self.clamp_w = clamp;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::Domain(format!("coupling h={} must be positive and finite", self.h)));
        }
        if self.domain.box_spec() != self.field.box_spec() {
            return Err(Error::Shape("domain and field live on different boxes".into()));
        }
        if self.w.d != self.field.box_spec().dim() {
            return Err(Error::Shape(format!(
                "perturbation dimension {} differs from box dimension {}",
                self.w.d,
                self.field.box_spec().dim()
            )));
        }
        Ok(())
    }

    /// Effective well at box index `idx`.
    pub fn well(&self, idx: usize) -> f64 {
        let w = self.w.eval(&self.field.box_spec().site_at(idx));
        if self.clamp_w {
            w.min(self.h / 2.0)
        } else {
            w
        }
    }
}

/// Builds the restricted Hamiltonian.
///
/// Each member site gets `-1` toward every member neighbor and the diagonal
/// `deg + h eps(x) - w(x)` where `deg` counts member neighbors plus:
/// for each neighbor outside the box, 1 under Dirichlet `outer`;
/// for each neighbor in the box but outside the domain, 2 under Dirichlet `bc`.
/// Neumann adds nothing. Cut couplings contribute `(u_x + u_y)^2` to the
/// form, so splitting a box along cuts can only raise (Dirichlet) or lower
/// (Neumann) the operator.
pub fn assemble<T: Scalar>(spec: &HamiltonianSpec<'_>) -> Result<SparseSymmetric<T>> {
    spec.validate()?;
    let bx = *spec.field.box_spec();
    let offsets = neighbor_offsets(bx.dim(), Connectivity::One);
    let rows = spec.domain.row_map();
    let cut_weight = match spec.bc {
        BoundaryCondition::Dirichlet => 2.0,
        BoundaryCondition::Neumann => 0.0,
    };
    let outer_weight = match spec.outer {
        BoundaryCondition::Dirichlet => 1.0,
        BoundaryCondition::Neumann => 0.0,
    };

    let mut trip = Vec::with_capacity(spec.domain.count() * (offsets.len() / 2 + 1));
    for idx in spec.domain.indices() {
        let r = rows[idx];
        let mut diag = spec.h * f64::from(spec.field.at(idx)) - spec.well(idx);
        for off in &offsets {
            match bx.neighbor(idx, off) {
                Some(j) if spec.domain.contains(j) => {
                    diag += 1.0;
                    if rows[j] < r {
                        trip.push((r, rows[j], -T::one()));
                    }
                }
                Some(_) => diag += cut_weight,
                None => diag += outer_weight,
            }
        }
        trip.push((r, r, T::of(diag)));
    }
    SparseSymmetric::from_triplets(spec.domain.count(), trip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{sample_potential, BoxSpec};

    fn field(d: usize, side: usize, value: u8) -> PotentialField {
        PotentialField::uniform(BoxSpec::new(d, side, &vec![0; d]).unwrap(), 0.5, value).unwrap()
    }

    #[test]
    fn single_site_examples() {
        let f = field(1, 1, 0);
        let w = PerturbationSpec::zero(1);
        let m: SparseSymmetric<f64> =
            assemble(&HamiltonianSpec::full_box(&f, 1.0, &w, BoundaryCondition::Dirichlet).unwrap()).unwrap();
        assert_eq!(m.to_dense(), vec![2.0]);
        let f = field(1, 1, 1);
        let m: SparseSymmetric<f64> =
            assemble(&HamiltonianSpec::full_box(&f, 0.5, &w, BoundaryCondition::Neumann).unwrap()).unwrap();
        assert_eq!(m.to_dense(), vec![0.5]);
    }

    #[test]
    fn dirichlet_segment_is_tridiagonal() {
        let f = field(1, 3, 0);
        let w = PerturbationSpec::zero(1);
        let m: SparseSymmetric<f64> =
            assemble(&HamiltonianSpec::full_box(&f, 1.0, &w, BoundaryCondition::Dirichlet).unwrap()).unwrap();
        assert_eq!(m.to_dense(), vec![2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
    }

    #[test]
    fn neumann_rows_sum_to_potential() {
        let bx = BoxSpec::new(2, 6, &[0, 0]).unwrap();
        let f = sample_potential(bx, 0.6, 9).unwrap();
        let w = PerturbationSpec::constant(0.3, 2).unwrap();
        let m: SparseSymmetric<f64> =
            assemble(&HamiltonianSpec::full_box(&f, 1.5, &w, BoundaryCondition::Neumann).unwrap()).unwrap();
        let mut y = vec![0.0; 36];
        m.matvec(&vec![1.0; 36], &mut y);
        for (i, v) in y.iter().enumerate() {
            assert!((v - (1.5 * f64::from(f.at(i)) - 0.3)).abs() < 1e-14);
        }
    }

    #[test]
    fn dirichlet_minus_neumann_is_nonnegative_diagonal() {
        let bx = BoxSpec::new(2, 5, &[0, 0]).unwrap();
        let f = sample_potential(bx, 0.5, 3).unwrap();
        let w = PerturbationSpec::zero(2);
        let dom = DomainMask::new(bx, (0..25).map(|i| i % 3 != 0).collect()).unwrap();
        let d: SparseSymmetric<f64> =
            assemble(&HamiltonianSpec::new(&f, 1.0, &w, BoundaryCondition::Dirichlet, dom.clone()).unwrap()).unwrap();
        let n: SparseSymmetric<f64> =
            assemble(&HamiltonianSpec::new(&f, 1.0, &w, BoundaryCondition::Neumann, dom).unwrap()).unwrap();
        let (dd, nd) = (d.to_dense(), n.to_dense());
        let k = d.order();
        for i in 0..k {
            for j in 0..k {
                let diff = dd[i * k + j] - nd[i * k + j];
                if i == j {
                    assert!(diff >= 0.0);
                } else {
                    assert_eq!(diff, 0.0);
                }
            }
        }
    }

    #[test]
    fn clamp_and_validation() {
        let f = field(1, 2, 0);
        let w = PerturbationSpec::constant(3.0, 1).unwrap();
        let spec = HamiltonianSpec::full_box(&f, 1.0, &w, BoundaryCondition::Neumann).unwrap().with_clamp_w(true);
        assert_eq!(spec.well(0), 0.5);
        assert!(HamiltonianSpec::full_box(&f, 0.0, &w, BoundaryCondition::Neumann).is_err());
        let w3 = PerturbationSpec::zero(3);
        assert!(HamiltonianSpec::full_box(&f, 1.0, &w3, BoundaryCondition::Neumann).is_err());
    }
}

use anderson_core::lattice::{sample_potential, BoxSpec, PerturbationSpec};
use anderson_core::operator::{assemble, BoundaryCondition, DomainMask, HamiltonianSpec, SparseSymmetric};
use anderson_core::spectral::{count_matrix, inertia, min_eigenvalue, symmetric_eigenvalues, Convention};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

fn oracle_eigenvalues(m: &SparseSymmetric<f64>) -> Vec<f64> {
    let n = m.order();
    let mut v: Vec<f64> = SymmetricEigen::new(DMatrix::from_row_slice(n, n, &m.to_dense())).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn bc(dirichlet: bool) -> BoundaryCondition {
    if dirichlet {
        BoundaryCondition::Dirichlet
    } else {
        BoundaryCondition::Neumann
    }
}

/// Random Hamiltonian on a 1-D or 2-D box with a random domain.
fn hamiltonian() -> impl Strategy<Value = SparseSymmetric<f64>> {
    (1usize..=2, 2usize..=12, 0.2f64..0.9, any::<u64>(), 0.0f64..30.0, any::<bool>(), any::<bool>(), prop::collection::vec(any::<bool>(), 144))
        .prop_map(|(d, side, p, seed, c, b1, b2, keep)| {
            let side = if d == 1 { side * 6 } else { side };
            let bx = BoxSpec::centered(d, side).unwrap();
            let field = sample_potential(bx, p, seed).unwrap();
            let w = PerturbationSpec::borderline(c, 1.0 - p, d).unwrap();
            let mut member: Vec<bool> = (0..bx.len()).map(|i| keep[i % keep.len()]).collect();
            member[0] = true;
            let domain = DomainMask::new(bx, member).unwrap();
            let spec = HamiltonianSpec::new(&field, 1.0, &w, bc(b1), domain).unwrap().with_outer(bc(b2));
            assemble::<f64>(&spec).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_match_dense_oracle(m in hamiltonian()) {
        let r = count_matrix(&m, Convention::Weak, None).unwrap();
        let tol = r.inertia.tol;
        let ev = oracle_eigenvalues(&m);
        prop_assert_eq!(r.inertia.n_neg, ev.iter().filter(|&&x| x < -tol).count());
        prop_assert_eq!(r.inertia.n_zero, ev.iter().filter(|&&x| x.abs() <= tol).count());
        prop_assert_eq!(r.count, r.inertia.n_neg + r.inertia.n_zero);
        prop_assert_eq!(r.inertia.order(), m.order());
    }

    #[test]
    fn counting_function_is_monotone_in_the_shift(m in hamiltonian()) {
        let (lo, hi) = m.gershgorin();
        let mut prev = 0;
        for k in 0..=16 {
            let sigma = lo - 1.0 + (hi - lo + 2.0) * k as f64 / 16.0;
            let below = inertia(&m, sigma, 1e-12).unwrap().n_neg;
            prop_assert!(below >= prev);
            prev = below;
        }
        prop_assert_eq!(prev, m.order());
    }

    #[test]
    fn inertia_is_invariant_under_symmetric_permutation(m in hamiltonian(), seed in any::<u64>()) {
        let n = m.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = anderson_core::lattice::mix64(s);
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let pm = m.permuted(&perm).unwrap();
        for shift in [-1.0, 0.0, 0.5, 2.0] {
            let a = inertia(&m, shift, 1e-9).unwrap();
            let b = inertia(&pm, shift, 1e-9).unwrap();
            prop_assert_eq!((a.n_neg, a.n_zero, a.n_pos), (b.n_neg, b.n_zero, b.n_pos));
        }
    }

    #[test]
    fn smallest_eigenvalue_matches_oracle(m in hamiltonian()) {
        let e = min_eigenvalue(&m, 1e-10).unwrap();
        let ev = oracle_eigenvalues(&m);
        let scale = m.norm_inf().max(1.0);
        prop_assert!((e.value - ev[0]).abs() <= 1e-8 * scale, "{} vs {}", e.value, ev[0]);
        prop_assert!(e.residual <= 1e-6 * scale);
    }

    #[test]
    fn dense_solver_matches_oracle(m in hamiltonian()) {
        let ours = symmetric_eigenvalues(&m.to_dense(), m.order()).unwrap();
        let mut ours = ours;
        ours.sort_by(f64::total_cmp);
        let ev = oracle_eigenvalues(&m);
        let scale = m.norm_inf().max(1.0);
        for (a, b) in ours.iter().zip(&ev) {
            prop_assert!((a - b).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn dirichlet_dominates_neumann(d in 1usize..=2, side in 2usize..=10, p in 0.2f64..0.9, seed in any::<u64>(), keep in prop::collection::vec(any::<bool>(), 100)) {
        let bx = BoxSpec::centered(d, side).unwrap();
        let field = sample_potential(bx, p, seed).unwrap();
        let w = PerturbationSpec::borderline(3.0, 1.0 - p, d).unwrap();
        let mut member: Vec<bool> = (0..bx.len()).map(|i| keep[i % keep.len()]).collect();
        member[0] = true;
        let domain = DomainMask::new(bx, member).unwrap();
        let dir = assemble::<f64>(&HamiltonianSpec::new(&field, 1.0, &w, BoundaryCondition::Dirichlet, domain.clone()).unwrap()).unwrap();
        let neu = assemble::<f64>(&HamiltonianSpec::new(&field, 1.0, &w, BoundaryCondition::Neumann, domain).unwrap()).unwrap();
        // D - N is a nonnegative diagonal, so every eigenvalue moves up
        let (dd, nd) = (dir.to_dense(), neu.to_dense());
        let n = dir.order();
        for i in 0..n {
            for j in 0..n {
                let diff = dd[i * n + j] - nd[i * n + j];
                if i == j { prop_assert!(diff >= 0.0); } else { prop_assert_eq!(diff, 0.0); }
            }
        }
        let (ed, en) = (oracle_eigenvalues(&dir), oracle_eigenvalues(&neu));
        for (a, b) in ed.iter().zip(&en) {
            prop_assert!(a >= &(b - 1e-10));
        }
    }

    #[test]
    fn neumann_rows_sum_to_the_potential(d in 1usize..=3, side in 2usize..=6, p in 0.2f64..0.9, seed in any::<u64>(), h in 0.1f64..5.0) {
        let bx = BoxSpec::centered(d, side).unwrap();
        let field = sample_potential(bx, p, seed).unwrap();
        let w = PerturbationSpec::zero(d);
        let m = assemble::<f64>(&HamiltonianSpec::full_box(&field, h, &w, BoundaryCondition::Neumann).unwrap()).unwrap();
        let ones = vec![1.0; m.order()];
        let mut y = vec![0.0; m.order()];
        m.matvec(&ones, &mut y);
        for (i, v) in y.iter().enumerate() {
            prop_assert!((v - h * field.at(i) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn coordinate_format_round_trips(m in hamiltonian()) {
        let back = SparseSymmetric::<f64>::from_coordinate(&m.to_coordinate()).unwrap();
        prop_assert_eq!(back.to_dense(), m.to_dense());
    }
}

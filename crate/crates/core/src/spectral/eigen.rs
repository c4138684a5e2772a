use serde::Serialize;

use super::dense::symmetric_eigenvalues;
use super::inertia::{count_below, DENSE_CUTOFF};
use super::lanczos::{lanczos_smallest, normalize, residual, start_vector};
use super::ldlt::EnvelopeLdlt;
use crate::error::{Error, Result};
use crate::operator::SparseSymmetric;
use crate::scalar::Scalar;

/// Maximum Lanczos steps before falling back.
pub const LANCZOS_MAX_ITER: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    Lanczos,
    Dense,
    Bisection,
}

/// Smallest eigenvalue with a unit eigenvector and `||m v - value v||`.
#[derive(Debug, Clone)]
pub struct EigenEstimate<T> {
    pub value: T,
    pub residual: T,
    pub vector: Vec<T>,
    pub method: EigenMethod,
}

/// Smallest eigenvalue of `m` to absolute accuracy `rel_tol * ||m||_inf`.
///
/// Lanczos runs first; its answer is accepted only if the residual meets the
/// tolerance and a factorization confirms no eigenvalue lies below it.
/// Otherwise orders below the dense cutoff are solved densely and larger ones
/// by bisection on inertia counts. The vector comes from inverse iteration
/// in the fallback paths.
pub fn min_eigenvalue<T: Scalar>(m: &SparseSymmetric<T>, rel_tol: T) -> Result<EigenEstimate<T>> {
    let n = m.order();
    if n == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    if !(rel_tol > T::zero()) {
        return Err(Error::Domain(format!("rel_tol={rel_tol} must be positive")));
    }
    super::inertia::check_budget(m)?;
    let norm = m.norm_inf();
    if norm == T::zero() {
        let mut v = vec![T::zero(); n];
        v[0] = T::one();
        return Ok(EigenEstimate { value: T::zero(), residual: T::zero(), vector: v, method: EigenMethod::Dense });
    }
    let abs_tol = rel_tol * norm;

    let ritz = lanczos_smallest(m, abs_tol, LANCZOS_MAX_ITER)?;
    if ritz.converged {
        let floor = ritz.value - ritz.residual - abs_tol;
        if matches!(count_below(m, floor, abs_tol), Ok((0, _))) {
            return Ok(EigenEstimate {
                value: ritz.value,
                residual: ritz.residual,
                vector: ritz.vector,
                method: EigenMethod::Lanczos,
            });
        }
    }

    let (value, method) = if n < DENSE_CUTOFF {
        (symmetric_eigenvalues(&m.to_dense(), n)?[0], EigenMethod::Dense)
    } else {
        let (lo, _) = m.gershgorin();
        // the Ritz value bounds the minimum from above
        let mut lo = lo - abs_tol;
        let mut hi = ritz.value + abs_tol;
        while hi - lo > abs_tol / T::of(4.0) {
            let mid = (lo + hi) / T::of(2.0);
            if count_below(m, mid, abs_tol)?.0 >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        ((lo + hi) / T::of(2.0), EigenMethod::Bisection)
    };
    let vector = inverse_iteration(m, value, abs_tol)?;
    let residual = residual(m, &vector, value);
    Ok(EigenEstimate { value, residual, vector, method })
}

/// Unit vector approximating the eigenvector of the smallest eigenvalue,
/// which is known to about `abs_tol`.
fn inverse_iteration<T: Scalar>(m: &SparseSymmetric<T>, value: T, abs_tol: T) -> Result<Vec<T>> {
    let slack = abs_tol.max(T::epsilon() * T::of(1e3) * m.norm_inf());
    let f = EnvelopeLdlt::factor(m, value - slack)
        .map_err(|_| Error::Input("shifted matrix not positive definite during inverse iteration".into()))?;
    let mut v = start_vector(m.order());
    for _ in 0..12 {
        f.solve(&mut v);
        normalize(&mut v);
        if residual(m, &v, value) <= abs_tol / T::of(2.0) {
            break;
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closed_forms() {
        let m = SparseSymmetric::<f64>::from_triplets(2, vec![(0, 0, 2.0), (1, 1, 2.0), (1, 0, -1.0)]).unwrap();
        let e = min_eigenvalue(&m, 1e-12).unwrap();
        assert!((e.value - 1.0).abs() < 1e-10);
        assert!(e.residual <= 1e-12 * 3.0);
    }

    #[test]
    fn large_path_matches_inertia() {
        let n = 3000;
        let m = SparseSymmetric::<f64>::from_triplets(
            n,
            (0..n).map(|i| (i, i, 2.0 + 0.001 * (i % 7) as f64)).chain((1..n).map(|i| (i, i - 1, -1.0))),
        )
        .unwrap();
        let e = min_eigenvalue(&m, 1e-10).unwrap();
        assert!(e.residual <= 1e-10 * m.norm_inf());
        assert_eq!(count_below(&m, e.value - 1e-8, 1e-9).unwrap().0, 0);
        assert_eq!(count_below(&m, e.value + 1e-8, 1e-9).unwrap().0, 1);
    }
}

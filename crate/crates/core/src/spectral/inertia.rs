use serde::Serialize;

use super::dense::symmetric_eigenvalues;
use super::ldlt::EnvelopeLdlt;
use crate::error::{Error, Result};
use crate::operator::SparseSymmetric;
use crate::scalar::Scalar;

/// Orders at which a dense eigensolve is used directly as the fallback.
pub const DENSE_CUTOFF: usize = 2000;
/// Largest order a dense eigensolve is ever attempted on.
pub const DENSE_LIMIT: usize = 4096;
/// Largest operator order accepted by the laboratory.
pub const MAX_ORDER: usize = 1 << 22;
/// Largest factor envelope (stored off-diagonal entries) ever allocated.
pub const MAX_ENVELOPE: usize = 1 << 26;

/// Rejects matrices whose order or envelope exceeds the memory budget.
pub(crate) fn check_budget<T: Scalar>(m: &SparseSymmetric<T>) -> Result<()> {
    let n = m.order();
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!("operator order {n} exceeds the budget {MAX_ORDER}")));
    }
    let envelope: usize = (0..n).map(|i| i - m.first_col(i)).sum();
    if envelope > MAX_ENVELOPE {
        return Err(Error::Capacity(format!("factor envelope {envelope} exceeds the budget {MAX_ENVELOPE}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InertiaMethod {
    Factorization,
    Dense,
}

/// Eigenvalue counts below, inside and above the band `[shift - tol, shift + tol]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InertiaResult {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
    pub tol: f64,
    pub method: InertiaMethod,
}

impl InertiaResult {
    pub fn order(&self) -> usize {
        self.n_neg + self.n_zero + self.n_pos
    }
}

/// Number of eigenvalues of `m` strictly below `sigma`, by Sylvester's law
/// on an `L D L^T` factorization of `m - sigma I`.
///
/// Falls back to the reversed ordering, then (for small orders) to a dense
/// eigensolve, then to shifts nudged by up to `slack`.
pub(crate) fn count_below<T: Scalar>(m: &SparseSymmetric<T>, sigma: T, slack: T) -> Result<(usize, InertiaMethod)> {
    check_budget(m)?;
    let n = m.order();
    if let Ok(f) = EnvelopeLdlt::factor(m, sigma) {
        return Ok((f.negatives(), InertiaMethod::Factorization));
    }
    let reversed = m.permuted(&(0..n).rev().collect::<Vec<_>>())?;
    if let Ok(f) = EnvelopeLdlt::factor(&reversed, sigma) {
        return Ok((f.negatives(), InertiaMethod::Factorization));
    }
    if n < DENSE_CUTOFF {
        return dense_count(m, sigma);
    }
    for k in 1..=4 {
        for sign in [-T::one(), T::one()] {
            let nudged = sigma + sign * slack * T::of(f64::from(k) / 8.0);
            if let Ok(f) = EnvelopeLdlt::factor(m, nudged) {
                return Ok((f.negatives(), InertiaMethod::Factorization));
            }
        }
    }
    if n <= DENSE_LIMIT {
        return dense_count(m, sigma);
    }
    Err(Error::Capacity(format!("factorization unstable at order {n}, beyond the dense limit {DENSE_LIMIT}")))
}

fn dense_count<T: Scalar>(m: &SparseSymmetric<T>, sigma: T) -> Result<(usize, InertiaMethod)> {
    let vals = symmetric_eigenvalues(&m.to_dense(), m.order())?;
    Ok((vals.iter().filter(|&&v| v < sigma).count(), InertiaMethod::Dense))
}

/// Counts eigenvalues below `shift - tol`, within `[shift - tol, shift + tol]`
/// and above `shift + tol`.
pub fn inertia<T: Scalar>(m: &SparseSymmetric<T>, shift: T, tol: T) -> Result<InertiaResult> {
    if !(tol > T::zero()) || !tol.is_finite() {
        return Err(Error::Domain(format!("zero-band half-width {tol} must be positive")));
    }
    if !shift.is_finite() {
        return Err(Error::Input(format!("shift {shift} is not finite")));
    }
    let n = m.order();
    let (below, m1) = count_below(m, shift - tol, tol)?;
    // Eigenvalues <= shift + tol: those strictly below a point just above.
    let upper = shift + tol;
    let nudge = upper.abs().max(T::min_positive_value()) * T::epsilon();
    let (upto, m2) = count_below(m, upper + nudge, tol)?;
    let upto = upto.max(below);
    let method = if m1 == InertiaMethod::Dense || m2 == InertiaMethod::Dense {
        InertiaMethod::Dense
    } else {
        InertiaMethod::Factorization
    };
    Ok(InertiaResult { n_neg: below, n_zero: upto - below, n_pos: n - upto, tol: tol.to_f64_lossy(), method })
}

//! Lanczos iteration with full reorthogonalization for the smallest
//! eigenpair.

use super::dense::tridiagonal_eigen;
use crate::error::Result;
use crate::lattice::mix64;
use crate::operator::SparseSymmetric;
use crate::scalar::Scalar;

pub(crate) struct Ritz<T> {
    pub value: T,
    pub vector: Vec<T>,
    pub residual: T,
    pub converged: bool,
}

/// Deterministic start vector with every component nonzero, normalized.
pub(crate) fn start_vector<T: Scalar>(n: usize) -> Vec<T> {
    let mut v: Vec<T> = (0..n)
        .map(|i| {
            let u = (mix64(i as u64 ^ 0x5851_f42d_4c95_7f2d) >> 11) as f64 / (1u64 << 53) as f64;
            T::of(0.5 + u)
        })
        .collect();
    normalize(&mut v);
    v
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

pub(crate) fn normalize<T: Scalar>(v: &mut [T]) -> T {
    let norm = dot(v, v).sqrt();
    if norm > T::zero() {
        v.iter_mut().for_each(|x| *x = *x / norm);
    }
    norm
}

/// `||m v - value v||` for unit `v`.
pub(crate) fn residual<T: Scalar>(m: &SparseSymmetric<T>, v: &[T], value: T) -> T {
    let mut mv = vec![T::zero(); v.len()];
    m.matvec(v, &mut mv);
    mv.iter().zip(v).fold(T::zero(), |s, (&a, &b)| s + (a - value * b) * (a - value * b)).sqrt()
}

/// Runs at most `max_iter` steps; the Ritz pair is accepted once its true
/// residual is at most `abs_tol`.
pub(crate) fn lanczos_smallest<T: Scalar>(m: &SparseSymmetric<T>, abs_tol: T, max_iter: usize) -> Result<Ritz<T>> {
    let n = m.order();
    let max_iter = max_iter.clamp(1, n);
    let mut basis: Vec<Vec<T>> = vec![start_vector(n)];
    let mut alpha: Vec<T> = Vec::new();
    let mut beta: Vec<T> = Vec::new();
    let mut w = vec![T::zero(); n];
    let mut best: Option<Ritz<T>> = None;
    let invariant = T::epsilon() * T::of(64.0) * m.norm_inf().max(T::min_positive_value());

    for k in 0..max_iter {
        m.matvec(&basis[k], &mut w);
        let a = dot(&basis[k], &w);
        alpha.push(a);
        for (x, &v) in w.iter_mut().zip(&basis[k]) {
            *x = *x - a * v;
        }
        if k > 0 {
            let b = beta[k - 1];
            for (x, &v) in w.iter_mut().zip(&basis[k - 1]) {
                *x = *x - b * v;
            }
        }
        for _ in 0..2 {
            for v in &basis {
                let c = dot(v, &w);
                for (x, &vi) in w.iter_mut().zip(v) {
                    *x = *x - c * vi;
                }
            }
        }
        let b = dot(&w, &w).sqrt();
        let last = k + 1 == max_iter || b <= invariant;
        if last || k % 8 == 7 {
            let (vals, vecs) = tridiagonal_eigen(&alpha, &beta)?;
            let size = alpha.len();
            let estimate = (b * vecs[(size - 1) * size]).abs();
            if last || estimate <= abs_tol {
                let mut y = vec![T::zero(); n];
                for (j, v) in basis.iter().enumerate() {
                    let c = vecs[j * size];
                    for (yi, &vi) in y.iter_mut().zip(v) {
                        *yi = *yi + c * vi;
                    }
                }
                normalize(&mut y);
                let res = residual(m, &y, vals[0]);
                let ritz = Ritz { value: vals[0], vector: y, residual: res, converged: res <= abs_tol };
                if ritz.converged || last {
                    return Ok(ritz);
                }
                best = Some(ritz);
            }
        }
        if b <= invariant {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|&x| x / b).collect());
    }
    Ok(best.expect("loop always ends through the `last` branch"))
}

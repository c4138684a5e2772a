//! Envelope `L D L^T` factorization without pivoting, used for Sylvester
//! inertia counts and for inverse iteration.

use crate::operator::SparseSymmetric;
use crate::scalar::Scalar;

/// Factor of `A - shift I` on the envelope of `A`.
#[derive(Debug, Clone)]
pub(crate) struct EnvelopeLdlt<T> {
    first: Vec<usize>,
    start: Vec<usize>,
    l: Vec<T>,
    d: Vec<T>,
}

/// Reason a factorization was abandoned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Breakdown {
    TinyPivot,
    Growth,
}

impl<T: Scalar> EnvelopeLdlt<T> {
    /// Factors `m - shift I`. For tridiagonal `m` tiny pivots are replaced by
    /// `-pivmin` (Sturm count semantics) and growth is irrelevant; otherwise
    /// either event aborts.
    pub(crate) fn factor(m: &SparseSymmetric<T>, shift: T) -> Result<Self, Breakdown> {
        let n = m.order();
        let first: Vec<usize> = (0..n).map(|i| m.first_col(i)).collect();
        let tridiagonal = (0..n).all(|i| first[i] + 1 >= i);
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for i in 0..n {
            start.push(start[i] + (i - first[i]));
        }
        let norm = m.norm_inf() + shift.abs();
        let pivmin = T::epsilon() * norm.max(T::min_positive_value());
        let growth_limit = T::epsilon().powf(T::of(-0.3)) * norm;

        let mut l = vec![T::zero(); start[n]];
        let mut d = vec![T::zero(); n];
        let mut w: Vec<T> = Vec::new();
        for i in 0..n {
            let fi = first[i];
            w.clear();
            w.resize(i - fi, T::zero());
            let mut aii = -shift;
            for (j, v) in m.row(i) {
                if j == i {
                    aii = aii + v;
                } else {
                    w[j - fi] = v;
                }
            }
            // w[j - fi] becomes L_ij D_j
            for j in fi..i {
                let fj = first[j];
                let lo = fi.max(fj);
                let lj = &l[start[j]..start[j + 1]];
                let mut s = w[j - fi];
                for k in lo..j {
                    s = s - w[k - fi] * lj[k - fj];
                }
                w[j - fi] = s;
            }
            let row = &mut l[start[i]..start[i + 1]];
            let mut di = aii;
            let mut growth = T::zero();
            for j in fi..i {
                let lij = w[j - fi] / d[j];
                row[j - fi] = lij;
                di = di - w[j - fi] * lij;
                growth = growth + lij * w[j - fi].abs();
            }
            if di.abs() < pivmin {
                if !tridiagonal {
                    return Err(Breakdown::TinyPivot);
                }
                di = -pivmin;
            }
            if !tridiagonal && growth + di.abs() > growth_limit {
                return Err(Breakdown::Growth);
            }
            d[i] = di;
        }
        Ok(EnvelopeLdlt { first, start, l, d })
    }

    /// Number of negative pivots, i.e. eigenvalues of `m` below the shift.
    pub(crate) fn negatives(&self) -> usize {
        self.d.iter().filter(|&&x| x < T::zero()).count()
    }

    /// Solves `(m - shift I) x = b` in place.
    pub(crate) fn solve(&self, x: &mut [T]) {
        let n = self.d.len();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.l[self.start[i]..self.start[i + 1]];
            let mut s = x[i];
            for (k, &lik) in row.iter().enumerate() {
                s = s - lik * x[fi + k];
            }
            x[i] = s;
        }
        for i in 0..n {
            x[i] = x[i] / self.d[i];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let xi = x[i];
            let row = &self.l[self.start[i]..self.start[i + 1]];
            for (k, &lik) in row.iter().enumerate() {
                x[fi + k] = x[fi + k] - lik * xi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(n: usize, entries: &[(usize, usize, f64)]) -> SparseSymmetric<f64> {
        SparseSymmetric::from_triplets(n, entries.iter().copied()).unwrap()
    }

    #[test]
    fn solves_banded_system() {
        let m = matrix(
            4,
            &[(0, 0, 4.0), (1, 1, 5.0), (2, 2, 6.0), (3, 3, 7.0), (1, 0, 1.0), (2, 0, -1.0), (3, 1, 2.0), (3, 2, 0.5)],
        );
        let f = EnvelopeLdlt::factor(&m, 0.0).unwrap();
        assert_eq!(f.negatives(), 0);
        let b = vec![1.0, -2.0, 3.0, 0.5];
        let mut x = b.clone();
        f.solve(&mut x);
        let mut y = vec![0.0; 4];
        m.matvec(&x, &mut y);
        for (yi, bi) in y.iter().zip(&b) {
            assert!((yi - bi).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_leading_pivot_breaks_down() {
        let m = matrix(3, &[(0, 0, 0.0), (1, 0, 1.0), (2, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0)]);
        assert!(EnvelopeLdlt::factor(&m, 0.0).is_err());
        let t = matrix(2, &[(0, 0, 0.0), (1, 0, 1.0), (1, 1, 0.0)]);
        assert_eq!(EnvelopeLdlt::factor(&t, 0.0).unwrap().negatives(), 1);
    }
}

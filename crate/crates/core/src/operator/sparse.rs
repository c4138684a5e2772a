use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symmetric sparse matrix stored as its lower triangle in compressed rows.
///
/// Columns within a row are strictly increasing and the diagonal entry is
/// always the last one stored in its row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymmetric<T> {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Scalar> SparseSymmetric<T> {
    /// Builds from `(i, j, v)` triplets of either triangle; duplicates are
    /// summed, off-diagonal zeros dropped, missing diagonals stored as zero.
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Result<Self> {
        let mut entries: Vec<(usize, usize, T)> = Vec::new();
        for (i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::Shape(format!("entry ({i}, {j}) outside order {n}")));
            }
            if !v.is_finite() {
                return Err(Error::Input(format!("non-finite entry at ({i}, {j})")));
            }
            let (r, c) = if j > i { (j, i) } else { (i, j) };
            entries.push((r, c, v));
        }
        for i in 0..n {
            entries.push((i, i, T::zero()));
        }
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<T> = Vec::with_capacity(entries.len());
        let mut iter = entries.into_iter().peekable();
        while let Some((r, c, mut v)) = iter.next() {
            while let Some(&(r2, c2, v2)) = iter.peek() {
                if r2 == r && c2 == c {
                    v = v + v2;
                    iter.next();
                } else {
                    break;
                }
            }
            if r != c && v == T::zero() {
                continue;
            }
            cols.push(c);
            vals.push(v);
            row_ptr[r + 1] = cols.len();
        }
        for i in 0..n {
            row_ptr[i + 1] = row_ptr[i + 1].max(row_ptr[i]);
        }
        Ok(SparseSymmetric { n, row_ptr, cols, vals })
    }

    /// Row-major dense symmetric input; only the lower triangle is read.
    pub fn from_dense(n: usize, a: &[T]) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::Shape(format!("{} entries for order {n}", a.len())));
        }
        Self::from_triplets(n, (0..n).flat_map(|i| (0..=i).map(move |j| (i, j, a[i * n + j]))))
    }

    pub fn diagonal(values: &[T]) -> Result<Self> {
        Self::from_triplets(values.len(), values.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Stored (lower triangle) entries.
    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Lower-triangle entries of row `i`, diagonal last.
    #[inline]
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    #[inline]
    pub fn diag(&self, i: usize) -> T {
        self.vals[self.row_ptr[i + 1] - 1]
    }

    /// Smallest column index stored in row `i`.
    #[inline]
    pub fn first_col(&self, i: usize) -> usize {
        self.cols[self.row_ptr[i]]
    }

    /// `y = A x`
    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        y.iter_mut().for_each(|v| *v = T::zero());
        for i in 0..self.n {
            let mut acc = T::zero();
            for (j, v) in self.row(i) {
                acc = acc + v * x[j];
                if j != i {
                    y[j] = y[j] + v * x[i];
                }
            }
            y[i] = y[i] + acc;
        }
    }

    /// Maximum absolute row sum of the full symmetric matrix.
    pub fn norm_inf(&self) -> T {
        let mut sums = vec![T::zero(); self.n];
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                sums[i] = sums[i] + v.abs();
                if j != i {
                    sums[j] = sums[j] + v.abs();
                }
            }
        }
        sums.into_iter().fold(T::zero(), T::max)
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let mut radius = vec![T::zero(); self.n];
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                if j != i {
                    radius[i] = radius[i] + v.abs();
                    radius[j] = radius[j] + v.abs();
                }
            }
        }
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for (i, r) in radius.into_iter().enumerate() {
            lo = lo.min(self.diag(i) - r);
            hi = hi.max(self.diag(i) + r);
        }
        if self.n == 0 {
            (T::zero(), T::zero())
        } else {
            (lo, hi)
        }
    }

    /// `A - shift I`
    pub fn shifted(&self, shift: T) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            let k = out.row_ptr[i + 1] - 1;
            out.vals[k] = out.vals[k] - shift;
        }
        out
    }

    /// Adds `values[i]` to diagonal entry `i`.
    pub fn add_diagonal(&mut self, values: &[T]) {
        assert_eq!(values.len(), self.n);
        for (i, &v) in values.iter().enumerate() {
            let k = self.row_ptr[i + 1] - 1;
            self.vals[k] = self.vals[k] + v;
        }
    }

    /// Full row-major dense copy.
    pub fn to_dense(&self) -> Vec<T> {
        let n = self.n;
        let mut a = vec![T::zero(); n * n];
        for i in 0..n {
            for (j, v) in self.row(i) {
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }

    /// Symmetric permutation `P A P^T`, where row `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Shape("permutation length differs from order".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Input("not a permutation".into()));
            }
        }
        Self::from_triplets(
            self.n,
            (0..self.n).flat_map(|i| self.row(i).map(move |(j, v)| (perm[i], perm[j], v))),
        )
    }

    /// Coordinate text: an `n nnz` header, then `i j v` lines for the lower
    /// triangle with 17 significant digits.
    pub fn to_coordinate(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.nnz());
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                let _ = writeln!(out, "{i} {j} {v:.16e}");
            }
        }
        out
    }

    pub fn from_coordinate(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Input("empty matrix file".into()))?;
        let mut h = header.split_whitespace();
        let bad = || Error::Input(format!("bad matrix header {header:?}"));
        let n: usize = h.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let nnz: usize = h.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let mut trip = Vec::with_capacity(nnz);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut it = line.split_whitespace();
            let parse_err = || Error::Input(format!("bad matrix line {line:?}"));
            let i: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(parse_err)?;
            let j: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(parse_err)?;
            let v: f64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(parse_err)?;
            trip.push((i, j, T::of(v)));
        }
        if trip.len() != nnz {
            return Err(Error::Input(format!("header announces {nnz} entries, found {}", trip.len())));
        }
        Self::from_triplets(n, trip)
    }

    /// Converts the entries to another scalar type.
    pub fn cast<U: Scalar>(&self) -> SparseSymmetric<U> {
        SparseSymmetric {
            n: self.n,
            row_ptr: self.row_ptr.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|v| U::of(v.to_f64_lossy())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiag(n: usize) -> SparseSymmetric<f64> {
        SparseSymmetric::from_triplets(
            n,
            (0..n).map(|i| (i, i, 2.0)).chain((1..n).map(|i| (i, i - 1, -1.0))),
        )
        .unwrap()
    }

    #[test]
    fn structure() {
        let m = tridiag(4);
        assert_eq!(m.nnz(), 7);
        assert_eq!(m.diag(2), 2.0);
        assert_eq!(m.first_col(0), 0);
        assert_eq!(m.first_col(3), 2);
        assert_eq!(m.norm_inf(), 4.0);
        assert_eq!(m.gershgorin(), (0.0, 4.0));
        let mut y = vec![0.0; 4];
        m.matvec(&[1.0, 1.0, 1.0, 1.0], &mut y);
        assert_eq!(y, vec![1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn duplicates_sum_and_zeros_drop() {
        let m = SparseSymmetric::<f64>::from_triplets(3, vec![(0, 1, 1.0), (1, 0, -1.0), (2, 2, 5.0)]).unwrap();
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.diag(0), 0.0);
        assert!(SparseSymmetric::<f64>::from_triplets(2, vec![(0, 0, f64::NAN)]).is_err());
        assert!(SparseSymmetric::<f64>::from_triplets(2, vec![(0, 2, 1.0)]).is_err());
    }

    #[test]
    fn coordinate_export_round_trips_exactly() {
        let m = tridiag(5).shifted(1.0 / 3.0);
        let text = m.to_coordinate();
        assert!(text.starts_with("5 9\n"));
        assert!(text.lines().nth(1).unwrap().starts_with("0 0 1.6666666666666667e0"));
        assert_eq!(SparseSymmetric::<f64>::from_coordinate(&text).unwrap(), m);
    }

    #[test]
    fn dense_and_permutation() {
        let m = tridiag(3);
        let d = m.to_dense();
        assert_eq!(d, vec![2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        assert_eq!(SparseSymmetric::from_dense(3, &d).unwrap(), m);
        let p = m.permuted(&[2, 0, 1]).unwrap();
        let pd = p.to_dense();
        assert_eq!(pd[2 * 3 + 2], 2.0);
        assert_eq!(pd[2 * 3], -1.0);
        assert_eq!(pd[2 * 3 + 1], 0.0);
        assert!(m.permuted(&[0, 0, 1]).is_err());
    }
}

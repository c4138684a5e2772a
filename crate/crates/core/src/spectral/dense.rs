//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! implicit QL with Wilkinson shifts.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_QL_SWEEPS: usize = 60;

/// Reduces the row-major symmetric `a` to tridiagonal form `(diag, off)`,
/// with `off[i]` coupling `i - 1` and `i` and `off[0] = 0`. With `vectors`,
/// `a` is overwritten by the accumulated orthogonal transform.
fn tridiagonalize<T: Scalar>(a: &mut [T], n: usize, vectors: bool) -> (Vec<T>, Vec<T>) {
    let zero = T::zero();
    let mut d = vec![zero; n];
    let mut e = vec![zero; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = zero;
        if l > 0 {
            let scale = (0..=l).fold(zero, |s, k| s + a[i * n + k].abs());
            if scale == zero {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] = a[i * n + k] / scale;
                    h = h + a[i * n + k] * a[i * n + k];
                }
                let mut f = a[i * n + l];
                let mut g = if f >= zero { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h = h - f * g;
                a[i * n + l] = f - g;
                f = zero;
                for j in 0..=l {
                    if vectors {
                        a[j * n + i] = a[i * n + j] / h;
                    }
                    g = zero;
                    for k in 0..=j {
                        g = g + a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g = g + a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f = f + e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] = a[j * n + k] - (f * e[k] + g * a[i * n + k]);
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    if n > 0 {
        d[0] = zero;
        e[0] = zero;
    }
    for i in 0..n {
        if vectors {
            if d[i] != zero {
                for j in 0..i {
                    let mut g = zero;
                    for k in 0..i {
                        g = g + a[i * n + k] * a[k * n + j];
                    }
                    for k in 0..i {
                        a[k * n + j] = a[k * n + j] - g * a[k * n + i];
                    }
                }
            }
            d[i] = a[i * n + i];
            a[i * n + i] = T::one();
            for j in 0..i {
                a[j * n + i] = zero;
                a[i * n + j] = zero;
            }
        } else {
            d[i] = a[i * n + i];
        }
    }
    (d, e)
}

/// Diagonalizes the symmetric tridiagonal `(d, e)` in place (`e` in the
/// layout produced by [`tridiagonalize`]). If `z` is given, its columns are
/// rotated along, so starting from the identity yields eigenvectors.
fn ql_implicit<T: Scalar>(d: &mut [T], e: &mut [T], mut z: Option<&mut [T]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let zero = T::zero();
    let one = T::one();
    let two = one + one;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = zero;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::Input("tridiagonal QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(one);
            g = d[m] - d[l] + e[l] / (g + if g >= zero { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (one, one, zero);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == zero {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = zero;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = zero;
        }
    }
    Ok(())
}

/// Ascending eigenvalues of the row-major symmetric matrix `a`.
pub fn symmetric_eigenvalues<T: Scalar>(a: &[T], n: usize) -> Result<Vec<T>> {
    if a.len() != n * n {
        return Err(Error::Shape(format!("{} entries for order {n}", a.len())));
    }
    let mut work = a.to_vec();
    let (mut d, mut e) = tridiagonalize(&mut work, n, false);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(d)
}

/// Ascending eigenvalues and the matching orthonormal eigenvectors, stored
/// as the columns of a row-major `n x n` matrix.
pub fn symmetric_eigen<T: Scalar>(a: &[T], n: usize) -> Result<(Vec<T>, Vec<T>)> {
    if a.len() != n * n {
        return Err(Error::Shape(format!("{} entries for order {n}", a.len())));
    }
    let mut z = a.to_vec();
    let (mut d, mut e) = tridiagonalize(&mut z, n, true);
    ql_implicit(&mut d, &mut e, Some(&mut z))?;
    Ok(sort_pairs(d, z, n))
}

/// Eigen-decomposition of the tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `sub` (`sub.len() + 1 == diag.len()`).
pub fn tridiagonal_eigen<T: Scalar>(diag: &[T], sub: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    if n == 0 || sub.len() + 1 != n {
        return Err(Error::Shape("sub-diagonal must be one shorter than the diagonal".into()));
    }
    let mut d = diag.to_vec();
    let mut e = std::iter::once(T::zero()).chain(sub.iter().copied()).collect::<Vec<_>>();
    let mut z = vec![T::zero(); n * n];
    for i in 0..n {
        z[i * n + i] = T::one();
    }
    ql_implicit(&mut d, &mut e, Some(&mut z))?;
    Ok(sort_pairs(d, z, n))
}

fn sort_pairs<T: Scalar>(d: Vec<T>, z: Vec<T>, n: usize) -> (Vec<T>, Vec<T>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let vals = order.iter().map(|&i| d[i]).collect();
    let mut vecs = vec![T::zero(); n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vecs[k * n + new] = z[k * n + old];
        }
    }
    (vals, vecs)
}

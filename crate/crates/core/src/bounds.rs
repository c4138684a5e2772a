//! Closed-form constants and bounds for the percolation and spectral
//! arguments. Functions whose hypotheses can fail return a [`BoundReport`]
//! carrying the value together with a validity flag instead of erroring.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub name: &'static str,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: T,
    /// False when the bound was evaluated outside its hypothesis.
    pub valid: bool,
}

#[inline]
fn coordination<T: Scalar>(d: usize) -> T {
    // 3^d - 1 sqrt(d)-neighbors
    T::of_usize(3usize.pow(d as u32) - 1)
}

/// `1 / (3^d - 2)`: below this white density a face-connected black continent exists.
pub fn critical_q<T: Scalar>(d: usize) -> T {
    assert!((1..=3).contains(&d), "d must be 1..=3");
    T::one() / T::of_usize(3usize.pow(d as u32) - 2)
}

/// `gamma = ln(1 / (q (3^d - 2)))`, positive exactly when `q < critical_q(d)`.
pub fn gamma_rate<T: Scalar>(q: T, d: usize) -> BoundReport<T> {
    let x = q * (coordination::<T>(d) - T::one());
    BoundReport {
        name: "gamma_rate",
        inputs: vec![("q", q.to_f64_lossy()), ("d", d as f64)],
        value: -x.ln(),
        valid: q > T::zero() && x < T::one(),
    }
}

/// Prefactor of the exponential tail obtained by summing the per-size bound
/// `q^s (3^d-1)(3^d-2)^{s-2}` over all sizes `>= s`:
/// `c0 = (3^d-1) / ((3^d-2)^2 (1 - q(3^d-2)))`.
pub fn tail_prefactor<T: Scalar>(q: T, d: usize) -> BoundReport<T> {
    let k = coordination::<T>(d);
    let km = k - T::one();
    let x = q * km;
    BoundReport {
        name: "tail_prefactor",
        inputs: vec![("q", q.to_f64_lossy()), ("d", d as f64)],
        value: k / (km * km * (T::one() - x)),
        valid: q > T::zero() && x < T::one(),
    }
}

/// `c0 exp(-gamma s)` with the constants above.
pub fn exponential_tail_bound<T: Scalar>(s: usize, q: T, d: usize) -> BoundReport<T> {
    let g = gamma_rate(q, d);
    let c0 = tail_prefactor(q, d);
    BoundReport {
        name: "exponential_tail_bound",
        inputs: vec![("s", s as f64), ("q", q.to_f64_lossy()), ("d", d as f64)],
        value: c0.value * (-g.value * T::of_usize(s)).exp(),
        valid: g.valid && c0.valid,
    }
}

/// The stated animal-count bound:
/// `1` for `s = 1`, `(3^d-1)(3^d-2)^{s-2}` for `s >= 2`.
pub fn animal_bound_stated<T: Scalar>(s: usize, d: usize) -> T {
    assert!(s >= 1);
    if s == 1 {
        return T::one();
    }
    let k = coordination::<T>(d);
    k * (k - T::one()).powi(s as i32 - 2)
}

/// `(e (3^d - 1))^{s-1}`, the classical bound on connected subgraphs of size
/// `s` through a fixed vertex of a graph of maximum degree `3^d - 1`.
pub fn animal_bound_corrected<T: Scalar>(s: usize, d: usize) -> T {
    assert!(s >= 1);
    (T::E() * coordination::<T>(d)).powi(s as i32 - 1)
}

/// True when an exact count exceeds the stated bound.
pub fn stated_bound_violated(nu_s: u64, s: usize, d: usize) -> bool {
    nu_s as f64 > animal_bound_stated::<f64>(s, d)
}

#[inline]
fn xlogy<T: Scalar>(x: T, y: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        x * y.ln()
    }
}

/// Relative entropy `H(x) = x ln(x/p) + (1-x) ln((1-x)/(1-p))`, with
/// `0 ln 0 = 0` at the endpoints.
pub fn entropy<T: Scalar>(x: T, p: T) -> T {
    let one = T::one();
    xlogy(x, x / p) + xlogy(one - x, (one - x) / (one - p))
}

/// `exp(-m H(p_star))`, the exponential Chebyshev bound on a block of `m`
/// sites having at most `p_star m` black sites.
pub fn chernoff_bound<T: Scalar>(m: usize, p: T, p_star: T) -> T {
    (-T::of_usize(m) * entropy(p_star, p)).exp()
}

/// `(a^{(l-1)^d}, a^{l^d})`.
pub fn layer_radii(a: u64, l: usize, d: usize) -> Result<(u64, u64)> {
    if a < 2 || l == 0 {
        return Err(Error::Domain(format!("layer radii need a >= 2 and l >= 1 (a={a}, l={l})")));
    }
    let pow = |e: usize| -> Result<u64> {
        let e = (e as u64)
            .checked_pow(d as u32)
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| Error::Capacity(format!("layer exponent {e}^{d} overflows")))?;
        a.checked_pow(e)
            .filter(|&r| r <= i64::MAX as u64)
            .ok_or_else(|| Error::Capacity(format!("layer radius {a}^{e} overflows")))
    };
    Ok((pow(l - 1)?, pow(l)?))
}

/// `(1 - q^{l_block^d})^{n_blocks}`: probability that every one of
/// `n_blocks` disjoint blocks holds a black site.
pub fn layer_event_probability<T: Scalar>(q: T, l_block: usize, d: usize, n_blocks: usize) -> T {
    if n_blocks == 0 {
        return T::one();
    }
    let all_white = q.powi(l_block.pow(d as u32) as i32);
    // ln_1p keeps precision when q^{l^d} is tiny
    (T::of_usize(n_blocks) * (-all_white).ln_1p()).exp()
}

/// Smallest eigenvalue of the Dirichlet lattice cube of edge `l`:
/// `2d (1 - cos(pi / (l + 1)))`.
pub fn dirichlet_ground_energy<T: Scalar>(l: usize, d: usize) -> T {
    assert!(l >= 1);
    let two = T::of(2.0);
    two * T::of_usize(d) * (T::one() - (T::PI() / T::of_usize(l + 1)).cos())
}

/// Spectral gap `2(1 - cos(pi / l))` of the Neumann lattice cube of edge `l`.
pub fn neumann_gap<T: Scalar>(l: usize) -> T {
    assert!(l >= 2);
    T::of(2.0) * (T::one() - (T::PI() / T::of_usize(l)).cos())
}

//! Interval estimates and exact binomial probabilities used by verdicts.

/// Standard normal quantile at 0.99, for one-sided 99% bounds.
pub const Z_ONE_SIDED_99: f64 = 2.326_347_874_040_841;
/// Standard normal quantile at 0.995, for two-sided 99% intervals.
pub const Z_TWO_SIDED_99: f64 = 2.575_829_303_548_901;

/// Wilson score interval for `hits` successes out of `n` at normal quantile `z`.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> (f64, f64) {
    assert!(n > 0 && hits <= n, "need 0 <= hits <= n, n > 0");
    let n = n as f64;
    let phat = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the bounds are exactly 0 and 1 at the extremes
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits as f64 == n { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// One-sided 99% upper confidence bound.
pub fn wilson_upper_99(hits: u64, n: u64) -> f64 {
    wilson_interval(hits, n, Z_ONE_SIDED_99).1
}

/// One-sided 99% lower confidence bound.
pub fn wilson_lower_99(hits: u64, n: u64) -> f64 {
    wilson_interval(hits, n, Z_ONE_SIDED_99).0
}

/// Two-sided 99% interval.
pub fn wilson_two_sided_99(hits: u64, n: u64) -> (f64, f64) {
    wilson_interval(hits, n, Z_TWO_SIDED_99)
}

/// `ln P(Bin(m, p) = k)` for `k = 0..=m`, by the ratio recurrence.
fn binomial_log_pmf(m: u64, p: f64) -> Vec<f64> {
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut cur = m as f64 * lq;
    out.push(cur);
    for k in 0..m {
        cur += ((m - k) as f64).ln() - ((k + 1) as f64).ln() + lp - lq;
        out.push(cur);
    }
    out
}

/// `P(Bin(m, p) <= k)`, exact up to rounding.
pub fn binomial_cdf(k: u64, m: u64, p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
    if k >= m {
        return 1.0;
    }
    let logs = binomial_log_pmf(m, p);
    let head = &logs[..=k as usize];
    let top = head.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = head.iter().map(|l| (l - top).exp()).sum();
    (top + sum.ln()).exp().min(1.0)
}

/// Least-squares slope of `ys` against `xs`; `None` with fewer than two
/// distinct abscissae.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

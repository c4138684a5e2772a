use super::config::{block_edge, ExperimentConfig};
use super::report::{ExperimentReport, Table, Verdict};
use super::stats::{binomial_cdf, wilson_lower_99, wilson_two_sided_99, wilson_upper_99};
use super::trials::run_trials;
use crate::bounds::chernoff_bound;
use crate::error::Result;
use crate::lattice::{derive_seed, sample_potential, BoxSpec};

/// `P(Bin(m, p) < p_star m)`: a block of `m` sites is yellow.
pub fn exact_yellow_probability(m: usize, p: f64, p_star: f64) -> f64 {
    // gray iff black >= p_star m, so yellow iff black <= ceil(p_star m) - 1
    let need = (p_star * m as f64).ceil() as u64;
    if need == 0 {
        0.0
    } else {
        binomial_cdf(need - 1, m as u64, p)
    }
}

/// Frequency of yellow blocks of `m` sites against `exp(-m H(p_star))`.
pub fn run_chernoff(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let boxes: Vec<BoxSpec> = cfg
        .m_grid
        .iter()
        .map(|&m| BoxSpec::new(cfg.d, block_edge(m, cfg.d).expect("validated"), &vec![0; cfg.d]))
        .collect::<Result<_>>()?;
    let yellow = run_trials(cfg.workers, cfg.trials, cfg.base_seed, |_, seed| {
        boxes
            .iter()
            .enumerate()
            .map(|(k, bx)| {
                let f = sample_potential(*bx, cfg.p, derive_seed(seed, k as u64)).expect("validated");
                (f.black_count() as f64) < cfg.p_star * bx.len() as f64
            })
            .collect::<Vec<bool>>()
    });
    let n = cfg.trials as u64;
    let mut rep = ExperimentReport::new(cfg);
    let mut t = Table::new(
        "chernoff",
        &[
            "m",
            "yellow",
            "empirical_yellow_freq",
            "wilson_lower_99",
            "wilson_upper_99",
            "chernoff_bound",
            "exact_binomial",
            "exact_lo_99",
            "exact_hi_99",
        ],
    );
    for (k, &m) in cfg.m_grid.iter().enumerate() {
        let hits = yellow.iter().filter(|row| row[k]).count() as u64;
        let emp = hits as f64 / n as f64;
        let (lower, upper) = (wilson_lower_99(hits, n), wilson_upper_99(hits, n));
        let bound = chernoff_bound(m, cfg.p, cfg.p_star);
        let exact = exact_yellow_probability(m, cfg.p, cfg.p_star);
        let (lo2, hi2) = wilson_two_sided_99(hits, n);
        t.push(vec![
            m.into(),
            hits.into(),
            emp.into(),
            lower.into(),
            upper.into(),
            bound.into(),
            exact.into(),
            lo2.into(),
            hi2.into(),
        ]);
        rep.verdict(Verdict::new(
            format!("chernoff_bound_m{m}"),
            lower <= bound,
            bound - lower,
            "bound minus one-sided 99% lower confidence bound of the yellow frequency",
        ));
        rep.verdict(Verdict::new(
            format!("exact_binomial_m{m}"),
            lo2 <= exact && exact <= hi2,
            (exact - lo2).min(hi2 - exact),
            "exact binomial probability inside the two-sided 99% interval",
        ));
    }
    rep.tables.push(t);
    rep.plot("chernoff", "m", "empirical_yellow_freq");
    Ok(rep)
}

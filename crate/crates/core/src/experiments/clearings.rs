use super::config::ExperimentConfig;
use super::report::{ExperimentReport, Table, Verdict};
use super::stats::wilson_two_sided_99;
use super::trials::run_trials;
use crate::bounds::layer_event_probability;
use crate::error::Result;
use crate::lattice::{sample_potential, BoxSpec, PotentialField};
use crate::percolation::{find_clearings, LayerSpec};

/// Per-layer frequency of "no all-white block" against the exact product law.
pub fn run_clearings(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let layers = LayerSpec::new(cfg.a, cfg.d, cfg.l_max, cfg.l_block)?;
    let radius = layers.required_radius()? as usize;
    let bx = BoxSpec::centered(cfg.d, 2 * radius + 2 * cfg.l_block + 1)?;
    let runs = run_trials(cfg.workers, cfg.trials, cfg.base_seed, |_, seed| -> Result<Vec<(usize, bool)>> {
        let field = if cfg.inject_white {
            PotentialField::uniform(bx, cfg.p, 0)?
        } else {
            sample_potential(bx, cfg.p, seed)?
        };
        Ok(find_clearings(&field, &layers)?.into_iter().map(|l| (l.n_blocks, !l.clearings.is_empty())).collect())
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let n = cfg.trials as u64;
    let q = cfg.q();
    let mut rep = ExperimentReport::new(cfg);
    let mut t = Table::new(
        "clearings",
        &["layer", "n_blocks", "found", "empirical_no_clearing", "wilson_lower_99", "wilson_upper_99", "exact_no_clearing"],
    );
    for li in 0..cfg.l_max {
        let n_blocks = runs[0][li].0;
        let found = runs.iter().filter(|r| r[li].1).count() as u64;
        let missing = n - found;
        let (lo, hi) = wilson_two_sided_99(missing, n);
        let exact = if cfg.inject_white {
            if n_blocks == 0 { 1.0 } else { 0.0 }
        } else {
            layer_event_probability(q, cfg.l_block, cfg.d, n_blocks)
        };
        t.push(vec![
            (li + 1).into(),
            n_blocks.into(),
            found.into(),
            (missing as f64 / n as f64).into(),
            lo.into(),
            hi.into(),
            exact.into(),
        ]);
        rep.verdict(Verdict::new(
            format!("layer_{}_no_clearing_frequency", li + 1),
            lo <= exact && exact <= hi,
            (exact - lo).min(hi - exact),
            format!("exact (1 - q^(l^d))^N with N={n_blocks} inside the two-sided 99% interval"),
        ));
    }
    rep.tables.push(t);
    rep.plot("clearings", "layer", "empirical_no_clearing");

    // l0 = first layer from which every examined layer holds a clearing
    let mut l0 = Table::new("first_good_layer", &["l0", "count"]);
    let mut hist = vec![0u64; cfg.l_max + 2];
    for r in &runs {
        let first = (0..=cfg.l_max).rev().find(|&k| k > 0 && !r[k - 1].1).map_or(1, |k| k + 1);
        hist[first] += 1;
    }
    for (k, &c) in hist.iter().enumerate().skip(1) {
        l0.push(vec![k.into(), c.into()]);
    }
    rep.note(format!(
        "l0 is the first layer from which every examined layer holds a clearing; l0 = {} means layer {} has none",
        cfg.l_max + 1,
        cfg.l_max
    ));
    rep.tables.push(l0);
    Ok(rep)
}

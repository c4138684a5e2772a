use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::ExperimentConfig;
use super::report::{ExperimentReport, Table, Verdict};
use super::stats::ls_slope;
use super::trials::run_trials;
use crate::error::{Error, Result};
use crate::lattice::{
    derive_seed, neighbor_offsets, sample_potential, BoxSpec, Connectivity, PerturbationSpec, PotentialField, Site, MAX_DIM,
};
use crate::operator::{assemble, partition_lakes, BoundaryCondition, DomainMask, HamiltonianSpec, LakeSource};
use crate::percolation::coarse_grain;
use crate::spectral::{min_eigenvalue, symmetric_eigenvalues};

/// Smallest and largest target domain sizes.
pub const TARGET_RANGE: (f64, f64) = (10.0, 1e4);
/// Largest domain also solved densely as a spot check.
pub const SPOT_CHECK_MAX: usize = 400;
/// Relative accuracy requested from the eigensolver.
pub const EIG_REL_TOL: f64 = 1e-10;
/// Allowed log-log slope of the running infimum.
pub const MIN_SLOPE: f64 = -0.1;

/// Target `|Omega|` for domain `i` of `n`, log-spaced over [`TARGET_RANGE`].
pub fn target_size(i: usize, n: usize) -> f64 {
    let (lo, hi) = TARGET_RANGE;
    if n <= 1 {
        return lo;
    }
    lo * (hi / lo).powf(i as f64 / (n - 1) as f64)
}

/// Eden cluster on the block lattice grown from the origin block by face
/// steps, each new block drawn uniformly from the current perimeter.
struct Eden {
    d: usize,
    steps: Vec<[i64; MAX_DIM]>,
    blocks: Vec<[i64; MAX_DIM]>,
    taken: HashSet<[i64; MAX_DIM]>,
    frontier: Vec<[i64; MAX_DIM]>,
    seen: HashSet<[i64; MAX_DIM]>,
}

impl Eden {
    fn new(d: usize) -> Self {
        let mut e = Eden {
            d,
            steps: neighbor_offsets(d, Connectivity::One),
            blocks: Vec::new(),
            taken: HashSet::new(),
            frontier: Vec::new(),
            seen: HashSet::new(),
        };
        e.add([0; MAX_DIM]);
        e
    }

    fn add(&mut self, b: [i64; MAX_DIM]) {
        self.taken.insert(b);
        self.seen.insert(b);
        self.blocks.push(b);
        for s in &self.steps {
            let mut nb = b;
            for k in 0..self.d {
                nb[k] += s[k];
            }
            if self.seen.insert(nb) {
                self.frontier.push(nb);
            }
        }
    }

    fn grow_to(&mut self, count: usize, rng: &mut ChaCha8Rng) {
        while self.blocks.len() < count {
            let pick = rng.random_range(0..self.frontier.len());
            let b = self.frontier.swap_remove(pick);
            self.add(b);
        }
    }
}

/// Lake blocks to grow so that a compact lake plus shell lands near `target` sites.
fn lake_blocks_for(target: f64, d: usize, l: usize) -> usize {
    let blocks = target / (l as f64).powi(d as i32);
    let core = blocks.powf(1.0 / d as f64) - 2.0;
    (core.max(1.0).powi(d as i32).round() as usize).max(1)
}

/// Rounds of regrowth used to bring `|Omega|` up to its target.
const CALIBRATION_ROUNDS: usize = 6;

pub(crate) struct ScalingSample {
    pub target: f64,
    pub omega: usize,
    pub lake_sites: usize,
    pub lambda: f64,
    pub residual: f64,
    pub dense: Option<f64>,
}

/// The lake component of yellow blocks containing the (forced white) Eden
/// lake, together with its gray shell, inside a box with a three-block margin.
fn lake_domain(cfg: &ExperimentConfig, lake: &[[i64; MAX_DIM]], seed: u64) -> Result<(PotentialField, DomainMask)> {
    let (d, l) = (cfg.d, cfg.l_block);
    let margin = 3i64;
    let mut lo = [i64::MAX; MAX_DIM];
    let mut hi = [i64::MIN; MAX_DIM];
    for b in lake {
        for k in 0..d {
            lo[k] = lo[k].min(b[k]);
            hi[k] = hi[k].max(b[k]);
        }
    }
    let extent = (0..d).map(|k| hi[k] - lo[k] + 1).max().unwrap_or(1) + 2 * margin;
    let origin: Vec<i64> = (0..d).map(|k| (lo[k] - margin) * l as i64).collect();
    let bx = BoxSpec::new(d, extent as usize * l, &origin)?;
    let mut white = Vec::with_capacity(lake.len() * l.pow(d as u32));
    for b in lake {
        let corner: Vec<i64> = (0..d).map(|k| b[k] * l as i64).collect();
        for s in BoxSpec::new(d, l, &corner)?.sites() {
            white.push(bx.index_of(&s).expect("lake lies inside the box"));
        }
    }
    // site-hashed values agree across the boxes of successive rounds
    let field = sample_potential(bx, cfg.p, seed)?.with_overrides(white.iter().copied(), 0);
    let grid = coarse_grain(&field, l, cfg.p_star)?;
    let anchor = bx.index_of(&Site::origin(d)).expect("origin block is in the lake");
    let omega = partition_lakes(&field, LakeSource::YellowBlocks(&grid))?
        .lakes
        .into_iter()
        .find(|m| m.contains(anchor))
        .ok_or_else(|| Error::Domain("forced lake missing from the partition".into()))?;
    Ok((field, omega))
}

/// One lake-with-shell domain of roughly `target` sites, with Neumann
/// conditions and no well.
pub(crate) fn scaling_sample(cfg: &ExperimentConfig, target: f64, seed: u64) -> Result<ScalingSample> {
    let (d, l) = (cfg.d, cfg.l_block);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field_seed = derive_seed(seed, 1);
    let mut eden = Eden::new(d);
    let mut count = lake_blocks_for(target, d, l);
    eden.grow_to(count, &mut rng);
    let (mut field, mut omega) = lake_domain(cfg, &eden.blocks, field_seed)?;
    for _ in 0..CALIBRATION_ROUNDS {
        let size = omega.count() as f64;
        if size >= 0.9 * target {
            break;
        }
        count = ((count as f64 * target / size).ceil() as usize).max(count + 1);
        eden.grow_to(count, &mut rng);
        (field, omega) = lake_domain(cfg, &eden.blocks, field_seed)?;
    }
    let w = PerturbationSpec::zero(d);
    let spec = HamiltonianSpec::new(&field, cfg.h, &w, BoundaryCondition::Neumann, omega)?;
    let m = assemble::<f64>(&spec)?;
    let e = min_eigenvalue(&m, EIG_REL_TOL)?;
    let dense = if m.order() <= SPOT_CHECK_MAX {
        Some(symmetric_eigenvalues(&m.to_dense(), m.order())?[0])
    } else {
        None
    };
    let lake_sites = spec.domain.indices().iter().filter(|&&i| field.at(i) == 0).count();
    Ok(ScalingSample { target, omega: m.order(), lake_sites, lambda: e.value, residual: e.residual, dense })
}

/// Smallest eigenvalue of lake-with-shell domains times `|Omega|^{2/d}`.
pub fn run_eig_scaling(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let n = cfg.trials;
    let mut samples = run_trials(cfg.workers, n, cfg.base_seed, |i, seed| scaling_sample(cfg, target_size(i, n), seed))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    samples.sort_by(|a, b| a.omega.cmp(&b.omega).then(a.target.total_cmp(&b.target)));

    let exponent = 2.0 / cfg.d as f64;
    let mut rep = ExperimentReport::new(cfg);
    let mut t = Table::new(
        "eig_scaling",
        &["omega", "target", "lake_sites", "lambda_min", "residual", "product", "running_inf", "dense_lambda"],
    );
    let mut running = f64::INFINITY;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut spot_ok = true;
    let mut spot_worst: f64 = 0.0;
    for s in &samples {
        let product = s.lambda * (s.omega as f64).powf(exponent);
        running = running.min(product);
        if let Some(dl) = s.dense {
            let diff = (dl - s.lambda).abs();
            spot_worst = spot_worst.max(diff);
            spot_ok &= diff <= 1e-8;
        }
        if running > 0.0 {
            xs.push((s.omega as f64).ln());
            ys.push(running.ln());
        }
        t.push(vec![
            s.omega.into(),
            s.target.into(),
            s.lake_sites.into(),
            s.lambda.into(),
            s.residual.into(),
            product.into(),
            running.into(),
            s.dense.map_or(f64::NAN, |v| v).into(),
        ]);
    }
    rep.tables.push(t);
    rep.plot("eig_scaling", "omega", "product");
    rep.plot("eig_scaling", "omega", "running_inf");

    let positive = running > 0.0;
    rep.verdict(Verdict::new(
        "scaled_ground_energy_floor_positive",
        positive,
        running,
        "infimum of lambda_0 |Omega|^(2/d) over the corpus",
    ));
    let slope = ls_slope(&xs, &ys);
    rep.verdict(Verdict::new(
        "scaled_ground_energy_floor_does_not_decay",
        positive && slope.is_some_and(|s| s >= MIN_SLOPE),
        slope.map_or(f64::NAN, |s| s - MIN_SLOPE),
        format!("slope of log running infimum vs log |Omega| minus the allowed {MIN_SLOPE}"),
    ));
    if spot_worst > 0.0 || samples.iter().any(|s| s.dense.is_some()) {
        rep.verdict(Verdict::new(
            "dense_spot_checks",
            spot_ok,
            1e-8 - spot_worst,
            format!("iterative vs dense smallest eigenvalue for |Omega| <= {SPOT_CHECK_MAX}"),
        ));
    }
    if let (Some(a), Some(b)) = (samples.first(), samples.last()) {
        rep.note(format!("|Omega| ranges over [{}, {}]", a.omega, b.omega));
    }
    if let Some(s) = slope {
        rep.note(format!("log-log slope of the running infimum: {s:.6}"));
    }
    Ok(rep)
}

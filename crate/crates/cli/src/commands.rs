use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use anderson_core::experiments::{self, ExperimentConfig, ExperimentKind};
use anderson_core::lattice::{sample_potential, BoxSpec, Connectivity, PerturbationSpec, PotentialField};
use anderson_core::operator::{assemble, HamiltonianSpec};
use anderson_core::percolation::{coarse_grain, label_clusters, spanning_cluster, Color};
use anderson_core::spectral::{spectral_report, Convention};
use anderson_core::Error;
use serde_json::json;

use crate::args::{ClusterArgs, ColorArg, ConnectivityArg, Params, SpectrumArgs};
use crate::output::{write_atomic, write_report};
use crate::resolve::resolve;

/// Failure of a subcommand, already classified by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Capacity(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(format!("i/o error: {e}"))
    }
}

/// Runs one experiment; returns whether every verdict passed.
pub fn experiment(kind: ExperimentKind, params: &Params) -> Result<bool, Failure> {
    let cfg = resolve(kind, params)?;
    let start = Instant::now();
    let report = experiments::run(&cfg)?;
    eprintln!("{}: finished in {:.3} s", kind.name(), start.elapsed().as_secs_f64());
    let mut stdout = io::stdout().lock();
    for v in &report.verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        writeln!(stdout, "{tag} {} margin={:e} {}", v.name, v.margin, v.detail)?;
    }
    for n in &report.notes {
        writeln!(stdout, "note: {n}")?;
    }
    let out = params.out.as_deref().unwrap_or(Path::new("."));
    for path in write_report(&report, out, params.emit_plot_data)? {
        writeln!(stdout, "wrote {}", path.display())?;
    }
    writeln!(stdout, "{} {}", report.experiment, if report.passed { "PASSED" } else { "FAILED" })?;
    Ok(report.passed)
}

fn field_for(cfg: &ExperimentConfig) -> Result<PotentialField, Failure> {
    Ok(sample_potential(BoxSpec::centered(cfg.d, cfg.side)?, cfg.p, cfg.base_seed)?)
}

/// Writes to `<out>/<name>` when `--out` is set, otherwise to stdout.
fn emit(params: &Params, name: &str, text: &str) -> Result<(), Failure> {
    match &params.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            write_atomic(&path, text)?;
            println!("wrote {}", path.display());
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn sample(params: &Params) -> Result<(), Failure> {
    let cfg = resolve(ExperimentKind::Tail, params)?;
    let field = field_for(&cfg)?;
    eprintln!("{}", field.describe());
    emit(params, &format!("potential-{}.txt", cfg.hash()), &field.to_dump())
}

pub fn clusters(args: &ClusterArgs) -> Result<(), Failure> {
    let cfg = resolve(ExperimentKind::Tail, &args.params)?;
    let field = field_for(&cfg)?;
    let color = match args.color {
        ColorArg::White => Color::White,
        ColorArg::Black => Color::Black,
    };
    let conn = match args.connectivity {
        ConnectivityArg::One => Connectivity::One,
        ConnectivityArg::SqrtD => Connectivity::SqrtD,
    };
    let lab = label_clusters(&field, color, conn);
    match spanning_cluster(&lab) {
        Some(id) => eprintln!("{} components; spanning component {id} of size {}", lab.num_components(), lab.sizes()[id]),
        None => eprintln!("{} components; none spans the box", lab.num_components()),
    }
    emit(&args.params, &format!("clusters-{}.csv", cfg.hash()), &lab.to_csv())
}

pub fn coarse(params: &Params) -> Result<(), Failure> {
    let cfg = resolve(ExperimentKind::Tail, params)?;
    let field = field_for(&cfg)?;
    let grid = coarse_grain(&field, cfg.l_block, cfg.p_star)?;
    emit(params, &format!("coarse-{}.csv", cfg.hash()), &grid.to_csv())
}

pub fn spectrum(args: &SpectrumArgs) -> Result<(), Failure> {
    let cfg = resolve(ExperimentKind::Bracketing, &args.params)?;
    if !(args.rel_tol > 0.0 && args.rel_tol < 1.0) {
        return Err(Failure::Usage(format!("rel-tol={} must lie in (0, 1)", args.rel_tol)));
    }
    let field = field_for(&cfg)?;
    let w = PerturbationSpec::borderline(cfg.c, cfg.q(), cfg.d)?;
    let spec = HamiltonianSpec::full_box(&field, cfg.h, &w, cfg.bc)?.with_clamp_w(cfg.clamp_w);
    let start = Instant::now();
    let report = spectral_report(&spec, cfg.tol, args.rel_tol)?;
    eprintln!("spectrum: finished in {:.3} s", start.elapsed().as_secs_f64());
    if let Some(path) = &args.export_matrix {
        write_atomic(path, &assemble::<f64>(&spec)?.to_coordinate())?;
        eprintln!("wrote {}", path.display());
    }
    let count = match cfg.convention {
        Convention::Strict => report.n_neg,
        Convention::Weak => report.n_neg + report.n_zero,
    };
    let doc = json!({
        "config_hash": cfg.hash(),
        "config": cfg,
        "convention": cfg.convention,
        "count": count,
        "spectrum": report,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    emit(&args.params, &format!("spectrum-{}.json", cfg.hash()), &text)
}

//! End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use anderson_core::bounds::{chernoff_bound, gamma_rate, stated_bound_violated, tail_prefactor, animal_bound_corrected};
use anderson_core::experiments::{self, exact_line_tail, exact_yellow_probability, ExperimentConfig, ExperimentKind, ExperimentReport};
use anderson_core::lattice::{sample_potential, BoxSpec, PerturbationSpec};
use anderson_core::operator::{assemble, partition_lakes, BoundaryCondition, DomainMask, HamiltonianSpec, LakeSource};
use anderson_core::percolation::enumerate_animals;
use anderson_core::spectral::{
    bracketing_counts, constructive_poincare_constant, count_matrix, inertia, min_eigenvalue, poincare_constant,
    symmetric_eigenvalues, zero_band, Convention,
};
use anderson_core::SparseMatrix;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, DiscreteCDF};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn nalgebra_eigenvalues(m: &SparseMatrix) -> Vec<f64> {
    let n = m.order();
    let mut v: Vec<f64> = SymmetricEigen::new(DMatrix::from_row_slice(n, n, &m.to_dense())).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(strictly below -tol, within [-tol, tol])` from an independent dense eigensolve.
fn nalgebra_counts(m: &SparseMatrix, tol: f64) -> (usize, usize) {
    let ev = nalgebra_eigenvalues(m);
    (ev.iter().filter(|&&x| x < -tol).count(), ev.iter().filter(|&&x| x.abs() <= tol).count())
}

fn verdict(rep: &ExperimentReport, name: &str) -> Option<bool> {
    rep.verdicts.iter().find(|v| v.name == name).map(|v| v.pass)
}

fn all_named(rep: &ExperimentReport, names: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in names {
        let v = verdict(rep, n);
        ok &= v == Some(true);
        parts.push(format!("{n}={}", v.map_or("missing", |b| if b { "pass" } else { "fail" })));
    }
    (ok, parts.join(" "))
}

fn run(cfg: &ExperimentConfig) -> ExperimentReport {
    experiments::run(cfg).unwrap_or_else(|e| panic!("{} failed: {e}", cfg.kind.name()))
}

fn random_bc(rng: &mut ChaCha8Rng) -> BoundaryCondition {
    if rng.random_bool(0.5) {
        BoundaryCondition::Dirichlet
    } else {
        BoundaryCondition::Neumann
    }
}

fn spectral_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut cases, mut agree, mut total_neg) = (0, 0, 0);
    let mut first_bad = String::new();
    for case in 0..120u64 {
        let d = 1 + (case % 2) as usize;
        let side = if d == 1 { rng.random_range(5..=400) } else { rng.random_range(3..=20) };
        let bx = BoxSpec::centered(d, side).unwrap();
        let p = rng.random_range(0.3..0.95);
        let field = sample_potential(bx, p, rng.random()).unwrap();
        let c = if case % 10 == 0 { 0.0 } else { rng.random_range(0.5..40.0) };
        let w = PerturbationSpec::borderline(c, 1.0 - p, d).unwrap();
        let domain = if rng.random_bool(0.5) {
            DomainMask::full(bx)
        } else {
            let mut member: Vec<bool> = (0..bx.len()).map(|_| rng.random_bool(0.7)).collect();
            member[0] = true;
            DomainMask::new(bx, member).unwrap()
        };
        let spec = HamiltonianSpec::new(&field, rng.random_range(0.2..3.0), &w, random_bc(&mut rng), domain)
            .unwrap()
            .with_outer(random_bc(&mut rng))
            .with_clamp_w(rng.random_bool(0.3));
        let m = assemble::<f64>(&spec).unwrap();
        let tol = zero_band(&m, None);
        let ours = count_matrix(&m, Convention::Strict, None).unwrap();
        let oracle = nalgebra_counts(&m, tol);
        cases += 1;
        total_neg += oracle.0;
        if (ours.inertia.n_neg, ours.inertia.n_zero) == oracle {
            agree += 1;
        } else if first_bad.is_empty() {
            first_bad = format!("; first mismatch case {case}: ours {:?} oracle {oracle:?}", (ours.inertia.n_neg, ours.inertia.n_zero));
        }
    }
    outcome(agree == cases, format!("{agree}/{cases} Hamiltonians agree with nalgebra ({total_neg} negative eigenvalues in total){first_bad}"))
}

fn laplacian_spectrum() -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    let mut checked = 0;
    for d in 1..=3 {
        for side in [2usize, 5, 12] {
            let bx = BoxSpec::new(d, side, &vec![0; d]).unwrap();
            let field = anderson_core::lattice::PotentialField::uniform(bx, 0.5, 0).unwrap();
            let w = PerturbationSpec::zero(d);
            let spec = HamiltonianSpec::full_box(&field, 1.0, &w, BoundaryCondition::Neumann).unwrap();
            let m = assemble::<f64>(&spec).unwrap();
            let n = m.order();
            let ev = symmetric_eigenvalues(&m.to_dense(), n).unwrap();
            let lo = ev.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let top = 4.0 * d as f64;
            worst = worst.max(lo.abs());
            ok &= lo.abs() <= 1e-10 && lo >= -1e-10 && hi <= top + 1e-10;
            // inertia view of the same facts
            let below_zero = inertia(&m, 0.0, 1e-10).unwrap();
            let below_top = inertia(&m, top, 1e-10).unwrap();
            ok &= below_zero.n_neg == 0 && below_zero.n_zero == 1 && below_top.n_pos == 0;
            if n >= 8 {
                let e = min_eigenvalue(&m, 1e-12).unwrap();
                ok &= e.value.abs() <= 1e-10;
                worst = worst.max(e.value.abs());
            }
            checked += 1;
        }
    }
    outcome(ok, format!("{checked} Neumann boxes (d=1..3, L<=12): spectrum in [0, 4d], lambda_min=0 within {worst:.1e}"))
}

fn bracketing() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, side) in [(1usize, 60usize), (2, 20)] {
        let mut cfg = ExperimentConfig::defaults(ExperimentKind::Bracketing);
        cfg.d = d;
        cfg.side = side;
        let rep = run(&cfg);
        let (pass, detail) = all_named(&rep, &["bracketing_ordered", "bracketing_matches_dense_oracle"]);
        ok &= pass && rep.tables[0].rows.len() == 100;
        parts.push(format!("d={d} L={side}: {detail}"));
    }
    // independent cross-check of the weak triple with nalgebra
    let mut agree = 0;
    let trials = 20;
    for t in 0..trials {
        let d = 1 + t % 2;
        let side = if d == 1 { 60 } else { 20 };
        let bx = BoxSpec::centered(d, side).unwrap();
        let field = sample_potential(bx, 0.5, 1000 + t as u64).unwrap();
        let w = PerturbationSpec::borderline(5.0, 0.5, d).unwrap();
        let base = HamiltonianSpec::full_box(&field, 1.0, &w, BoundaryCondition::Neumann).unwrap();
        let masks = partition_lakes(&field, LakeSource::Sites).unwrap().masks();
        let rep = bracketing_counts(&base, &masks, None).unwrap();
        let weak = |spec: &HamiltonianSpec<'_>| {
            let (neg, zero) = nalgebra_counts(&assemble::<f64>(spec).unwrap(), rep.tol);
            neg + zero
        };
        let piecewise = |bc: BoundaryCondition| -> usize {
            masks
                .iter()
                .map(|mask| {
                    let s = HamiltonianSpec::new(&field, 1.0, &w, bc, mask.clone()).unwrap().with_outer(base.outer);
                    weak(&s)
                })
                .sum()
        };
        let triple = (piecewise(BoundaryCondition::Dirichlet), weak(&base), piecewise(BoundaryCondition::Neumann));
        if triple == (rep.dirichlet_weak, rep.full_weak, rep.neumann_weak) && triple.0 <= triple.1 && triple.1 <= triple.2 {
            agree += 1;
        }
    }
    ok &= agree == trials;
    parts.push(format!("nalgebra rebuild of the weak triple agrees on {agree}/{trials}"));
    outcome(ok, parts.join("; "))
}

fn tail_bound(rep: &ExperimentReport) -> Outcome {
    let g = gamma_rate(0.05f64, 2);
    let c0 = tail_prefactor(0.05f64, 2);
    let constants = (g.value - 1.04982).abs() < 1e-5 && (c0.value - 0.25118).abs() < 1e-5;
    let (pass, detail) = all_named(rep, &["tail_below_exponential_bound"]);
    outcome(
        pass && constants,
        format!("gamma={:.5} c0={:.5}; {detail}", g.value, c0.value),
    )
}

fn line_tail(rep: &ExperimentReport) -> Outcome {
    // P(|C| = k | origin white) = k q^{k-1} p^2: k placements of the interval
    let q: f64 = 0.3;
    let p = 1.0 - q;
    let mut worst = 0.0f64;
    for s in 1..=15 {
        let below: f64 = (1..s).map(|k| k as f64 * q.powi(k as i32 - 1) * p * p).sum();
        worst = worst.max((1.0 - below - exact_line_tail(s, q)).abs());
    }
    let (pass, detail) = all_named(rep, &["tail_matches_exact_line_law"]);
    outcome(pass && worst < 1e-12, format!("closed form vs interval sum max diff {worst:.1e}; {detail}"))
}

/// Animals through the origin by filtering all subsets of the window
/// `[-(s-1), s-1]^2` that contain the origin.
fn brute_force_animals_2d(s: usize) -> u64 {
    let r = s as i64 - 1;
    let cells: Vec<(i64, i64)> = (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).filter(|&c| c != (0, 0)).collect();
    let adjacent = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1;
    let mut count = 0u64;
    let mut chosen = vec![(0i64, 0i64)];
    fn rec(
        start: usize,
        left: usize,
        cells: &[(i64, i64)],
        chosen: &mut Vec<(i64, i64)>,
        count: &mut u64,
        adjacent: &dyn Fn((i64, i64), (i64, i64)) -> bool,
    ) {
        if left == 0 {
            let mut seen = vec![false; chosen.len()];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(i) = stack.pop() {
                for j in 0..chosen.len() {
                    if !seen[j] && adjacent(chosen[i], chosen[j]) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            *count += u64::from(seen.iter().all(|&b| b));
            return;
        }
        for k in start..cells.len() {
            chosen.push(cells[k]);
            rec(k + 1, left - 1, cells, chosen, count, adjacent);
            chosen.pop();
        }
    }
    rec(0, s - 1, &cells, &mut chosen, &mut count, &adjacent);
    count
}

fn animals() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for d in 1..=3 {
        let nu = enumerate_animals(d, 2).unwrap();
        ok &= nu == vec![1, 3u64.pow(d as u32) - 1];
    }
    let line = enumerate_animals(1, 6).unwrap();
    ok &= line == vec![1, 2, 3, 4, 5, 6];
    let plane = enumerate_animals(2, 6).unwrap();
    let brute: Vec<u64> = (1..=5).map(brute_force_animals_2d).collect();
    ok &= plane[..5] == brute[..];
    notes.push(format!("d=2 nu={plane:?}, brute force s<=5 {brute:?}"));
    ok &= stated_bound_violated(line[2], 3, 1) && stated_bound_violated(plane[2], 3, 2);
    ok &= !stated_bound_violated(line[1], 2, 1) && !stated_bound_violated(plane[1], 2, 2);
    for (d, nu) in [(1, &line), (2, &plane)] {
        for (i, &v) in nu.iter().enumerate() {
            ok &= (v as f64) <= animal_bound_corrected::<f64>(i + 1, d);
        }
    }
    for d in 1..=2 {
        let mut cfg = ExperimentConfig::defaults(ExperimentKind::Animals);
        cfg.d = d;
        let rep = run(&cfg);
        let (pass, detail) = all_named(&rep, &["nu_1_is_one", "nu_2_is_coordination", "corrected_bound_holds"]);
        ok &= pass;
        let t = rep.table("animals").expect("animals table");
        let col = t.column_index("stated_bound_violated").expect("violation column");
        let flagged = t.rows[2][col] == experiments::Cell::Bool(true) && t.rows[1][col] == experiments::Cell::Bool(false);
        ok &= flagged;
        notes.push(format!("report d={d}: {detail}, violation at s=3 flagged={flagged}"));
    }
    outcome(ok, notes.join("; "))
}

fn chernoff(rep: &ExperimentReport) -> Outcome {
    let exact = exact_yellow_probability(16, 0.5, 0.25);
    let oracle = Binomial::new(0.5, 16).unwrap().cdf(3);
    let bounds: Vec<f64> = [16, 64, 256].iter().map(|&m| chernoff_bound(m, 0.5, 0.25)).collect();
    let (pass, detail) = all_named(
        rep,
        &["chernoff_bound_m16", "chernoff_bound_m64", "chernoff_bound_m256", "exact_binomial_m16"],
    );
    outcome(
        pass && (exact - oracle).abs() < 1e-14,
        format!("bounds {:.6} {:.3e} {:.3e}; exact P(yellow, m=16)={exact:.6} (statrs {oracle:.6}); {detail}", bounds[0], bounds[1], bounds[2]),
    )
}

fn clearings(rep: &ExperimentReport) -> Outcome {
    let names: Vec<String> = (1..=5).map(|l| format!("layer_{l}_no_clearing_frequency")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let (pass, detail) = all_named(rep, &refs);
    outcome(pass, detail)
}

fn eig_scaling(rep: &ExperimentReport) -> Outcome {
    let (pass, detail) = all_named(
        rep,
        &["scaled_ground_energy_floor_positive", "scaled_ground_energy_floor_does_not_decay", "dense_spot_checks"],
    );
    let t = &rep.tables[0];
    let col = t.column_index("omega").expect("omega column");
    let sizes: Vec<f64> = t
        .rows
        .iter()
        .filter_map(|r| match &r[col] {
            experiments::Cell::Int(v) => Some(*v as f64),
            experiments::Cell::Float(v) => Some(*v),
            _ => None,
        })
        .collect();
    let lo = sizes.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = sizes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = lo <= 15.0 && hi >= 0.9e4;
    outcome(
        pass && sizes.len() >= 200 && span,
        format!("{} domains, |Omega| in [{lo}, {hi}]; {detail}", sizes.len()),
    )
}

fn poincare() -> Outcome {
    let mut ok = true;
    let full: Vec<usize> = (0..27).collect();
    let c1 = poincare_constant(3, 3, &full, 1.0f64).unwrap().c_opt;
    let c2 = poincare_constant(3, 3, &full, 2.0f64).unwrap().c_opt;
    let c3 = poincare_constant(2, 1, &[0], 1.0f64).unwrap().c_opt;
    let exact3 = 2.0 / (3.0 - 5f64.sqrt());
    ok &= (c1 - 1.0).abs() < 1e-9 && (c2 - 0.5).abs() < 1e-9 && (c3 - exact3).abs() < 1e-9;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let p: f64 = 0.5;
    let mut worst_ratio = 0.0f64;
    let mut oracle_diff = 0.0f64;
    for _ in 0..50 {
        let d = rng.random_range(1..=2);
        let l: usize = rng.random_range(2..=9);
        let n = l.pow(d as u32);
        let need = ((p / 2.0) * n as f64).ceil() as usize;
        let k = rng.random_range(need.max(1)..=n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.random_range(i..n);
            idx.swap(i, j);
        }
        let subset = &idx[..k];
        let h = 10f64.powf(rng.random_range(-1.0..1.0));
        let opt = poincare_constant(l, d, subset, h).unwrap().c_opt;
        let constructive = constructive_poincare_constant(l, h, p).unwrap().discrete;
        worst_ratio = worst_ratio.max(opt / constructive);
        ok &= opt <= constructive;
        // dense oracle for the same quotient: h M' + K with K built here
        let bx = BoxSpec::new(d, l, &vec![0; d]).unwrap();
        let mut a = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for axis in 0..d {
                let mut delta = [0i64; 3];
                delta[axis] = 1;
                if let Some(j) = bx.neighbor(i, &delta) {
                    a[(i, i)] += 1.0;
                    a[(j, j)] += 1.0;
                    a[(i, j)] -= 1.0;
                    a[(j, i)] -= 1.0;
                }
            }
        }
        for &i in subset {
            a[(i, i)] += h;
        }
        let lam = SymmetricEigen::new(a).eigenvalues.min();
        oracle_diff = oracle_diff.max((opt - 1.0 / lam).abs() / opt);
    }
    ok &= oracle_diff < 1e-9;
    outcome(
        ok,
        format!(
            "examples C={c1:.12} {c2:.12} {c3:.12}; 50 random subsets: max C_opt/C_constructive={worst_ratio:.3}, max rel diff to nalgebra {oracle_diff:.1e}"
        ),
    )
}

fn threshold(rep: &ExperimentReport) -> Outcome {
    let (pass, detail) = all_named(rep, &["small_well_count_saturates", "large_well_count_grows"]);
    outcome(pass, detail)
}

fn determinism(first: &BTreeMap<&'static str, (ExperimentConfig, String)>) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, (cfg, json)) in first {
        let mut again = cfg.clone();
        again.workers = 3;
        let same = run(&again).to_json() == *json;
        ok &= same;
        parts.push(format!("{name}={}", if same { "identical" } else { "DIFFERS" }));
    }
    outcome(ok && first.len() == 7, parts.join(" "))
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome, Duration, Duration)> = Vec::new();
    let mut first: BTreeMap<&'static str, (ExperimentConfig, String)> = BTreeMap::new();
    let mut timed = |n: usize, name: &'static str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        results.push((n, name, o, start.elapsed(), limit));
    };
    let default_run = |kind: ExperimentKind, edit: &dyn Fn(&mut ExperimentConfig), first: &mut BTreeMap<&'static str, (ExperimentConfig, String)>| {
        let mut cfg = ExperimentConfig::defaults(kind);
        edit(&mut cfg);
        cfg.workers = 1;
        let rep = run(&cfg);
        first.entry(kind.name()).or_insert_with(|| (cfg.clone(), rep.to_json()));
        rep
    };
    let secs = Duration::from_secs;

    timed(1, "spectral oracle equivalence", secs(120), &mut spectral_oracle);
    timed(2, "lattice Laplacian spectrum", secs(30), &mut laplacian_spectrum);
    timed(3, "Dirichlet-Neumann bracketing", secs(120), &mut bracketing);
    timed(4, "cluster tail below exponential bound", secs(300), &mut || {
        tail_bound(&default_run(ExperimentKind::Tail, &|_| {}, &mut first))
    });
    timed(5, "exact 1-D tail law", secs(300), &mut || {
        let mut cfg = ExperimentConfig::defaults(ExperimentKind::Tail);
        cfg.d = 1;
        cfg.p = 0.7;
        line_tail(&run(&cfg))
    });
    timed(6, "animal counts", secs(60), &mut animals);
    timed(7, "large-deviation bound for yellow blocks", secs(60), &mut || {
        chernoff(&default_run(ExperimentKind::Chernoff, &|_| {}, &mut first))
    });
    timed(8, "clearing census", secs(60), &mut || {
        clearings(&default_run(ExperimentKind::Clearings, &|_| {}, &mut first))
    });
    timed(9, "scaled ground energy floor", secs(600), &mut || {
        eig_scaling(&default_run(ExperimentKind::EigScaling, &|_| {}, &mut first))
    });
    timed(10, "Poincare constant", secs(60), &mut poincare);
    timed(11, "negative-spectrum trend in the well amplitude", secs(900), &mut || {
        threshold(&default_run(ExperimentKind::Threshold, &|_| {}, &mut first))
    });
    default_run(ExperimentKind::Animals, &|_| {}, &mut first);
    default_run(ExperimentKind::Bracketing, &|_| {}, &mut first);
    timed(12, "byte-identical re-runs", secs(900), &mut || determinism(&first));

    let mut failed = 0;
    for (n, name, o, took, limit) in &results {
        let pass = o.pass && took <= limit;
        failed += usize::from(!pass);
        println!(
            "{} criterion {n:>2} {name} [{:.1}s / limit {}s]: {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

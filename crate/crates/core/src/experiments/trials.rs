use rayon::prelude::*;

use crate::lattice::derive_seed;

/// Evaluates `f(trial_index, trial_seed)` for every trial on a pool of
/// `workers` threads (0 = pool default) and returns results in trial order.
pub(crate) fn run_trials<R, F>(workers: usize, trials: usize, base_seed: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, u64) -> R + Sync + Send,
{
    let job = || (0..trials).into_par_iter().map(|i| f(i, derive_seed(base_seed, i as u64))).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

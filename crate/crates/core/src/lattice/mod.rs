//! Finite boxes of `Z^d`, the site-hashed Bernoulli potential and the
//! deterministic perturbation `w`.

mod geometry;
mod perturbation;
mod potential;

pub use geometry::{neighbor_offsets, BoxSpec, Connectivity, Site, MAX_DIM, MAX_SITES};
pub use perturbation::{PerturbationKind, PerturbationSpec};
pub use potential::{derive_seed, mix64, sample_potential, site_hash, BernoulliSampler, PotentialField};

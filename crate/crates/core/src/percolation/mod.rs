//! Cluster structure of the black and white site sets.

mod animals;
mod clearings;
mod coarse;
mod labeling;
mod union_find;

pub use crate::lattice::Connectivity;
pub use animals::{enumerate_animals, max_animal_size};
pub use clearings::{find_clearings, LayerClearings, LayerSpec};
pub use coarse::{coarse_grain, BlockClass, BlockRecord, CoarseGrid, UltraClass};
pub use labeling::{
    boundary_of, flood_cluster, label_clusters, spanning_cluster, ClusterLabeling, Color, FloodResult,
};
pub use union_find::UnionFind;

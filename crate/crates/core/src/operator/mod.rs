//! Assembly of the lattice Hamiltonian `H = -Δ + h eps - w` on a box or a
//! sub-domain, and partitions of the box into lakes with their shells.

mod assemble;
mod domain;
mod partition;
mod sparse;

pub use assemble::{assemble, HamiltonianSpec};
pub use domain::{BoundaryCondition, DomainMask};
pub use partition::{partition_lakes, LakePartition, LakeSource};
pub use sparse::SparseSymmetric;

use super::domain::DomainMask;
use crate::error::{Error, Result};
use crate::lattice::{neighbor_offsets, BoxSpec, Connectivity, PotentialField, MAX_DIM};
use crate::percolation::{label_clusters, BlockClass, Color, CoarseGrid, UltraClass, UnionFind};

/// What counts as a lake.
#[derive(Debug, Clone, Copy)]
pub enum LakeSource<'a> {
    /// White sites; the shell is one site thick.
    Sites,
    /// Yellow blocks; the shell is one block thick.
    YellowBlocks(&'a CoarseGrid),
    /// Mixed blocks; the shell is one half-block thick.
    MixedBlocks(&'a CoarseGrid),
}

/// Lakes with their shells, plus the remaining sites.
#[derive(Debug, Clone)]
pub struct LakePartition {
    pub lakes: Vec<DomainMask>,
    pub remainder: Option<DomainMask>,
}

impl LakePartition {
    /// Lakes first, the remainder (if any) last.
    pub fn masks(&self) -> Vec<DomainMask> {
        self.lakes.iter().cloned().chain(self.remainder.clone()).collect()
    }
}

/// Splits the box into `U_i` = (√d-connected lake) ∪ (its √d shell), with
/// lakes whose shells touch merged, and the leftover region.
pub fn partition_lakes(field: &PotentialField, source: LakeSource<'_>) -> Result<LakePartition> {
    let fine = *field.box_spec();
    let (edge, bad): (usize, Vec<bool>) = match source {
        LakeSource::Sites => (1, field.values().iter().map(|&e| e == 0).collect()),
        LakeSource::YellowBlocks(g) => {
            check_grid(g, &fine)?;
            (g.l, g.blocks.iter().map(|b| b.class == BlockClass::Yellow).collect())
        }
        LakeSource::MixedBlocks(g) => {
            check_grid(g, &fine)?;
            if g.l % 2 != 0 {
                return Err(Error::Shape(format!("mixed lakes need an even block edge, got {}", g.l)));
            }
            let half = g.l / 2;
            let cells = BoxSpec::new(fine.dim(), fine.side() / half, &[0; MAX_DIM][..fine.dim()])?;
            let bad = (0..cells.len())
                .map(|c| {
                    let lc = cells.local_coords(c);
                    let mut b = 0;
                    for &x in &lc[..fine.dim()] {
                        b = b * g.grid.side() + x / 2;
                    }
                    g.blocks[b].uclass == Some(UltraClass::Mixed)
                })
                .collect();
            (half, bad)
        }
    };
    let d = fine.dim();
    let cells = BoxSpec::new(d, fine.side() / edge, &[0; MAX_DIM][..d])?;
    let cell_field = PotentialField::from_values(cells, 0.5, 0, bad.iter().map(|&b| u8::from(!b)).collect())?;
    let lab = label_clusters(&cell_field, Color::White, Connectivity::SqrtD);
    let ncomp = lab.num_components();

    // owner[c]: component owning cell c as lake or shell
    let offsets = neighbor_offsets(d, Connectivity::SqrtD);
    let mut owner = vec![usize::MAX; cells.len()];
    let mut groups = UnionFind::new(ncomp.max(1));
    for c in 0..cells.len() {
        if let Some(id) = lab.label(c) {
            owner[c] = id;
        }
    }
    for c in 0..cells.len() {
        let Some(id) = lab.label(c) else { continue };
        for off in &offsets {
            if let Some(nb) = cells.neighbor(c, off) {
                if bad[nb] {
                    continue;
                }
                if owner[nb] == usize::MAX {
                    owner[nb] = id;
                } else {
                    groups.union(owner[nb], id);
                }
            }
        }
    }

    let mut group_slot = vec![usize::MAX; ncomp];
    let mut group_cells: Vec<Vec<usize>> = Vec::new();
    for id in 0..ncomp {
        let r = groups.find(id);
        if group_slot[r] == usize::MAX {
            group_slot[r] = group_cells.len();
            group_cells.push(Vec::new());
        }
    }
    for (c, &o) in owner.iter().enumerate() {
        if o != usize::MAX {
            group_cells[group_slot[groups.find(o)]].push(c);
        }
    }

    let mut covered = vec![false; fine.len()];
    let mut lakes = Vec::with_capacity(group_cells.len());
    for cs in &group_cells {
        let mut member = vec![false; fine.len()];
        for &c in cs {
            for s in cell_sites(&fine, &cells, edge, c) {
                member[s] = true;
                covered[s] = true;
            }
        }
        lakes.push(DomainMask::new(fine, member)?);
    }
    let rest: Vec<bool> = covered.iter().map(|&c| !c).collect();
    let remainder = if rest.iter().any(|&r| r) { Some(DomainMask::new(fine, rest)?) } else { None };
    Ok(LakePartition { lakes, remainder })
}

fn check_grid(g: &CoarseGrid, fine: &BoxSpec) -> Result<()> {
    if g.fine.dim() != fine.dim() || g.fine.side() != fine.side() {
        return Err(Error::Shape("coarse grid built on a different box".into()));
    }
    Ok(())
}

fn cell_sites(fine: &BoxSpec, cells: &BoxSpec, edge: usize, c: usize) -> Vec<usize> {
    let d = fine.dim();
    let lc = cells.local_coords(c);
    let count = edge.pow(d as u32);
    (0..count)
        .map(|r| {
            let mut rem = r;
            let mut local = [0usize; MAX_DIM];
            for k in (0..d).rev() {
                local[k] = rem % edge;
                rem /= edge;
            }
            (0..d).fold(0, |idx, k| idx * fine.side() + lc[k] * edge + local[k])
        })
        .collect()
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BoxSpec, PotentialField, MAX_DIM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockClass {
    Gray,
    Yellow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UltraClass {
    UltraGray,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub black_count: usize,
    pub class: BlockClass,
    /// Present only when the block edge is even.
    pub uclass: Option<UltraClass>,
}

/// Partition of a box into blocks of edge `l` with gray/yellow (and, for even
/// `l`, ultra-gray/mixed) classification.
#[derive(Debug, Clone, Serialize)]
pub struct CoarseGrid {
    pub l: usize,
    pub p_star: f64,
    /// Grid of blocks: a box of side `L / l` with zero origin.
    pub grid: BoxSpec,
    /// Box of the underlying field.
    pub fine: BoxSpec,
    pub blocks: Vec<BlockRecord>,
}

fn is_gray(black: usize, sites: usize, p_star: f64) -> bool {
    black as f64 >= p_star * sites as f64
}

/// Classifies blocks of edge `l`; requires `l | L` and `0 < p_star < p`.
pub fn coarse_grain(field: &PotentialField, l: usize, p_star: f64) -> Result<CoarseGrid> {
    let fine = *field.box_spec();
    let d = fine.dim();
    if l == 0 || fine.side() % l != 0 {
        return Err(Error::Shape(format!(
            "block edge {l} does not divide box side {}",
            fine.side()
        )));
    }
    if !(p_star > 0.0 && p_star < field.p()) {
        return Err(Error::Domain(format!(
            "p_star={p_star} must lie in (0, p={})",
            field.p()
        )));
    }
    let nb = fine.side() / l;
    let grid = BoxSpec::new(d, nb, &[0; MAX_DIM][..d])?;
    let m = l.pow(d as u32);
    let half = l / 2;
    let even = l % 2 == 0;

    let mut black = vec![0usize; grid.len()];
    // sub-block counts, 2^d per block, indexed by the parity pattern of the
    // local offset
    let sub_per_block = 1usize << d;
    let mut sub = if even { vec![0usize; grid.len() * sub_per_block] } else { Vec::new() };
    for i in 0..fine.len() {
        if field.at(i) == 0 {
            continue;
        }
        let c = fine.local_coords(i);
        let mut b = 0usize;
        let mut s = 0usize;
        for k in 0..d {
            b = b * nb + c[k] / l;
            if even {
                s |= (((c[k] % l) >= half) as usize) << k;
            }
        }
        black[b] += 1;
        if even {
            sub[b * sub_per_block + s] += 1;
        }
    }

    let sub_m = half.pow(d as u32);
    let blocks = (0..grid.len())
        .map(|b| {
            let class = if is_gray(black[b], m, p_star) { BlockClass::Gray } else { BlockClass::Yellow };
            let uclass = even.then(|| {
                let all = sub[b * sub_per_block..(b + 1) * sub_per_block]
                    .iter()
                    .all(|&c| is_gray(c, sub_m, p_star));
                if all {
                    UltraClass::UltraGray
                } else {
                    UltraClass::Mixed
                }
            });
            BlockRecord { black_count: black[b], class, uclass }
        })
        .collect();

    Ok(CoarseGrid { l, p_star, grid, fine, blocks })
}

impl CoarseGrid {
    /// Fine-box indices of the sites of block `b`.
    pub fn block_sites(&self, b: usize) -> Vec<usize> {
        self.sub_block_sites(b, self.l, [0; MAX_DIM])
    }

    /// Fine-box indices of the cube of edge `edge` at offset `offset` (in
    /// sites) from the low corner of block `b`.
    pub(crate) fn sub_block_sites(&self, b: usize, edge: usize, offset: [usize; MAX_DIM]) -> Vec<usize> {
        let d = self.fine.dim();
        let bc = self.grid.local_coords(b);
        let count = edge.pow(d as u32);
        let side = self.fine.side();
        (0..count)
            .map(|r| {
                let mut rem = r;
                let mut local = [0usize; MAX_DIM];
                for k in (0..d).rev() {
                    local[k] = rem % edge;
                    rem /= edge;
                }
                let mut idx = 0;
                for k in 0..d {
                    idx = idx * side + bc[k] * self.l + offset[k] + local[k];
                }
                idx
            })
            .collect()
    }

    /// CSV with one row per block.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("block,black_count,class,uclass\n");
        for (b, r) in self.blocks.iter().enumerate() {
            let class = match r.class {
                BlockClass::Gray => "gray",
                BlockClass::Yellow => "yellow",
            };
            let uclass = match r.uclass {
                Some(UltraClass::UltraGray) => "ultra_gray",
                Some(UltraClass::Mixed) => "mixed",
                None => "",
            };
            out.push_str(&format!("{b},{},{class},{uclass}\n", r.black_count));
        }
        out
    }
}

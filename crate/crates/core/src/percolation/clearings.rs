use serde::{Deserialize, Serialize};

use crate::bounds::layer_radii;
use crate::error::{Error, Result};
use crate::lattice::{PotentialField, Site, MAX_DIM};

/// Spherical layers `a^{(l-1)^d} < |x| < a^{l^d}` and the clearing block edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSpec {
    pub a: u64,
    pub d: usize,
    pub l_max: usize,
    pub l_block: usize,
}

impl LayerSpec {
    pub fn new(a: u64, d: usize, l_max: usize, l_block: usize) -> Result<Self> {
        if a < 2 {
            return Err(Error::Domain(format!("layer base a={a} must be >= 2")));
        }
        if !(1..=3).contains(&d) {
            return Err(Error::Domain(format!("dimension d={d} outside 1..=3")));
        }
        if l_max == 0 || l_block == 0 {
            return Err(Error::Domain("l_max and l_block must be positive".into()));
        }
        let spec = LayerSpec { a, d, l_max, l_block };
        spec.required_radius()?;
        Ok(spec)
    }

    /// Outer radius of the last layer.
    pub fn required_radius(&self) -> Result<u64> {
        Ok(layer_radii(self.a, self.l_max, self.d)?.1)
    }

    /// `a^d q > 1`, needed for clearings in all but finitely many layers.
    pub fn hypothesis_holds(&self, q: f64) -> bool {
        (self.a as f64).powi(self.d as i32) * q > 1.0
    }
}

/// Aligned blocks strictly inside one layer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerClearings {
    pub layer: usize,
    pub r_in: u64,
    pub r_out: u64,
    /// Number of aligned blocks strictly inside the layer, `N(l)`.
    pub n_blocks: usize,
    /// Low corners of the all-white blocks.
    pub clearings: Vec<Site>,
}

/// Layer index whose shrunken annulus strictly contains a block center at
/// squared-distance-free radius `r`, if any.
fn layer_of(r: f64, radii: &[(u64, u64)], shrink: f64) -> Option<usize> {
    radii
        .iter()
        .position(|&(lo, hi)| (lo as f64 + shrink) < r && r < (hi as f64 - shrink))
}

/// All-white aligned blocks of edge `l_block` in each layer `1..=l_max`.
///
/// Blocks are aligned to multiples of `l_block` in absolute coordinates.
/// A block belongs to layer `l` when its center `c` satisfies
/// `a^{(l-1)^d} + l_block sqrt(d) < |c| < a^{l^d} - l_block sqrt(d)`.
pub fn find_clearings(field: &PotentialField, layers: &LayerSpec) -> Result<Vec<LayerClearings>> {
    let bx = field.box_spec();
    let d = bx.dim();
    if d != layers.d {
        return Err(Error::Shape(format!("field has d={d}, layers have d={}", layers.d)));
    }
    let radius = layers.required_radius()?;
    let r = radius as i64;
    let side = bx.side() as i64;
    if bx.origin().iter().any(|&o| o > -r || o + side - 1 < r) {
        return Err(Error::Capacity(format!(
            "box must contain [-{radius}, {radius}]^{d}"
        )));
    }
    let radii: Vec<(u64, u64)> = (1..=layers.l_max)
        .map(|l| layer_radii(layers.a, l, d))
        .collect::<Result<_>>()?;
    let lb = layers.l_block as i64;
    let shrink = layers.l_block as f64 * (d as f64).sqrt();

    let mut out: Vec<LayerClearings> = radii
        .iter()
        .enumerate()
        .map(|(i, &(r_in, r_out))| LayerClearings {
            layer: i + 1,
            r_in,
            r_out,
            n_blocks: 0,
            clearings: Vec::new(),
        })
        .collect();

    // block index range per axis covering blocks fully inside the box
    let lo: Vec<i64> = bx.origin().iter().map(|&o| o.div_euclid(lb) + (o.rem_euclid(lb) != 0) as i64).collect();
    let hi: Vec<i64> = bx.origin().iter().map(|&o| (o + side - lb).div_euclid(lb)).collect();
    if (0..d).any(|k| lo[k] > hi[k]) {
        return Ok(out);
    }
    let mut k = lo.clone();
    let half = (layers.l_block as f64 - 1.0) / 2.0;
    'outer: loop {
        let center_sq: f64 = k.iter().map(|&kk| {
            let c = (kk * lb) as f64 + half;
            c * c
        }).sum();
        if let Some(li) = layer_of(center_sq.sqrt(), &radii, shrink) {
            out[li].n_blocks += 1;
            let mut corner = [0i64; MAX_DIM];
            for a in 0..d {
                corner[a] = k[a] * lb;
            }
            if block_is_white(field, &corner, d, lb) {
                out[li].clearings.push(Site::new(&corner[..d]));
            }
        }
        // odometer increment
        for a in (0..d).rev() {
            k[a] += 1;
            if k[a] <= hi[a] {
                continue 'outer;
            }
            k[a] = lo[a];
        }
        break;
    }
    Ok(out)
}

fn block_is_white(field: &PotentialField, corner: &[i64; MAX_DIM], d: usize, lb: i64) -> bool {
    let count = (lb as usize).pow(d as u32);
    (0..count).all(|r| {
        let mut rem = r as i64;
        let mut c = *corner;
        for slot in c.iter_mut().take(d).rev() {
            *slot += rem % lb;
            rem /= lb;
        }
        field.get(&Site::new(&c[..d])) == Some(0)
    })
}

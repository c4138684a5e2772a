use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

/// Largest box (in sites) any single object may allocate.
/// Largest number of sites a box may hold.
pub const MAX_SITES: usize = 1 << 28;

/// A multi-index `n` in `Z^d`, `d <= 3`. Unused trailing coordinates are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    coords: [i64; MAX_DIM],
    dim: u8,
}

impl Site {
    pub fn new(coords: &[i64]) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&coords.len()),
            "site dimension must be 1..=3"
        );
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Site { coords: c, dim: coords.len() as u8 }
    }

    pub fn origin(d: usize) -> Self {
        Site::new(&[0i64; MAX_DIM][..d])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim()]
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(&self) -> i64 {
        self.coords().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    pub fn offset(&self, delta: &[i64; MAX_DIM]) -> Site {
        let mut s = *self;
        for k in 0..self.dim() {
            s.coords[k] += delta[k];
        }
        s
    }
}

/// Adjacency relation between lattice sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    /// Common face: `|n - n'|_1 = 1`, `2d` neighbors.
    One,
    /// Any common point: `|n - n'|_inf = 1`, `3^d - 1` neighbors.
    SqrtD,
}

/// Neighbor displacement vectors for the given relation.
pub fn neighbor_offsets(d: usize, conn: Connectivity) -> Vec<[i64; MAX_DIM]> {
    assert!((1..=MAX_DIM).contains(&d));
    match conn {
        Connectivity::One => {
            let mut out = Vec::with_capacity(2 * d);
            for k in 0..d {
                for s in [-1, 1] {
                    let mut v = [0; MAX_DIM];
                    v[k] = s;
                    out.push(v);
                }
            }
            out
        }
        Connectivity::SqrtD => {
            let total = 3usize.pow(d as u32);
            let mut out = Vec::with_capacity(total - 1);
            for code in 0..total {
                let mut v = [0; MAX_DIM];
                let mut c = code;
                for slot in v.iter_mut().take(d) {
                    *slot = (c % 3) as i64 - 1;
                    c /= 3;
                }
                if v.iter().any(|&x| x != 0) {
                    out.push(v);
                }
            }
            out
        }
    }
}

/// The box `origin + {0..side-1}^d`.
///
/// Sites are indexed row-major: the first axis varies slowest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxSpec {
    d: usize,
    side: usize,
    origin: [i64; MAX_DIM],
}

impl BoxSpec {
    pub fn new(d: usize, side: usize, origin: &[i64]) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&d) {
            return Err(Error::Domain(format!("dimension d={d} outside 1..=3")));
        }
        if side == 0 {
            return Err(Error::Domain("box side must be positive".into()));
        }
        if origin.len() != d {
            return Err(Error::Shape(format!(
                "origin has {} coordinates, expected {d}",
                origin.len()
            )));
        }
        match side.checked_pow(d as u32) {
            Some(n) if n <= MAX_SITES => {}
            _ => {
                return Err(Error::Capacity(format!(
                    "box {side}^{d} exceeds the {MAX_SITES}-site budget"
                )))
            }
        }
        let mut o = [0; MAX_DIM];
        o[..d].copy_from_slice(origin);
        Ok(BoxSpec { d, side, origin: o })
    }

    /// Box of the given side whose Z^d origin sits at (or just right of) the center.
    pub fn centered(d: usize, side: usize) -> Result<Self> {
        let o = -((side / 2) as i64);
        BoxSpec::new(d, side, &[o; MAX_DIM][..d.min(MAX_DIM)])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin[..self.d]
    }

    /// Number of sites, `side^d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.side.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, site: &Site) -> bool {
        self.index_of(site).is_some()
    }

    pub fn index_of(&self, site: &Site) -> Option<usize> {
        if site.dim() != self.d {
            return None;
        }
        let mut idx = 0usize;
        for k in 0..self.d {
            let rel = site.coords[k] - self.origin[k];
            if rel < 0 || rel >= self.side as i64 {
                return None;
            }
            idx = idx * self.side + rel as usize;
        }
        Some(idx)
    }

    /// Local (box-relative) coordinates of a site index.
    #[inline]
    pub fn local_coords(&self, mut idx: usize) -> [usize; MAX_DIM] {
        let mut c = [0; MAX_DIM];
        for k in (0..self.d).rev() {
            c[k] = idx % self.side;
            idx /= self.side;
        }
        c
    }

    pub fn site_at(&self, idx: usize) -> Site {
        debug_assert!(idx < self.len());
        let local = self.local_coords(idx);
        let mut c = [0; MAX_DIM];
        for k in 0..self.d {
            c[k] = self.origin[k] + local[k] as i64;
        }
        Site { coords: c, dim: self.d as u8 }
    }

    /// Index of the neighbor of `idx` displaced by `delta`, if it lies in the box.
    #[inline]
    pub fn neighbor(&self, idx: usize, delta: &[i64; MAX_DIM]) -> Option<usize> {
        let local = self.local_coords(idx);
        let mut out = 0usize;
        for k in 0..self.d {
            let c = local[k] as i64 + delta[k];
            if c < 0 || c >= self.side as i64 {
                return None;
            }
            out = out * self.side + c as usize;
        }
        Some(out)
    }

    /// Bitmask of box faces the site touches: bit `2k` for the low face of
    /// axis `k`, bit `2k+1` for the high face.
    pub fn faces_touched(&self, idx: usize) -> u8 {
        let local = self.local_coords(idx);
        let mut mask = 0u8;
        for (k, &c) in local.iter().enumerate().take(self.d) {
            if c == 0 {
                mask |= 1 << (2 * k);
            }
            if c + 1 == self.side {
                mask |= 1 << (2 * k + 1);
            }
        }
        mask
    }

    pub fn all_faces_mask(&self) -> u8 {
        ((1u16 << (2 * self.d)) - 1) as u8
    }

    /// True if `other` is contained in this box.
    pub fn contains_box(&self, other: &BoxSpec) -> bool {
        other.d == self.d
            && (0..self.d).all(|k| {
                other.origin[k] >= self.origin[k]
                    && other.origin[k] + other.side as i64 <= self.origin[k] + self.side as i64
            })
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.len()).map(move |i| self.site_at(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_counts() {
        for d in 1..=3 {
            assert_eq!(neighbor_offsets(d, Connectivity::One).len(), 2 * d);
            assert_eq!(
                neighbor_offsets(d, Connectivity::SqrtD).len(),
                3usize.pow(d as u32) - 1
            );
        }
    }

    #[test]
    fn index_round_trip() {
        let b = BoxSpec::new(3, 4, &[-2, 0, 5]).unwrap();
        for i in 0..b.len() {
            assert_eq!(b.index_of(&b.site_at(i)), Some(i));
        }
        assert!(!b.contains(&Site::new(&[2, 0, 5])));
    }

    #[test]
    fn rejects_bad_boxes() {
        assert!(matches!(BoxSpec::new(4, 2, &[0; 4]), Err(Error::Domain(_))));
        assert!(matches!(BoxSpec::new(2, 0, &[0, 0]), Err(Error::Domain(_))));
        assert!(matches!(BoxSpec::new(2, 3, &[0]), Err(Error::Shape(_))));
        assert!(matches!(BoxSpec::new(3, 1 << 20, &[0; 3]), Err(Error::Capacity(_))));
    }

    #[test]
    fn centered_box_holds_origin_in_middle() {
        let b = BoxSpec::centered(2, 5).unwrap();
        assert_eq!(b.origin(), &[-2, -2]);
        let o = b.index_of(&Site::origin(2)).unwrap();
        assert_eq!(b.faces_touched(o), 0);
        assert_eq!(b.faces_touched(0), 0b0101);
    }
}

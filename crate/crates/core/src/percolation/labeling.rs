use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::union_find::UnionFind;
use crate::error::{Error, Result};
use crate::lattice::{neighbor_offsets, BoxSpec, Connectivity, PotentialField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    /// `eps = 1`
    Black,
    /// `eps = 0`
    White,
}

impl Color {
    #[inline]
    pub fn value(self) -> u8 {
        match self {
            Color::Black => 1,
            Color::White => 0,
        }
    }
}

const UNLABELED: u32 = u32::MAX;

/// Connected components of one color under one adjacency relation,
/// restricted to the box (no wraparound).
///
/// Component ids are assigned in order of each component's first site in
/// row-major order.
#[derive(Debug, Clone)]
pub struct ClusterLabeling {
    bx: BoxSpec,
    color: Color,
    connectivity: Connectivity,
    labels: Vec<u32>,
    sizes: Vec<usize>,
    faces: Vec<u8>,
}

impl ClusterLabeling {
    pub fn box_spec(&self) -> &BoxSpec {
        &self.bx
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn connectivity(&self) -> Connectivity {
        self.connectivity
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn label(&self, idx: usize) -> Option<usize> {
        match self.labels[idx] {
            UNLABELED => None,
            l => Some(l as usize),
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, id: usize) -> Option<usize> {
        self.sizes.get(id).copied()
    }

    /// Bitmask of box faces touched by the component (see [`BoxSpec::faces_touched`]).
    pub fn faces(&self, id: usize) -> Option<u8> {
        self.faces.get(id).copied()
    }

    pub fn members(&self, id: usize) -> Result<Vec<usize>> {
        if id >= self.sizes.len() {
            return Err(Error::Lookup(format!("no component {id}")));
        }
        let mut out = Vec::with_capacity(self.sizes[id]);
        out.extend(
            self.labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l as usize == id)
                .map(|(i, _)| i),
        );
        Ok(out)
    }

    /// Members of every component, indexed by component id.
    pub fn all_members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (i, &l) in self.labels.iter().enumerate() {
            if l != UNLABELED {
                out[l as usize].push(i);
            }
        }
        out
    }

    /// Cluster report CSV: `component_id,size,touches_faces`, where the last
    /// column counts the box faces the component touches.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("component_id,size,touches_faces\n");
        for (id, (&size, &faces)) in self.sizes.iter().zip(&self.faces).enumerate() {
            out.push_str(&format!("{id},{size},{}\n", faces.count_ones()));
        }
        out
    }
}

/// Union-find (Hoshen–Kopelman style) labeling of one color.
pub fn label_clusters(field: &PotentialField, color: Color, connectivity: Connectivity) -> ClusterLabeling {
    let bx = *field.box_spec();
    let n = bx.len();
    let want = color.value();
    // Only look back at neighbors earlier in scan order; every adjacent pair
    // is seen exactly once.
    let back: Vec<_> = neighbor_offsets(bx.dim(), connectivity)
        .into_iter()
        .filter(|v| v.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0))
        .collect();

    let mut uf = UnionFind::new(n);
    for i in 0..n {
        if field.at(i) != want {
            continue;
        }
        for off in &back {
            if let Some(j) = bx.neighbor(i, off) {
                if field.at(j) == want {
                    uf.union(i, j);
                }
            }
        }
    }

    let mut labels = vec![UNLABELED; n];
    let mut root_label = vec![UNLABELED; n];
    let mut sizes = Vec::new();
    let mut faces = Vec::new();
    for i in 0..n {
        if field.at(i) != want {
            continue;
        }
        let r = uf.find(i);
        if root_label[r] == UNLABELED {
            root_label[r] = sizes.len() as u32;
            sizes.push(0);
            faces.push(0);
        }
        let l = root_label[r];
        labels[i] = l;
        sizes[l as usize] += 1;
        faces[l as usize] |= bx.faces_touched(i);
    }

    ClusterLabeling { bx, color, connectivity, labels, sizes, faces }
}

/// Sites outside the component adjacent to it under `connectivity`,
/// clipped to the box. Sorted by index.
pub fn boundary_of(labeling: &ClusterLabeling, id: usize, connectivity: Connectivity) -> Result<Vec<usize>> {
    let members = labeling.members(id)?;
    let bx = labeling.bx;
    let offsets = neighbor_offsets(bx.dim(), connectivity);
    let mut mark = vec![false; bx.len()];
    let mut out = Vec::new();
    for &i in &members {
        for off in &offsets {
            if let Some(j) = bx.neighbor(i, off) {
                if !mark[j] && labeling.labels[j] as usize != id {
                    mark[j] = true;
                    out.push(j);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Component touching every face of the box; ties go to the largest, then
/// the smallest id.
pub fn spanning_cluster(labeling: &ClusterLabeling) -> Option<usize> {
    let all = labeling.bx.all_faces_mask();
    (0..labeling.num_components())
        .filter(|&id| labeling.faces[id] == all)
        .max_by(|&a, &b| labeling.sizes[a].cmp(&labeling.sizes[b]).then(b.cmp(&a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloodResult {
    pub size: usize,
    /// Faces of the box touched by the cluster; nonzero means the cluster may
    /// be truncated by the box.
    pub faces: u8,
}

/// Breadth-first cluster of `start` among sites where `member` holds.
///
/// `member` is only evaluated on sites reached by the search, so lazily
/// sampled fields cost time proportional to the cluster and its boundary.
pub fn flood_cluster(
    bx: &BoxSpec,
    start: usize,
    connectivity: Connectivity,
    mut member: impl FnMut(usize) -> bool,
) -> FloodResult {
    if !member(start) {
        return FloodResult { size: 0, faces: 0 };
    }
    let offsets = neighbor_offsets(bx.dim(), connectivity);
    // 0 = unvisited, 1 = in cluster, 2 = rejected
    let mut state = std::collections::HashMap::new();
    state.insert(start, 1u8);
    let mut queue = VecDeque::from([start]);
    let mut size = 0;
    let mut faces = 0;
    while let Some(i) = queue.pop_front() {
        size += 1;
        faces |= bx.faces_touched(i);
        for off in &offsets {
            if let Some(j) = bx.neighbor(i, off) {
                if let std::collections::hash_map::Entry::Vacant(e) = state.entry(j) {
                    if member(j) {
                        e.insert(1);
                        queue.push_back(j);
                    } else {
                        e.insert(2);
                    }
                }
            }
        }
    }
    FloodResult { size, faces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{sample_potential, Site};

    fn field(d: usize, side: usize, eps: Vec<u8>) -> PotentialField {
        let bx = BoxSpec::new(d, side, &vec![0; d]).unwrap();
        PotentialField::from_values(bx, 0.5, 0, eps).unwrap()
    }

    #[test]
    fn single_white_site_in_1d() {
        let f = field(1, 4, vec![1, 1, 0, 1]);
        let lab = label_clusters(&f, Color::White, Connectivity::One);
        assert_eq!(lab.sizes(), &[1]);
        assert_eq!(lab.label(2), Some(0));
        assert_eq!(lab.label(0), None);
    }

    #[test]
    fn diagonal_pair() {
        let f = field(2, 2, vec![1, 0, 0, 1]);
        let one = label_clusters(&f, Color::Black, Connectivity::One);
        assert_eq!(one.sizes(), &[1, 1]);
        let sq = label_clusters(&f, Color::Black, Connectivity::SqrtD);
        assert_eq!(sq.sizes(), &[2]);
    }

    #[test]
    fn boundaries_of_isolated_site() {
        let mut eps = vec![1; 9];
        eps[4] = 0;
        let f = field(2, 3, eps);
        let lab = label_clusters(&f, Color::White, Connectivity::SqrtD);
        assert_eq!(boundary_of(&lab, 0, Connectivity::SqrtD).unwrap().len(), 8);
        assert_eq!(boundary_of(&lab, 0, Connectivity::One).unwrap().len(), 4);
        assert!(matches!(boundary_of(&lab, 1, Connectivity::One), Err(Error::Lookup(_))));
    }

    #[test]
    fn boundary_clipped_at_box_edge() {
        let mut eps = vec![1; 9];
        eps[0] = 0;
        let f = field(2, 3, eps);
        let lab = label_clusters(&f, Color::White, Connectivity::SqrtD);
        let b = boundary_of(&lab, 0, Connectivity::SqrtD).unwrap();
        assert_eq!(b, vec![1, 3, 4]);
        assert!(b.len() < 8);
    }

    #[test]
    fn spanning_cases() {
        let bx = BoxSpec::new(2, 6, &[0, 0]).unwrap();
        let black = PotentialField::uniform(bx, 0.5, 1).unwrap();
        let lab = label_clusters(&black, Color::Black, Connectivity::One);
        assert_eq!(spanning_cluster(&lab), Some(0));
        let white = PotentialField::uniform(bx, 0.5, 0).unwrap();
        let lab = label_clusters(&white, Color::Black, Connectivity::One);
        assert_eq!(spanning_cluster(&lab), None);
    }

    #[test]
    fn sizes_sum_to_color_count() {
        let bx = BoxSpec::new(2, 40, &[0, 0]).unwrap();
        let f = sample_potential(bx, 0.55, 12).unwrap();
        for conn in [Connectivity::One, Connectivity::SqrtD] {
            let b = label_clusters(&f, Color::Black, conn);
            assert_eq!(b.sizes().iter().sum::<usize>(), f.black_count());
            let w = label_clusters(&f, Color::White, conn);
            assert_eq!(w.sizes().iter().sum::<usize>(), bx.len() - f.black_count());
        }
    }

    #[test]
    fn flood_matches_labeling() {
        let bx = BoxSpec::centered(2, 30).unwrap();
        let f = sample_potential(bx, 0.45, 5).unwrap();
        let lab = label_clusters(&f, Color::White, Connectivity::SqrtD);
        let o = bx.index_of(&Site::origin(2)).unwrap();
        let r = flood_cluster(&bx, o, Connectivity::SqrtD, |i| f.at(i) == 0);
        match lab.label(o) {
            Some(id) => {
                assert_eq!(r.size, lab.sizes()[id]);
                assert_eq!(r.faces, lab.faces(id).unwrap());
            }
            None => assert_eq!(r.size, 0),
        }
    }

    #[test]
    fn csv_report() {
        let f = field(1, 4, vec![1, 1, 0, 1]);
        let lab = label_clusters(&f, Color::Black, Connectivity::One);
        assert_eq!(lab.to_csv(), "component_id,size,touches_faces\n0,2,1\n1,1,1\n");
    }
}

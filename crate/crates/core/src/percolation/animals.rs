use crate::error::{Error, Result};
use crate::lattice::{neighbor_offsets, Connectivity};

/// Largest animal size the exhaustive enumeration accepts in dimension `d`.
pub fn max_animal_size(d: usize) -> usize {
    match d {
        1 | 2 => 10,
        3 => 5,
        _ => 0,
    }
}

/// Counts `nu_s`, `s = 1..=s_max`, of `sqrt(d)`-connected site sets of
/// cardinality `s` that contain the origin.
///
/// Redelmeier's untried-set recursion without the half-space restriction:
/// each connected set containing the root is produced exactly once.
pub fn enumerate_animals(d: usize, s_max: usize) -> Result<Vec<u64>> {
    let cap = max_animal_size(d);
    if s_max == 0 || s_max > cap {
        return Err(Error::Capacity(format!(
            "animal enumeration supports 1 <= s_max <= {cap} in d={d}, got {s_max}"
        )));
    }
    // Window [-s_max, s_max]^d holds every animal through the origin.
    let side = 2 * s_max + 1;
    let cells = side.pow(d as u32);
    let strides: Vec<isize> = (0..d).map(|k| side.pow((d - 1 - k) as u32) as isize).collect();
    let offsets: Vec<isize> = neighbor_offsets(d, Connectivity::SqrtD)
        .iter()
        .map(|v| (0..d).map(|k| v[k] as isize * strides[k]).sum())
        .collect();
    let root = (cells / 2) as isize;

    let mut seen = vec![false; cells];
    seen[root as usize] = true;
    let mut levels: Vec<Vec<isize>> = vec![Vec::new(); s_max];
    levels[0].push(root);
    let mut counts = vec![0u64; s_max];
    extend(0, &mut levels, &mut seen, &offsets, &mut counts);
    Ok(counts)
}

fn extend(depth: usize, levels: &mut [Vec<isize>], seen: &mut [bool], offsets: &[isize], counts: &mut [u64]) {
    let s_max = counts.len();
    loop {
        let Some(cell) = levels[depth].pop() else { break };
        counts[depth] += 1;
        if depth + 1 == s_max {
            continue;
        }
        let (lo, hi) = levels.split_at_mut(depth + 1);
        let next = &mut hi[0];
        next.clear();
        next.extend_from_slice(&lo[depth]);
        let first_new = next.len();
        for &off in offsets {
            let nb = (cell + off) as usize;
            if !seen[nb] {
                seen[nb] = true;
                next.push(nb as isize);
            }
        }
        let added: Vec<isize> = next[first_new..].to_vec();
        extend(depth + 1, levels, seen, offsets, counts);
        for a in added {
            seen[a as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        for d in 1..=3 {
            let nu = enumerate_animals(d, 3).unwrap();
            assert_eq!(nu[0], 1);
            assert_eq!(nu[1], 3u64.pow(d as u32) - 1);
        }
        assert_eq!(enumerate_animals(1, 6).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(enumerate_animals(2, 3).unwrap()[2], 60);
    }

    #[test]
    fn capacity() {
        assert!(matches!(enumerate_animals(2, 11), Err(Error::Capacity(_))));
        assert!(matches!(enumerate_animals(3, 6), Err(Error::Capacity(_))));
        assert!(matches!(enumerate_animals(2, 0), Err(Error::Capacity(_))));
    }
}

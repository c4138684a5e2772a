use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::BoxSpec;

/// How couplings leaving a domain are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" | "d" => Ok(Self::Dirichlet),
            "neumann" | "n" => Ok(Self::Neumann),
            _ => Err(Error::Input(format!("unknown boundary condition {s:?}"))),
        }
    }
}

/// Non-empty subset of the sites of a box. Matrix rows follow box index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainMask {
    bx: BoxSpec,
    member: Vec<bool>,
    count: usize,
}

impl DomainMask {
    pub fn new(bx: BoxSpec, member: Vec<bool>) -> Result<Self> {
        if member.len() != bx.len() {
            return Err(Error::Shape(format!("mask of {} entries for box of {}", member.len(), bx.len())));
        }
        let count = member.iter().filter(|&&m| m).count();
        if count == 0 {
            return Err(Error::Domain("empty domain".into()));
        }
        Ok(DomainMask { bx, member, count })
    }

    pub fn full(bx: BoxSpec) -> Self {
        let n = bx.len();
        DomainMask { bx, member: vec![true; n], count: n }
    }

    pub fn from_indices(bx: BoxSpec, indices: &[usize]) -> Result<Self> {
        let mut member = vec![false; bx.len()];
        for &i in indices {
            *member
                .get_mut(i)
                .ok_or_else(|| Error::Shape(format!("site index {i} outside box")))? = true;
        }
        Self::new(bx, member)
    }

    pub fn box_spec(&self) -> &BoxSpec {
        &self.bx
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        self.member[idx]
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn member(&self) -> &[bool] {
        &self.member
    }

    /// Box indices of the members, increasing.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&i| self.member[i]).collect()
    }

    /// Map from box index to matrix row, `usize::MAX` for non-members.
    pub fn row_map(&self) -> Vec<usize> {
        let mut next = 0;
        self.member
            .iter()
            .map(|&m| {
                if m {
                    next += 1;
                    next - 1
                } else {
                    usize::MAX
                }
            })
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.count == self.member.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks() {
        let bx = BoxSpec::new(1, 4, &[0]).unwrap();
        let m = DomainMask::from_indices(bx, &[3, 1]).unwrap();
        assert_eq!(m.count(), 2);
        assert_eq!(m.indices(), vec![1, 3]);
        assert_eq!(m.row_map(), vec![usize::MAX, 0, usize::MAX, 1]);
        assert!(DomainMask::from_indices(bx, &[]).is_err());
        assert!(DomainMask::from_indices(bx, &[4]).is_err());
        assert!(DomainMask::full(bx).is_full());
        assert_eq!("Neumann".parse::<BoundaryCondition>().unwrap(), BoundaryCondition::Neumann);
    }
}

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::MAX_DIM;
use crate::operator::BoundaryCondition;
use crate::spectral::Convention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Tail,
    Chernoff,
    Animals,
    Clearings,
    Bracketing,
    EigScaling,
    Threshold,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Tail => "tail",
            Self::Chernoff => "chernoff",
            Self::Animals => "animals",
            Self::Clearings => "clearings",
            Self::Bracketing => "bracketing",
            Self::EigScaling => "eig_scaling",
            Self::Threshold => "threshold",
        }
    }
}

/// Fully resolved parameters of one experiment. Fields a kind does not use
/// are carried along unchanged so that the echo in the report is complete.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub d: usize,
    #[serde(rename = "L")]
    pub side: usize,
    pub p: f64,
    pub h: f64,
    pub trials: usize,
    pub base_seed: u64,
    /// Largest cluster or animal size tabulated.
    pub s_max: usize,
    /// Block edge for coarse-graining and clearings.
    pub l_block: usize,
    /// Layer base: layer `l` spans radii `a^{(l-1)^d} .. a^{l^d}`.
    pub a: u64,
    /// Number of clearing layers examined.
    pub l_max: usize,
    /// Amplitude of the borderline well.
    pub c: f64,
    pub c_grid: Vec<f64>,
    #[serde(rename = "L_grid")]
    pub side_grid: Vec<usize>,
    pub p_star: f64,
    /// Block sizes (site counts) for the large-deviation experiment.
    pub m_grid: Vec<usize>,
    /// Absolute zero-band half-width; default relative to the matrix norm.
    pub tol: Option<f64>,
    pub convention: Convention,
    pub clamp_w: bool,
    /// Condition on the box edge (and, for bracketing, the reference).
    pub bc: BoundaryCondition,
    /// Replace the sampled field by an all-white one.
    pub inject_white: bool,
    /// Worker threads; 0 lets the pool decide. Does not affect results.
    #[serde(default, skip_serializing)]
    pub workers: usize,
}

impl ExperimentConfig {
    /// Defaults for `kind`, reproducing the reference runs.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let mut c = ExperimentConfig {
            kind,
            d: 2,
            side: 64,
            p: 0.95,
            h: 1.0,
            trials: 100_000,
            base_seed: 42,
            s_max: 30,
            l_block: 2,
            a: 4,
            l_max: 5,
            c: 5.0,
            c_grid: vec![0.01, 100.0],
            side_grid: (8..=16).map(|k| 1usize << k).collect(),
            p_star: 0.25,
            m_grid: vec![16, 64, 256],
            tol: None,
            convention: Convention::Strict,
            clamp_w: false,
            bc: BoundaryCondition::Neumann,
            inject_white: false,
            workers: 0,
        };
        match kind {
            ExperimentKind::Tail => {}
            ExperimentKind::Chernoff => c.p = 0.5,
            ExperimentKind::Animals => c.s_max = 6,
            ExperimentKind::Clearings => {
                c.d = 1;
                c.p = 0.5;
                c.trials = 1000;
            }
            ExperimentKind::Bracketing => {
                c.d = 1;
                c.side = 60;
                c.p = 0.5;
                c.trials = 100;
            }
            ExperimentKind::EigScaling => {
                c.p = 0.9;
                c.trials = 200;
                c.l_block = 1;
                c.p_star = 0.5;
            }
            ExperimentKind::Threshold => {
                c.d = 1;
                c.p = 0.5;
                c.base_seed = 9;
                c.trials = 1;
            }
        }
        c
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    /// Range checks for the fields `kind` uses. Parameter errors map to
    /// [`Error::Config`], size overflows to [`Error::Capacity`].
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(1..=MAX_DIM).contains(&self.d) {
            return bad(format!("d={} must lie in 1..={MAX_DIM}", self.d));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return bad(format!("p={} must lie in (0, 1)", self.p));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad(format!("h={} must be positive and finite", self.h));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return bad(format!("tol={t} must be positive"));
            }
        }
        if self.side == 0 {
            return bad("L must be at least 1".into());
        }
        let sites = |side: usize| -> Result<()> {
            side.checked_pow(self.d as u32)
                .filter(|&n| n <= crate::lattice::MAX_SITES)
                .map(|_| ())
                .ok_or_else(|| Error::Capacity(format!("box of side {side} in d={} exceeds the site budget", self.d)))
        };
        // natural-ordering envelope of the box operator is about side^(2d-1)
        let operator = |side: usize| -> Result<()> {
            sites(side)?;
            let n = side.pow(self.d as u32);
            let envelope = n.saturating_mul(side.pow(self.d as u32 - 1));
            if n > crate::spectral::MAX_ORDER || envelope > crate::spectral::MAX_ENVELOPE {
                return Err(Error::Capacity(format!(
                    "operator on a box of side {side} in d={} exceeds the memory budget",
                    self.d
                )));
            }
            Ok(())
        };
        match self.kind {
            ExperimentKind::Tail => {
                sites(self.side)?;
                if self.s_max == 0 {
                    return bad("s_max must be at least 1".into());
                }
            }
            ExperimentKind::Chernoff => {
                if !(self.p_star > 0.0 && self.p_star < self.p) {
                    return bad(format!("p_star={} must lie in (0, p={})", self.p_star, self.p));
                }
                if self.m_grid.is_empty() {
                    return bad("m_grid must not be empty".into());
                }
                for &m in &self.m_grid {
                    block_edge(m, self.d).ok_or_else(|| {
                        Error::Config(format!("m={m} is not a positive {}-th power", self.d))
                    })?;
                    sites(block_edge(m, self.d).unwrap_or(0))?;
                }
            }
            ExperimentKind::Animals => {
                if self.s_max == 0 {
                    return bad("s_max must be at least 1".into());
                }
            }
            ExperimentKind::Clearings => {
                if self.l_block == 0 || self.l_max == 0 {
                    return bad("l_block and l_max must be at least 1".into());
                }
                if self.a < 2 {
                    return bad(format!("a={} must be at least 2", self.a));
                }
                let ad = (self.a as f64).powi(self.d as i32);
                if ad * self.q() <= 1.0 {
                    return bad(format!(
                        "hypothesis a^d q > 1 fails: a^d q = {} with a={}, d={}, q={}",
                        ad * self.q(),
                        self.a,
                        self.d,
                        self.q()
                    ));
                }
                let r = crate::bounds::layer_radii(self.a, self.l_max, self.d)?.1;
                let side = r
                    .checked_mul(2)
                    .and_then(|s| s.checked_add(self.l_block as u64 * 2 + 1))
                    .and_then(|s| usize::try_from(s).ok())
                    .ok_or_else(|| Error::Capacity(format!("layer radius {r} overflows")))?;
                sites(side)?;
            }
            ExperimentKind::Bracketing => {
                operator(self.side)?;
                if !(self.c >= 0.0 && self.c.is_finite()) {
                    return bad(format!("c={} must be nonnegative", self.c));
                }
            }
            ExperimentKind::EigScaling => {
                if self.l_block == 0 {
                    return bad("l_block must be at least 1".into());
                }
                if !(self.p_star > 0.0 && self.p_star < self.p) {
                    return bad(format!("p_star={} must lie in (0, p={})", self.p_star, self.p));
                }
            }
            ExperimentKind::Threshold => {
                if self.c_grid.is_empty() || self.side_grid.is_empty() {
                    return bad("c_grid and L_grid must not be empty".into());
                }
                if let Some(c) = self.c_grid.iter().find(|c| !(**c >= 0.0 && c.is_finite())) {
                    return bad(format!("c={c} must be nonnegative"));
                }
                if self.side_grid.windows(2).any(|w| w[0] >= w[1]) || self.side_grid[0] == 0 {
                    return bad("L_grid must be positive and strictly increasing".into());
                }
                for &s in &self.side_grid {
                    operator(s)?;
                }
            }
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Edge `l` with `l^d = m`.
pub(crate) fn block_edge(m: usize, d: usize) -> Option<usize> {
    if m == 0 {
        return None;
    }
    let guess = (m as f64).powf(1.0 / d as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&l| l.checked_pow(d as u32) == Some(m))
}

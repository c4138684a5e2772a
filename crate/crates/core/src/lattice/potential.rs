use std::fmt::Write as _;

use serde::Serialize;

use super::geometry::{BoxSpec, Site};
use crate::error::{Error, Result};

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stateless 64-bit hash of `(seed, n)`.
#[inline]
pub fn site_hash(seed: u64, site: &Site) -> u64 {
    let mut h = mix64(seed.wrapping_add(GAMMA));
    for &c in site.coords() {
        h = mix64(h ^ (c as u64).wrapping_add(GAMMA));
    }
    h
}

/// Per-trial seed: a counter-based derivation, independent of execution order.
#[inline]
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(base ^ mix64(index.wrapping_add(GAMMA)))
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("probability p={p} must lie in (0, 1)")))
    }
}

/// Evaluates `eps_n` on demand for any site; the same `(seed, n, p)` always
/// gives the same value.
#[derive(Debug, Clone, Copy)]
pub struct BernoulliSampler {
    seed: u64,
    p: f64,
    threshold: u64,
}

impl BernoulliSampler {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        check_probability(p)?;
        // p < 1 in f64 means p <= 1 - 2^-53, so the product stays below 2^64.
        let threshold = (p * 18_446_744_073_709_551_616.0) as u64;
        Ok(BernoulliSampler { seed, p, threshold })
    }

    #[inline]
    pub fn eps(&self, site: &Site) -> u8 {
        (site_hash(self.seed, site) < self.threshold) as u8
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// One realization of the Bernoulli field on a finite box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialField {
    #[serde(rename = "box")]
    bx: BoxSpec,
    p: f64,
    seed: u64,
    eps: Vec<u8>,
}

/// Samples `eps_n` for every site of the box.
pub fn sample_potential(bx: BoxSpec, p: f64, seed: u64) -> Result<PotentialField> {
    let sampler = BernoulliSampler::new(p, seed)?;
    let eps = (0..bx.len()).map(|i| sampler.eps(&bx.site_at(i))).collect();
    Ok(PotentialField { bx, p, seed, eps })
}

impl PotentialField {
    /// Field with explicitly given values; used for injected configurations.
    pub fn from_values(bx: BoxSpec, p: f64, seed: u64, eps: Vec<u8>) -> Result<Self> {
        check_probability(p)?;
        if eps.len() != bx.len() {
            return Err(Error::Shape(format!(
                "{} values for a box of {} sites",
                eps.len(),
                bx.len()
            )));
        }
        if eps.iter().any(|&e| e > 1) {
            return Err(Error::Input("field values must be 0 or 1".into()));
        }
        Ok(PotentialField { bx, p, seed, eps })
    }

    pub fn uniform(bx: BoxSpec, p: f64, value: u8) -> Result<Self> {
        Self::from_values(bx, p, 0, vec![value; bx.len()])
    }

    pub fn box_spec(&self) -> &BoxSpec {
        &self.bx
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn values(&self) -> &[u8] {
        &self.eps
    }

    #[inline]
    pub fn at(&self, idx: usize) -> u8 {
        self.eps[idx]
    }

    pub fn get(&self, site: &Site) -> Option<u8> {
        self.bx.index_of(site).map(|i| self.eps[i])
    }

    pub fn black_count(&self) -> usize {
        self.eps.iter().map(|&e| e as usize).sum()
    }

    /// Copy with `eps` forced to `value` on the given site indices.
    pub fn with_overrides(&self, indices: impl IntoIterator<Item = usize>, value: u8) -> Self {
        let mut out = self.clone();
        for i in indices {
            out.eps[i] = value;
        }
        out
    }

    /// Plain-text dump: a `d L origin p seed` header (origin comma-separated),
    /// then one line of `L` digits per row, first axis slowest.
    pub fn to_dump(&self) -> String {
        let origin: Vec<String> = self.bx.origin().iter().map(|c| c.to_string()).collect();
        let mut out = format!(
            "{} {} {} {} {}\n",
            self.bx.dim(),
            self.bx.side(),
            origin.join(","),
            self.p,
            self.seed
        );
        for row in self.eps.chunks(self.bx.side()) {
            for &e in row {
                out.push(if e == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Input("empty dump".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(Error::Input(format!("bad dump header {header:?}")));
        }
        let bad = |what: &str| Error::Input(format!("bad {what} in dump header"));
        let d: usize = parts[0].parse().map_err(|_| bad("d"))?;
        let side: usize = parts[1].parse().map_err(|_| bad("L"))?;
        let origin: Vec<i64> = parts[2]
            .split(',')
            .map(|c| c.parse().map_err(|_| bad("origin")))
            .collect::<Result<_>>()?;
        let p: f64 = parts[3].parse().map_err(|_| bad("p"))?;
        let seed: u64 = parts[4].parse().map_err(|_| bad("seed"))?;
        let bx = BoxSpec::new(d, side, &origin)?;
        let mut eps = Vec::with_capacity(bx.len());
        for line in lines {
            for ch in line.trim_end().chars() {
                match ch {
                    '0' => eps.push(0),
                    '1' => eps.push(1),
                    other => return Err(Error::Input(format!("unexpected {other:?} in dump"))),
                }
            }
        }
        Self::from_values(bx, p, seed, eps)
    }

    /// Human readable summary used in logs.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "d={} L={} p={} seed={} black={}",
            self.bx.dim(),
            self.bx.side(),
            self.p,
            self.seed,
            self.black_count()
        );
        s
    }
}

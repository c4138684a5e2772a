use serde::{Deserialize, Serialize};

use super::geometry::{BoxSpec, Site};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationKind {
    Zero,
    /// `w(x) = c / (ln^{2/d}(2 + |x|) ln(1/q))`.
    Borderline { c: f64 },
    /// Constant value on every site.
    Constant { value: f64 },
    /// Values indexed by the sites of a box; zero outside it.
    Table { #[serde(rename = "box")] bx: BoxSpec, values: Vec<f64> },
}

/// The non-random well `w >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub kind: PerturbationKind,
    pub q_param: f64,
    pub d: usize,
}

impl PerturbationSpec {
    pub fn zero(d: usize) -> Self {
        PerturbationSpec { kind: PerturbationKind::Zero, q_param: 0.5, d }
    }

    /// The borderline family; `c = 0` degenerates to [`PerturbationKind::Zero`].
    pub fn borderline(c: f64, q: f64, d: usize) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("amplitude c={c} must be positive")));
        }
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("q={q} must lie in (0, 1)")));
        }
        if !(1..=3).contains(&d) {
            return Err(Error::Domain(format!("dimension d={d} outside 1..=3")));
        }
        let kind = if c == 0.0 {
            PerturbationKind::Zero
        } else {
            PerturbationKind::Borderline { c }
        };
        Ok(PerturbationSpec { kind, q_param: q, d })
    }

    pub fn constant(value: f64, d: usize) -> Result<Self> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::Domain(format!("w={value} must be finite and >= 0")));
        }
        Ok(PerturbationSpec { kind: PerturbationKind::Constant { value }, q_param: 0.5, d })
    }

    pub fn table(bx: BoxSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != bx.len() {
            return Err(Error::Shape(format!(
                "{} table values for a box of {} sites",
                values.len(),
                bx.len()
            )));
        }
        if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::Domain("table values must be finite and >= 0".into()));
        }
        let d = bx.dim();
        Ok(PerturbationSpec { kind: PerturbationKind::Table { bx, values }, q_param: 0.5, d })
    }

    pub fn eval(&self, site: &Site) -> f64 {
        match &self.kind {
            PerturbationKind::Zero => 0.0,
            PerturbationKind::Borderline { c } => {
                let r = site.norm();
                let log = (2.0 + r).ln();
                c / (log.powf(2.0 / self.d as f64) * (1.0 / self.q_param).ln())
            }
            PerturbationKind::Constant { value } => *value,
            PerturbationKind::Table { bx, values } => bx.index_of(site).map_or(0.0, |i| values[i]),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, PerturbationKind::Zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_everywhere() {
        let w = PerturbationSpec::zero(2);
        assert_eq!(w.eval(&Site::new(&[3, -4])), 0.0);
    }

    #[test]
    fn borderline_values() {
        let w = PerturbationSpec::borderline(1.0, 0.5, 1).unwrap();
        assert!((w.eval(&Site::new(&[0])) - 3.0027).abs() < 1e-4);
        let w = PerturbationSpec::borderline(1.0, 0.1, 2).unwrap();
        assert!((w.eval(&Site::new(&[6, 8])) - 0.17477).abs() < 1e-5);
    }

    #[test]
    fn borderline_strictly_decreasing_to_zero() {
        for d in 1..=3 {
            let w = PerturbationSpec::borderline(2.0, 0.3, d).unwrap();
            let mut prev = f64::INFINITY;
            for r in (0..=1_000_000i64).step_by(997) {
                let mut c = [0i64; 3];
                c[0] = r;
                let v = w.eval(&Site::new(&c[..d]));
                assert!(v > 0.0 && v < prev);
                prev = v;
            }
            assert!(prev < w.eval(&Site::origin(d)) / 5.0);
        }
    }

    #[test]
    fn validation() {
        assert!(PerturbationSpec::borderline(-1.0, 0.5, 1).is_err());
        assert!(PerturbationSpec::borderline(1.0, 1.0, 1).is_err());
        assert!(PerturbationSpec::borderline(0.0, 0.5, 1).unwrap().is_zero());
        let b = BoxSpec::new(1, 2, &[0]).unwrap();
        assert!(PerturbationSpec::table(b, vec![1.0, -1.0]).is_err());
        let t = PerturbationSpec::table(b, vec![1.0, 2.0]).unwrap();
        assert_eq!(t.eval(&Site::new(&[1])), 2.0);
        assert_eq!(t.eval(&Site::new(&[5])), 0.0);
    }
}

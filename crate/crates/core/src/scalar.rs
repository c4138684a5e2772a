//! Floating point abstraction shared by the operator, spectral and bounds code.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the linear algebra is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; used for model parameters.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable")
    }

    /// Conversion from a count.
    #[inline]
    fn of_usize(x: usize) -> Self {
        Self::from_usize(x).expect("usize is representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

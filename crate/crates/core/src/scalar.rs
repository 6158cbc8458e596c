//! Floating-point scalar abstraction for the numeric kernels.

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static {
    /// Shorthand for `T::from_f64(x).unwrap()`.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    fn half() -> Self {
        Self::c(0.5)
    }

    fn two() -> Self {
        Self::c(2.0)
    }

    fn pi() -> Self {
        Self::c(std::f64::consts::PI)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

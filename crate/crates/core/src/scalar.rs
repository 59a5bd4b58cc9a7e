use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the samplers are written against: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Largest admissible `|‖x‖² − 1|` for a point certified to lie on the unit sphere.
    const NORM_TOLERANCE: f64;

    /// Converts a uniform variate from `[0, 1)` while keeping the result below one.
    ///
    /// Narrowing `f64 → f32` rounds to nearest and may otherwise land on `1.0`.
    fn from_unit(u: f64) -> Self;

    /// Lossless-or-nearest conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const NORM_TOLERANCE: f64 = 1e-12;

    #[inline]
    fn from_unit(u: f64) -> Self {
        u
    }
}

impl Real for f32 {
    const NORM_TOLERANCE: f64 = 1e-5;

    #[inline]
    fn from_unit(u: f64) -> Self {
        let x = u as f32;
        if x >= 1.0 {
            1.0 - f32::EPSILON / 2.0
        } else {
            x
        }
    }
}

#[inline]
pub(crate) fn norm_squared<T: Real>(coords: &[T]) -> T {
    coords.iter().fold(T::zero(), |acc, &x| acc + x * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f32_narrowing_stays_half_open() {
        let just_below = 1.0 - f64::EPSILON;
        let x = f32::from_unit(just_below);
        assert!(x < 1.0);
        assert_eq!(x, 1.0 - f32::EPSILON / 2.0);
        assert_eq!(f32::from_unit(0.5), 0.5);
    }

    #[test]
    fn f64_is_identity() {
        assert_eq!(f64::from_unit(0.25), 0.25);
        assert_eq!(<f64 as Real>::lit(0.1), 0.1);
    }
}

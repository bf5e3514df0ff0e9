//! Numeric abstraction shared by the model, evaluator and solvers.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A real-valued time/objective scalar.
///
/// Implemented for `f32`, `f64` and exact rationals (`Ratio<i64>`,
/// `Ratio<i128>`). Rationals make every objective comparison exact, which is
/// handy for small oracle instances; the floats are what the CLI uses.
pub trait Scalar:
    Num + Copy + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Smallest objective decrease a local-search move must achieve to be
    /// accepted. Zero for exact types.
    fn improvement_epsilon() -> Self;

    /// Lossy conversion used for reporting and rendering.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_minutes(minutes: i64) -> Self {
        Self::from_i64(minutes).expect("minute count representable in scalar type")
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn improvement_epsilon() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn improvement_epsilon() -> Self {
        1e-6
    }
}

impl Scalar for Ratio<i64> {
    fn improvement_epsilon() -> Self {
        Ratio::from_integer(0)
    }
}

impl Scalar for Ratio<i128> {
    fn improvement_epsilon() -> Self {
        Ratio::from_integer(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_epsilon_is_zero() {
        assert_eq!(Ratio::<i64>::improvement_epsilon(), Ratio::from_integer(0));
    }

    #[test]
    fn min_max_helpers() {
        assert_eq!(2.0f64.min_of(1.0), 1.0);
        assert_eq!(2.0f64.max_of(3.0), 3.0);
        assert_eq!(f32::from_minutes(600), 600.0);
    }
}

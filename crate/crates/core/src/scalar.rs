use std::fmt::Debug;

use num_traits::{Num, Signed, ToPrimitive};

/// Scalar used for the decoder's real-valued working state.
///
/// Only field operations, `abs` and ordering are needed, so besides `f32` and
/// `f64` this also covers `Ratio<i64>` for exact decoding of short codes.
pub trait Real: Num + Signed + PartialOrd + Copy + Debug + ToPrimitive + Send + Sync + 'static {
    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half(self) -> Self {
        self / Self::two()
    }

    /// `+1` or `-1` as a scalar.
    #[inline]
    fn from_sign(s: i8) -> Self {
        if s < 0 {
            -Self::one()
        } else {
            Self::one()
        }
    }

    /// `2^e` built by doubling, so it is exact for rationals too.
    fn pow2(e: u32) -> Self {
        let mut x = Self::one();
        for _ in 0..e {
            x = x + x;
        }
        x
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Num + Signed + PartialOrd + Copy + Debug + ToPrimitive + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn helpers_are_exact() {
        assert_eq!(f64::pow2(10), 1024.0);
        assert_eq!(Rational64::pow2(3), Rational64::from_integer(8));
        assert_eq!(Rational64::from_integer(3).half(), Rational64::new(3, 2));
        assert_eq!(f32::from_sign(-1), -1.0);
    }
}

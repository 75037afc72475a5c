//! Code parameters of RM(m, r).

use std::fmt;

use crate::error::{Result, RmError};

/// Largest supported number of variables. Paths are stored as `u64` bit
/// strings and `n = 2^m` must fit in `usize`.
pub const MAX_M: u32 = 62;

/// Parameters `(m, r)` of the Reed-Muller code RM(m, r) and the derived
/// length `n = 2^m`, dimension `k = sum_{i<=r} C(m, i)` and distance
/// `d = 2^(m-r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    m: u32,
    r: u32,
}

impl CodeParams {
    pub fn new(m: u32, r: u32) -> Result<Self> {
        if m == 0 {
            return Err(RmError::InvalidParams { m, r, reason: "m must be at least 1" });
        }
        if m > MAX_M {
            return Err(RmError::InvalidParams { m, r, reason: "m too large" });
        }
        if r > m {
            return Err(RmError::InvalidParams { m, r, reason: "order r must not exceed m" });
        }
        Ok(Self { m, r })
    }

    /// Same as [`CodeParams::new`] but accepts signed input, rejecting
    /// negative values.
    pub fn from_signed(m: i64, r: i64) -> Result<Self> {
        let clamp = |x: i64| u32::try_from(x.max(0)).unwrap_or(u32::MAX);
        if m < 0 || r < 0 {
            return Err(RmError::InvalidParams {
                m: clamp(m),
                r: clamp(r),
                reason: "m and r must be non-negative",
            });
        }
        Self::new(clamp(m), clamp(r))
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn n(&self) -> usize {
        1usize << self.m
    }

    #[inline]
    pub fn k(&self) -> usize {
        dimension(self.m, self.r)
    }

    #[inline]
    pub fn d(&self) -> usize {
        1usize << (self.m - self.r)
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    /// `min(r, m - r)`, the factor in every linear complexity bound.
    pub fn min_order(&self) -> u32 {
        self.r.min(self.m - self.r)
    }

    /// The v-code RM(m-1, r-1) of the Plotkin split, if the split exists.
    pub fn v_code(&self) -> Option<CodeParams> {
        if self.r == 0 || self.r == self.m {
            None
        } else {
            Some(CodeParams { m: self.m - 1, r: self.r - 1 })
        }
    }

    /// The u-code RM(m-1, r) of the Plotkin split, if the split exists.
    pub fn u_code(&self) -> Option<CodeParams> {
        if self.r == 0 || self.r == self.m {
            None
        } else {
            Some(CodeParams { m: self.m - 1, r: self.r })
        }
    }

    /// Bound on ±1 multiplications of the recursive encoder: `n min(r, m-r)`.
    pub fn encoder_bound(&self) -> u64 {
        self.n() as u64 * self.min_order() as u64
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RM({}, {}) [n={}, k={}, d={}]", self.m, self.r, self.n(), self.k(), self.d())
    }
}

pub fn binomial(n: u32, k: u32) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc as usize
}

/// Dimension of RM(m, r).
pub fn dimension(m: u32, r: u32) -> usize {
    (0..=r.min(m)).map(|i| binomial(m, i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_parameters() {
        let c = CodeParams::new(7, 2).unwrap();
        assert_eq!((c.n(), c.k(), c.d()), (128, 29, 32));
        let c = CodeParams::new(8, 3).unwrap();
        assert_eq!((c.n(), c.k(), c.d()), (256, 93, 32));
        let c = CodeParams::new(8, 2).unwrap();
        assert_eq!(c.k(), 37);
    }

    #[test]
    fn repetition_and_full_space() {
        for m in 1..12 {
            let rep = CodeParams::new(m, 0).unwrap();
            assert_eq!(rep.k(), 1);
            assert_eq!(rep.d(), 1 << m);
            let full = CodeParams::new(m, m).unwrap();
            assert_eq!(full.k(), full.n());
            assert_eq!(full.d(), 1);
        }
    }

    #[test]
    fn dimension_counts_heavy_strings() {
        for m in 1..=10u32 {
            for r in 0..=m {
                let heavy = (0u32..1 << m).filter(|x| x.count_ones() >= m - r).count();
                assert_eq!(CodeParams::new(m, r).unwrap().k(), heavy);
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(CodeParams::new(2, 3).is_err());
        assert!(CodeParams::new(0, 0).is_err());
        assert!(CodeParams::from_signed(4, -1).is_err());
        assert!(CodeParams::from_signed(-4, 1).is_err());
        assert!(CodeParams::new(MAX_M + 1, 1).is_err());
    }

    #[test]
    fn plotkin_children() {
        let c = CodeParams::new(5, 2).unwrap();
        assert_eq!(c.v_code(), Some(CodeParams::new(4, 1).unwrap()));
        assert_eq!(c.u_code(), Some(CodeParams::new(4, 2).unwrap()));
        assert_eq!(c.k(), c.v_code().unwrap().k() + c.u_code().unwrap().k());
        assert!(CodeParams::new(3, 0).unwrap().v_code().is_none());
    }
}

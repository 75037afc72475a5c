use super::{RealBlock, URule, VRule};
use crate::encode::Codeword;
use crate::error::{Result, RmError};
use crate::scalar::Real;

/// Estimate of `v` from the two halves. Returns the block and the counted
/// operations (`len` for `Product`, `3 len` for `MinSum`).
pub fn recalc_v<T: Real>(y1: &RealBlock<T>, y2: &RealBlock<T>, rule: VRule) -> Result<(RealBlock<T>, u64)> {
    same_len(y1.len(), y2.len())?;
    let mut out = vec![T::zero(); y1.len()];
    let ops = v_into(rule, y1.values(), y2.values(), &mut out);
    Ok((RealBlock(out), ops))
}

/// Estimate of `u` given the decoded `v_hat`. Returns the block and the
/// counted operations (`3 len` scaled, `2 len` unscaled).
pub fn recalc_u<T: Real>(
    y1: &RealBlock<T>,
    y2: &RealBlock<T>,
    v_hat: &Codeword,
    rule: URule,
) -> Result<(RealBlock<T>, u64)> {
    same_len(y1.len(), y2.len())?;
    same_len(y1.len(), v_hat.len())?;
    let mut out = vec![T::zero(); y1.len()];
    let ops = u_into(rule, y1.values(), y2.values(), v_hat.symbols(), &mut out);
    Ok((RealBlock(out), ops))
}

fn same_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(RmError::LengthMismatch { expected: a, got: b })
    }
}

#[inline]
pub(crate) fn v_into<T: Real>(rule: VRule, a: &[T], b: &[T], out: &mut [T]) -> u64 {
    match rule {
        VRule::Product => {
            for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
                *o = x * y;
            }
            a.len() as u64
        }
        VRule::MinSum => {
            for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
                let (ax, ay) = (x.abs(), y.abs());
                let mag = if ax < ay { ax } else { ay };
                *o = if (x < T::zero()) != (y < T::zero()) { -mag } else { mag };
            }
            3 * a.len() as u64
        }
    }
}

#[inline]
pub(crate) fn u_into<T: Real>(rule: URule, a: &[T], b: &[T], v: &[i8], out: &mut [T]) -> u64 {
    for (((o, &x), &y), &s) in out.iter_mut().zip(a).zip(b).zip(v) {
        *o = if s < 0 { x - y } else { x + y };
    }
    match rule {
        URule::Scaled => {
            for o in out.iter_mut() {
                *o = o.half();
            }
            3 * a.len() as u64
        }
        URule::Unscaled => 2 * a.len() as u64,
    }
}

/// `u` estimate with every `v` decision taken as `+1`.
#[inline]
pub(crate) fn u_genie_into<T: Real>(rule: URule, a: &[T], b: &[T], out: &mut [T]) {
    for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
        *o = match rule {
            URule::Scaled => (x + y).half(),
            URule::Unscaled => x + y,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rb(v: &[f64]) -> RealBlock<f64> {
        RealBlock::new(v.to_vec()).unwrap()
    }

    #[test]
    fn product_rule() {
        let (out, ops) = recalc_v(&rb(&[1.0, -1.0]), &rb(&[-1.0, -1.0]), VRule::Product).unwrap();
        assert_eq!(out.values(), &[-1.0, 1.0]);
        assert_eq!(ops, 2);
        let (out, _) = recalc_v(&rb(&[0.5, 0.2]), &rb(&[0.4, -1.0]), VRule::Product).unwrap();
        assert!((out.values()[0] - 0.2).abs() < 1e-15 && (out.values()[1] + 0.2).abs() < 1e-15);
    }

    #[test]
    fn min_sum_rule() {
        let (out, ops) = recalc_v(&rb(&[0.5, 0.2]), &rb(&[0.4, -1.0]), VRule::MinSum).unwrap();
        assert_eq!(out.values(), &[0.4, -0.2]);
        assert_eq!(ops, 6);
    }

    #[test]
    fn scaled_u_rule() {
        let v = Codeword::from_symbols(vec![-1, 1]).unwrap();
        let (out, ops) = recalc_u(&rb(&[1.0, -1.0]), &rb(&[-1.0, -1.0]), &v, URule::Scaled).unwrap();
        assert_eq!(out.values(), &[1.0, -1.0]);
        assert_eq!(ops, 6);
        let y = rb(&[0.3, -0.7, 0.1, 0.9]);
        let (out, _) = recalc_u(&y, &y, &Codeword::ones(4), URule::Scaled).unwrap();
        assert_eq!(out, y);
    }

    #[test]
    fn unscaled_is_twice_scaled() {
        let a = rb(&[0.3, -0.7, 0.1, 0.9]);
        let b = rb(&[-0.25, 0.5, 0.75, -1.0]);
        let v = Codeword::from_symbols(vec![1, -1, -1, 1]).unwrap();
        let (s, _) = recalc_u(&a, &b, &v, URule::Scaled).unwrap();
        let (u, ops) = recalc_u(&a, &b, &v, URule::Unscaled).unwrap();
        assert_eq!(ops, 8);
        for (x, y) in s.values().iter().zip(u.values()) {
            assert_eq!(2.0 * x, *y);
        }
    }

    #[test]
    fn length_mismatch() {
        let a = rb(&[1.0, 1.0]);
        let b = rb(&[1.0]);
        assert!(recalc_v(&a, &b, VRule::Product).is_err());
        assert!(recalc_u(&a, &a, &Codeword::ones(4), URule::Scaled).is_err());
    }
}

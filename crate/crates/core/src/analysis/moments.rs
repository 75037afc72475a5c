use num_traits::Float;

use crate::error::{Result, RmError};
use crate::path::BitString;
use crate::scalar::Real;

/// Mean and variance of the normalized statistic `z(ξ) = y(ξ)/e(ξ)` after
/// the prefix `ξ`, on a binary symmetric channel with residual `ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathMoments<F> {
    pub prefix: BitString,
    /// `e(ξ) = ε^{2^{s - w(ξ)}}`.
    pub mean: F,
    /// `μ(ξ) = E (z(ξ) - 1)^2`.
    pub variance: F,
    pub weight: u32,
}

/// One step of the variance recursion: `(μ+1)^2 - 1` on a left step, `μ/2`
/// on a right step.
pub fn mu_step<T: Real>(mu: T, bit: u8) -> Result<T> {
    if mu < T::zero() {
        return Err(RmError::NegativeVariance(mu.to_f64_lossy()));
    }
    Ok(if bit == 0 { (mu + T::one()) * (mu + T::one()) - T::one() } else { mu.half() })
}

/// One step of the mean recursion: squared on a left step, kept on a right step.
pub fn mean_step<T: Real>(e: T, bit: u8) -> T {
    if bit == 0 {
        e * e
    } else {
        e
    }
}

/// Mean and variance by plain iteration from `e = ε`, `μ0 = ε^{-2} - 1`.
/// Works for any scalar, e.g. exact rationals.
pub fn iterate_moments<T: Real>(prefix: BitString, epsilon: T) -> Result<(T, T)> {
    check_epsilon(epsilon.to_f64_lossy())?;
    let mut e = epsilon;
    let mut mu = T::one() / (epsilon * epsilon) - T::one();
    for b in prefix.iter() {
        e = mean_step(e, b);
        mu = mu_step(mu, b)?;
    }
    Ok((e, mu))
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(RmError::InvalidResidual(eps))
    }
}

/// Moments along `prefix`. The mean uses the closed form; the variance is
/// iterated in the log domain `ln(1 + μ)` so that it does not overflow
/// before the final value does.
pub fn path_moments<F: Float>(prefix: BitString, epsilon: F) -> Result<PathMoments<F>> {
    check_epsilon(epsilon.to_f64().unwrap_or(f64::NAN))?;
    let ln_eps = epsilon.ln();
    let two = F::one() + F::one();
    let zeros = prefix.zeros() as i32;
    let mean = (ln_eps * two.powi(zeros)).exp();

    let ln2 = two.ln();
    let mut lv = -two * ln_eps;
    for b in prefix.iter() {
        lv = if b == 0 {
            lv * two
        } else if lv < F::one() {
            (lv.exp_m1() / two).ln_1p()
        } else {
            lv - ln2 + (-lv).exp().ln_1p()
        };
    }
    Ok(PathMoments { prefix, mean, variance: lv.exp_m1(), weight: prefix.weight() })
}

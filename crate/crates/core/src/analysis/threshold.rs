use std::f64::consts::LN_2;

use super::predict::{predict_errors, Prediction};
use super::qfunc::{q, q_inv};
use crate::code::CodeParams;
use crate::decoder::Algorithm;
use crate::error::{Result, RmError};

/// Default constant for the `Phi` and optimal-code residuals; must exceed `ln 4`.
pub const DEFAULT_C: f64 = 1.4;

const LN_4: f64 = 2.0 * LN_2;

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(RmError::InvalidResidual(eps))
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > LN_4 {
        Ok(())
    } else {
        Err(RmError::ConstantTooSmall(c))
    }
}

/// `ε^{-2^t} - 1`.
fn inv_pow_m1(eps: f64, t: u32) -> f64 {
    (-(2f64.powi(t as i32)) * eps.ln()).exp_m1()
}

/// `2^{-g} ((A + 1)^2 - 1)`.
fn node_form(a: f64, g: u32) -> f64 {
    a * (a + 2.0) * 2f64.powi(-(g as i32))
}

/// Variance of the weakest unit.
///
/// `Psi`: `2^{-(m-r)} (ε^{-2^{r+1}} - 1)`. `Phi`: `2^{-(m-r)} (ε^{-2^r} - 1)`.
pub fn mu_star(params: CodeParams, eps: f64, algorithm: Algorithm) -> Result<f64> {
    check_eps(eps)?;
    let (m, r) = (params.m(), params.r());
    let t = match algorithm {
        Algorithm::Psi => r + 1,
        Algorithm::Phi if r == 0 => return Err(RmError::PhiNeedsOrderOne),
        Algorithm::Phi => r,
    };
    let x = -(2f64.powi(t as i32)) * eps.ln();
    let shift = (m - r) as f64 * LN_2;
    // expm1(x) 2^{-(m-r)}, kept finite when only the intermediate overflows.
    Ok(if x > 700.0 { (x - shift + (-(-x).exp()).ln_1p()).exp() } else { x.exp_m1() / shift.exp() })
}

/// Variance of the leftmost path through node `g`.
///
/// `Psi`, node `{g, 0}`: `2^{-g}((A+1)^2 - 1)`, `A = (ε^{-2^r} - 1) 2^{r+g-m}`.
/// `Phi`, node `{g+1, 1}`: the same form with `A = (ε^{-2^{r-1}} - 1) 2^{r+g-m}`.
pub fn mu_star_g(params: CodeParams, eps: f64, g: u32, algorithm: Algorithm) -> Result<f64> {
    check_eps(eps)?;
    let (m, r) = (params.m(), params.r());
    let lo = if r == 0 { m } else { 1 };
    if g < lo || g > m - r {
        return Err(RmError::NodeOutOfRange { g, lo, hi: m - r });
    }
    let scale = 2f64.powi(r as i32 + g as i32 - m as i32);
    let a = match algorithm {
        Algorithm::Psi if r == 0 => return Ok(inv_pow_m1(eps, 1) * 2f64.powi(-(m as i32))),
        Algorithm::Psi => inv_pow_m1(eps, r) * scale,
        Algorithm::Phi if r < 2 => {
            return Err(RmError::InvalidParams { m, r, reason: "node variant needs r >= 2" })
        }
        Algorithm::Phi => inv_pow_m1(eps, r - 1) * scale,
    };
    Ok(node_form(a, g))
}

/// Large-`m` approximation of `μ(ξ*^g)` at `ε = ε_r`, in the two regimes
/// `g > (m-r)/2 + ln m` (value `2^{g-m+r}/(2r ln m)`) and
/// `g < (m-r)/2 - ln m` (value `2^{-(m-r-2)/2} (2r ln m)^{-1/2}`). `None`
/// between the regimes or when the residual is undefined.
pub fn mu_star_g_asymptote(params: CodeParams, g: u32) -> Option<f64> {
    let (m, r) = (params.m() as f64, params.r() as f64);
    if params.r() == 0 || params.m() < 2 {
        return None;
    }
    let g = g as f64;
    let l = 2.0 * r * m.ln();
    if g > (m - r) / 2.0 + m.ln() {
        Some(2f64.powf(g - m + r) / l)
    } else if g < (m - r) / 2.0 - m.ln() {
        Some(2f64.powf(-(m - r - 2.0) / 2.0) / l.sqrt())
    } else {
        None
    }
}

/// `Psi` residual `((2r ln m)/d)^{1/2^{r+1}}`. Needs `r >= 1` and `m >= 2`.
pub fn epsilon_psi(params: CodeParams) -> Result<f64> {
    let (m, r) = (params.m(), params.r());
    if r == 0 || m < 2 {
        return Err(RmError::ResidualUndefined { m, r });
    }
    let base = 2.0 * r as f64 * (m as f64).ln() / params.d() as f64;
    Ok(base.powf(2f64.powi(-(r as i32 + 1))))
}

/// `Phi` residual `(cm/d)^{1/2^r}`, `c > ln 4`. Needs `r >= 1`.
pub fn epsilon_phi(params: CodeParams, c: f64) -> Result<f64> {
    check_c(c)?;
    let (m, r) = (params.m(), params.r());
    if r == 0 {
        return Err(RmError::ResidualUndefined { m, r });
    }
    Ok((c * m as f64 / params.d() as f64).powf(2f64.powi(-(r as i32))))
}

/// Residual sufficient for optimal codes of the same rate, `sqrt(cR)`.
pub fn epsilon_opt(params: CodeParams, c: f64) -> Result<f64> {
    check_c(c)?;
    Ok((c * params.rate()).sqrt())
}

/// Fixed-order form of [`epsilon_opt`]: `(c m^r)^{1/2} n^{-1/2} (r!)^{-1/2}`.
pub fn epsilon_opt_order(params: CodeParams, c: f64) -> Result<f64> {
    check_c(c)?;
    let (m, r) = (params.m() as f64, params.r());
    Ok((c * m.powi(r as i32) / (params.n() as f64 * factorial(r))).sqrt())
}

/// Majority-decoding residual `(cm/d)^{1/2^{r+1}}`, comparison curve only.
pub fn epsilon_majority(params: CodeParams, c: f64) -> f64 {
    (c * params.m() as f64 / params.d() as f64).powf(2f64.powi(-(params.r() as i32 + 1)))
}

/// ML-decoding residual `m^{r/2} n^{-1/2} (c (2^r - 1)/r!)^{1/2}`,
/// comparison curve only.
pub fn epsilon_ml(params: CodeParams, c: f64) -> f64 {
    let (m, r) = (params.m() as f64, params.r());
    m.powf(r as f64 / 2.0) / (params.n() as f64).sqrt() * (c * (2f64.powi(r as i32) - 1.0) / factorial(r)).sqrt()
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// Residual `1 - 2p` of a crossover probability.
pub fn residual(p: f64) -> f64 {
    1.0 - 2.0 * p
}

/// Crossover probability `(1 - ε)/2` of a residual.
pub fn crossover(eps: f64) -> f64 {
    (1.0 - eps) / 2.0
}

/// Residual of the hard-decision image of AWGN noise `σ`: `1 - 2Q(1/σ)`.
pub fn awgn_residual(sigma: f64) -> f64 {
    1.0 - 2.0 * q(1.0 / sigma)
}

/// Inverse of [`awgn_residual`].
pub fn awgn_sigma(eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if eps == 1.0 {
        return Ok(0.0);
    }
    Ok(1.0 / q_inv(crossover(eps)))
}

/// `10 log10(1/(2Rσ^2))`; `None` for a noiseless channel.
pub fn snr_db(params: CodeParams, sigma: f64) -> Option<f64> {
    (sigma > 0.0).then(|| 10.0 * (1.0 / (2.0 * params.rate() * sigma * sigma)).log10())
}

/// Smallest node size for which the Gaussian approximation is used.
pub fn gaussian_gate(params: CodeParams) -> u32 {
    (params.m() as f64).sqrt().ceil() as u32
}

/// Residuals, weakest-path variances and error predictions for one code at
/// one residual `epsilon`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub params: CodeParams,
    pub c: f64,
    pub epsilon: f64,
    pub epsilon_psi: Option<f64>,
    pub epsilon_phi: Option<f64>,
    pub epsilon_opt: f64,
    pub mu_star: f64,
    /// `(g, μ(ξ*^g))` for every repetition node.
    pub mu_star_g: Vec<(u32, f64)>,
    pub phi_mu_star: Option<f64>,
    pub psi: Prediction,
    pub phi: Option<Prediction>,
}

impl ThresholdReport {
    /// Residual formulas are asymptotic; on short codes they can reach or
    /// exceed 1, which is reported rather than clamped.
    pub fn out_of_range_residuals(&self) -> Vec<(&'static str, f64)> {
        [("epsilon_psi", self.epsilon_psi), ("epsilon_phi", self.epsilon_phi), ("epsilon_opt", Some(self.epsilon_opt))]
            .into_iter()
            .filter_map(|(name, v)| v.filter(|&v| !(v > 0.0 && v < 1.0)).map(|v| (name, v)))
            .collect()
    }
}

pub fn threshold_report(params: CodeParams, epsilon: f64, c: f64) -> Result<ThresholdReport> {
    check_eps(epsilon)?;
    check_c(c)?;
    let (m, r) = (params.m(), params.r());
    let lo = if r == 0 { m } else { 1 };
    let mu_star_g = (lo..=m - r)
        .map(|g| mu_star_g(params, epsilon, g, Algorithm::Psi).map(|v| (g, v)))
        .collect::<Result<_>>()?;
    Ok(ThresholdReport {
        params,
        c,
        epsilon,
        epsilon_psi: epsilon_psi(params).ok(),
        epsilon_phi: epsilon_phi(params, c).ok(),
        epsilon_opt: epsilon_opt(params, c)?,
        mu_star: mu_star(params, epsilon, Algorithm::Psi)?,
        mu_star_g,
        phi_mu_star: (r >= 1).then(|| mu_star(params, epsilon, Algorithm::Phi)).transpose()?,
        psi: predict_errors(params, epsilon, Algorithm::Psi)?,
        phi: (r >= 1).then(|| predict_errors(params, epsilon, Algorithm::Phi)).transpose()?,
    })
}

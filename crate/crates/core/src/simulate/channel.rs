use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use crate::analysis::{q, q_inv};
use crate::decoder::RealBlock;
use crate::encode::Codeword;
use crate::error::{Result, RmError};

/// Binary channel acting on ±1 symbols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelModel {
    /// Binary symmetric channel with crossover `p`.
    Bsc { p: f64 },
    /// Hard decisions on AWGN with deviation `sigma`: a BSC with crossover `Q(1/σ)`.
    AwgnHard { sigma: f64 },
}

impl ChannelModel {
    pub fn bsc(p: f64) -> Result<Self> {
        if (0.0..0.5).contains(&p) {
            Ok(ChannelModel::Bsc { p })
        } else {
            Err(RmError::InvalidChannel(format!("crossover {p} outside [0, 1/2)")))
        }
    }

    pub fn awgn(sigma: f64) -> Result<Self> {
        if sigma > 0.0 && sigma.is_finite() {
            Ok(ChannelModel::AwgnHard { sigma })
        } else {
            Err(RmError::InvalidChannel(format!("noise deviation {sigma} must be positive")))
        }
    }

    /// BSC with residual `ε = 1 - 2p`.
    pub fn from_residual(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps <= 1.0 {
            Self::bsc((1.0 - eps) / 2.0)
        } else {
            Err(RmError::InvalidResidual(eps))
        }
    }

    pub fn crossover(&self) -> f64 {
        match *self {
            ChannelModel::Bsc { p } => p,
            ChannelModel::AwgnHard { sigma } => q(1.0 / sigma),
        }
    }

    pub fn residual(&self) -> f64 {
        1.0 - 2.0 * self.crossover()
    }

    /// AWGN deviation whose hard-decision image has this crossover; `None`
    /// for a noiseless channel.
    pub fn sigma(&self) -> Option<f64> {
        match *self {
            ChannelModel::Bsc { p } if p == 0.0 => None,
            ChannelModel::Bsc { p } => Some(1.0 / q_inv(p)),
            ChannelModel::AwgnHard { sigma } => Some(sigma),
        }
    }
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelModel::Bsc { p } => write!(f, "bsc:{p}"),
            ChannelModel::AwgnHard { sigma } => write!(f, "awgn:{sigma}"),
        }
    }
}

impl FromStr for ChannelModel {
    type Err = RmError;

    /// `bsc:<p>` or `awgn:<sigma>`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) =
            s.split_once(':').ok_or_else(|| RmError::InvalidChannel(format!("expected kind:value, got {s:?}")))?;
        let v: f64 = value.trim().parse().map_err(|_| RmError::InvalidChannel(format!("bad number {value:?}")))?;
        match kind.trim() {
            "bsc" => Self::bsc(v),
            "awgn" => Self::awgn(v),
            other => Err(RmError::InvalidChannel(format!("unknown channel {other:?}"))),
        }
    }
}

/// Flip threshold on a uniform `u32`.
#[inline]
pub(crate) fn flip_threshold(p: f64) -> u64 {
    (p * 4294967296.0).round() as u64
}

/// Writes the channel output for ±1 symbols `c` into `out`.
#[inline]
pub(crate) fn transmit_into(c: &[i8], threshold: u64, rng: &mut impl RngCore, out: &mut [f64]) {
    if threshold == 0 {
        for (o, &s) in out.iter_mut().zip(c) {
            *o = s as f64;
        }
        return;
    }
    for (o, &s) in out.iter_mut().zip(c) {
        let flip = (rng.next_u32() as u64) < threshold;
        *o = if flip { -(s as f64) } else { s as f64 };
    }
}

/// Sends `c` through `channel`; the output is again ±1.
pub fn apply_channel(c: &Codeword, channel: ChannelModel, rng: &mut impl RngCore) -> RealBlock<f64> {
    let mut out = vec![0.0; c.len()];
    transmit_into(c.symbols(), flip_threshold(channel.crossover()), rng, &mut out);
    RealBlock::new(out).expect("codeword length is a power of two")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn noiseless_channel_is_identity() {
        let c = Codeword::from_symbols(vec![1, -1, -1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let y = apply_channel(&c, ChannelModel::bsc(0.0).unwrap(), &mut rng);
        assert_eq!(y.values(), &[1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn flip_fraction_concentrates() {
        let n = 1 << 20;
        let c = Codeword::ones(n);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = apply_channel(&c, ChannelModel::bsc(0.1).unwrap(), &mut rng);
        let frac = y.values().iter().filter(|&&v| v < 0.0).count() as f64 / n as f64;
        assert!((frac - 0.1).abs() < 0.001);
        let y = apply_channel(&c, ChannelModel::awgn(1.0).unwrap(), &mut rng);
        let frac = y.values().iter().filter(|&&v| v < 0.0).count() as f64 / n as f64;
        assert!((frac - 0.158_655).abs() < 0.0015);
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!("bsc:0.05".parse::<ChannelModel>().unwrap(), ChannelModel::Bsc { p: 0.05 });
        assert_eq!("awgn:1.5".parse::<ChannelModel>().unwrap(), ChannelModel::AwgnHard { sigma: 1.5 });
        for bad in ["bsc:0.5", "bsc:-0.1", "awgn:0", "foo:1", "bsc", "bsc:x"] {
            assert!(bad.parse::<ChannelModel>().is_err(), "{bad}");
        }
        let ch = ChannelModel::bsc(0.1).unwrap();
        assert!((ch.residual() - 0.8).abs() < 1e-15);
        assert!((q(1.0 / ch.sigma().unwrap()) - 0.1).abs() < 1e-12);
        assert_eq!(ChannelModel::bsc(0.0).unwrap().sigma(), None);
    }
}

//! Recursive decoders for RM(m, r).
//!
//! Both decoders follow the Plotkin split of the encoder. A block
//! `y = (y', y'')` is first folded into an estimate of `v` (see
//! [`recalc_v`]), the `v` side is decoded, and its decision is used to fold
//! `y` into an estimate of `u` (see [`recalc_u`]). `Psi` stops at repetition
//! and full-space nodes; `Phi` stops one level earlier at first-order
//! (biorthogonal) nodes, which it decodes exactly with a Hadamard transform.

mod genie;
mod md;
mod recursive;
mod rules;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encode::Codeword;
use crate::error::{Result, RmError};
use crate::scalar::Real;

pub use genie::{genie_decode, unit_of, GenieDecoder, GenieOutput, GenieUnit, UnitKind};
pub use md::{fht, md_biorthogonal, md_full_space, md_repetition, BiorthogonalCodebook, BiorthogonalDecision};
pub use recursive::{decode_phi, decode_psi, op_bound, DecodeResult, RecursiveDecoder, TraceEntry};
pub use rules::{recalc_u, recalc_v};

/// Real-valued block of length `2^s`, the decoder's input and working state.
#[derive(Clone, Debug, PartialEq)]
pub struct RealBlock<T>(Vec<T>);

impl<T: Real> RealBlock<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() || !values.len().is_power_of_two() {
            return Err(RmError::NotPowerOfTwo(values.len()));
        }
        Ok(Self(values))
    }

    pub fn from_codeword(c: &Codeword) -> Self {
        Self(c.to_real())
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<T> {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Psi,
    Phi,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Psi => "psi",
            Algorithm::Phi => "phi",
        }
    }
}

/// Folding rule for the `u` estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum URule {
    /// `(y' + y''·v)/2`, keeps values in `[-1, 1]`.
    #[default]
    Scaled,
    /// `y' + y''·v`.
    Unscaled,
}

/// Folding rule for the `v` estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum VRule {
    /// `y'·y''`.
    #[default]
    Product,
    /// `sign(y'·y'') min(|y'|, |y''|)`.
    MinSum,
}

/// How `sign(0)` is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieRule {
    /// Fair coin from a ChaCha stream seeded with `seed`.
    Random { seed: u64 },
    /// Always `+1`.
    Positive,
}

impl Default for TieRule {
    fn default() -> Self {
        TieRule::Random { seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DecoderOptions {
    pub u_rule: URule,
    pub v_rule: VRule,
    pub tie_rule: TieRule,
    /// Record end values and decisions per path.
    pub trace: bool,
    /// Transmitted codeword for genie-aided runs; must be all-one.
    pub genie: Option<Codeword>,
}

impl DecoderOptions {
    pub fn deterministic() -> Self {
        Self { tie_rule: TieRule::Positive, ..Self::default() }
    }

    pub fn with_u_rule(mut self, u_rule: URule) -> Self {
        self.u_rule = u_rule;
        self
    }

    pub fn with_v_rule(mut self, v_rule: VRule) -> Self {
        self.v_rule = v_rule;
        self
    }

    pub fn with_tie_rule(mut self, tie_rule: TieRule) -> Self {
        self.tie_rule = tie_rule;
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }
}

/// Stream of tie-breaking signs passed explicitly into every decode call.
#[derive(Clone, Debug)]
pub enum TieSource {
    Positive,
    Random(ChaCha8Rng),
}

impl TieSource {
    pub fn from_rule(rule: TieRule) -> Self {
        match rule {
            TieRule::Positive => TieSource::Positive,
            TieRule::Random { seed } => TieSource::Random(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    /// Sign used when the decision statistic is exactly zero.
    #[inline]
    pub fn tie(&mut self) -> i8 {
        match self {
            TieSource::Positive => 1,
            TieSource::Random(rng) => {
                if rng.gen::<bool>() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Reservoir step for the `count`-th of several equal candidates: whether
    /// it replaces the current choice. Never under the deterministic rule,
    /// so the first candidate is kept.
    #[inline]
    pub fn replace(&mut self, count: u64) -> bool {
        match self {
            TieSource::Positive => false,
            TieSource::Random(rng) => rng.gen_range(0..count) == 0,
        }
    }

    #[inline]
    pub fn sign<T: Real>(&mut self, x: T) -> i8 {
        if x > T::zero() {
            1
        } else if x < T::zero() {
            -1
        } else {
            self.tie()
        }
    }
}

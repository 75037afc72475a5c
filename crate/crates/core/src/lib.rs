//! Reed-Muller codes RM(m, r) built by the recursive Plotkin `(u, u+v)`
//! construction, together with the recursive decoders that mirror it.
//!
//! The crate is organised bottom-up:
//!
//! * [`code`], [`path`] and [`encode`] describe the code itself: parameters,
//!   the information-path tree and the recursive encoder.
//! * [`decoder`] holds the recursive decoders (`Psi`, stopping at repetition
//!   and full-space nodes, and `Phi`, stopping at biorthogonal nodes), their
//!   recalculation rules, end-node minimum-distance decoders and a genie-aided
//!   mode used for statistics.
//! * [`analysis`] contains the second-order analysis: mean and variance
//!   recursions along paths, weakest paths, residuals and error predictions.
//! * [`simulate`] runs seeded Monte Carlo experiments over binary channels.
//!
//! Decoders are generic over the [`Real`] scalar so the same code runs on
//! `f32`, `f64` or exact rationals; the aliases below name the common
//! instantiations.

pub mod analysis;
pub mod code;
pub mod decoder;
pub mod encode;
pub mod error;
pub mod path;
pub mod scalar;
pub mod simulate;

pub use code::CodeParams;
pub use decoder::{
    Algorithm, DecodeResult, DecoderOptions, RecursiveDecoder, TieRule, URule, VRule,
};
pub use encode::{encode, Codeword, InfoBlock};
pub use error::{Result, RmError};
pub use path::{enumerate_paths, BitString, Path, PathKind};
pub use scalar::Real;

/// Exact dyadic-friendly rational scalar. Values stay exact as long as the
/// denominators fit in `i64`, which holds for short codes (m up to about 6).
pub type Exact = num_rational::Rational64;

pub type RealBlock64 = decoder::RealBlock<f64>;
pub type RealBlock32 = decoder::RealBlock<f32>;
pub type RealBlockExact = decoder::RealBlock<Exact>;

pub type DecodeResult64 = decoder::DecodeResult<f64>;
pub type DecodeResult32 = decoder::DecodeResult<f32>;
pub type DecodeResultExact = decoder::DecodeResult<Exact>;

pub type Decoder64 = decoder::RecursiveDecoder<f64>;
pub type Decoder32 = decoder::RecursiveDecoder<f32>;
pub type DecoderExact = decoder::RecursiveDecoder<Exact>;

pub type PathMoments64 = analysis::PathMoments<f64>;

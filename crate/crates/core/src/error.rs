use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RmError {
    #[error("invalid code parameters m={m}, r={r}: {reason}")]
    InvalidParams { m: u32, r: u32, reason: &'static str },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("block length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid symbol {0}: expected a bit or a +1/-1 symbol")]
    InvalidSymbol(i64),

    #[error("Phi decoding needs order r >= 1 (use Psi for r = 0)")]
    PhiNeedsOrderOne,

    #[error("genie-aided decoding assumes the all-one codeword was sent")]
    GenieNotAllOnes,

    #[error("residual {0} outside (0, 1]")]
    InvalidResidual(f64),

    #[error("variance {0} is negative")]
    NegativeVariance(f64),

    #[error("node parameter g={g} outside [{lo}, {hi}]")]
    NodeOutOfRange { g: u32, lo: u32, hi: u32 },

    #[error("constant c={0} must exceed ln 4")]
    ConstantTooSmall(f64),

    #[error("residual formula undefined for m={m}, r={r}")]
    ResidualUndefined { m: u32, r: u32 },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, RmError>;

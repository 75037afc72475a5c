//! Information blocks, ±1 codewords and the recursive Plotkin encoder.

use crate::code::{dimension, CodeParams};
use crate::error::{Result, RmError};

/// k information bits in lexicographic path order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct InfoBlock(Vec<u8>);

impl InfoBlock {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(RmError::InvalidSymbol(b as i64));
        }
        Ok(Self(bits))
    }

    pub fn zeros(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bitwise XOR, i.e. addition of messages.
    pub fn xor(&self, other: &InfoBlock) -> Result<InfoBlock> {
        check_len(other.len(), self.len())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect()))
    }

    pub fn hamming_distance(&self, other: &InfoBlock) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }
}

/// A codeword in the ±1 domain: binary `a` is stored as `(-1)^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Codeword(Vec<i8>);

impl Codeword {
    pub fn from_symbols(symbols: Vec<i8>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s != 1 && s != -1) {
            return Err(RmError::InvalidSymbol(s as i64));
        }
        Ok(Self(symbols))
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(1),
                1 => Ok(-1),
                other => Err(RmError::InvalidSymbol(other as i64)),
            })
            .collect::<Result<Vec<i8>>>()
            .map(Self)
    }

    pub(crate) fn from_symbols_unchecked(symbols: Vec<i8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s == 1 || s == -1));
        Self(symbols)
    }

    /// The all-one word `1^n` (binary all-zero).
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn symbols(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.0.iter().map(|&s| u8::from(s < 0)).collect()
    }

    /// Componentwise product, the image of binary addition.
    pub fn product(&self, other: &Codeword) -> Result<Codeword> {
        check_len(other.len(), self.len())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    /// Number of `-1` symbols (Hamming weight of the binary image).
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&s| s == 1)
    }

    /// Real-valued copy, e.g. as a noiseless channel output.
    pub fn to_real<T: crate::Real>(&self) -> Vec<T> {
        self.0.iter().map(|&s| T::from_sign(s)).collect()
    }
}

fn check_len(got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(RmError::LengthMismatch { expected, got })
    }
}

/// Encodes `info` into RM(m, r) by the recursive `(u, u·v)` construction.
pub fn encode(info: &InfoBlock, params: CodeParams) -> Result<Codeword> {
    encode_counted(info, params).map(|(c, _)| c)
}

/// [`encode`] that also returns the number of ±1 multiplications spent,
/// which never exceeds `n min(r, m-r)`.
pub fn encode_counted(info: &InfoBlock, params: CodeParams) -> Result<(Codeword, u64)> {
    check_len(info.len(), params.k())?;
    let mut out = vec![1i8; params.n()];
    let mut ops = 0u64;
    encode_into(info.bits(), params.m(), params.r(), &mut out, &mut ops);
    Ok((Codeword(out), ops))
}

/// Writes the codeword of RM(m, r) for `info` into `out` (length `2^m`).
pub(crate) fn encode_into(info: &[u8], m: u32, r: u32, out: &mut [i8], ops: &mut u64) {
    debug_assert_eq!(out.len(), 1 << m);
    debug_assert_eq!(info.len(), dimension(m, r));
    if r == 0 {
        out.fill(bit_to_symbol(info[0]));
    } else if r == m {
        // Full space: unit generator matrix.
        for (o, &a) in out.iter_mut().zip(info) {
            *o = bit_to_symbol(a);
        }
    } else {
        let kv = dimension(m - 1, r - 1);
        let (u, uv) = out.split_at_mut(out.len() / 2);
        encode_into(&info[..kv], m - 1, r - 1, uv, ops);
        encode_into(&info[kv..], m - 1, r, u, ops);
        for (x, &y) in uv.iter_mut().zip(u.iter()) {
            *x *= y;
        }
        *ops += u.len() as u64;
    }
}

#[inline]
fn bit_to_symbol(a: u8) -> i8 {
    1 - 2 * (a & 1) as i8
}

/// Recovers the information block of a codeword by undoing the Plotkin
/// splits (`u = c'`, `v = c'·c''`). The result is only meaningful when `c`
/// belongs to RM(m, r); see [`is_codeword`].
pub fn unencode(c: &Codeword, params: CodeParams) -> Result<InfoBlock> {
    check_len(c.len(), params.n())?;
    let mut info = Vec::with_capacity(params.k());
    unencode_into(c.symbols(), params.m(), params.r(), &mut info);
    Ok(InfoBlock(info))
}

fn unencode_into(c: &[i8], m: u32, r: u32, info: &mut Vec<u8>) {
    if r == 0 {
        info.push(u8::from(c[0] < 0));
    } else if r == m {
        info.extend(c.iter().map(|&s| u8::from(s < 0)));
    } else {
        let (u, uv) = c.split_at(c.len() / 2);
        let v: Vec<i8> = u.iter().zip(uv).map(|(a, b)| a * b).collect();
        unencode_into(&v, m - 1, r - 1, info);
        unencode_into(u, m - 1, r, info);
    }
}

/// Membership test for RM(m, r).
pub fn is_codeword(c: &Codeword, params: CodeParams) -> bool {
    match unencode(c, params) {
        Ok(info) => encode(&info, params).map(|re| re == *c).unwrap_or(false),
        Err(_) => false,
    }
}

//! Minimum-distance decoders for the end nodes of the recursion.

use super::{RealBlock, TieSource};
use crate::encode::Codeword;
use crate::error::{Result, RmError};
use crate::scalar::Real;

/// Repetition node `{g, 0}`: decision on the whole sum.
///
/// Returns `(decision, end value, ops)` where the end value is the sum
/// divided by the block length.
pub fn md_repetition<T: Real>(z: &[T], ties: &mut TieSource) -> (i8, T, u64) {
    let (d, s, ops) = repetition_sum(z, ties);
    (d, s / T::pow2(z.len().trailing_zeros()), ops)
}

#[inline]
pub(crate) fn repetition_sum<T: Real>(z: &[T], ties: &mut TieSource) -> (i8, T, u64) {
    let sum = z.iter().fold(T::zero(), |acc, &x| acc + x);
    (ties.sign(sum), sum, z.len() as u64)
}

/// Full-space node `{h, h}`: symbol-by-symbol sign.
pub fn md_full_space<T: Real>(z: &[T], ties: &mut TieSource) -> (Codeword, u64) {
    let mut out = vec![1i8; z.len()];
    let ops = full_space_into(z, ties, &mut out);
    (Codeword::from_symbols_unchecked(out), ops)
}

#[inline]
pub(crate) fn full_space_into<T: Real>(z: &[T], ties: &mut TieSource, out: &mut [i8]) -> u64 {
    for (o, &x) in out.iter_mut().zip(z) {
        *o = ties.sign(x);
    }
    z.len() as u64
}

/// In-place Walsh-Hadamard transform: `x[b] <- sum_t (-1)^{popcount(b & t)} x[t]`.
/// Returns the operation count `l log2 l`.
pub fn fht<T: Real>(x: &mut [T]) -> Result<u64> {
    if !x.len().is_power_of_two() {
        return Err(RmError::NotPowerOfTwo(x.len()));
    }
    Ok(fht_unchecked(x))
}

pub(crate) fn fht_unchecked<T: Real>(x: &mut [T]) -> u64 {
    let l = x.len();
    let mut h = 1;
    while h < l {
        for block in x.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        h *= 2;
    }
    (l * l.trailing_zeros() as usize) as u64
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiorthogonalDecision<T> {
    pub codeword: Codeword,
    /// `g + 2` information bits in the encoder's order.
    pub info: Vec<u8>,
    /// 1-based codebook index `s`.
    pub index: usize,
    /// Correlation `(c_s, z)` of the chosen codeword.
    pub correlation: T,
    pub ops: u64,
}

/// Maximum-correlation decoding of the first-order code of length
/// `2^{g+1}` through one Hadamard transform.
///
/// Among distinct codewords with equal correlation the deterministic tie
/// rule keeps the lowest index and the random rule picks one uniformly;
/// when the winning correlation is zero the sign comes from `ties` as well.
pub fn md_biorthogonal<T: Real>(z: &[T], g: u32, ties: &mut TieSource) -> Result<BiorthogonalDecision<T>> {
    let l = 1usize << (g + 1);
    if z.len() != l {
        return Err(RmError::LengthMismatch { expected: l, got: z.len() });
    }
    let mut scratch = z.to_vec();
    let mut cw = vec![1i8; l];
    let mut info = vec![0u8; g as usize + 2];
    let out = biorthogonal_into(z, &mut scratch, ties, &mut cw, &mut info);
    Ok(BiorthogonalDecision {
        codeword: Codeword::from_symbols_unchecked(cw),
        info,
        index: 2 * out.walsh + if out.sign > 0 { 1 } else { 2 },
        correlation: out.correlation,
        ops: out.ops,
    })
}

pub(crate) struct BiorthogonalOut<T> {
    pub walsh: usize,
    pub sign: i8,
    pub correlation: T,
    pub ops: u64,
}

/// `scratch` must hold at least `z.len()` values; it receives the spectrum.
pub(crate) fn biorthogonal_into<T: Real>(
    z: &[T],
    scratch: &mut [T],
    ties: &mut TieSource,
    cw: &mut [i8],
    info: &mut [u8],
) -> BiorthogonalOut<T> {
    let l = z.len();
    let big_m = l.trailing_zeros();
    let w = &mut scratch[..l];
    w.copy_from_slice(z);
    let mut ops = fht_unchecked(w);

    let (best, best_abs) = select_walsh(w, ties);
    ops += l as u64 + (l as u64 - 1) + 1;
    let sign = ties.sign(w[best]);

    for (x, c) in cw.iter_mut().enumerate() {
        let parity = ((x & best).count_ones() & 1) as i8;
        *c = sign * (1 - 2 * parity);
    }
    write_info(best, sign, big_m, info);
    BiorthogonalOut { walsh: best, sign, correlation: best_abs, ops }
}

/// Index of the largest `|W[b]|`. Among equal maxima the first is kept
/// under the deterministic tie rule and a uniform one is drawn otherwise.
#[inline]
pub(crate) fn select_walsh<T: Real>(w: &[T], ties: &mut TieSource) -> (usize, T) {
    let mut best = 0usize;
    let mut best_abs = w[0].abs();
    let mut count = 1u64;
    for (b, &x) in w.iter().enumerate().skip(1) {
        let a = x.abs();
        if a > best_abs {
            best = b;
            best_abs = a;
            count = 1;
        } else if a == best_abs {
            count += 1;
            if ties.replace(count) {
                best = b;
            }
        }
    }
    (best, best_abs)
}

/// Codeword `sign * w_b` of RM(M, 1) corresponds to
/// `[b_1 .. b_{M-1}, a0, a0 ^ b_M]` with `b_1` the most significant bit of `b`.
fn write_info(b: usize, sign: i8, big_m: u32, info: &mut [u8]) {
    let a0 = u8::from(sign < 0);
    for i in 0..big_m as usize - 1 {
        info[i] = ((b >> (big_m as usize - 1 - i)) & 1) as u8;
    }
    info[big_m as usize - 1] = a0;
    info[big_m as usize] = a0 ^ (b & 1) as u8;
}

/// Explicit codebook of the biorthogonal code of length `l = 2^{g+1}`,
/// codewords `c_{2b+1} = w_b`, `c_{2b+2} = -w_b` with
/// `w_b(x) = (-1)^{popcount(b & x)}`. `c_1` is all-one and `c_2 = -c_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BiorthogonalCodebook {
    g: u32,
}

impl BiorthogonalCodebook {
    pub fn new(g: u32) -> Self {
        Self { g }
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// Code length `l`.
    pub fn length(&self) -> usize {
        1 << (self.g + 1)
    }

    /// Number of codewords `2l`.
    pub fn size(&self) -> usize {
        2 * self.length()
    }

    /// Codeword `c_s`, `1 <= s <= 2l`.
    pub fn codeword(&self, s: usize) -> Codeword {
        assert!(s >= 1 && s <= self.size(), "codeword index out of range");
        let b = (s - 1) / 2;
        let sign: i8 = if (s - 1).is_multiple_of(2) { 1 } else { -1 };
        let symbols = (0..self.length())
            .map(|x| sign * (1 - 2 * ((x & b).count_ones() & 1) as i8))
            .collect();
        Codeword::from_symbols_unchecked(symbols)
    }

    /// Positions of the `-1` symbols of `c_s`.
    pub fn support(&self, s: usize) -> Vec<usize> {
        self.codeword(s)
            .symbols()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn correlation<T: Real>(&self, s: usize, z: &RealBlock<T>) -> T {
        self.codeword(s)
            .symbols()
            .iter()
            .zip(z.values())
            .fold(T::zero(), |acc, (&c, &x)| if c < 0 { acc - x } else { acc + x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeParams;
    use crate::encode::{encode, InfoBlock};

    #[test]
    fn repetition_examples() {
        let mut t = TieSource::Positive;
        let (d, e, ops) = md_repetition(&[0.5f64, -0.2, 0.3, 0.1], &mut t);
        assert_eq!(d, 1);
        assert!((e - 0.175).abs() < 1e-15);
        assert_eq!(ops, 4);
        assert_eq!(md_repetition(&[-1.0, -1.0, -1.0, 1.0], &mut t).0, -1);
    }

    #[test]
    fn repetition_tie_is_fair_coin() {
        let mut t = TieSource::from_rule(super::super::TieRule::Random { seed: 7 });
        let n = 20_000;
        let plus = (0..n).filter(|_| md_repetition(&[1.0, -1.0], &mut t).0 > 0).count();
        // 5 sigma for Binomial(n, 1/2).
        assert!((plus as f64 - n as f64 / 2.0).abs() < 5.0 * (n as f64 / 4.0).sqrt());
    }

    #[test]
    fn full_space_examples() {
        let mut t = TieSource::Positive;
        let (c, ops) = md_full_space(&[0.3, -0.2], &mut t);
        assert_eq!(c.symbols(), &[1, -1]);
        assert_eq!(ops, 2);
        let mut r = TieSource::from_rule(super::super::TieRule::Random { seed: 3 });
        let (c, _) = md_full_space(&[0.0f64; 64], &mut r);
        assert!(c.weight() > 10 && c.weight() < 54);
    }

    #[test]
    fn fht_matches_definition() {
        let z: Vec<f64> = (0..16).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect();
        let mut w = z.clone();
        assert_eq!(fht(&mut w).unwrap(), 64);
        for (b, &wb) in w.iter().enumerate() {
            let direct: f64 = z
                .iter()
                .enumerate()
                .map(|(x, &v)| if (x & b).count_ones() % 2 == 1 { -v } else { v })
                .sum();
            assert_eq!(wb, direct);
        }
        assert!(fht(&mut [0.0f64; 3]).is_err());
    }

    #[test]
    fn biorthogonal_examples() {
        let mut t = TieSource::Positive;
        let d = md_biorthogonal(&[1.0, 1.0, 1.0, 1.0], 1, &mut t).unwrap();
        assert_eq!(d.index, 1);
        assert!(d.codeword.is_all_ones());
        let d = md_biorthogonal(&[0.9, 0.8, -0.7, -0.6], 1, &mut t).unwrap();
        assert_eq!(d.codeword.symbols(), &[1, 1, -1, -1]);
        assert!((d.correlation - 3.0f64).abs() < 1e-12);
        // 4 log 4 + 2*4
        assert_eq!(d.ops, 16);
        assert!(md_biorthogonal(&[1.0; 8], 1, &mut t).is_err());
    }

    #[test]
    fn info_bits_reencode_to_codeword() {
        let mut t = TieSource::Positive;
        for g in 0..=4u32 {
            let book = BiorthogonalCodebook::new(g);
            let params = CodeParams::new(g + 1, 1).unwrap();
            for s in 1..=book.size() {
                let c = book.codeword(s);
                let z = c.to_real::<f64>();
                let d = md_biorthogonal(&z, g, &mut t).unwrap();
                assert_eq!(d.index, s);
                assert_eq!(d.codeword, c);
                let re = encode(&InfoBlock::new(d.info.clone()).unwrap(), params).unwrap();
                assert_eq!(re, c, "g={g} s={s}");
            }
        }
    }

    #[test]
    fn codebook_structure() {
        for g in 0..=4u32 {
            let book = BiorthogonalCodebook::new(g);
            let l = book.length();
            assert!(book.codeword(1).is_all_ones());
            assert_eq!(book.codeword(2).weight(), l);
            for s in 3..=book.size() {
                assert_eq!(book.support(s).len(), l / 2);
                for t in 3..=book.size() {
                    let dot: i32 = book
                        .codeword(s)
                        .symbols()
                        .iter()
                        .zip(book.codeword(t).symbols())
                        .map(|(&a, &b)| (a * b) as i32)
                        .sum();
                    let expect = if s == t {
                        l as i32
                    } else if (s - 1) / 2 == (t - 1) / 2 {
                        -(l as i32)
                    } else {
                        0
                    };
                    assert_eq!(dot, expect);
                }
            }
        }
    }
}

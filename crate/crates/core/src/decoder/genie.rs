//! Genie-aided recursion: every `v` decision is replaced by the true value,
//! which for the all-one codeword turns the `u` fold into a plain average.
//! Used to collect per-path statistics conditioned on correct past decisions.

use std::ops::Range;

use super::md::{fht_unchecked, select_walsh};
use super::rules::{u_genie_into, v_into};
use super::{Algorithm, DecoderOptions, RealBlock, TieSource, URule, VRule};
use crate::code::CodeParams;
use crate::error::{Result, RmError};
use crate::path::{BitString, Path, PathKind};
use crate::scalar::Real;

/// End node at which a genie unit is observed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitKind {
    /// Repetition node `{g, 0}`; one path.
    Repetition { g: u32 },
    /// Full-space node `{h, h}`; `2^h` identically distributed symbols.
    Symbol { h: u32 },
    /// First-order node `{g+1, 1}` of `Phi`.
    Biorthogonal { g: u32 },
}

impl UnitKind {
    /// Node size parameter used by the Gaussian validity gate.
    pub fn g(self) -> u32 {
        match self {
            UnitKind::Repetition { g } | UnitKind::Biorthogonal { g } => g,
            UnitKind::Symbol { h } => h,
        }
    }
}

/// Unit observed for `path` and its analysis key.
///
/// Keys: the full path at a repetition node, the node prefix at a
/// full-space node, and `prefix ‖ 1^g` (length `m - 1`) at a biorthogonal
/// node `{g+1, 1}`.
pub fn unit_of(path: &Path, params: CodeParams, algorithm: Algorithm) -> (UnitKind, BitString) {
    let bits = path.bits();
    let (mut len, mut order) = (params.m(), params.r());
    let mut prefix = BitString::EMPTY;
    loop {
        if order == len {
            return (UnitKind::Symbol { h: len }, prefix);
        }
        if algorithm == Algorithm::Phi && order == 1 {
            return (UnitKind::Biorthogonal { g: len - 1 }, prefix.concat(BitString::repeat(1, len - 1)));
        }
        if order == 0 {
            debug_assert!(matches!(path.kind(), PathKind::LeftEnd { .. }));
            return (UnitKind::Repetition { g: len }, bits);
        }
        let b = bits.bit(prefix.len());
        prefix = prefix.push(b);
        len -= 1;
        if b == 0 {
            order -= 1;
        }
    }
}

/// One unit observed in one genie run.
#[derive(Clone, Debug, PartialEq)]
pub struct GenieUnit<T> {
    pub kind: UnitKind,
    pub key: BitString,
    /// Indices into [`GenieOutput::values`]: one normalized sum for
    /// repetition and biorthogonal units, `2^h` symbols for full-space ones.
    pub values: Range<usize>,
    /// Number of wrong decisions among the values (ties resolved by coin).
    pub errors: usize,
    /// Biorthogonal units: smallest support sum over codewords other than
    /// the all-one word, divided by `2^g`. An error needs it to be `<= 0`.
    pub min_support: Option<T>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GenieOutput<T> {
    pub units: Vec<GenieUnit<T>>,
    pub values: Vec<T>,
}

impl<T: Real> GenieOutput<T> {
    pub fn clear(&mut self) {
        self.units.clear();
        self.values.clear();
    }

    pub fn unit_values(&self, unit: &GenieUnit<T>) -> &[T] {
        &self.values[unit.values.clone()]
    }

    pub fn find(&self, key: BitString) -> Option<&GenieUnit<T>> {
        self.units.iter().find(|u| u.key == key)
    }
}

/// Reusable genie-aided decoder, optionally restricted to a set of unit keys
/// (subtrees that lead to no wanted key are skipped).
#[derive(Clone, Debug)]
pub struct GenieDecoder<T> {
    params: CodeParams,
    algorithm: Algorithm,
    u_rule: URule,
    v_rule: VRule,
    keys: Option<Vec<BitString>>,
    work: Vec<T>,
}

impl<T: Real> GenieDecoder<T> {
    pub fn new(
        params: CodeParams,
        algorithm: Algorithm,
        opts: &DecoderOptions,
        keys: Option<Vec<BitString>>,
    ) -> Result<Self> {
        if algorithm == Algorithm::Phi && params.r() == 0 {
            return Err(RmError::PhiNeedsOrderOne);
        }
        if let Some(c) = &opts.genie {
            if c.len() != params.n() || !c.is_all_ones() {
                return Err(RmError::GenieNotAllOnes);
            }
        }
        Ok(Self {
            params,
            algorithm,
            u_rule: opts.u_rule,
            v_rule: opts.v_rule,
            keys,
            work: vec![T::zero(); params.n()],
        })
    }

    pub fn run(&mut self, y: &[T], ties: &mut TieSource, out: &mut GenieOutput<T>) -> Result<()> {
        if y.len() != self.params.n() {
            return Err(RmError::LengthMismatch { expected: self.params.n(), got: y.len() });
        }
        out.clear();
        let mut ctx = Ctx {
            algorithm: self.algorithm,
            u_rule: self.u_rule,
            v_rule: self.v_rule,
            keys: self.keys.as_deref(),
            ties,
            out,
        };
        ctx.rec(y, self.params.m(), self.params.r(), &mut self.work, BitString::EMPTY);
        Ok(())
    }
}

/// One genie-aided run on `y` with ties from `opts.tie_rule`.
pub fn genie_decode<T: Real>(
    y: &RealBlock<T>,
    params: CodeParams,
    algorithm: Algorithm,
    opts: &DecoderOptions,
) -> Result<GenieOutput<T>> {
    let mut dec = GenieDecoder::new(params, algorithm, opts, None)?;
    let mut ties = TieSource::from_rule(opts.tie_rule);
    let mut out = GenieOutput { units: Vec::new(), values: Vec::new() };
    dec.run(y.values(), &mut ties, &mut out)?;
    Ok(out)
}

struct Ctx<'a, T> {
    algorithm: Algorithm,
    u_rule: URule,
    v_rule: VRule,
    keys: Option<&'a [BitString]>,
    ties: &'a mut TieSource,
    out: &'a mut GenieOutput<T>,
}

impl<T: Real> Ctx<'_, T> {
    fn wanted_node(&self, prefix: BitString) -> bool {
        self.keys.is_none_or(|keys| keys.iter().any(|k| prefix.is_prefix_of(k)))
    }

    fn wanted_key(&self, key: BitString) -> bool {
        self.keys.is_none_or(|keys| keys.contains(&key))
    }

    fn push(&mut self, kind: UnitKind, key: BitString, values: &[T], errors: usize, min_support: Option<T>) {
        let start = self.out.values.len();
        self.out.values.extend_from_slice(values);
        self.out.units.push(GenieUnit { kind, key, values: start..self.out.values.len(), errors, min_support });
    }

    fn rec(&mut self, y: &[T], m: u32, r: u32, work: &mut [T], prefix: BitString) {
        if r == m {
            if self.wanted_key(prefix) {
                let errors = y.iter().filter(|&&x| self.ties.sign(x) < 0).count();
                self.push(UnitKind::Symbol { h: m }, prefix, y, errors, None);
            }
            return;
        }
        if r == 0 {
            let key = prefix.concat(BitString::repeat(1, m));
            if self.wanted_key(key) {
                let sum = y.iter().fold(T::zero(), |a, &x| a + x);
                let errors = usize::from(self.ties.sign(sum) < 0);
                self.push(UnitKind::Repetition { g: m }, key, &[sum / T::pow2(m)], errors, None);
            }
            return;
        }
        if r == 1 && self.algorithm == Algorithm::Phi {
            let g = m - 1;
            let key = prefix.concat(BitString::repeat(1, g));
            if self.wanted_key(key) {
                self.biorthogonal(y, g, key, work);
            }
            return;
        }

        let half = y.len() / 2;
        let (y1, y2) = y.split_at(half);
        let (cur, rest) = work.split_at_mut(half);
        let left = prefix.push(0);
        if self.wanted_node(left) {
            v_into(self.v_rule, y1, y2, cur);
            self.rec(cur, m - 1, r - 1, rest, left);
        }
        let right = prefix.push(1);
        if self.wanted_node(right) {
            u_genie_into(self.u_rule, y1, y2, cur);
            self.rec(cur, m - 1, r, rest, right);
        }
    }

    fn biorthogonal(&mut self, y: &[T], g: u32, key: BitString, work: &mut [T]) {
        let l = y.len();
        let w = &mut work[..l];
        w.copy_from_slice(y);
        fht_unchecked(w);
        let rival = w.iter().skip(1).fold(-w[0], |acc, &x| if x.abs() > acc { x.abs() } else { acc });
        let (best, _) = select_walsh(w, self.ties);
        let sign = self.ties.sign(w[best]);
        let errors = usize::from(!(best == 0 && sign > 0));
        let scale = T::pow2(g + 1);
        // Support of c_3 is the odd positions: sum = (W[0] - W[1]) / 2.
        let representative = (w[0] - w[1]) / scale;
        let min_support = (w[0] - rival) / scale;
        self.push(UnitKind::Biorthogonal { g }, key, &[representative], errors, Some(min_support));
    }
}

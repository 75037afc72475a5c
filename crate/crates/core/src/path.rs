//! Information paths through the Plotkin decomposition tree.
//!
//! A path is an m-bit string read from the senior position: `0` is a left
//! step into the v-code RM(m-1, r-1), `1` a right step into the u-code
//! RM(m-1, r). A descent stops at a repetition node {g, 0} (one information
//! bit, the remaining `g` steps are forced to `1`) or at a full-space node
//! {h, h} (2^h information bits, indexed by the free `h`-bit suffix read as
//! an integer). Paths sort lexicographically, which is also the order in
//! which the recursive decoders finalize their bits.

use std::cmp::Ordering;
use std::fmt;

use crate::code::CodeParams;

/// A short binary string, senior bit first. Holds at most 64 bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bits: u64,
    len: u32,
}

impl BitString {
    pub const EMPTY: BitString = BitString { bits: 0, len: 0 };

    /// `bits` holds the string in its low `len` bits, senior bit highest.
    pub fn new(bits: u64, len: u32) -> Self {
        assert!(len <= 64, "bit strings hold at most 64 bits");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Self { bits: bits & mask, len }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        bits.iter().fold(Self::EMPTY, |acc, &b| acc.push(b))
    }

    /// Parses a string over `{0, 1}`.
    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > 64 {
            return None;
        }
        let mut out = Self::EMPTY;
        for ch in s.chars() {
            out = out.push(match ch {
                '0' => 0,
                '1' => 1,
                _ => return None,
            });
        }
        Some(out)
    }

    /// `n` copies of `bit`.
    pub fn repeat(bit: u8, n: u32) -> Self {
        (0..n).fold(Self::EMPTY, |acc, _| acc.push(bit))
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Bit at position `i`, counting from the senior end (0-based).
    #[inline]
    pub fn bit(&self, i: u32) -> u8 {
        debug_assert!(i < self.len);
        ((self.bits >> (self.len - 1 - i)) & 1) as u8
    }

    #[inline]
    #[must_use]
    pub fn push(self, bit: u8) -> Self {
        debug_assert!(self.len < 64);
        Self { bits: (self.bits << 1) | (bit & 1) as u64, len: self.len + 1 }
    }

    #[must_use]
    pub fn concat(self, other: BitString) -> Self {
        debug_assert!(self.len + other.len <= 64);
        if other.len == 0 {
            return self;
        }
        Self { bits: (self.bits << other.len) | other.bits, len: self.len + other.len }
    }

    #[must_use]
    pub fn prefix(&self, len: u32) -> Self {
        assert!(len <= self.len);
        Self { bits: self.bits >> (self.len - len), len }
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len <= other.len && other.prefix(self.len) == *self
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn zeros(&self) -> u32 {
        self.len - self.weight()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }
}

impl Ord for BitString {
    /// Lexicographic order, shorter prefix first.
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        self.prefix(common)
            .bits
            .cmp(&other.prefix(common).bits)
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Where a path terminates in the decomposition tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    /// Passes the repetition node {g, 0}; the last `g` bits are ones.
    LeftEnd { g: u32 },
    /// Reaches the full-space node {h, h}; the last `h` bits are free.
    RightEnd { h: u32 },
}

/// One information path of RM(m, r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    bits: BitString,
    kind: PathKind,
}

impl Path {
    #[inline]
    pub fn bits(&self) -> BitString {
        self.bits
    }

    #[inline]
    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn weight(&self) -> u32 {
        self.bits.weight()
    }

    /// The subpath that ends at this path's end node.
    pub fn end_prefix(&self) -> BitString {
        let tail = match self.kind {
            PathKind::LeftEnd { g } => g,
            PathKind::RightEnd { h } => h,
        };
        self.bits.prefix(self.bits.len() - tail)
    }

    /// The subpath whose recursive output is the decision statistic for this
    /// bit: the full path for left ends (the repetition sum is `g` halving
    /// steps), the end prefix for right ends (each symbol is decided alone).
    pub fn analysis_prefix(&self) -> BitString {
        match self.kind {
            PathKind::LeftEnd { .. } => self.bits,
            PathKind::RightEnd { .. } => self.end_prefix(),
        }
    }

    /// End node as `(length exponent, order)`.
    pub fn end_node(&self) -> (u32, u32) {
        match self.kind {
            PathKind::LeftEnd { g } => (g, 0),
            PathKind::RightEnd { h } => (h, h),
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PathKind::LeftEnd { g } => write!(f, "{} L{{{g},0}}", self.bits),
            PathKind::RightEnd { h } => write!(f, "{} R{{{h},{h}}}", self.bits),
        }
    }
}

/// Classifies an m-bit string by simulating the descent from {m, r}.
/// Returns `None` when the string is not an information path (weight below
/// `m - r`, or a repetition node followed by a zero).
pub fn classify(bits: BitString, params: CodeParams) -> Option<Path> {
    if bits.len() != params.m() {
        return None;
    }
    let (mut len, mut order) = (params.m(), params.r());
    for i in 0..params.m() {
        if order == 0 {
            let rest = bits.value() & ((1u64 << len) - 1);
            return (rest == (1u64 << len) - 1).then_some(Path { bits, kind: PathKind::LeftEnd { g: len } });
        }
        if order == len {
            return Some(Path { bits, kind: PathKind::RightEnd { h: len } });
        }
        len -= 1;
        if bits.bit(i) == 0 {
            order -= 1;
        }
    }
    // Only reachable through a {0, 0} node, which the checks above exclude.
    None
}

/// All k information paths of RM(m, r) in lexicographic order.
pub fn enumerate_paths(params: CodeParams) -> Vec<Path> {
    let mut out = Vec::with_capacity(params.k());
    walk(params.m(), params.r(), BitString::EMPTY, &mut out);
    out
}

fn walk(len: u32, order: u32, prefix: BitString, out: &mut Vec<Path>) {
    if order == 0 {
        out.push(Path { bits: prefix.concat(BitString::repeat(1, len)), kind: PathKind::LeftEnd { g: len } });
    } else if order == len {
        for s in 0..1u64 << len {
            out.push(Path { bits: prefix.concat(BitString::new(s, len)), kind: PathKind::RightEnd { h: len } });
        }
    } else {
        walk(len - 1, order - 1, prefix.push(0), out);
        walk(len - 1, order, prefix.push(1), out);
    }
}

/// Position of `bits` within [`enumerate_paths`], if it is a path.
pub fn path_index(params: CodeParams, bits: BitString) -> Option<usize> {
    classify(bits, params)?;
    let (mut len, mut order) = (params.m(), params.r());
    let mut index = 0usize;
    for i in 0..params.m() {
        if order == 0 {
            return Some(index);
        }
        if order == len {
            return Some(index + (bits.value() & ((1u64 << len) - 1)) as usize);
        }
        len -= 1;
        if bits.bit(i) == 0 {
            order -= 1;
        } else {
            index += crate::code::dimension(len, order - 1);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32, r: u32) -> CodeParams {
        CodeParams::new(m, r).unwrap()
    }

    #[test]
    fn rm_3_1_paths() {
        let paths = enumerate_paths(p(3, 1));
        let shown: Vec<String> = paths.iter().map(|x| x.bits().to_string()).collect();
        assert_eq!(shown, ["011", "101", "110", "111"]);
        let kinds: Vec<PathKind> = paths.iter().map(|x| x.kind()).collect();
        assert_eq!(
            kinds,
            [
                PathKind::LeftEnd { g: 2 },
                PathKind::LeftEnd { g: 1 },
                PathKind::RightEnd { h: 1 },
                PathKind::RightEnd { h: 1 },
            ]
        );
    }

    #[test]
    fn repetition_code_has_single_path() {
        for m in 1..8 {
            let paths = enumerate_paths(p(m, 0));
            assert_eq!(paths.len(), 1);
            assert_eq!(paths[0].bits(), BitString::repeat(1, m));
            assert_eq!(paths[0].kind(), PathKind::LeftEnd { g: m });
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // Oracle: every m-bit string of weight >= m - r, sorted, classified
        // by the descent simulation.
        for m in 1..=10u32 {
            for r in 0..=m {
                let params = p(m, r);
                let brute: Vec<Path> = (0u64..1 << m)
                    .map(|x| BitString::new(x, m))
                    .filter(|b| b.weight() >= m - r)
                    .map(|b| classify(b, params).expect("heavy strings are paths"))
                    .collect();
                let paths = enumerate_paths(params);
                assert_eq!(paths, brute, "m={m} r={r}");
                assert_eq!(paths.len(), params.k());
                for (i, path) in paths.iter().enumerate() {
                    assert_eq!(path_index(params, path.bits()), Some(i));
                    match path.kind() {
                        PathKind::LeftEnd { g } => assert!((1..=m - r).contains(&g) || r == 0),
                        PathKind::RightEnd { h } => assert!((1..=r).contains(&h)),
                    }
                }
            }
        }
    }

    #[test]
    fn light_strings_are_not_paths() {
        let params = p(4, 1);
        assert!(classify(BitString::parse("0011").unwrap(), params).is_none());
        assert!(classify(BitString::parse("0111").unwrap(), params).is_some());
        assert!(classify(BitString::parse("011").unwrap(), params).is_none());
    }

    #[test]
    fn bitstring_order_and_prefixes() {
        let a = BitString::parse("0110").unwrap();
        let b = BitString::parse("011").unwrap();
        assert!(b < a);
        assert!(b.is_prefix_of(&a));
        assert_eq!(a.prefix(2).to_string(), "01");
        assert_eq!(a.zeros(), 2);
        assert_eq!(BitString::parse("1").unwrap().concat(b).to_string(), "1011");
        assert!(BitString::parse("012").is_none());
    }

    #[test]
    fn analysis_prefix_of_right_end() {
        let paths = enumerate_paths(p(3, 1));
        assert_eq!(paths[2].analysis_prefix().to_string(), "11");
        assert_eq!(paths[0].analysis_prefix().to_string(), "011");
        assert_eq!(paths[1].end_prefix().to_string(), "10");
    }
}

use super::md::{biorthogonal_into, full_space_into, repetition_sum};
use super::rules::{u_into, v_into};
use super::{Algorithm, DecoderOptions, RealBlock, TieSource, URule, VRule};
use crate::code::{dimension, CodeParams};
use crate::encode::{Codeword, InfoBlock};
use crate::error::{Result, RmError};
use crate::path::{enumerate_paths, Path};
use crate::scalar::Real;

/// One finalized information bit.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceEntry<T> {
    /// Position in finalization order.
    pub step: usize,
    pub path: Path,
    /// Decision statistic at the end node: the normalized sum at a
    /// repetition node, the symbol at a full-space node, and the winning
    /// correlation divided by the length at a biorthogonal node.
    pub end_value: T,
    pub bit: u8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult<T> {
    pub info: InfoBlock,
    /// Re-encoding of `info`.
    pub codeword: Codeword,
    pub op_count: u64,
    pub trace: Option<Vec<TraceEntry<T>>>,
}

/// Decoder for a fixed code and algorithm. Holds its own scratch buffer, so
/// one instance per thread.
#[derive(Clone, Debug)]
pub struct RecursiveDecoder<T> {
    params: CodeParams,
    algorithm: Algorithm,
    options: DecoderOptions,
    dims: DimTable,
    work: Vec<T>,
    paths: Option<Vec<Path>>,
}

impl<T: Real> RecursiveDecoder<T> {
    pub fn new(params: CodeParams, algorithm: Algorithm, options: DecoderOptions) -> Result<Self> {
        if algorithm == Algorithm::Phi && params.r() == 0 {
            return Err(RmError::PhiNeedsOrderOne);
        }
        let paths = options.trace.then(|| enumerate_paths(params));
        Ok(Self {
            params,
            algorithm,
            options,
            dims: DimTable::new(params.m()),
            work: vec![T::zero(); params.n()],
            paths,
        })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn options(&self) -> &DecoderOptions {
        &self.options
    }

    /// Decodes `y` with a tie stream built from the configured tie rule.
    pub fn decode(&mut self, y: &RealBlock<T>) -> Result<DecodeResult<T>> {
        let mut ties = TieSource::from_rule(self.options.tie_rule);
        self.decode_with(y.values(), &mut ties)
    }

    /// Decodes `y` drawing tie signs from `ties`.
    pub fn decode_with(&mut self, y: &[T], ties: &mut TieSource) -> Result<DecodeResult<T>> {
        let mut info = vec![0u8; self.params.k()];
        let mut cw = vec![1i8; self.params.n()];
        let mut raw = self.options.trace.then(Vec::new);
        let op_count = self.run(y, ties, &mut info, &mut cw, raw.as_mut())?;
        let trace = raw.map(|raw| {
            let paths = self.paths.as_ref().expect("paths are enumerated when tracing");
            raw.into_iter()
                .enumerate()
                .map(|(step, (index, end_value, bit))| TraceEntry { step, path: paths[index], end_value, bit })
                .collect()
        });
        Ok(DecodeResult {
            info: InfoBlock::new(info).expect("decoder writes bits"),
            codeword: Codeword::from_symbols_unchecked(cw),
            op_count,
            trace,
        })
    }

    /// Allocation-free decode into caller buffers; returns the op count.
    pub fn decode_into(&mut self, y: &[T], ties: &mut TieSource, info: &mut [u8], cw: &mut [i8]) -> Result<u64> {
        if info.len() != self.params.k() {
            return Err(RmError::LengthMismatch { expected: self.params.k(), got: info.len() });
        }
        if cw.len() != self.params.n() {
            return Err(RmError::LengthMismatch { expected: self.params.n(), got: cw.len() });
        }
        self.run(y, ties, info, cw, None)
    }

    fn run(
        &mut self,
        y: &[T],
        ties: &mut TieSource,
        info: &mut [u8],
        cw: &mut [i8],
        trace: Option<&mut Vec<(usize, T, u8)>>,
    ) -> Result<u64> {
        if y.len() != self.params.n() {
            return Err(RmError::LengthMismatch { expected: self.params.n(), got: y.len() });
        }
        let mut ctx = Ctx {
            algorithm: self.algorithm,
            u_rule: self.options.u_rule,
            v_rule: self.options.v_rule,
            dims: &self.dims,
            ties,
            ops: 0,
            trace,
        };
        ctx.rec(y, self.params.m(), self.params.r(), &mut self.work, cw, info, 0);
        Ok(ctx.ops)
    }
}

struct Ctx<'a, T> {
    algorithm: Algorithm,
    u_rule: URule,
    v_rule: VRule,
    dims: &'a DimTable,
    ties: &'a mut TieSource,
    ops: u64,
    trace: Option<&'a mut Vec<(usize, T, u8)>>,
}

impl<T: Real> Ctx<'_, T> {
    #[allow(clippy::too_many_arguments)]
    fn rec(&mut self, y: &[T], m: u32, r: u32, work: &mut [T], cw: &mut [i8], info: &mut [u8], offset: usize) {
        let l = y.len();
        if r == m {
            self.ops += full_space_into(y, self.ties, cw);
            for (i, (b, &c)) in info.iter_mut().zip(cw.iter()).enumerate() {
                *b = u8::from(c < 0);
                if let Some(t) = self.trace.as_mut() {
                    t.push((offset + i, y[i], *b));
                }
            }
            return;
        }
        if r == 0 {
            let (d, sum, ops) = repetition_sum(y, self.ties);
            self.ops += ops;
            cw.fill(d);
            info[0] = u8::from(d < 0);
            if let Some(t) = self.trace.as_mut() {
                t.push((offset, sum / T::pow2(m), info[0]));
            }
            return;
        }
        if r == 1 && self.algorithm == Algorithm::Phi {
            let out = biorthogonal_into(y, work, self.ties, cw, info);
            self.ops += out.ops;
            if let Some(t) = self.trace.as_mut() {
                let v = out.correlation / T::pow2(m);
                t.extend(info.iter().enumerate().map(|(i, &b)| (offset + i, v, b)));
            }
            return;
        }

        let half = l / 2;
        let kv = self.dims.get(m - 1, r - 1);
        let (y1, y2) = y.split_at(half);
        let (cur, rest) = work.split_at_mut(half);
        let (cu, cv) = cw.split_at_mut(half);
        let (iv, iu) = info.split_at_mut(kv);

        self.ops += v_into(self.v_rule, y1, y2, cur);
        self.rec(cur, m - 1, r - 1, rest, cv, iv, offset);
        self.ops += u_into(self.u_rule, y1, y2, cv, cur);
        self.rec(cur, m - 1, r, rest, cu, iu, offset + kv);
        for (v, &u) in cv.iter_mut().zip(cu.iter()) {
            *v *= u;
        }
    }
}

/// `dimension(m, r)` for all `m <= max_m`.
#[derive(Clone, Debug)]
pub(crate) struct DimTable {
    stride: usize,
    table: Vec<usize>,
}

impl DimTable {
    pub(crate) fn new(max_m: u32) -> Self {
        let stride = max_m as usize + 1;
        let mut table = vec![0; stride * stride];
        for m in 0..=max_m {
            for r in 0..=m {
                table[m as usize * stride + r as usize] = dimension(m, r);
            }
        }
        Self { stride, table }
    }

    #[inline]
    pub(crate) fn get(&self, m: u32, r: u32) -> usize {
        self.table[m as usize * self.stride + r as usize]
    }
}

/// Upper bound on the counted operations of one decode.
///
/// For the product `v` rule these are the closed-form bounds
/// `4n min(r, m-r) + n` (Psi) and `3n min(r, m-r) + n(m-r) + n` (Phi), with
/// `n min(r, m-r)` less for the unscaled `u` rule. The min-sum rule spends
/// two more operations per `v` symbol, which adds the total length of the
/// internal nodes.
pub fn op_bound(params: CodeParams, algorithm: Algorithm, u_rule: URule, v_rule: VRule) -> u64 {
    let (m, r) = (params.m() as u64, params.r() as u64);
    let n = params.n() as u64;
    let min = r.min(m - r);
    let base = match (algorithm, u_rule) {
        (Algorithm::Psi, URule::Scaled) => 4 * n * min + n,
        (Algorithm::Psi, URule::Unscaled) => 3 * n * min + n,
        (Algorithm::Phi, URule::Scaled) => 3 * n * min + n * (m - r) + n,
        (Algorithm::Phi, URule::Unscaled) => 2 * n * min + n * (m - r) + n,
    };
    match v_rule {
        VRule::Product => base,
        VRule::MinSum => base + internal_length(params.m(), params.r(), algorithm),
    }
}

fn internal_length(m: u32, r: u32, algorithm: Algorithm) -> u64 {
    let leaf = r == m || r == 0 || (r == 1 && algorithm == Algorithm::Phi);
    if leaf {
        0
    } else {
        (1u64 << m) + internal_length(m - 1, r - 1, algorithm) + internal_length(m - 1, r, algorithm)
    }
}

pub fn decode_psi<T: Real>(y: &RealBlock<T>, params: CodeParams, opts: &DecoderOptions) -> Result<DecodeResult<T>> {
    RecursiveDecoder::new(params, Algorithm::Psi, opts.clone())?.decode(y)
}

pub fn decode_phi<T: Real>(y: &RealBlock<T>, params: CodeParams, opts: &DecoderOptions) -> Result<DecodeResult<T>> {
    RecursiveDecoder::new(params, Algorithm::Phi, opts.clone())?.decode(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::{md_biorthogonal, TieRule};
    use crate::encode::encode;
    use crate::Exact;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(m: u32, r: u32) -> CodeParams {
        CodeParams::new(m, r).unwrap()
    }

    fn all_opts() -> Vec<DecoderOptions> {
        let mut v = Vec::new();
        for u in [URule::Scaled, URule::Unscaled] {
            for vr in [VRule::Product, VRule::MinSum] {
                v.push(DecoderOptions::deterministic().with_u_rule(u).with_v_rule(vr));
            }
        }
        v
    }

    #[test]
    fn noiseless_exhaustive_small_codes() {
        for m in 1..=4u32 {
            for r in 0..=m {
                let params = p(m, r);
                for msg in 0u64..1 << params.k() {
                    let info = InfoBlock::new((0..params.k()).map(|i| ((msg >> i) & 1) as u8).collect()).unwrap();
                    let c = encode(&info, params).unwrap();
                    let y = RealBlock::<f64>::from_codeword(&c);
                    for opts in all_opts() {
                        for alg in [Algorithm::Psi, Algorithm::Phi] {
                            if alg == Algorithm::Phi && r == 0 {
                                continue;
                            }
                            let mut dec = RecursiveDecoder::new(params, alg, opts.clone()).unwrap();
                            let res = dec.decode(&y).unwrap();
                            assert_eq!(res.info, info, "{params} {alg:?}");
                            assert_eq!(res.codeword, c);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exact_scalar_agrees_with_float() {
        let params = p(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut de = RecursiveDecoder::<Exact>::new(params, Algorithm::Psi, DecoderOptions::deterministic()).unwrap();
        let mut df = RecursiveDecoder::<f64>::new(params, Algorithm::Psi, DecoderOptions::deterministic()).unwrap();
        for _ in 0..200 {
            let ints: Vec<i64> = (0..32).map(|_| rng.gen_range(-8..=8)).collect();
            let ye = RealBlock::new(ints.iter().map(|&v| Exact::new(v, 8)).collect()).unwrap();
            let yf = RealBlock::new(ints.iter().map(|&v| v as f64 / 8.0).collect()).unwrap();
            assert_eq!(de.decode(&ye).unwrap().info, df.decode(&yf).unwrap().info);
        }
    }

    #[test]
    fn phi_rejects_order_zero() {
        let err = RecursiveDecoder::<f64>::new(p(3, 0), Algorithm::Phi, DecoderOptions::default()).unwrap_err();
        assert_eq!(err, RmError::PhiNeedsOrderOne);
    }

    #[test]
    fn phi_first_order_is_one_biorthogonal_call() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 1..=6u32 {
            let params = p(m, 1);
            let mut dec = RecursiveDecoder::<f64>::new(params, Algorithm::Phi, DecoderOptions::deterministic()).unwrap();
            for _ in 0..50 {
                let y: Vec<f64> = (0..params.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let res = dec.decode(&RealBlock::new(y.clone()).unwrap()).unwrap();
                if m == 1 {
                    continue;
                }
                let d = md_biorthogonal(&y, m - 1, &mut TieSource::Positive).unwrap();
                assert_eq!(res.info.bits(), &d.info[..]);
                assert_eq!(res.codeword, d.codeword);
                assert_eq!(res.op_count, d.ops);
            }
        }
    }

    #[test]
    fn op_counts_within_bounds() {
        for m in 1..=10u32 {
            for r in 0..=m {
                let params = p(m, r);
                let y = vec![0.25f64; params.n()];
                for opts in all_opts() {
                    for alg in [Algorithm::Psi, Algorithm::Phi] {
                        if alg == Algorithm::Phi && r == 0 {
                            continue;
                        }
                        let mut dec = RecursiveDecoder::new(params, alg, opts.clone()).unwrap();
                        let ops = dec.decode(&RealBlock::new(y.clone()).unwrap()).unwrap().op_count;
                        let bound = op_bound(params, alg, opts.u_rule, opts.v_rule);
                        assert!(ops <= bound, "{params} {alg:?} {opts:?}: {ops} > {bound}");
                    }
                }
            }
        }
        assert_eq!(op_bound(p(7, 2), Algorithm::Psi, URule::Scaled, VRule::Product), 1152);
        assert_eq!(op_bound(p(8, 2), Algorithm::Phi, URule::Scaled, VRule::Product), 3328);
    }

    #[test]
    fn trace_is_in_lexicographic_order() {
        let params = p(6, 3);
        let opts = DecoderOptions::default().with_trace(true).with_tie_rule(TieRule::Random { seed: 9 });
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for alg in [Algorithm::Psi, Algorithm::Phi] {
            let mut dec = RecursiveDecoder::<f64>::new(params, alg, opts.clone()).unwrap();
            let y: Vec<f64> = (0..64).map(|_| if rng.gen_bool(0.2) { -1.0 } else { 1.0 }).collect();
            let trace = dec.decode(&RealBlock::new(y).unwrap()).unwrap().trace.unwrap();
            assert_eq!(trace.len(), params.k());
            for w in trace.windows(2) {
                assert!(w[0].path < w[1].path);
                assert_eq!(w[0].step + 1, w[1].step);
            }
        }
    }

    #[test]
    fn noiseless_trace_end_values_are_one() {
        let params = p(5, 2);
        let y = RealBlock::<f64>::from_codeword(&Codeword::ones(32));
        let trace = decode_psi(&y, params, &DecoderOptions::deterministic().with_trace(true))
            .unwrap()
            .trace
            .unwrap();
        assert!(trace.iter().all(|e| e.end_value == 1.0 && e.bit == 0));
    }

    #[test]
    fn length_mismatch_rejected() {
        let y = RealBlock::<f64>::new(vec![1.0; 8]).unwrap();
        assert!(decode_psi(&y, p(4, 1), &DecoderOptions::default()).is_err());
    }
}

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmrec::decoder::{md_biorthogonal, op_bound, TieSource};
use rmrec::encode::is_codeword;
use rmrec::{
    encode, Algorithm, CodeParams, Decoder64, DecoderOptions, InfoBlock, RealBlock64, TieRule, URule, VRule,
};

fn random_info(params: CodeParams, rng: &mut ChaCha8Rng) -> InfoBlock {
    InfoBlock::new((0..params.k()).map(|_| rng.gen::<bool>() as u8).collect()).unwrap()
}

fn bsc_output(c: &rmrec::Codeword, p: f64, rng: &mut ChaCha8Rng) -> RealBlock64 {
    RealBlock64::new(c.symbols().iter().map(|&s| if rng.gen_bool(p) { -(s as f64) } else { s as f64 }).collect())
        .unwrap()
}

fn code() -> impl Strategy<Value = CodeParams> {
    (2u32..=9).prop_flat_map(|m| (Just(m), 1..m)).prop_map(|(m, r)| CodeParams::new(m, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_decoders_invert_noiseless_channel(params in code(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let info = random_info(params, &mut rng);
        let y = RealBlock64::from_codeword(&encode(&info, params).unwrap());
        for alg in [Algorithm::Psi, Algorithm::Phi] {
            let res = Decoder64::new(params, alg, DecoderOptions::default()).unwrap().decode(&y).unwrap();
            prop_assert_eq!(&res.info, &info);
        }
    }

    #[test]
    fn scaling_does_not_change_decisions(params in code(), seed: u64, p in 0.0f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = encode(&random_info(params, &mut rng), params).unwrap();
        let y = bsc_output(&c, p, &mut rng);
        for alg in [Algorithm::Psi, Algorithm::Phi] {
            for v_rule in [VRule::Product, VRule::MinSum] {
                let base = DecoderOptions::default()
                    .with_trace(true)
                    .with_v_rule(v_rule)
                    .with_tie_rule(TieRule::Random { seed });
                let a = Decoder64::new(params, alg, base.clone().with_u_rule(URule::Scaled)).unwrap().decode(&y).unwrap();
                let b = Decoder64::new(params, alg, base.with_u_rule(URule::Unscaled)).unwrap().decode(&y).unwrap();
                prop_assert_eq!(&a.info, &b.info);
                let bits = |r: &rmrec::DecodeResult64| r.trace.as_ref().unwrap().iter().map(|e| e.bit).collect::<Vec<_>>();
                prop_assert_eq!(bits(&a), bits(&b));
            }
        }
    }

    #[test]
    fn output_is_a_codeword_and_reencodes(params in code(), seed: u64, p in 0.0f64..0.4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = encode(&random_info(params, &mut rng), params).unwrap();
        let y = bsc_output(&c, p, &mut rng);
        for alg in [Algorithm::Psi, Algorithm::Phi] {
            let res = Decoder64::new(params, alg, DecoderOptions::default()).unwrap().decode(&y).unwrap();
            prop_assert_eq!(&res.codeword, &encode(&res.info, params).unwrap());
            prop_assert!(is_codeword(&res.codeword, params));
            let (u, uv) = res.codeword.symbols().split_at(params.n() / 2);
            let u = rmrec::Codeword::from_symbols(u.to_vec()).unwrap();
            let v = rmrec::Codeword::from_symbols(uv.to_vec()).unwrap().product(&u).unwrap();
            prop_assert!(is_codeword(&u, params.u_code().unwrap()));
            prop_assert!(is_codeword(&v, params.v_code().unwrap()));
        }
    }

    #[test]
    fn trace_follows_lexicographic_order(params in code(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = bsc_output(&rmrec::Codeword::ones(params.n()), 0.2, &mut rng);
        for alg in [Algorithm::Psi, Algorithm::Phi] {
            let res = Decoder64::new(params, alg, DecoderOptions::default().with_trace(true)).unwrap().decode(&y).unwrap();
            let trace = res.trace.unwrap();
            prop_assert_eq!(trace.len(), params.k());
            prop_assert!(trace.windows(2).all(|w| w[0].path < w[1].path && w[0].step < w[1].step));
        }
    }

    #[test]
    fn op_count_never_exceeds_bound(params in code(), seed: u64, p in 0.0f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = bsc_output(&rmrec::Codeword::ones(params.n()), p, &mut rng);
        for alg in [Algorithm::Psi, Algorithm::Phi] {
            for u_rule in [URule::Scaled, URule::Unscaled] {
                for v_rule in [VRule::Product, VRule::MinSum] {
                    let opts = DecoderOptions::default().with_u_rule(u_rule).with_v_rule(v_rule);
                    let ops = Decoder64::new(params, alg, opts).unwrap().decode(&y).unwrap().op_count;
                    prop_assert!(ops <= op_bound(params, alg, u_rule, v_rule));
                }
            }
        }
    }

    #[test]
    fn scaled_rule_stays_in_unit_interval(a in prop::collection::vec(-1.0f64..=1.0, 8), b in prop::collection::vec(-1.0f64..=1.0, 8), v in prop::collection::vec(prop::bool::ANY, 8)) {
        let v = rmrec::Codeword::from_symbols(v.iter().map(|&s| if s { -1 } else { 1 }).collect()).unwrap();
        let (out, _) = rmrec::decoder::recalc_u(&RealBlock64::new(a.clone()).unwrap(), &RealBlock64::new(b.clone()).unwrap(), &v, URule::Scaled).unwrap();
        prop_assert!(out.values().iter().all(|x| (-1.0..=1.0).contains(x)));
        let (out, _) = rmrec::decoder::recalc_v(&RealBlock64::new(a).unwrap(), &RealBlock64::new(b).unwrap(), VRule::MinSum).unwrap();
        prop_assert!(out.values().iter().all(|x| (-1.0..=1.0).contains(x)));
    }
}

#[test]
fn biorthogonal_decoder_is_exact_md() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for trial in 0..2000 {
        let g = trial % 5 + 1;
        let l = 1usize << (g + 1);
        // Coarse dyadic values make exact ties common.
        let z: Vec<f64> = (0..l).map(|_| rng.gen_range(-4i32..=4) as f64 / 4.0).collect();
        let (best, winners) = common::brute_force_first_order(&z, g as u32);
        let d = md_biorthogonal(&z, g as u32, &mut TieSource::Positive).unwrap();
        assert_eq!(d.correlation, best);
        assert!(winners.iter().any(|w| w.as_slice() == d.codeword.symbols()), "g={g} z={z:?}");
    }
}

#[test]
fn random_ties_pick_every_maximizer() {
    // z = 0 except one position: all 2l codewords tie in pairs of correlation ±1.
    let mut ties = TieSource::from_rule(TieRule::Random { seed: 4 });
    let mut z = vec![0.0f64; 8];
    z[0] = 1.0;
    let (_, winners) = common::brute_force_first_order(&z, 2);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..2000 {
        let d = md_biorthogonal(&z, 2, &mut ties).unwrap();
        assert!(winners.iter().any(|w| w.as_slice() == d.codeword.symbols()));
        seen.insert(d.index);
    }
    assert_eq!(seen.len(), winners.len());
}

#[test]
fn full_space_decoder_maximizes_correlation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let z: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (c, _) = rmrec::decoder::md_full_space(&z, &mut TieSource::Positive);
        let corr = |s: &[i8]| s.iter().zip(&z).map(|(&a, &b)| a as f64 * b).sum::<f64>();
        let best = (0u32..256)
            .map(|m| corr(&(0..8).map(|i| if (m >> i) & 1 == 1 { -1 } else { 1 }).collect::<Vec<i8>>()))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((corr(c.symbols()) - best).abs() < 1e-12);
    }
}

#[test]
fn phi_order_zero_is_rejected() {
    let err = Decoder64::new(CodeParams::new(4, 0).unwrap(), Algorithm::Phi, DecoderOptions::default()).unwrap_err();
    assert_eq!(err, rmrec::RmError::PhiNeedsOrderOne);
}

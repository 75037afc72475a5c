use rand::Rng;
use rayon::prelude::*;

use super::channel::{flip_threshold, transmit_into, ChannelModel};
use super::paths::PathStats;
use super::rng::{stream, Purpose};
use super::stats::{rate_ci, RateEstimate};
use super::chunks;
use crate::code::CodeParams;
use crate::decoder::{Algorithm, DecoderOptions, RecursiveDecoder, TieRule, TieSource};
use crate::encode::encode_into;
use crate::error::{Result, RmError};

/// Which codewords are sent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Transmit {
    /// The all-one codeword, which suffices by symmetry of the channel.
    #[default]
    AllOnes,
    /// A fresh uniformly random codeword per trial.
    RandomCodewords,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub params: CodeParams,
    pub channel: ChannelModel,
    pub algorithm: Algorithm,
    /// Decoder rules. With a random tie rule the per-trial tie stream is
    /// derived from `master_seed`; the seed inside the rule is not used.
    pub options: DecoderOptions,
    pub trials: u64,
    pub master_seed: u64,
    pub transmitted: Transmit,
}

impl SimConfig {
    pub fn new(params: CodeParams, channel: ChannelModel, algorithm: Algorithm) -> Self {
        Self {
            params,
            channel,
            algorithm,
            options: DecoderOptions::default(),
            trials: 100_000,
            master_seed: 0,
            transmitted: Transmit::AllOnes,
        }
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_options(mut self, options: DecoderOptions) -> Self {
        self.options = options;
        self
    }

    pub fn with_transmit(mut self, transmitted: Transmit) -> Self {
        self.transmitted = transmitted;
        self
    }

    pub fn with_channel(mut self, channel: ChannelModel) -> Self {
        self.channel = channel;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(RmError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.algorithm == Algorithm::Phi && self.params.r() == 0 {
            return Err(RmError::PhiNeedsOrderOne);
        }
        Ok(())
    }

    pub(crate) fn ties(&self, trial: u64, purpose: Purpose) -> TieSource {
        match self.options.tie_rule {
            TieRule::Positive => TieSource::Positive,
            TieRule::Random { .. } => TieSource::Random(stream(self.master_seed, trial, purpose)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub config: SimConfig,
    /// Word error rate; absent for genie-only path statistics.
    pub wer: Option<RateEstimate>,
    pub ber: Option<RateEstimate>,
    pub ops_max: u64,
    pub ops_mean: f64,
    /// Per-unit statistics; empty for plain WER runs.
    pub paths: Vec<PathStats>,
}

#[derive(Clone, Copy, Debug, Default)]
struct WerAcc {
    word_errors: u64,
    bit_errors: u64,
    ops_max: u64,
    ops_sum: u64,
}

/// Word and bit error rates of `config.algorithm` over `config.channel`.
pub fn run_wer(config: &SimConfig) -> Result<SimReport> {
    config.validate()?;
    let params = config.params;
    let proto = RecursiveDecoder::<f64>::new(params, config.algorithm, config.options.clone().with_trace(false))?;
    let threshold = flip_threshold(config.channel.crossover());

    let parts: Vec<WerAcc> = chunks(config.trials)
        .into_par_iter()
        .map(|range| {
            let mut dec = proto.clone();
            let (n, k) = (params.n(), params.k());
            let mut info = vec![0u8; k];
            let mut sent = vec![1i8; n];
            let mut y = vec![0.0f64; n];
            let mut info_hat = vec![0u8; k];
            let mut cw_hat = vec![0i8; n];
            let mut acc = WerAcc::default();
            for trial in range {
                if config.transmitted == Transmit::RandomCodewords {
                    let mut rng = stream(config.master_seed, trial, Purpose::Codeword);
                    for b in info.iter_mut() {
                        *b = rng.gen::<bool>() as u8;
                    }
                    let mut ops = 0;
                    encode_into(&info, params.m(), params.r(), &mut sent, &mut ops);
                }
                transmit_into(&sent, threshold, &mut stream(config.master_seed, trial, Purpose::Channel), &mut y);
                let mut ties = config.ties(trial, Purpose::Ties);
                let ops = dec.decode_into(&y, &mut ties, &mut info_hat, &mut cw_hat).expect("buffers sized");
                let errs = info.iter().zip(&info_hat).filter(|(a, b)| a != b).count() as u64;
                acc.bit_errors += errs;
                acc.word_errors += u64::from(errs > 0);
                acc.ops_max = acc.ops_max.max(ops);
                acc.ops_sum += ops;
            }
            acc
        })
        .collect();

    let total = parts.into_iter().fold(WerAcc::default(), |mut t, a| {
        t.word_errors += a.word_errors;
        t.bit_errors += a.bit_errors;
        t.ops_max = t.ops_max.max(a.ops_max);
        t.ops_sum += a.ops_sum;
        t
    });
    Ok(SimReport {
        config: config.clone(),
        wer: Some(rate_ci(total.word_errors, config.trials)),
        ber: Some(rate_ci(total.bit_errors, config.trials * params.k() as u64)),
        ops_max: total.ops_max,
        ops_mean: total.ops_sum as f64 / config.trials as f64,
        paths: Vec::new(),
    })
}

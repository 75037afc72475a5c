use std::collections::HashMap;

use rayon::prelude::*;

use super::channel::{flip_threshold, transmit_into};
use super::chunks;
use super::rng::{stream, Purpose};
use super::stats::{rate_ci, Moments, RateEstimate};
use super::wer::{SimConfig, SimReport, Transmit};
use crate::analysis::{predict_errors, AnalysisUnit, PredictionMethod};
use crate::decoder::{GenieDecoder, GenieOutput, RecursiveDecoder, UnitKind};
use crate::error::{Result, RmError};
use crate::path::{path_index, BitString, Path};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PathStatsOptions {
    /// Restrict to these unit keys; other subtrees are not decoded.
    pub keys: Option<Vec<BitString>>,
    /// Also run the real decoder on the same channel outputs to measure
    /// unconditional error rates and the word error rate.
    pub unconditional: bool,
}

/// Statistics of one decision unit: a repetition path, the symbols of a
/// full-space node, or a first-order node of `Phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathStats {
    pub kind: UnitKind,
    pub key: BitString,
    pub paths: Vec<Path>,
    /// `e(ξ)` for the key.
    pub theory_mean: f64,
    /// `μ(ξ)` for the key.
    pub theory_variance: f64,
    pub method: PredictionMethod,
    pub predicted_lower: f64,
    pub predicted_upper: f64,
    /// Normalized statistic `z = y/e` under the genie.
    pub z: Moments,
    /// Error rate given correct earlier decisions.
    pub conditional: RateEstimate,
    /// Error rate of the real decoder.
    pub unconditional: Option<RateEstimate>,
}

impl PathStats {
    pub fn empirical_mean(&self) -> f64 {
        self.theory_mean * self.z.mean()
    }

    pub fn empirical_variance(&self) -> f64 {
        self.z.variance()
    }
}

#[derive(Clone, Debug, Default)]
struct UnitAcc {
    z: Moments,
    cond_errors: u64,
    cond_count: u64,
    unc_errors: u64,
    unc_count: u64,
}

#[derive(Clone, Debug, Default)]
struct Acc {
    units: Vec<UnitAcc>,
    word_errors: u64,
    bit_errors: u64,
    ops_max: u64,
    ops_sum: u64,
}

/// Genie-aided per-unit statistics on the all-one codeword.
pub fn path_statistics(config: &SimConfig, opts: &PathStatsOptions) -> Result<SimReport> {
    config.validate()?;
    if config.transmitted != Transmit::AllOnes {
        return Err(RmError::GenieNotAllOnes);
    }
    let params = config.params;
    let eps = config.channel.residual();
    let prediction = predict_errors(params, eps, config.algorithm)?;
    let units: Vec<(AnalysisUnit, f64, f64, PredictionMethod, f64, f64)> = prediction
        .units
        .iter()
        .filter(|u| opts.keys.as_ref().is_none_or(|k| k.contains(&u.unit.key)))
        .map(|u| (u.unit.clone(), u.mean, u.variance, u.method, u.lower, u.upper))
        .collect();
    if units.is_empty() {
        return Err(RmError::InvalidConfig("no unit matches the requested keys".into()));
    }
    let slot: HashMap<BitString, usize> = units.iter().enumerate().map(|(i, u)| (u.0.key, i)).collect();
    let info_ranges: Vec<(usize, usize)> = units
        .iter()
        .map(|u| (path_index(params, u.0.paths[0].bits()).expect("unit paths are paths"), u.0.paths.len()))
        .collect();
    let means: Vec<f64> = units.iter().map(|u| u.1).collect();

    let keys: Vec<BitString> = units.iter().map(|u| u.0.key).collect();
    let genie = GenieDecoder::<f64>::new(params, config.algorithm, &config.options, Some(keys))?;
    let real = if opts.unconditional {
        Some(RecursiveDecoder::<f64>::new(params, config.algorithm, config.options.clone().with_trace(false))?)
    } else {
        None
    };
    let threshold = flip_threshold(config.channel.crossover());
    let ones = vec![1i8; params.n()];

    let parts: Vec<Acc> = chunks(config.trials)
        .into_par_iter()
        .map(|range| {
            let mut genie = genie.clone();
            let mut real = real.clone();
            let mut out = GenieOutput::default();
            let mut y = vec![0.0f64; params.n()];
            let mut info_hat = vec![0u8; params.k()];
            let mut cw_hat = vec![0i8; params.n()];
            let mut acc = Acc { units: vec![UnitAcc::default(); units.len()], ..Acc::default() };
            for trial in range {
                transmit_into(&ones, threshold, &mut stream(config.master_seed, trial, Purpose::Channel), &mut y);
                let mut gties = config.ties(trial, Purpose::GenieTies);
                genie.run(&y, &mut gties, &mut out).expect("buffers sized");
                for unit in &out.units {
                    let i = slot[&unit.key];
                    let a = &mut acc.units[i];
                    for &v in out.unit_values(unit) {
                        a.z.push(v / means[i]);
                    }
                    a.cond_errors += unit.errors as u64;
                    a.cond_count += unit.values.len() as u64;
                }
                if let Some(dec) = real.as_mut() {
                    let mut ties = config.ties(trial, Purpose::Ties);
                    let ops = dec.decode_into(&y, &mut ties, &mut info_hat, &mut cw_hat).expect("buffers sized");
                    let errs = info_hat.iter().filter(|&&b| b != 0).count() as u64;
                    acc.bit_errors += errs;
                    acc.word_errors += u64::from(errs > 0);
                    acc.ops_max = acc.ops_max.max(ops);
                    acc.ops_sum += ops;
                    for (i, &(start, len)) in info_ranges.iter().enumerate() {
                        let wrong = info_hat[start..start + len].iter().filter(|&&b| b != 0).count() as u64;
                        let a = &mut acc.units[i];
                        match units[i].0.kind {
                            UnitKind::Symbol { .. } => {
                                a.unc_errors += wrong;
                                a.unc_count += len as u64;
                            }
                            _ => {
                                a.unc_errors += u64::from(wrong > 0);
                                a.unc_count += 1;
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut total = Acc { units: vec![UnitAcc::default(); units.len()], ..Acc::default() };
    for part in parts {
        for (t, a) in total.units.iter_mut().zip(&part.units) {
            t.z.merge(&a.z);
            t.cond_errors += a.cond_errors;
            t.cond_count += a.cond_count;
            t.unc_errors += a.unc_errors;
            t.unc_count += a.unc_count;
        }
        total.word_errors += part.word_errors;
        total.bit_errors += part.bit_errors;
        total.ops_max = total.ops_max.max(part.ops_max);
        total.ops_sum += part.ops_sum;
    }

    let paths = units
        .into_iter()
        .zip(total.units)
        .map(|((unit, mean, variance, method, lower, upper), acc)| PathStats {
            kind: unit.kind,
            key: unit.key,
            paths: unit.paths,
            theory_mean: mean,
            theory_variance: variance,
            method,
            predicted_lower: lower,
            predicted_upper: upper,
            z: acc.z,
            conditional: rate_ci(acc.cond_errors, acc.cond_count),
            unconditional: opts.unconditional.then(|| rate_ci(acc.unc_errors, acc.unc_count)),
        })
        .collect();

    Ok(SimReport {
        config: config.clone(),
        wer: opts.unconditional.then(|| rate_ci(total.word_errors, config.trials)),
        ber: opts.unconditional.then(|| rate_ci(total.bit_errors, config.trials * params.k() as u64)),
        ops_max: total.ops_max,
        ops_mean: if opts.unconditional { total.ops_sum as f64 / config.trials as f64 } else { 0.0 },
        paths,
    })
}

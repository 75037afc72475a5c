//! Machine-readable output records.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use clap::ValueEnum;
use rmrec::simulate::{RateEstimate, SweepRow};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 95% interval written as `lo;hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl From<&RateEstimate> for Interval {
    fn from(e: &RateEstimate) -> Self {
        Interval { lo: e.lo, hi: e.hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once(';').ok_or_else(|| format!("expected lo;hi, got {s:?}"))?;
        let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Interval { lo: num(lo)?, hi: num(hi)? })
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One simulated grid point. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRow {
    pub m: u32,
    pub r: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub algorithm: String,
    /// Crossover probability of the (hard-decision) channel.
    pub p: f64,
    pub snr_db: Option<f64>,
    pub wer: f64,
    pub wer_ci: Interval,
    pub ber: f64,
    pub ber_ci: Interval,
    pub ops_max: u64,
    pub seed: u64,
    pub trials: u64,
}

pub const OUTPUT_HEADER: &str = "m,r,n,k,d,algorithm,p,snr_db,wer,wer_ci,ber,ber_ci,ops_max,seed,trials";

impl OutputRow {
    pub fn from_sweep(row: &SweepRow) -> Self {
        let rep = &row.report;
        let cfg = &rep.config;
        let wer = rep.wer.expect("run_wer reports a word error rate");
        let ber = rep.ber.expect("run_wer reports a bit error rate");
        OutputRow {
            m: cfg.params.m(),
            r: cfg.params.r(),
            n: cfg.params.n(),
            k: cfg.params.k(),
            d: cfg.params.d(),
            algorithm: cfg.algorithm.name().to_string(),
            p: row.p,
            snr_db: row.snr_db,
            wer: wer.rate,
            wer_ci: (&wer).into(),
            ber: ber.rate,
            ber_ci: (&ber).into(),
            ops_max: rep.ops_max,
            seed: cfg.master_seed,
            trials: cfg.trials,
        }
    }
}

/// One line of an analysis report: a decision unit, or the block bounds
/// when `unit` is `block`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeRow {
    pub m: u32,
    pub r: u32,
    pub epsilon: f64,
    pub c: f64,
    pub algorithm: String,
    pub unit: String,
    pub kind: String,
    pub g: Option<u32>,
    pub paths: usize,
    pub mean: Option<f64>,
    pub variance: Option<f64>,
    pub method: Option<String>,
    pub lower: f64,
    pub upper: f64,
}

pub fn write_rows<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn read_rows<T: DeserializeOwned>(input: impl Read, format: Format) -> Result<Vec<T>, CliError> {
    match format {
        Format::Csv => Ok(csv::Reader::from_reader(input).deserialize().collect::<Result<_, _>>()?),
        Format::Json => Ok(serde_json::from_reader(input)?),
    }
}

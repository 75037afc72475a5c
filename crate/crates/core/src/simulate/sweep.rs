use super::channel::ChannelModel;
use super::wer::{run_wer, SimConfig, SimReport};
use crate::analysis::snr_db;
use crate::error::{Result, RmError};

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub channel: ChannelModel,
    /// Crossover probability.
    pub p: f64,
    /// `10 log10(1/(2Rσ^2))` for the AWGN channel with the same hard-decision
    /// crossover; `None` at `p = 0`.
    pub snr_db: Option<f64>,
    pub report: SimReport,
}

/// Runs `template` once per channel in `grid`, each with the template seed.
pub fn sweep(template: &SimConfig, grid: &[ChannelModel]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(RmError::InvalidConfig("empty grid".into()));
    }
    grid.iter()
        .map(|&channel| {
            let report = run_wer(&template.clone().with_channel(channel))?;
            Ok(SweepRow {
                channel,
                p: channel.crossover(),
                snr_db: channel.sigma().and_then(|s| snr_db(template.params, s)),
                report,
            })
        })
        .collect()
}

/// Parses a comma-separated list whose items are single values or
/// `start:stop:step` ranges (inclusive of `stop` up to rounding).
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || RmError::InvalidConfig(format!("bad grid {s:?}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let mut values = Vec::new();
    for item in s.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [start, stop, step] => {
                let (a, b, h) = (num(start)?, num(stop)?, num(step)?);
                if !(h > 0.0) || b < a {
                    return Err(bad());
                }
                let count = ((b - a) / h + 1e-9).floor() as usize + 1;
                // Round away the drift of a + i*h so 0.1:0.2:0.01 yields 0.12, not 0.12000000000000001.
                values.extend((0..count).map(|i| ((a + i as f64 * h) * 1e12).round() / 1e12));
            }
            [value] => values.push(num(value)?),
            _ => return Err(bad()),
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(values)
}

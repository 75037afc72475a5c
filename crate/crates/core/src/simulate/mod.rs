//! Seeded Monte Carlo experiments over binary channels.
//!
//! Every trial draws its randomness from its own ChaCha stream keyed by
//! `(master seed, trial, purpose)`. Trials run in fixed-size chunks on the
//! rayon pool and the chunk results are folded in trial order, so a report
//! is bit-identical for any number of threads.

mod channel;
mod paths;
mod rng;
mod stats;
mod sweep;
mod wer;

pub use channel::{apply_channel, ChannelModel};
pub use paths::{path_statistics, PathStats, PathStatsOptions};
pub use rng::{stream, Purpose};
pub use stats::{rate_ci, CiMethod, Moments, RateEstimate, Z95};
pub use sweep::{parse_grid, sweep, SweepRow};
pub use wer::{run_wer, SimConfig, SimReport, Transmit};

/// Trials per work item.
pub(crate) const CHUNK: u64 = 256;

/// Splits `0..trials` into chunk ranges in order.
pub(crate) fn chunks(trials: u64) -> Vec<std::ops::Range<u64>> {
    (0..trials.div_ceil(CHUNK)).map(|i| i * CHUNK..((i + 1) * CHUNK).min(trials)).collect()
}

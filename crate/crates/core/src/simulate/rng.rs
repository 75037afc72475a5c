use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a per-trial stream is used for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Purpose {
    Channel = 1,
    Codeword = 2,
    Ties = 3,
    GenieTies = 4,
}

/// Independent stream for one trial and purpose.
pub fn stream(master_seed: u64, trial: u64, purpose: Purpose) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((trial << 8) | purpose as u64);
    rng
}

//! Seeded substreams.
//!
//! Every random stream is `ChaCha8Rng::seed_from_u64(seed)` with the
//! ChaCha stream number `(task << 8) | lane`. Distinct `(task, lane)`
//! pairs never share output, so the left and right halves of a statistic
//! (lanes 0 and 1) are independent by construction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const LANE_LEFT: u8 = 0;
pub const LANE_RIGHT: u8 = 1;
pub const LANE_PERMUTATION: u8 = 2;

pub fn substream(seed: u64, task: u64, lane: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((task << 8) | u64::from(lane));
    rng
}

//! Seeded, portable randomness for experiments.
//!
//! Every trial gets its own Xoshiro256++ stream, seeded from
//! splitmix64(seed, index), so results do not depend on scheduling.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

pub type TrialRng = Xoshiro256PlusPlus;

/// One splitmix64 step: z = x + 0x9e3779b97f4a7c15, then two xor-shift-multiply
/// rounds and a final xor-shift.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for trial `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index)
}

pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    TrialRng::seed_from_u64(derive_seed(seed, index))
}

/// Runs `trial(index, rng)` for every index in parallel; results come back in
/// index order.
pub fn run_trials<T: Send>(trials: u64, seed: u64, trial: impl Fn(u64, &mut TrialRng) -> T + Sync) -> Vec<T> {
    (0..trials).into_par_iter().map(|i| trial(i, &mut trial_rng(seed, i))).collect()
}

//! Shared fixtures for the benchmarks.

use entangle_core::PureState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible Haar-random state.
pub fn fixture_state(n: usize) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE_4C_u64 + n as u64);
    PureState::random_haar(n, &mut rng).expect("valid register size")
}

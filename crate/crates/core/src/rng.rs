//! Counter-based random streams.
//!
//! Every Monte Carlo trial (and every semi-analytic fading sample) owns a
//! dedicated ChaCha stream keyed by `(seed, index)`. Within a stream, draws
//! happen in a fixed documented order, so any partition of the index range
//! across workers reproduces bit-identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random stream for the given `(seed, index)` pair.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = stream(7, 3).random_iter().take(4).collect();
        let b: Vec<u64> = stream(7, 3).random_iter().take(4).collect();
        let c: Vec<u64> = stream(7, 4).random_iter().take(4).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn draws_do_not_depend_on_other_streams() {
        let mut r0 = stream(1, 0);
        let _burn: u64 = r0.random();
        let fresh: u64 = stream(1, 5).random();
        assert_eq!(fresh, stream(1, 5).random::<u64>());
    }
}

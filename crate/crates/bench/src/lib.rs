//! Shared inputs for the benchmarks.

use quatseq_core::{QuatArray, QuatSequence, UnitQuat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic array over the full eight-element alphabet.
pub fn random_array(dims: &[usize], seed: u64) -> QuatArray {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = dims.iter().product();
    let elems = (0..n).map(|_| UnitQuat::ALL[rng.gen_range(0..8)]).collect();
    QuatArray::new(dims.to_vec(), elems).expect("dims and element count agree")
}

pub fn random_sequence(len: usize, seed: u64) -> QuatSequence {
    random_array(&[len], seed).flatten_row_major()
}

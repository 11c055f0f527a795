//! Seeded randomness.
//!
//! Every random choice in the crate comes from a ChaCha8 stream seeded with a
//! single `u64`, so runs with the same seed are reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Rational, Vector};

pub type Generator = ChaCha8Rng;

pub fn from_seed(seed: u64) -> Generator {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform nonzero rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn nonzero_rational(rng: &mut Generator, bound: i64) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-bound..=bound);
        if p != 0 {
            let q: i64 = rng.gen_range(1..=bound);
            return Rational::new(p.into(), q.into());
        }
    }
}

/// Random vector with nonzero entries exactly on `support`.
pub fn supported_vector(rng: &mut Generator, len: usize, support: &[usize], bound: i64) -> Vector {
    let mut v = crate::linalg::zero_vec(len);
    for &i in support {
        v[i] = nonzero_rational(rng, bound);
    }
    v
}

/// Random small integer in `lo..=hi`.
pub fn int_in(rng: &mut Generator, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

//! Deterministic seeded choices of "general" parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::afield::{ratio, Rational};

/// Bound on rejection-and-retry loops for generic choices.
pub const MAX_RETRIES: usize = 16;

pub struct Seeded(ChaCha8Rng);

impl Seeded {
    pub fn new(seed: u64) -> Seeded {
        Seeded(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent stream for the given attempt number.
    pub fn attempt(seed: u64, attempt: usize) -> Seeded {
        Seeded::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt as u64))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.int(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }

    /// Rational a/b with |a| <= height and 1 <= b <= height.
    pub fn small_rational(&mut self, height: i64) -> Rational {
        let a = self.int(-height, height);
        let b = self.int(1, height.max(1));
        ratio(a, b)
    }
}

//! Seeded random parameter pairs for the verification suites.
//!
//! Numerators are drawn from `[-6, 6]` and denominators from `[1, 4]`, which
//! keeps exact arithmetic fast while still hitting non-integer values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, Params, Rational};

pub const NUMERATOR_RANGE: (i64, i64) = (-6, 6);
pub const DENOMINATOR_RANGE: (i64, i64) = (1, 4);

#[derive(Clone, Debug)]
pub struct ParamSampler {
    rng: ChaCha8Rng,
}

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(NUMERATOR_RANGE.0..=NUMERATOR_RANGE.1);
        let den = self
            .rng
            .gen_range(DENOMINATOR_RANGE.0..=DENOMINATOR_RANGE.1);
        rat(num, den)
    }

    pub fn params(&mut self) -> Params {
        let alpha = self.rational();
        let a = self.rational();
        Params::new(alpha, a)
    }

    pub fn params_list(&mut self, n: usize) -> Vec<Params> {
        (0..n).map(|_| self.params()).collect()
    }

    /// Uniform float in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

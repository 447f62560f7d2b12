use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// One array of uniform draws in `[0, 1)`, shared by every node in every
/// trial. The `i`-th sample of a node of degree `d` is always incidence
/// position `floor(R[i] * d)`.
///
/// Entries come from ChaCha8 keyed by the seed, 53 mantissa bits each, so
/// the array is identical on every platform.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSource {
    seed: u64,
    values: Vec<f64>,
}

const MANTISSA_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

impl RandomSource {
    pub fn new(seed: u64, len: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..len)
            .map(|_| (rng.next_u64() >> 11) as f64 * MANTISSA_SCALE)
            .collect();
        RandomSource { seed, values }
    }

    /// Builds a source from explicit draws; each must lie in `[0, 1)`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|x| !(0.0..1.0).contains(*x)) {
            return Err(Error::parameter(format!(
                "random values must lie in [0, 1), got {bad}"
            )));
        }
        Ok(RandomSource { seed: 0, values })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Incidence position of sample `i` for a node of degree `degree`.
    pub fn sample_index(&self, i: usize, degree: usize) -> Result<usize> {
        let r = *self.values.get(i).ok_or(Error::SampleOutOfRange {
            index: i,
            len: self.values.len(),
        })?;
        if degree == 0 {
            return Err(Error::parameter(
                "cannot sample a neighbor of a degree-0 node",
            ));
        }
        Ok(self.index_unchecked(r, degree))
    }

    #[inline]
    pub(crate) fn sample_index_unchecked(&self, i: usize, degree: usize) -> usize {
        self.index_unchecked(self.values[i], degree)
    }

    #[inline]
    fn index_unchecked(&self, r: f64, degree: usize) -> usize {
        // r * d can round up to d when d is large; clamp back into range.
        ((r * degree as f64) as usize).min(degree - 1)
    }
}

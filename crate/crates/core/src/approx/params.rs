use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Threshold schedule for the sampling algorithm.
///
/// Step `j >= 1` pairs the degree threshold `l = n / (1 + eps1)^j` with the
/// sampling rate `p = p0 * (1 + eps1)^(j - 1)`, so `l * p` is the same at every
/// step. Both are computed from `j` directly, never by repeated division.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub epsilon: f64,
    pub epsilon1: f64,
    pub c: f64,
    pub p0: f64,
    pub step: u32,
    pub l: f64,
    pub p: f64,
}

/// Checks `epsilon` in (0, 1] and `c > 0`.
pub fn validate(epsilon: f64, c: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::parameter(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::parameter(format!("c must be positive, got {c}")));
    }
    Ok(())
}

impl Params {
    /// Parameters at step 1. Graphs with fewer than two nodes have degeneracy
    /// 0 and must be handled before sampling.
    pub fn new(n: usize, epsilon: f64, c: f64) -> Result<Self> {
        validate(epsilon, c)?;
        if n < 2 {
            return Err(Error::parameter(format!(
                "sampling needs at least 2 nodes, got {n}"
            )));
        }
        let epsilon1 = epsilon / 3.0;
        let nf = n as f64;
        let ln_n = nf.ln();
        let iterations = ln_n / epsilon1.ln_1p();
        let growth = 1.0 + epsilon1;
        let p0 = 2.0 * ((1.0 + c) * ln_n + iterations.ln()) * growth * growth
            / (epsilon1 * epsilon1 * nf);
        let mut params = Params {
            n,
            epsilon,
            epsilon1,
            c,
            p0,
            step: 1,
            l: 0.0,
            p: 0.0,
        };
        params.set_step(1);
        Ok(params)
    }

    pub fn at_step(&self, step: u32) -> Self {
        let mut next = *self;
        next.set_step(step);
        next
    }

    /// Moves to the next step (`l /= 1 + eps1`, `p *= 1 + eps1`).
    pub fn advance(&mut self) {
        self.set_step(self.step + 1);
    }

    fn set_step(&mut self, step: u32) {
        assert!(step >= 1, "schedule steps start at 1");
        let growth = 1.0 + self.epsilon1;
        self.step = step;
        self.l = self.n as f64 / growth.powi(step as i32);
        self.p = self.p0 * growth.powi(step as i32 - 1);
    }

    /// True once the sampling rate has reached 1 and exact peeling takes over.
    pub fn exhausted(&self) -> bool {
        self.p >= 1.0
    }

    /// Upper end of the two-sided approximation interval, `1 + 1.5 eps1`.
    pub fn upper_factor(&self) -> f64 {
        1.0 + 1.5 * self.epsilon1
    }

    /// Lower end of the approximation interval, `(1 + eps1)^2`.
    pub fn lower_factor(&self) -> f64 {
        (1.0 + self.epsilon1).powi(2)
    }
}

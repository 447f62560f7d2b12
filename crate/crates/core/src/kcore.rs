//! Approximate core numbers for every node.
//!
//! Runs the same threshold schedule as [`approximate_degeneracy`], but a
//! successful trial labels its survivors with the current threshold and
//! removes them from later trials instead of stopping. Once the sampling
//! rate reaches 1, the still-unlabeled nodes are peeled exactly. Any peeled
//! value above `l' / (1 + 1.5 eps1)` is capped to `l'`, the last threshold
//! assigned by sampling.
//!
//! Degrees used for `k(v)` and the peel test stay the degrees in the full
//! graph. Labeled neighbors count as low nodes when sampled.
//!
//! [`approximate_degeneracy`]: crate::approx::approximate_degeneracy

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::approx::{Params, RandomSource, RunStats, TrialState};
use crate::error::Result;
use crate::exact::induced_core_numbers;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelSource {
    /// Survived a sampling trial at threshold `label`.
    Loop,
    /// Exact core number within the unlabeled remainder.
    Peel,
    /// Peeled value exceeded the cap and was replaced by `l'`.
    Capped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledDecomposition {
    pub labels: Vec<f64>,
    pub label_source: Vec<LabelSource>,
    /// Last label assigned by a sampling trial (`l'`), if any.
    pub last_loop_label: Option<f64>,
    /// Thresholds that labeled at least one node, in assignment order.
    pub loop_levels: Vec<f64>,
    pub epsilon1: f64,
    pub stats: RunStats,
}

impl LabeledDecomposition {
    /// Cap applied to peeled values, `l' / (1 + 1.5 eps1)`.
    pub fn cap(&self) -> Option<f64> {
        self.last_loop_label
            .map(|l| l / (1.0 + 1.5 * self.epsilon1))
    }

    pub fn max_label(&self) -> f64 {
        self.labels.iter().copied().fold(0.0, f64::max)
    }
}

pub fn approximate_core_decomposition(
    g: &Graph,
    epsilon: f64,
    c: f64,
    seed: u64,
) -> Result<LabeledDecomposition> {
    crate::approx::validate_parameters(epsilon, c)?;
    let started = Instant::now();
    let n = g.node_count();
    let mut out = LabeledDecomposition {
        labels: vec![0.0; n],
        label_source: vec![LabelSource::Peel; n],
        last_loop_label: None,
        loop_levels: Vec::new(),
        epsilon1: epsilon / 3.0,
        stats: RunStats::default(),
    };
    if n < 2 || g.edge_count() == 0 {
        out.stats.wall_time = started.elapsed();
        return Ok(out);
    }

    let mut params = Params::new(n, epsilon, c)?;
    let random = RandomSource::new(seed, g.max_degree());
    let mut state = TrialState::new(g);
    let mut labeled = vec![false; n];
    let mut unlabeled_with_edges = (0..n).filter(|&v| g.degree_unchecked(v) > 0).count();

    // l * p is fixed and exceeds 1, so p < 1 implies l > 1 throughout.
    while !params.exhausted() && unlabeled_with_edges > 0 {
        let trial = state.run(g, &random, params.l, params.p, Some(&labeled));
        out.stats.trials += 1;
        out.stats.samples_drawn += trial.samples_drawn;
        out.stats.nodes_peeled += trial.peeled;
        if !trial.survivors.is_empty() {
            for &v in &trial.survivors {
                labeled[v] = true;
                out.labels[v] = params.l;
                out.label_source[v] = LabelSource::Loop;
            }
            unlabeled_with_edges -= trial.survivors.len();
            out.last_loop_label = Some(params.l);
            out.loop_levels.push(params.l);
            out.stats.final_step = params.step;
        }
        params.advance();
    }

    let remaining: Vec<bool> = labeled.iter().map(|&x| !x).collect();
    let peeled = induced_core_numbers(g, &remaining);
    let cap = out.cap();
    for v in (0..n).filter(|&v| remaining[v]) {
        let value = peeled[v] as f64;
        match (cap, out.last_loop_label) {
            (Some(cap), Some(last)) if value > cap => {
                out.labels[v] = last;
                out.label_source[v] = LabelSource::Capped;
            }
            _ => {
                out.labels[v] = value;
                out.label_source[v] = LabelSource::Peel;
            }
        }
    }
    out.stats.wall_time = started.elapsed();
    Ok(out)
}

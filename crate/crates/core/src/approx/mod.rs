//! Sublinear `(1 + eps)`-approximate degeneracy by neighbor sampling.
//!
//! The threshold `l` starts near `n` and falls geometrically while the
//! sampling rate `p` rises by the same factor. The first threshold at which a
//! trial leaves survivors is returned. If `p` reaches 1 first, exact peeling
//! takes over.

mod params;
mod random;
mod trial;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::peel_degeneracy;
use crate::graph::Graph;

pub use params::validate as validate_parameters;
pub use params::Params;
pub use random::RandomSource;
pub use trial::{run_trial, TrialObserver, TrialOutcome, TrialState};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxOptions {
    /// Skip straight to the first threshold at or below the h-index bound.
    pub use_lower_start: bool,
    /// Exponential probing of steps followed by binary search.
    pub use_leaps: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub trials: u64,
    pub samples_drawn: u64,
    pub nodes_peeled: u64,
    /// Schedule step of the returned threshold; 0 when no trial succeeded.
    pub final_step: u32,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxResult {
    /// Returned threshold `l`, or the exact degeneracy after a fallback.
    pub value: f64,
    pub used_fallback: bool,
    pub stats: RunStats,
}

/// Whether `value` lies in `(exact / (1 + eps1)^2, exact * (1 + 1.5 eps1)]`,
/// the guarantee for a returned threshold. An exact value of 0 only admits 0.
pub fn within_bound(value: f64, exact: f64, epsilon: f64) -> bool {
    if exact == 0.0 {
        return value == 0.0;
    }
    let eps1 = epsilon / 3.0;
    exact / (1.0 + eps1).powi(2) < value && value <= exact * (1.0 + 1.5 * eps1)
}

/// Largest `d` such that at least `d` nodes have degree at least `d`.
/// Upper-bounds the degeneracy.
pub fn lower_start_threshold(g: &Graph) -> usize {
    let n = g.node_count();
    // at_least[d] = #nodes with degree >= d, degrees capped at n.
    let mut counts = vec![0usize; n + 1];
    for v in 0..n {
        counts[g.degree_unchecked(v).min(n)] += 1;
    }
    let mut at_least = 0;
    for d in (1..=n).rev() {
        at_least += counts[d];
        if at_least >= d {
            return d;
        }
    }
    0
}

pub fn approximate_degeneracy(
    g: &Graph,
    epsilon: f64,
    c: f64,
    seed: u64,
    opts: ApproxOptions,
) -> Result<ApproxResult> {
    validate_parameters(epsilon, c)?;
    let started = Instant::now();
    let mut run = Run::new(g, seed);

    let outcome = if g.node_count() < 2 || g.edge_count() == 0 {
        Outcome::Value(0.0)
    } else {
        let base = Params::new(g.node_count(), epsilon, c)?;
        let start = if opts.use_lower_start {
            lower_start_step(&base, lower_start_threshold(g))
        } else {
            base
        };
        if start.exhausted() {
            Outcome::Fallback
        } else if opts.use_leaps {
            run.leaps(&start)
        } else {
            run.baseline(start)
        }
    };

    let mut stats = run.stats;
    let (value, used_fallback) = match outcome {
        Outcome::Value(v) => (v, false),
        Outcome::Found(params) => {
            stats.final_step = params.step;
            (params.l, false)
        }
        Outcome::Fallback => (peel_degeneracy(g) as f64, true),
    };
    stats.wall_time = started.elapsed();
    Ok(ApproxResult {
        value,
        used_fallback,
        stats,
    })
}

/// First step whose threshold is at most `bound`, or the first exhausted step.
fn lower_start_step(base: &Params, bound: usize) -> Params {
    let mut params = *base;
    while params.l > bound as f64 && !params.exhausted() {
        params.advance();
    }
    params
}

enum Outcome {
    Value(f64),
    Found(Params),
    Fallback,
}

/// Probe result for one schedule step.
enum Probe {
    Survivors,
    Empty,
    Exhausted,
    BelowOne,
}

struct Run<'g> {
    graph: &'g Graph,
    random: RandomSource,
    state: TrialState,
    stats: RunStats,
}

impl<'g> Run<'g> {
    fn new(graph: &'g Graph, seed: u64) -> Self {
        Run {
            graph,
            random: RandomSource::new(seed, graph.max_degree()),
            state: TrialState::new(graph),
            stats: RunStats::default(),
        }
    }

    fn probe(&mut self, params: &Params) -> Probe {
        // A node with an edge has degeneracy >= 1, so p >= 1 is checked first:
        // exact peeling is always correct there, while l < 1 only means no
        // threshold >= 1 succeeded.
        if params.exhausted() {
            return Probe::Exhausted;
        }
        if params.l < 1.0 {
            return Probe::BelowOne;
        }
        let out = self
            .state
            .run(self.graph, &self.random, params.l, params.p, None);
        self.stats.trials += 1;
        self.stats.samples_drawn += out.samples_drawn;
        self.stats.nodes_peeled += out.peeled;
        if out.survivors.is_empty() {
            Probe::Empty
        } else {
            Probe::Survivors
        }
    }

    fn baseline(&mut self, mut params: Params) -> Outcome {
        loop {
            match self.probe(&params) {
                Probe::Survivors => return Outcome::Found(params),
                Probe::Empty => params.advance(),
                Probe::Exhausted => return Outcome::Fallback,
                Probe::BelowOne => return Outcome::Value(0.0),
            }
        }
    }

    /// Probes steps `j0, j0+1, j0+2, j0+4, ...` until one succeeds, then
    /// binary-searches the gap to the previous (failed) probe.
    fn leaps(&mut self, start: &Params) -> Outcome {
        let j0 = start.step;
        let mut failed = None;
        let mut offset = 0u32;
        let hit = loop {
            let params = start.at_step(j0 + offset);
            match self.probe(&params) {
                Probe::Survivors => break params,
                Probe::Empty => {
                    failed = Some(offset);
                    offset = if offset == 0 { 1 } else { offset * 2 };
                }
                Probe::Exhausted => return Outcome::Fallback,
                Probe::BelowOne => return Outcome::Value(0.0),
            }
        };
        let Some(failed) = failed else {
            return Outcome::Found(hit);
        };

        // Invariant: step j0+lo was empty, step j0+hi had survivors.
        let (mut lo, mut hi) = (failed, offset);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match self.probe(&start.at_step(j0 + mid)) {
                Probe::Survivors => hi = mid,
                Probe::Empty => lo = mid,
                // Steps below hi have larger l and smaller p than a step that
                // already ran, so neither guard can fire here.
                Probe::Exhausted | Probe::BelowOne => unreachable!("step inside a probed range"),
            }
        }
        Outcome::Found(start.at_step(j0 + hi))
    }
}

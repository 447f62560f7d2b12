//! One threshold trial: does the graph appear to contain an `l`-core when
//! each high-degree node looks at only a `p` fraction of its neighbors?
//!
//! Every node of degree at least `l` starts in `H`. A node keeps a counter
//! `t(v)` of its samples that still land in `H` and is peeled to `L` as soon
//! as `t(v) < l * k(v) / deg(v)`. Peels propagate to the nodes that sampled
//! the peeled node through the `Sampled` lists.

use std::collections::VecDeque;

use crate::approx::random::RandomSource;
use crate::graph::{Graph, NodeId};

/// Hooks for instrumenting a trial. All methods default to no-ops.
pub trait TrialObserver {
    /// `v` drew a sample that landed on `u`.
    fn on_sample(&mut self, _v: NodeId, _u: NodeId) {}
    /// `v` was just moved from `H` to `L`.
    fn on_peel(&mut self, _v: NodeId, _state: &TrialState) {}
}

impl TrialObserver for () {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    /// Nodes still in `H` once propagation finishes, in ascending order.
    pub survivors: Vec<NodeId>,
    pub samples_drawn: u64,
    pub peeled: u64,
}

/// Reusable working memory for trials on one graph.
///
/// `Sampled` lists are invalidated between trials by bumping an epoch rather
/// than clearing all `n` lists.
#[derive(Clone, Debug)]
pub struct TrialState {
    in_h: Vec<bool>,
    sample_count: Vec<u32>,
    surviving: Vec<u32>,
    sampled_by: Vec<Vec<u32>>,
    sampled_epoch: Vec<u32>,
    epoch: u32,
    members: Vec<u32>,
    queue: VecDeque<u32>,
    enqueued: u64,
    by_degree: Vec<u32>,
}

impl TrialState {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut by_degree: Vec<u32> = (0..n as u32).collect();
        by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree_unchecked(v as usize)));
        TrialState {
            in_h: vec![false; n],
            sample_count: vec![0; n],
            surviving: vec![0; n],
            sampled_by: vec![Vec::new(); n],
            sampled_epoch: vec![0; n],
            epoch: 0,
            members: Vec::new(),
            queue: VecDeque::new(),
            enqueued: 0,
            by_degree,
        }
    }

    pub fn in_h(&self, v: NodeId) -> bool {
        self.in_h[v]
    }

    /// `k(v)`; meaningful for nodes that entered `H` this trial.
    pub fn sample_count(&self, v: NodeId) -> u32 {
        self.sample_count[v]
    }

    /// `t(v)`; meaningful for nodes that entered `H` this trial.
    pub fn surviving_samples(&self, v: NodeId) -> u32 {
        self.surviving[v]
    }

    /// Nodes that entered `H` at the start of the current trial.
    pub fn initial_h(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().map(|&v| v as NodeId)
    }

    /// Runs one trial at threshold `l` and sampling rate `p`.
    ///
    /// When `excluded` is given, flagged nodes never enter `H` and count as
    /// `L` when sampled.
    pub fn run(
        &mut self,
        g: &Graph,
        rs: &RandomSource,
        l: f64,
        p: f64,
        excluded: Option<&[bool]>,
    ) -> TrialOutcome {
        self.run_observed(g, rs, l, p, excluded, &mut ())
    }

    pub fn run_observed<O: TrialObserver + ?Sized>(
        &mut self,
        g: &Graph,
        rs: &RandomSource,
        l: f64,
        p: f64,
        excluded: Option<&[bool]>,
        observer: &mut O,
    ) -> TrialOutcome {
        debug_assert!(p > 0.0 && p < 1.0, "sampling rate {p} outside (0, 1)");
        debug_assert!(l > 0.0);
        self.begin(g, l, excluded);

        let mut samples_drawn = 0u64;
        for idx in 0..self.members.len() {
            let v = self.members[idx] as usize;
            let degree = g.degree_unchecked(v);
            let k = ((p * degree as f64).ceil() as usize).clamp(1, degree);
            self.sample_count[v] = k as u32;
            self.surviving[v] = k as u32;
            for i in 0..k {
                let u = g.neighbor_unchecked(v, rs.sample_index_unchecked(i, degree));
                samples_drawn += 1;
                observer.on_sample(v, u);
                if self.in_h[u] {
                    self.push_sampled(u, v as u32);
                    continue;
                }
                self.surviving[v] -= 1;
                if below_threshold(self.surviving[v], k as u32, degree, l) {
                    self.peel(v, observer);
                    // v has left H; its remaining samples are never drawn.
                    break;
                }
            }
        }

        while let Some(u) = self.queue.pop_front() {
            let u = u as usize;
            if self.sampled_epoch[u] != self.epoch {
                continue;
            }
            let samplers = std::mem::take(&mut self.sampled_by[u]);
            for &v in &samplers {
                let v = v as usize;
                if !self.in_h[v] {
                    continue;
                }
                self.surviving[v] -= 1;
                let degree = g.degree_unchecked(v);
                if below_threshold(self.surviving[v], self.sample_count[v], degree, l) {
                    self.peel(v, observer);
                }
            }
            self.sampled_by[u] = samplers;
        }

        let survivors = self
            .members
            .iter()
            .map(|&v| v as NodeId)
            .filter(|&v| self.in_h[v])
            .collect();
        TrialOutcome {
            survivors,
            samples_drawn,
            peeled: self.enqueued,
        }
    }

    fn begin(&mut self, g: &Graph, l: f64, excluded: Option<&[bool]>) {
        for &v in &self.members {
            self.in_h[v as usize] = false;
        }
        self.members.clear();
        self.queue.clear();
        self.enqueued = 0;
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            // Epoch counter wrapped: stale stamps could collide, so reset them.
            self.sampled_epoch.iter_mut().for_each(|e| *e = u32::MAX);
            self.epoch = 1;
        }

        // Degree-sorted prefix: only nodes that can enter H are touched.
        for &v in &self.by_degree {
            if (g.degree_unchecked(v as usize) as f64) < l {
                break;
            }
            if excluded.is_some_and(|x| x[v as usize]) {
                continue;
            }
            self.members.push(v);
        }
        self.members.sort_unstable();
        for &v in &self.members {
            self.in_h[v as usize] = true;
        }
    }

    fn push_sampled(&mut self, u: NodeId, v: u32) {
        if self.sampled_epoch[u] != self.epoch {
            self.sampled_epoch[u] = self.epoch;
            self.sampled_by[u].clear();
        }
        self.sampled_by[u].push(v);
    }

    fn peel<O: TrialObserver + ?Sized>(&mut self, v: NodeId, observer: &mut O) {
        self.in_h[v] = false;
        self.queue.push_back(v as u32);
        self.enqueued += 1;
        observer.on_peel(v, self);
    }
}

/// `t < l * k / deg`, evaluated as `t * deg < l * k` to avoid a quotient.
#[inline]
fn below_threshold(surviving: u32, k: u32, degree: usize, l: f64) -> bool {
    ((surviving as u64 * degree as u64) as f64) < l * k as f64
}

/// Runs a single trial with fresh working memory.
pub fn run_trial(g: &Graph, l: f64, p: f64, rs: &RandomSource) -> TrialOutcome {
    TrialState::new(g).run(g, rs, l, p, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_clique_union;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn edgeless_graph_has_no_survivors() {
        let g = Graph::empty(20);
        let rs = RandomSource::new(1, 0);
        for l in [1.0, 5.0] {
            let out = run_trial(&g, l, 0.5, &rs);
            assert!(out.survivors.is_empty());
            assert_eq!(out.samples_drawn, 0);
        }
    }

    #[test]
    fn clique_survives_below_its_degree() {
        let g = complete(100);
        for seed in 0..10 {
            let rs = RandomSource::new(seed, g.max_degree());
            let out = run_trial(&g, 50.0, 0.9, &rs);
            assert_eq!(out.survivors, (0..100).collect::<Vec<_>>());
            // k = ceil(0.9 * 99) = 90 samples per node, none ever in L.
            assert_eq!(out.samples_drawn, 100 * 90);
            assert_eq!(out.peeled, 0);
        }
    }

    #[test]
    fn threshold_above_max_degree_is_empty() {
        let g = gen_clique_union(100, 80, 50).unwrap();
        let rs = RandomSource::new(3, g.max_degree());
        let out = run_trial(&g, 99.0 * 1.2, 0.5, &rs);
        assert!(out.survivors.is_empty());
        assert_eq!(out.samples_drawn, 0);
    }

    #[test]
    fn peel_propagates_through_sampled_lists() {
        // Path 0-1-2 with every sample hitting incidence position 0.
        // At l = 1, p = 0.5: node 0 samples 1 (in H); node 1 samples 0 (in H);
        // node 2 samples 1 (in H). Nothing is peeled.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let rs = RandomSource::from_values(vec![0.0, 0.0]).unwrap();
        let out = run_trial(&g, 1.0, 0.5, &rs);
        assert_eq!(out.survivors, vec![0, 1, 2]);

        // At l = 2 only node 1 enters H; its sample lands on 0 in L and it
        // is peeled straight away.
        let out = run_trial(&g, 2.0, 0.5, &rs);
        assert!(out.survivors.is_empty());
        assert_eq!(out.peeled, 1);
    }

    #[test]
    fn excluded_nodes_count_as_low() {
        let g = complete(10);
        let rs = RandomSource::new(5, g.max_degree());
        let mut state = TrialState::new(&g);
        let mut excluded = vec![false; 10];
        excluded[..6].iter_mut().for_each(|x| *x = true);
        // Only 3 of each survivor's 9 neighbors remain eligible; a threshold
        // of 8 cannot be sustained.
        let out = state.run(&g, &rs, 8.0, 0.99, Some(&excluded));
        assert!(out.survivors.is_empty());
        assert!(state.initial_h().all(|v| v >= 6));
    }

    #[test]
    fn state_is_reusable_across_trials() {
        let g = gen_clique_union(30, 10, 5).unwrap();
        let rs = RandomSource::new(11, g.max_degree());
        let mut state = TrialState::new(&g);
        let first = state.run(&g, &rs, 20.0, 0.6, None);
        let _ = state.run(&g, &rs, 5.0, 0.6, None);
        let again = state.run(&g, &rs, 20.0, 0.6, None);
        assert_eq!(first, again);
        assert_eq!(first, run_trial(&g, 20.0, 0.6, &rs));
    }
}

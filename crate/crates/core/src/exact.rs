//! Exact core decomposition by bucket-queue peeling in O(n + m).
//!
//! This is the fallback used by the sampling algorithms once the sampling
//! rate reaches 1, and the oracle the approximate results are checked against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreLabels {
    /// Core number per node.
    pub labels: Vec<usize>,
    /// Maximum core number; 0 for edgeless graphs.
    pub degeneracy: usize,
}

pub fn core_decomposition(g: &Graph) -> CoreLabels {
    let labels = peel(g, None);
    let degeneracy = labels.iter().copied().max().unwrap_or(0);
    CoreLabels { labels, degeneracy }
}

/// Degeneracy of `g`.
pub fn peel_degeneracy(g: &Graph) -> usize {
    peel(g, None).into_iter().max().unwrap_or(0)
}

/// Core numbers of the subgraph induced by nodes with `active[v]` set.
/// Inactive nodes get 0.
pub fn induced_core_numbers(g: &Graph, active: &[bool]) -> Vec<usize> {
    assert_eq!(active.len(), g.node_count());
    peel(g, Some(active))
}

/// Batagelj–Zaversnik peeling. Nodes are bucketed by current degree in one
/// array (`order`), with `pos` giving each node's slot and `bin_start` the
/// first slot of each degree bucket. Removing the minimum-degree node and
/// decrementing a neighbor's degree are both O(1) swaps.
fn peel(g: &Graph, active: Option<&[bool]>) -> Vec<usize> {
    let n = g.node_count();
    let is_active = |v: usize| active.is_none_or(|a| a[v]);

    let mut degree: Vec<usize> = (0..n)
        .map(|v| {
            if !is_active(v) {
                0
            } else if active.is_some() {
                g.neighbors(v).filter(|&u| is_active(u)).count()
            } else {
                g.degree_unchecked(v)
            }
        })
        .collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    let mut bin_start = vec![0usize; max_degree + 2];
    for &d in &degree {
        bin_start[d + 1] += 1;
    }
    for d in 0..=max_degree {
        bin_start[d + 1] += bin_start[d];
    }
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin_start.clone();
        for v in 0..n {
            pos[v] = next[degree[v]];
            order[pos[v]] = v;
            next[degree[v]] += 1;
        }
    }

    for i in 0..n {
        let v = order[i];
        if !is_active(v) {
            continue;
        }
        let dv = degree[v];
        for u in g.neighbors(v) {
            if !is_active(u) || degree[u] <= dv {
                continue;
            }
            // Swap u to the front of its bucket, then shrink the bucket by one.
            let du = degree[u];
            let front = bin_start[du];
            let w = order[front];
            if w != u {
                order.swap(front, pos[u]);
                pos[w] = pos[u];
                pos[u] = front;
            }
            bin_start[du] += 1;
            degree[u] -= 1;
        }
    }
    degree
}

/// Tally for one core value `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcoreTally {
    pub k: usize,
    /// Nodes with core number exactly `k`.
    pub core_size: usize,
    /// Edges with one endpoint of core number `k` and the other of core
    /// number at least `k`.
    pub outcore_edges: usize,
}

/// Checks `|outcore(k)| <= k * |core(k)|` for every `k` with a nonempty core.
///
/// An edge belongs to `outcore(k)` for `k` equal to the smaller core number of
/// its endpoints, so each edge is counted exactly once.
pub fn check_outcore_bound(g: &Graph, labels: &CoreLabels) -> Result<Vec<OutcoreTally>> {
    if labels.labels.len() != g.node_count() {
        return Err(Error::parameter(format!(
            "{} labels for a graph with {} nodes",
            labels.labels.len(),
            g.node_count()
        )));
    }
    let top = labels.labels.iter().copied().max().unwrap_or(0);
    let mut core_size = vec![0usize; top + 1];
    let mut outcore = vec![0usize; top + 1];
    for &c in &labels.labels {
        core_size[c] += 1;
    }
    for (u, v) in g.edges() {
        outcore[labels.labels[u].min(labels.labels[v])] += 1;
    }
    let mut tallies = Vec::new();
    for k in 0..=top {
        if core_size[k] == 0 {
            continue;
        }
        if outcore[k] > k * core_size[k] {
            return Err(Error::Invariant(format!(
                "|outcore({k})| = {} exceeds k * |core({k})| = {}",
                outcore[k],
                k * core_size[k]
            )));
        }
        tallies.push(OutcoreTally {
            k,
            core_size: core_size[k],
            outcore_edges: outcore[k],
        });
    }
    Ok(tallies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_clique_union;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn complete_and_star() {
        let k5 = core_decomposition(&complete(5));
        assert_eq!(k5.labels, vec![4; 5]);
        assert_eq!(k5.degeneracy, 4);
        let s = core_decomposition(&star(5));
        assert_eq!(s.labels, vec![1; 6]);
        assert_eq!(s.degeneracy, 1);
    }

    #[test]
    fn degeneracy_of_cycle_tree_and_cliques() {
        let cycle = Graph::from_edges(10, (0..10).map(|i| (i, (i + 1) % 10))).unwrap();
        assert_eq!(peel_degeneracy(&cycle), 2);
        // Binary-heap-shaped tree on 50 nodes.
        let tree = Graph::from_edges(50, (1..50).map(|i| ((i - 1) / 2, i))).unwrap();
        assert_eq!(peel_degeneracy(&tree), 1);
        assert_eq!(peel_degeneracy(&gen_clique_union(100, 80, 50).unwrap()), 99);
        assert_eq!(peel_degeneracy(&gen_clique_union(4, 2, 3).unwrap()), 3);
        assert_eq!(peel_degeneracy(&gen_clique_union(1, 1, 0).unwrap()), 0);
    }

    #[test]
    fn isolated_nodes_get_zero() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(core_decomposition(&g).labels, vec![1, 1, 0, 0]);
        assert_eq!(core_decomposition(&Graph::empty(0)).degeneracy, 0);
    }

    #[test]
    fn induced_subgraph() {
        // K4 plus a pendant; deactivating one K4 node leaves a triangle.
        let mut edges: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        edges.push((3, 4));
        let g = Graph::from_edges(5, edges).unwrap();
        let active = [true, true, true, false, true];
        assert_eq!(induced_core_numbers(&g, &active), vec![2, 2, 2, 0, 0]);
    }

    #[test]
    fn outcore_tallies() {
        let k5 = complete(5);
        let t = check_outcore_bound(&k5, &core_decomposition(&k5)).unwrap();
        assert_eq!(
            t,
            vec![OutcoreTally {
                k: 4,
                core_size: 5,
                outcore_edges: 10
            }]
        );
        let s = star(5);
        let t = check_outcore_bound(&s, &core_decomposition(&s)).unwrap();
        assert_eq!(
            t,
            vec![OutcoreTally {
                k: 1,
                core_size: 6,
                outcore_edges: 5
            }]
        );
    }

    #[test]
    fn outcore_violation_is_reported() {
        let k5 = complete(5);
        let wrong = CoreLabels {
            labels: vec![1; 5],
            degeneracy: 1,
        };
        assert!(matches!(
            check_outcore_bound(&k5, &wrong),
            Err(Error::Invariant(_))
        ));
    }
}

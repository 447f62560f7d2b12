//! Immutable undirected graph in compressed sparse row form.
//!
//! Access follows the incidence-list model: a constant-time degree query and
//! a constant-time query for the `i`-th entry of a node's incidence list.
//! Incidence lists are sorted by neighbor id, so the order is stable for the
//! lifetime of the graph and identical across platforms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node identifier after compaction to `0..n`.
pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    edge_count: usize,
    original_ids: Option<Vec<u64>>,
}

/// Summary statistics used for run reports and for sizing the random source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    /// `degree_histogram[d]` is the number of nodes of degree `d`.
    pub degree_histogram: Vec<usize>,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            edge_count: 0,
            original_ids: None,
        }
    }

    /// Builds a simple graph from undirected edges. Both directions are
    /// inserted, self-loops are dropped and parallel edges are merged.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut arcs = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node: w,
                        node_count,
                    });
                }
            }
            if u != v {
                arcs.push((u as u32, v as u32));
                arcs.push((v as u32, u as u32));
            }
        }
        Self::from_arcs(node_count, &arcs, true, false)
    }

    /// Builds the CSR arrays from directed arcs. The arc multiset must be
    /// symmetric; pass `verify` unless every arc was inserted in both directions.
    pub(crate) fn from_arcs(
        node_count: usize,
        arcs: &[(u32, u32)],
        dedup: bool,
        verify: bool,
    ) -> Result<Self> {
        if node_count > u32::MAX as usize {
            return Err(Error::Capacity {
                id: node_count as u64,
                max: u32::MAX as u64,
            });
        }
        let mut offsets = vec![0usize; node_count + 1];
        for &(u, _) in arcs {
            offsets[u as usize + 1] += 1;
        }
        for v in 0..node_count {
            offsets[v + 1] += offsets[v];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; arcs.len()];
        for &(u, v) in arcs {
            let slot = &mut cursor[u as usize];
            neighbors[*slot] = v;
            *slot += 1;
        }
        for v in 0..node_count {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        if dedup {
            let mut write = 0;
            let mut start = 0;
            for v in 0..node_count {
                let end = offsets[v + 1];
                let mut last = None;
                for read in start..end {
                    let w = neighbors[read];
                    if last != Some(w) {
                        neighbors[write] = w;
                        write += 1;
                        last = Some(w);
                    }
                }
                start = end;
                offsets[v + 1] = write;
            }
            neighbors.truncate(write);
        }

        if neighbors.len() & 1 != 0 {
            return Err(Error::Malformed(
                "odd number of incidence entries; edge list is not symmetric".into(),
            ));
        }
        let graph = Graph {
            edge_count: neighbors.len() / 2,
            offsets,
            neighbors,
            original_ids: None,
        };
        if verify {
            graph.check_symmetric()?;
        }
        Ok(graph)
    }

    /// Assembles a graph from prebuilt CSR arrays and validates every invariant.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<u32>) -> Result<Self> {
        if offsets.is_empty() || offsets[0] != 0 {
            return Err(Error::Malformed("offsets must start at 0".into()));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Malformed("offsets must be nondecreasing".into()));
        }
        if *offsets.last().unwrap() != neighbors.len() || neighbors.len() & 1 != 0 {
            return Err(Error::Malformed(
                "final offset must equal the (even) number of incidence entries".into(),
            ));
        }
        let n = offsets.len() - 1;
        for v in 0..n {
            let list = &neighbors[offsets[v]..offsets[v + 1]];
            if list.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Malformed(format!(
                    "incidence list of {v} is not sorted"
                )));
            }
            for &u in list {
                if u as usize >= n {
                    return Err(Error::Malformed(format!(
                        "neighbor {u} of {v} out of range"
                    )));
                }
                if u as usize == v {
                    return Err(Error::Malformed(format!("self-loop at {v}")));
                }
            }
        }
        let graph = Graph {
            edge_count: neighbors.len() / 2,
            offsets,
            neighbors,
            original_ids: None,
        };
        graph.check_symmetric()?;
        Ok(graph)
    }

    fn check_symmetric(&self) -> Result<()> {
        for v in 0..self.node_count() {
            let list = self.neighbor_slice(v);
            let mut i = 0;
            while i < list.len() {
                let u = list[i];
                let run = list[i..].iter().take_while(|&&w| w == u).count();
                let back = count_sorted(self.neighbor_slice(u as usize), v as u32);
                if back != run {
                    return Err(Error::Malformed(format!(
                        "edge {v}-{u} appears {run} time(s) at {v} but {back} time(s) at {u}"
                    )));
                }
                i += run;
            }
        }
        Ok(())
    }

    pub(crate) fn with_original_ids(mut self, ids: Vec<u64>) -> Self {
        debug_assert_eq!(ids.len(), self.node_count());
        self.original_ids = Some(ids);
        self
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges, each counted once.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// The `i`-th entry of `v`'s incidence list.
    pub fn neighbor(&self, v: NodeId, i: usize) -> Result<NodeId> {
        self.check_node(v)?;
        let degree = self.degree_unchecked(v);
        if i >= degree {
            return Err(Error::NeighborOutOfRange {
                node: v,
                index: i,
                degree,
            });
        }
        Ok(self.neighbor_unchecked(v, i))
    }

    #[inline]
    pub(crate) fn neighbor_unchecked(&self, v: NodeId, i: usize) -> NodeId {
        self.neighbors[self.offsets[v] + i] as NodeId
    }

    /// Whole incidence list of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbor_slice(&self, v: NodeId) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.neighbor_slice(v).iter().map(|&u| u as NodeId)
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[u32] {
        &self.neighbors
    }

    /// Original input ids indexed by compacted id, when the graph was loaded
    /// from a file.
    pub fn original_ids(&self) -> Option<&[u64]> {
        self.original_ids.as_deref()
    }

    /// True when loading renamed at least one node.
    pub fn is_remapped(&self) -> bool {
        self.original_ids
            .as_ref()
            .is_some_and(|ids| ids.iter().enumerate().any(|(i, &id)| id != i as u64))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count())
            .map(|v| self.degree_unchecked(v))
            .max()
            .unwrap_or(0)
    }

    pub fn stats(&self) -> GraphStats {
        let max_degree = self.max_degree();
        let mut degree_histogram = vec![0usize; max_degree + 1];
        for v in 0..self.node_count() {
            degree_histogram[self.degree_unchecked(v)] += 1;
        }
        if self.node_count() == 0 {
            degree_histogram.clear();
        }
        GraphStats {
            node_count: self.node_count(),
            edge_count: self.edge_count,
            max_degree,
            degree_histogram,
        }
    }

    fn check_node(&self, v: NodeId) -> Result<()> {
        if v >= self.node_count() {
            Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            })
        } else {
            Ok(())
        }
    }
}

fn count_sorted(list: &[u32], x: u32) -> usize {
    let lo = list.partition_point(|&w| w < x);
    let hi = list.partition_point(|&w| w <= x);
    hi - lo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn degree_queries() {
        let k4 = complete(4);
        assert!((0..4).all(|v| k4.degree(v).unwrap() == 3));

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.degree(1).unwrap(), 2);

        let isolated = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(isolated.degree(2).unwrap(), 0);
        assert!(matches!(
            isolated.degree(3),
            Err(Error::NodeOutOfRange { node: 3, .. })
        ));
    }

    #[test]
    fn neighbor_queries() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut mid = vec![path.neighbor(1, 0).unwrap(), path.neighbor(1, 1).unwrap()];
        mid.sort();
        assert_eq!(mid, vec![0, 2]);
        assert!(matches!(
            path.neighbor(1, 2),
            Err(Error::NeighborOutOfRange {
                index: 2,
                degree: 2,
                ..
            })
        ));

        let k3 = complete(3);
        let mut pair = vec![k3.neighbor(0, 0).unwrap(), k3.neighbor(0, 1).unwrap()];
        pair.sort();
        assert_eq!(pair, vec![1, 2]);

        let star = Graph::from_edges(6, (1..6).map(|leaf| (0, leaf))).unwrap();
        let mut leaves: Vec<_> = (0..5).map(|i| star.neighbor(0, i).unwrap()).collect();
        leaves.sort();
        assert_eq!(leaves, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn parallel_edges_and_loops_are_removed() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(2).unwrap(), 0);
    }

    #[test]
    fn stats_histogram_sums_to_n() {
        let g = Graph::from_edges(6, (1..6).map(|leaf| (0, leaf))).unwrap();
        let s = g.stats();
        assert_eq!(s.max_degree, 5);
        assert_eq!(s.degree_histogram.iter().sum::<usize>(), 6);
        assert_eq!(s.degree_histogram[1], 5);
        assert_eq!(s.degree_histogram[5], 1);
        assert!(Graph::empty(0).stats().degree_histogram.is_empty());
    }

    #[test]
    fn from_csr_rejects_asymmetry() {
        // 0 -> 1 without 1 -> 0, padded to an even length.
        let err = Graph::from_csr(vec![0, 2, 2, 2], vec![1, 2]).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
        let ok = Graph::from_csr(vec![0, 1, 2], vec![1, 0]).unwrap();
        assert_eq!(ok.edge_count(), 1);
    }

    #[test]
    fn undeduplicated_arcs_keep_multiplicity() {
        let arcs = [(0, 1), (1, 0), (0, 1), (1, 0)];
        let g = Graph::from_arcs(2, &arcs, false, true).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(0).unwrap(), 2);

        let lopsided = [(0, 1), (1, 0), (0, 1), (0, 1)];
        assert!(Graph::from_arcs(2, &lopsided, false, true).is_err());
    }
}

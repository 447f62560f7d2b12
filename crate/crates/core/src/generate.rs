//! Synthetic workloads: Erdős–Rényi graphs and unions of disjoint cliques.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// G(n, p) with `p = avg_degree / (n - 1)`, deterministic per seed.
///
/// Pairs are visited with geometric skips, so the cost is O(n + m) rather
/// than O(n^2).
pub fn gen_erdos_renyi(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::parameter("Erdős–Rényi graph needs n >= 1"));
    }
    if avg_degree.is_nan() || avg_degree < 0.0 || avg_degree.is_infinite() {
        return Err(Error::parameter(format!(
            "average degree must be a nonnegative number, got {avg_degree}"
        )));
    }
    let max_avg = (n - 1) as f64;
    if avg_degree > max_avg {
        return Err(Error::parameter(format!(
            "average degree {avg_degree} exceeds n - 1 = {max_avg}"
        )));
    }
    if avg_degree == 0.0 {
        return Ok(Graph::empty(n));
    }
    let p = avg_degree / max_avg;
    let mut edges = Vec::new();
    if p >= 1.0 {
        for v in 1..n {
            edges.extend((0..v).map(|w| (v, w)));
        }
        return Graph::from_edges(n, edges);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    // Walk the lower triangle (v, w), w < v, row by row.
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w = w.saturating_add(1).saturating_add(skip as i64);
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as usize));
        }
    }
    Graph::from_edges(n, edges)
}

/// One clique of `large_size` nodes followed by `small_count` cliques of
/// `small_size` nodes each.
pub fn gen_clique_union(large_size: usize, small_size: usize, small_count: usize) -> Result<Graph> {
    if large_size == 0 || small_size == 0 {
        return Err(Error::parameter("clique sizes must be at least 1"));
    }
    let n = small_count
        .checked_mul(small_size)
        .and_then(|s| s.checked_add(large_size))
        .filter(|&n| n <= u32::MAX as usize)
        .ok_or(Error::Capacity {
            id: u64::MAX,
            max: u32::MAX as u64,
        })?;

    let blocks = std::iter::once(large_size).chain(std::iter::repeat_n(small_size, small_count));
    let total: usize = std::iter::once(large_size)
        .chain(std::iter::repeat_n(small_size, small_count))
        .map(|s| s * (s - 1))
        .sum();

    // Cliques are contiguous id ranges, so sorted lists can be written directly.
    let mut offsets = Vec::with_capacity(n + 1);
    let mut neighbors = Vec::with_capacity(total);
    offsets.push(0);
    let mut base = 0usize;
    for size in blocks {
        for v in base..base + size {
            neighbors.extend((base..base + size).filter(|&u| u != v).map(|u| u as u32));
            offsets.push(neighbors.len());
        }
        base += size;
    }
    Graph::from_csr(offsets, neighbors)
}

/// Shell-friendly generator description: `er:n,avgdeg[,seed]` or
/// `clique-union:large,small,count`.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    ErdosRenyi {
        n: usize,
        avg_degree: f64,
        seed: Option<u64>,
    },
    CliqueUnion {
        large_size: usize,
        small_size: usize,
        small_count: usize,
    },
}

impl GraphSpec {
    /// `default_seed` is used by Erdős–Rényi specs that carry no seed.
    pub fn generate(&self, default_seed: u64) -> Result<Graph> {
        match *self {
            GraphSpec::ErdosRenyi {
                n,
                avg_degree,
                seed,
            } => gen_erdos_renyi(n, avg_degree, seed.unwrap_or(default_seed)),
            GraphSpec::CliqueUnion {
                large_size,
                small_size,
                small_count,
            } => gen_clique_union(large_size, small_size, small_count),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::parameter(format!("generator {s:?}: {why}"));
        let (family, args) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let fields: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |x: &str| x.parse::<usize>().map_err(|_| bad("expected an integer"));
        match (family, fields.as_slice()) {
            ("er", [n, d]) | ("er", [n, d, _]) => Ok(GraphSpec::ErdosRenyi {
                n: int(n)?,
                avg_degree: d.parse().map_err(|_| bad("expected a number"))?,
                seed: match fields.get(2) {
                    Some(x) => Some(x.parse().map_err(|_| bad("expected an integer seed"))?),
                    None => None,
                },
            }),
            ("clique-union", [l, sz, c]) => Ok(GraphSpec::CliqueUnion {
                large_size: int(l)?,
                small_size: int(sz)?,
                small_count: int(c)?,
            }),
            ("er", _) => Err(bad("expected er:n,avgdeg[,seed]")),
            ("clique-union", _) => Err(bad("expected clique-union:large,small,count")),
            _ => Err(bad("unknown family (use er or clique-union)")),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::ErdosRenyi {
                n,
                avg_degree,
                seed: Some(seed),
            } => write!(f, "er:{n},{avg_degree},{seed}"),
            GraphSpec::ErdosRenyi { n, avg_degree, .. } => write!(f, "er:{n},{avg_degree}"),
            GraphSpec::CliqueUnion {
                large_size,
                small_size,
                small_count,
            } => write!(f, "clique-union:{large_size},{small_size},{small_count}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        assert_eq!(gen_erdos_renyi(5, 0.0, 1).unwrap().edge_count(), 0);
        let k5 = gen_erdos_renyi(5, 4.0, 1).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert!(gen_erdos_renyi(5, 4.5, 1).is_err());
        assert!(gen_erdos_renyi(0, 0.0, 1).is_err());
        assert_eq!(gen_erdos_renyi(1, 0.0, 1).unwrap().node_count(), 1);
    }

    #[test]
    fn er_edge_count_within_three_sigma() {
        // m ~ Binomial(n(n-1)/2, 20/999): mean 10000, sd = sqrt(10000 (1 - 20/999)).
        let n = 1000;
        let pairs = (n * (n - 1) / 2) as f64;
        let p = 20.0 / 999.0;
        let mean = pairs * p;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        for seed in 0..5 {
            let g = gen_erdos_renyi(n, 20.0, seed).unwrap();
            let m = g.edge_count() as f64;
            assert!((m - mean).abs() <= 3.0 * sd, "seed {seed}: m = {m}");
        }
    }

    #[test]
    fn er_is_seed_deterministic() {
        let a = gen_erdos_renyi(300, 7.0, 42).unwrap();
        let b = gen_erdos_renyi(300, 7.0, 42).unwrap();
        let c = gen_erdos_renyi(300, 7.0, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn clique_union_shape() {
        let g = gen_clique_union(4, 2, 3).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (10, 9));
        let single = gen_clique_union(1, 1, 0).unwrap();
        assert_eq!((single.node_count(), single.edge_count()), (1, 0));
        let big = gen_clique_union(100, 80, 50).unwrap();
        assert_eq!(big.node_count(), 4100);
        assert_eq!(big.max_degree(), 99);
        assert!(gen_clique_union(0, 3, 1).is_err());
    }

    #[test]
    fn spec_parsing() {
        let s: GraphSpec = "clique-union:100,80,50".parse().unwrap();
        assert_eq!(
            s,
            GraphSpec::CliqueUnion {
                large_size: 100,
                small_size: 80,
                small_count: 50
            }
        );
        assert_eq!(s.to_string(), "clique-union:100,80,50");
        let e: GraphSpec = "er:1000,20.5".parse().unwrap();
        assert_eq!(e.to_string(), "er:1000,20.5");
        let seeded: GraphSpec = "er:10,2,9".parse().unwrap();
        assert!(matches!(
            seeded,
            GraphSpec::ErdosRenyi { seed: Some(9), .. }
        ));
        for bad in ["er:10", "clique-union:1,2", "ring:5", "er10,2", "er:x,2"] {
            assert!(bad.parse::<GraphSpec>().is_err(), "{bad}");
        }
    }
}

//! Graph fixtures shared by the benchmarks.

use degen_core::{gen_clique_union, gen_erdos_renyi, Graph};

/// A named benchmark input.
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub epsilon: f64,
    pub c: f64,
}

/// Sparse random graphs where every approximate run falls back to peeling.
pub fn sparse_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "er-20k-avg20",
            graph: gen_erdos_renyi(20_000, 20.0, 1).expect("valid generator arguments"),
            epsilon: 0.5,
            c: 0.5,
        },
        Fixture {
            name: "clique-union-100k",
            graph: gen_clique_union(100, 80, 1249).expect("valid generator arguments"),
            epsilon: 0.5,
            c: 0.5,
        },
    ]
}

/// Dense inputs where trials sample instead of falling back.
pub fn sampling_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "clique-union-1500",
            graph: gen_clique_union(1500, 600, 6).expect("valid generator arguments"),
            epsilon: 1.0,
            c: 0.1,
        },
        Fixture {
            name: "er-4k-avg600",
            graph: gen_erdos_renyi(4096, 600.0, 2).expect("valid generator arguments"),
            epsilon: 1.0,
            c: 0.1,
        },
    ]
}

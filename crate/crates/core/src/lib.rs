//! Degeneracy and k-core decomposition of large undirected graphs.
//!
//! The approximate routines sample a small number of neighbors per
//! high-degree node and answer in time sublinear in the number of edges. The
//! exact bucket-queue peeling is both their fallback and the oracle they are
//! checked against.
//!
//! ```
//! use degen_core::{approximate_degeneracy, gen_clique_union, peel_degeneracy, ApproxOptions};
//!
//! let g = gen_clique_union(100, 80, 50).unwrap();
//! assert_eq!(peel_degeneracy(&g), 99);
//! let approx = approximate_degeneracy(&g, 0.5, 0.5, 7, ApproxOptions::default()).unwrap();
//! assert!(approx.value > 99.0 / (1.0f64 + 0.5 / 3.0).powi(2));
//! ```

pub mod approx;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kcore;
pub mod report;
pub mod scaling;

pub use approx::{
    approximate_degeneracy, lower_start_threshold, run_trial, validate_parameters, within_bound,
    ApproxOptions, ApproxResult, Params, RandomSource, RunStats, TrialObserver, TrialOutcome,
    TrialState,
};
pub use error::{Error, Result};
pub use exact::{
    check_outcore_bound, core_decomposition, induced_core_numbers, peel_degeneracy, CoreLabels,
    OutcoreTally,
};
pub use generate::{gen_clique_union, gen_erdos_renyi, GraphSpec};
pub use graph::{Graph, GraphStats, NodeId};
pub use io::{load_auto, load_edge_list, read_csr, write_csr, write_edge_list, LoadOptions};
pub use kcore::{approximate_core_decomposition, LabelSource, LabeledDecomposition};

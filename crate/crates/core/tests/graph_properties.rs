use degen_core::{
    gen_clique_union, gen_erdos_renyi, load_edge_list, read_csr, write_csr, write_edge_list, Graph,
    LoadOptions,
};
use proptest::prelude::*;

fn edge_list_text(edges: &[(u16, u16)]) -> String {
    edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
}

fn assert_invariants(g: &Graph) {
    let n = g.node_count();
    let offsets = g.offsets();
    assert_eq!(offsets[0], 0);
    assert_eq!(offsets[n], 2 * g.edge_count());
    assert!(offsets.windows(2).all(|w| w[0] <= w[1]));
    let mut degree_sum = 0;
    for v in 0..n {
        let d = g.degree(v).unwrap();
        degree_sum += d;
        for i in 0..d {
            let u = g.neighbor(v, i).unwrap();
            assert_ne!(u, v, "self-loop at {v}");
            // v must appear in u's list.
            let du = g.degree(u).unwrap();
            assert!(
                (0..du).any(|j| g.neighbor(u, j).unwrap() == v),
                "{v}-{u} one-sided"
            );
        }
        let list = g.neighbor_slice(v);
        assert!(
            list.windows(2).all(|w| w[0] < w[1]),
            "list of {v} unsorted or duplicated"
        );
    }
    assert_eq!(degree_sum, 2 * g.edge_count());
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<_> = (0..g.node_count()).map(|v| g.degree(v).unwrap()).collect();
    d.sort_unstable();
    d
}

proptest! {
    #[test]
    fn loaded_graphs_satisfy_invariants(edges in prop::collection::vec((0u16..60, 0u16..60), 0..300)) {
        let g = load_edge_list(edge_list_text(&edges).as_bytes(), &LoadOptions::default()).unwrap();
        assert_invariants(&g);
    }

    #[test]
    fn reserialization_is_idempotent(edges in prop::collection::vec((0u16..40, 0u16..40), 1..200)) {
        let g = load_edge_list(edge_list_text(&edges).as_bytes(), &LoadOptions::default()).unwrap();

        let mut text = Vec::new();
        write_edge_list(&g, &mut text).unwrap();
        let again = load_edge_list(text.as_slice(), &LoadOptions::default()).unwrap();
        // Isolated nodes are not written, so compare the nodes that have edges.
        let non_isolated = sorted_degrees(&g).into_iter().filter(|&d| d > 0).collect::<Vec<_>>();
        prop_assert_eq!(sorted_degrees(&again), non_isolated);
        prop_assert_eq!(again.edge_count(), g.edge_count());

        let mut bin = Vec::new();
        write_csr(&g, &mut bin).unwrap();
        prop_assert_eq!(read_csr(bin.as_slice()).unwrap(), g);
    }

    #[test]
    fn generators_satisfy_invariants(n in 1usize..80, frac in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gen_erdos_renyi(n, frac * (n - 1) as f64, seed).unwrap();
        assert_invariants(&g);
    }
}

#[test]
fn clique_union_invariants() {
    for (large, small, count) in [(4, 2, 3), (1, 1, 0), (30, 7, 9), (5, 1, 4)] {
        let g = gen_clique_union(large, small, count).unwrap();
        assert_invariants(&g);
        assert_eq!(g.node_count(), large + small * count);
        assert_eq!(
            g.edge_count(),
            large * (large - 1) / 2 + count * small * (small - 1) / 2
        );
    }
}

#[test]
fn reload_preserves_degree_multiset_with_remapping() {
    let text = "100 7\n7 3\n3 100\n42 7\n";
    let g = load_edge_list(text.as_bytes(), &LoadOptions::default()).unwrap();
    let mut out = Vec::new();
    write_edge_list(&g, &mut out).unwrap();
    let again = load_edge_list(out.as_slice(), &LoadOptions::default()).unwrap();
    assert_eq!(sorted_degrees(&g), sorted_degrees(&again));
}

// Tubes, nested fans and type cones of graph associahedra. The facets of
// the type cone are the extremal exchangeable tube pairs, and the type
// cone is simplicial exactly for paths.

use tclab::graph::{
    exchange_dependence, extremal_pair_count, extremal_pairs, nested_fan, verify_extremal_pairs,
    GraphInput, SimpleGraph,
};
use tclab::typecone;

pub fn run_example() {
    let cases = [
        ("path", SimpleGraph::path(4), 14),
        ("cycle", SimpleGraph::cycle(4), 20),
        ("star", SimpleGraph::star(4), 16),
        ("complete", SimpleGraph::complete(4), 24),
    ];
    for (name, g, tubings) in cases {
        let nf = nested_fan(&g).unwrap();
        let rep = typecone::facets(&typecone::assemble(&nf.fan));
        println!(
            "{name}4: {} proper tubes, {} maximal tubings, {} facets ({} extremal pairs), simplicial {}",
            nf.tubes.len(),
            nf.fan.maximal_cones().len(),
            rep.facet_count,
            extremal_pair_count(&g),
            rep.is_simplicial
        );
        assert_eq!(nf.fan.maximal_cones().len(), tubings);
        assert_eq!(rep.facet_count, extremal_pair_count(&g));
        assert_eq!(rep.is_simplicial, g.is_path());
        assert!(verify_extremal_pairs(&nf).unwrap().passed);
    }

    let input: GraphInput = serde_json::from_str(
        r#"{"vertices": ["x", "y", "z"], "edges": [["x", "y"], ["y", "z"], ["x", "z"]]}"#,
    )
    .unwrap();
    let k3 = SimpleGraph::from_input(&input).unwrap();
    for (t, tp) in extremal_pairs(&k3) {
        let dep = exchange_dependence(&k3, t, tp).unwrap();
        let terms: Vec<String> = dep
            .iter()
            .map(|&(s, c)| format!("{c:+} g{}", k3.format_tube(s)))
            .collect();
        println!(
            "  {} | {}: {} = 0",
            k3.format_tube(t),
            k3.format_tube(tp),
            terms.join(" ")
        );
    }

    // disconnected graphs are products
    let two_edges = SimpleGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
    let nf = nested_fan(&two_edges).unwrap();
    assert_eq!((nf.fan.ambient_dim(), nf.fan.maximal_cones().len()), (2, 4));
}

#[allow(dead_code)]
fn main() {
    run_example();
}

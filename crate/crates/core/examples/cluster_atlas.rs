// Seeds, g-vectors and mesh mutations of finite type cluster algebras.
// The type cone of the g-vector fan is simplicial, with one facet per
// non-initial mesh mutation.

use tclab::cluster::{
    cluster_fan, enumerate_atlas, exchange_dichotomy, mesh_dependence, mutate_seed,
    verify_mesh_facets, ExchangeMatrix, Seed,
};
use tclab::typecone;

fn summarize(name: &str, b: &ExchangeMatrix, variables: usize, seeds: usize) {
    let atlas = enumerate_atlas(b, 10_000).unwrap();
    println!(
        "{name}: {} variables, {} seeds, {} mesh pairs",
        atlas.variables.len(),
        atlas.seeds.len(),
        atlas.mesh_pairs.len()
    );
    assert_eq!(
        (atlas.variables.len(), atlas.seeds.len()),
        (variables, seeds)
    );
    assert!(exchange_dichotomy(&atlas).is_ok());

    let fan = cluster_fan(&atlas).unwrap();
    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    assert!(rep.is_simplicial);
    assert_eq!(rep.facet_count, variables - b.n());

    for &pair in atlas.mesh_pairs.iter().take(3) {
        let dep = mesh_dependence(&atlas, pair).unwrap();
        let terms: Vec<String> = dep
            .alpha
            .iter()
            .map(|(y, a)| format!("{a}*{}", fan.label(*y)))
            .collect();
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        println!("  {} + {} = {rhs}", fan.label(dep.x), fan.label(dep.xp));
    }
    let report = verify_mesh_facets(&atlas).unwrap();
    assert!(report.passed);
}

pub fn run_example() {
    // mutation is an involution on seeds
    let a3 = ExchangeMatrix::from_rows(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]).unwrap();
    let s0 = Seed::initial(&a3);
    let s1 = mutate_seed(&s0, 1).unwrap();
    assert_eq!(mutate_seed(&s1, 1).unwrap(), s0);
    println!(
        "mutating the initial A3 seed at 1 gives g-vector {}",
        s1.g_vector(1)
    );

    summarize(
        "A2",
        &ExchangeMatrix::from_rows(&[&[0, 1], &[-1, 0]]).unwrap(),
        5,
        5,
    );
    summarize("A3", &a3, 9, 14);
    summarize(
        "B2",
        &ExchangeMatrix::from_rows(&[&[0, 1], &[-2, 0]]).unwrap(),
        6,
        6,
    );
    summarize(
        "G2",
        &ExchangeMatrix::from_rows(&[&[0, 1], &[-3, 0]]).unwrap(),
        8,
        8,
    );
    summarize(
        "D4",
        &ExchangeMatrix::from_rows(&[
            &[0, 1, 1, 1],
            &[-1, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[-1, 0, 0, 0],
        ])
        .unwrap(),
        16,
        50,
    );
    summarize(
        "A1xA1",
        &ExchangeMatrix::from_rows(&[&[0, 0], &[0, 0]]).unwrap(),
        4,
        4,
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}

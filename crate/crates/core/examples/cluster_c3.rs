// Type C3 from a cyclic exchange matrix: the 12 g-vectors and the 9
// facets of the type cone, with their mesh coefficients.

use tclab::cluster::{
    cluster_fan, enumerate_atlas, mesh_dependence, ExchangeMatrix, ExchangeMatrixInput,
};
use tclab::exactla::RatVec;
use tclab::typecone;

pub fn run_example() {
    let input: ExchangeMatrixInput =
        serde_json::from_str(r#"{"n": 3, "B": [[0, -1, 2], [1, 0, -2], [-1, 1, 0]]}"#).unwrap();
    let b = ExchangeMatrix::from_input(&input).unwrap();
    println!("symmetrizer {:?}", b.symmetrizer());

    let atlas = enumerate_atlas(&b, 1000).unwrap();
    assert_eq!((atlas.variables.len(), atlas.seeds.len()), (12, 20));
    for g in &atlas.variables {
        print!("{g} ");
    }
    println!();
    assert!(atlas.variables.contains(&RatVec::from_ints(&[0, 2, -1])));
    assert!(atlas.variables.contains(&RatVec::from_ints(&[-2, 0, 1])));

    let fan = cluster_fan(&atlas).unwrap();
    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    assert!(rep.is_simplicial && rep.facet_count == 9);

    let mut doubled = 0;
    for &pair in &atlas.mesh_pairs {
        let dep = mesh_dependence(&atlas, pair).unwrap();
        if dep.alpha.values().any(|&a| a == 2) {
            doubled += 1;
            println!(
                "{} + {} = 2 * {}",
                fan.label(dep.x),
                fan.label(dep.xp),
                fan.label(*dep.alpha.keys().next().unwrap())
            );
        }
        let normal = dep.normal(atlas.variables.len());
        assert!(rep
            .facet_indices
            .iter()
            .any(|&i| tc.inequalities[i].normal == normal));
    }
    assert_eq!(doubled, 3);
}

#[allow(dead_code)]
fn main() {
    run_example();
}

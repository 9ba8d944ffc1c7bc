// The same associahedron from three constructions: the type A cluster
// fan, the non-kissing fan of a path quiver, and the nested fan of a path.

use tclab::cluster::{cluster_fan, enumerate_atlas, ExchangeMatrix};
use tclab::fan::find_isomorphism;
use tclab::gentle::{non_kissing_fan, validate_gentle, NonKissing, QuiverInput};
use tclab::graph::{nested_fan, SimpleGraph};

pub fn run_example() {
    let b = ExchangeMatrix::from_rows(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]).unwrap();
    let cluster = cluster_fan(&enumerate_atlas(&b, 100).unwrap()).unwrap();

    let q = QuiverInput::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[]);
    let gentle =
        non_kissing_fan(&NonKissing::new(&validate_gentle(&q).unwrap(), 100).unwrap()).unwrap();

    let graph = nested_fan(&SimpleGraph::path(4)).unwrap().fan;

    for (name, other) in [("non-kissing", &gentle), ("nested", &graph)] {
        let iso = find_isomorphism(&cluster, other).expect("isomorphic fans");
        println!("cluster A3 -> {name}: map rows");
        for r in iso.matrix.rows() {
            println!("  {r}");
        }
        for (i, &j) in iso.ray_map.iter().enumerate() {
            assert!(iso
                .matrix
                .mul_vec(cluster.ray(i))
                .same_direction(other.ray(j)));
        }
    }

    let cycle = nested_fan(&SimpleGraph::cycle(4)).unwrap().fan;
    assert!(find_isomorphism(&cluster, &cycle).is_none());
}

#[allow(dead_code)]
fn main() {
    run_example();
}

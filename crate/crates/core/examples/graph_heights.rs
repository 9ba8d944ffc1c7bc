// Classical heights on tubes and the polytopes they realize.

use tclab::graph::{classical_heights, nested_fan, HeightKind, SimpleGraph};
use tclab::typecone;

pub fn run_example() {
    let g = SimpleGraph::path(3);
    let nf = nested_fan(&g).unwrap();
    for kind in [HeightKind::Postnikov, HeightKind::Devadoss] {
        let h = classical_heights(&nf, kind);
        assert!(nf.fan.is_admissible(&h).unwrap());
        let p = typecone::polytope_from_height(&nf.fan, &h).unwrap();
        println!("{kind:?} on path3: h = {h}, {} vertices", p.vertices.len());
        for v in &p.vertices {
            println!("  {v}");
        }
    }

    for n in 3..=5 {
        for g in [
            SimpleGraph::path(n),
            SimpleGraph::cycle(n),
            SimpleGraph::star(n),
            SimpleGraph::complete(n),
        ] {
            let nf = nested_fan(&g).unwrap();
            for kind in [HeightKind::Postnikov, HeightKind::Devadoss] {
                assert!(nf.fan.is_admissible(&classical_heights(&nf, kind)).unwrap());
            }
            // counting tubes above each tube does not give a realization
            assert!(!nf
                .fan
                .is_admissible(&classical_heights(&nf, HeightKind::Upper))
                .unwrap());
        }
    }
    println!("postnikov and devadoss heights realize every path, cycle, star and complete graph on 3 to 5 vertices");
}

#[allow(dead_code)]
fn main() {
    run_example();
}

// Heights on the boundary of the type cone merge maximal cones. The
// pentagon degenerates to a quadrilateral, a triangle or a segment.

use tclab::exactla::RatVec;
use tclab::fan::{Fan, FanSpec};
use tclab::typecone;

pub fn run_example() {
    let fan = Fan::new(FanSpec {
        ambient_dim: 2,
        rays: [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|r| RatVec::from_ints(r))
            .collect(),
        maximal_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
        zero_height_rays: vec![],
        labels: vec!["a".into(), "b".into(), "c".into(), "d".into(), "e".into()],
    })
    .unwrap();

    let cases = [
        ("interior", [1, 1, 1, 1, 1], 5, 0),
        ("quadrilateral", [1, 2, 1, 1, 1], 4, 0),
        ("triangle", [1, 2, 1, 2, 1], 3, 0),
        ("segment", [0, 1, 1, 0, 1], 2, 1),
    ];
    for (name, h, classes, lineality) in cases {
        let h = RatVec::from_ints(&h);
        let c = typecone::coarsen_by_height(&fan, &h).unwrap();
        println!(
            "{name}: h = {h}, {} classes, lineality {}",
            c.classes.len(),
            c.lineality_dim
        );
        for (cl, v) in c.classes.iter().zip(&c.vertices) {
            println!("  cones {cl:?} -> vertex {v}");
        }
        assert_eq!((c.classes.len(), c.lineality_dim), (classes, lineality));
        assert_eq!(c.polytope_dim + c.lineality_dim, 2);
    }

    // outside the closed type cone there is nothing to coarsen
    assert!(typecone::coarsen_by_height(&fan, &RatVec::from_ints(&[1, 3, 1, 1, 1])).is_err());
}

#[allow(dead_code)]
fn main() {
    run_example();
}

// Type cone of the pentagon fan: wall-crossing inequalities, facets, and
// a polytope realization from prescribed facet values.

use tclab::exactla::{RatVec, Rational};
use tclab::fan::{Fan, FanSpec};
use tclab::typecone;

pub fn pentagon() -> Fan {
    Fan::new(FanSpec {
        ambient_dim: 2,
        rays: [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|r| RatVec::from_ints(r))
            .collect(),
        maximal_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
        zero_height_rays: vec![],
        labels: vec![],
    })
    .unwrap()
}

pub fn run_example() {
    let fan = pentagon();
    println!(
        "{} rays, {} cones, {} walls",
        fan.n_rays(),
        fan.maximal_cones().len(),
        fan.adjacent_pairs().len()
    );
    for rel in fan.relations() {
        let terms: Vec<String> = rel
            .coeffs
            .iter()
            .map(|(i, c)| format!("{c}*h{i}"))
            .collect();
        println!(
            "  wall {}|{}: {} > 0",
            rel.ray_r,
            rel.ray_rp,
            terms.join(" + ")
        );
    }

    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    assert_eq!((rep.facet_count, rep.cone_dim), (3, 3));
    assert!(rep.is_simplicial);
    println!(
        "type cone: {} raw inequalities, dim {}, {} facets",
        tc.raw_count(),
        rep.cone_dim,
        rep.facet_count
    );

    // simplicial: any positive facet values give a realization
    let ell = RatVec::new(vec![
        Rational::new(1, 2),
        Rational::one(),
        Rational::from_int(2),
    ]);
    let h_ell = typecone::realization_from_positive(&tc, &rep, &ell).unwrap();
    for (k, &i) in rep.facet_indices.iter().enumerate() {
        assert_eq!(tc.inequalities[i].normal.dot(&h_ell), ell[k]);
    }
    println!("height with facet values {ell}: {h_ell}");

    let h = RatVec::from_ints(&[1, 1, 1, 1, 1]);
    assert!(fan.is_admissible(&h).unwrap());
    let p = typecone::polytope_from_height(&fan, &h).unwrap();
    println!("polytope for h = {h}:");
    for (v, c) in p.vertices.iter().zip(fan.maximal_cones()) {
        println!("  {v} at cone {c:?}");
        for &r in c {
            assert_eq!(fan.ray(r).dot(v), h[r]);
        }
    }

    let shifted = h.add(&fan.ray_matrix().mul_vec(&RatVec::from_ints(&[3, -2])));
    assert!(fan.is_admissible(&shifted).unwrap());
    let bad = RatVec::new(vec![
        Rational::one(),
        Rational::one(),
        Rational::from_int(5),
        Rational::one(),
        Rational::one(),
    ]);
    assert!(!fan.is_admissible(&bad).unwrap());
    assert!(typecone::polytope_from_height(&fan, &bad).is_err());
}

#[allow(dead_code)]
fn main() {
    run_example();
}

// Extreme rays of type cones and Minkowski decomposition of heights.
// The pentagon's type cone is simplicial, so every admissible polytope is
// a unique positive sum of the three indecomposable summands. The
// hexagon's is not: it has more rays than its dimension.

use tclab::exactla::{RatMat, RatVec, Rational};
use tclab::fan::{Fan, FanSpec};
use tclab::typecone::{self, DEFAULT_DD_CAP};

fn polygon_fan(rays: &[[i64; 2]]) -> Fan {
    let k = rays.len();
    Fan::new(FanSpec {
        ambient_dim: 2,
        rays: rays.iter().map(|r| RatVec::from_ints(r)).collect(),
        maximal_cones: (0..k).map(|i| vec![i, (i + 1) % k]).collect(),
        zero_height_rays: vec![],
        labels: vec![],
    })
    .unwrap()
}

fn show(coeffs: &[Rational]) -> String {
    coeffs
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run_example() {
    let pentagon = polygon_fan(&[[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]]);
    let tc = typecone::assemble(&pentagon);
    let rays = typecone::extreme_rays(&tc, DEFAULT_DD_CAP).unwrap();
    assert_eq!(rays.len(), 3);
    println!(
        "pentagon type cone rays: {}",
        rays.iter()
            .map(RatVec::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );

    // any representatives work, here the triangle and two segments
    let basis = [
        RatVec::from_ints(&[1, 2, 1, 2, 1]),
        RatVec::from_ints(&[0, 1, 1, 0, 1]),
        RatVec::from_ints(&[1, 0, 1, 1, 0]),
    ];
    for b in &basis {
        assert!(rays
            .iter()
            .any(|r| tc.project(r).same_direction(&tc.project(b))));
    }
    let h: RatVec = ["1/2", "3/4", "5/4", "1", "5/4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let m = typecone::minkowski_decompose(&tc, &h, &basis).unwrap();
    println!(
        "h = {h} decomposes as ({}) plus a translation {}",
        show(&m.coefficients),
        m.translation
    );
    assert_eq!(
        m.coefficients,
        vec![
            Rational::new(1, 6),
            Rational::new(3, 4),
            Rational::new(1, 2)
        ]
    );
    let mut back = pentagon.ray_matrix().mul_vec(&m.translation);
    for (c, b) in m.coefficients.iter().zip(&basis) {
        back = back.axpy(c, b);
    }
    assert_eq!(back, h);

    let hexagon = polygon_fan(&[[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]]);
    let tc = typecone::assemble(&hexagon);
    let rep = typecone::facets(&tc);
    let rays = typecone::extreme_rays(&tc, DEFAULT_DD_CAP).unwrap();
    println!(
        "hexagon: dim {}, {} facets, {} extreme rays",
        rep.cone_dim,
        rep.facet_count,
        rays.len()
    );
    assert!(!rep.is_simplicial && rays.len() > rep.cone_dim);

    // an independent subset of the rays still spans the type cone mod lineality
    let mut chosen: Vec<RatVec> = Vec::new();
    for r in &rays {
        let mut trial: Vec<RatVec> = chosen.iter().map(|c| tc.project(c)).collect();
        trial.push(tc.project(r));
        if RatMat::from_rows(trial).rank() > chosen.len() {
            chosen.push(r.clone());
        }
    }
    assert_eq!(chosen.len(), rep.cone_dim);
    let h = RatVec::from_ints(&[2, 3, 3, 2, 3, 3]);
    let m = typecone::minkowski_decompose(&tc, &h, &chosen).unwrap();
    println!(
        "signed coefficients over {} chosen rays: ({})",
        chosen.len(),
        show(&m.coefficients)
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}

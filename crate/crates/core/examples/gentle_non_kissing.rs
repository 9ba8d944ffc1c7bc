// Non-kissing complexes of gentle bound quivers: walks, facets, flips,
// c-vectors, hook sums and the type cone of the g-vector fan.

use tclab::exactla::RatVec;
use tclab::gentle::{
    hook_walks, is_brick, is_two_acyclic, kissing_numbers, non_kissing_fan, validate_gentle,
    verify_hook_facets, NonKissing, QuiverInput, WalkKind,
};
use tclab::typecone;

fn complex(q: &QuiverInput) -> NonKissing {
    NonKissing::new(&validate_gentle(q).unwrap(), 1000).unwrap()
}

pub fn run_example() {
    // 1 -> 2 -> 3 with no relation: the 3-dimensional associahedron
    let path = QuiverInput::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[]);
    let nk = complex(&path);
    println!(
        "path: {} strings, {} proper walks, {} facets",
        nk.strings.len(),
        nk.proper.len(),
        nk.facets.len()
    );
    assert_eq!(
        (nk.strings.len(), nk.proper.len(), nk.facets.len()),
        (6, 9, 14)
    );
    for &w in &nk.proper {
        println!("  {:<24} g = {}", nk.format_walk(w), nk.g_vector(w));
    }

    // flipping a walk in a facet: g-vectors and c-vectors are dual bases
    let f = &nk.facets[0];
    for &w in f {
        let c = nk.c_vector(w, f).unwrap();
        for &v in f {
            let want = if v == w { 1 } else { 0 };
            assert_eq!(nk.g_vector(v).dot(&c), want.into());
        }
        let out = nk.flip(f, w).unwrap();
        assert!(out.dependence_holds);
        assert_eq!(nk.flip(&out.facet, out.added).unwrap().added, w);
    }

    let report = verify_hook_facets(&nk).unwrap();
    assert!(report.applicable && report.passed && report.simplicial);
    for s in nk.strings.iter().take(3) {
        let h = hook_walks(&nk, s).unwrap();
        println!(
            "  string {}: hooks {} and {}",
            nk.format_string(s),
            nk.format_walk(h.hh),
            nk.format_walk(h.cc)
        );
    }

    // a relation at 2 keeps it brick and 2-acyclic: 8 walks, 5 facets
    let rel = QuiverInput::new(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3")],
        &[("a", "b")],
    );
    let fan = non_kissing_fan(&complex(&rel)).unwrap();
    let rep = typecone::facets(&typecone::assemble(&fan));
    assert_eq!(
        (fan.n_rays(), rep.facet_count, rep.is_simplicial),
        (8, 5, true)
    );

    // closing the path into a 3-cycle with a single relation breaks brickness
    let cyc = QuiverInput::new(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        &[("a", "b")],
    );
    let nk = complex(&cyc);
    let fan = non_kissing_fan(&nk).unwrap();
    let rep = typecone::facets(&typecone::assemble(&fan));
    println!(
        "3-cycle: {} rays, {} facets, simplicial {}",
        fan.n_rays(),
        rep.facet_count,
        rep.is_simplicial
    );
    assert_eq!(
        (fan.n_rays(), rep.facet_count, rep.is_simplicial),
        (11, 9, false)
    );
    assert!(!is_brick(&nk.quiver));

    // the two-cycle with both relations is brick but not 2-acyclic
    let two = QuiverInput::new(
        &["1", "2"],
        &[("a", "1", "2"), ("b", "2", "1")],
        &[("a", "b"), ("b", "a")],
    );
    let bq = validate_gentle(&two).unwrap();
    assert!(is_brick(&bq) && !is_two_acyclic(&bq));
    let nk = complex(&two);
    let e1 = nk
        .strings
        .iter()
        .find(|s| s.letters.is_empty() && s.start == 0)
        .unwrap();
    let h = hook_walks(&nk, e1).unwrap();
    println!(
        "two-cycle: hooks of the vertex string at 1 have g = {} and {}",
        nk.g_vector(h.hh),
        nk.g_vector(h.cc)
    );
    assert_eq!(nk.g_vector(h.hh).add(&nk.g_vector(h.cc)), RatVec::zeros(2));

    // kissing numbers always realize the fan
    let fan = non_kissing_fan(&nk).unwrap();
    let kn = kissing_numbers(&nk);
    let h: RatVec = (0..fan.n_rays())
        .map(|r| {
            let w = nk.proper[r];
            (kn[w] as i64).into()
        })
        .collect();
    assert!(fan.is_admissible(&h).unwrap());
    println!(
        "kissing numbers {h} are admissible; {} straight walks",
        nk.walks_of_kind(WalkKind::Straight).len()
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}

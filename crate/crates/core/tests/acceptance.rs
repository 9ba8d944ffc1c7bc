// One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tclab::cluster::{
    cluster_fan, enumerate_atlas, mesh_dependence, mutate_seed, verify_mesh_facets, ClusterAtlas,
    ExchangeMatrix, Seed,
};
use tclab::exactla::{left_kernel_basis, RatMat, RatVec, Rational};
use tclab::fan::{find_isomorphism, Fan, FanSpec};
use tclab::gentle::{
    hook_walks, is_brick, is_two_acyclic, kissing_numbers, non_kissing_fan, validate_gentle,
    verify_hook_facets, NonKissing, QuiverInput,
};
use tclab::graph::{
    classical_heights, extremal_pair_count, graphs_up_to_isomorphism, nested_fan,
    verify_extremal_pairs, HeightKind, SimpleGraph,
};
use tclab::typecone::{self, FacetReport, TypeConeData, DEFAULT_DD_CAP};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn qv(xs: &[&str]) -> RatVec {
    xs.iter().map(|s| q(s)).collect()
}

fn pentagon() -> Fan {
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

fn analyse(fan: &Fan) -> (TypeConeData, FacetReport) {
    let tc = typecone::assemble(fan);
    let rep = typecone::facets(&tc);
    (tc, rep)
}

fn facet_normals(tc: &TypeConeData, rep: &FacetReport) -> BTreeSet<RatVec> {
    rep.facet_indices
        .iter()
        .map(|&i| tc.inequalities[i].normal.primitive())
        .collect()
}

fn complex(q: &QuiverInput) -> NonKissing {
    NonKissing::new(&validate_gentle(q).unwrap(), 1000).unwrap()
}

fn path12() -> QuiverInput {
    QuiverInput::new(&["1", "2"], &[("a", "1", "2")], &[])
}

fn two_cycle() -> QuiverInput {
    QuiverInput::new(
        &["1", "2"],
        &[("a", "1", "2"), ("b", "2", "1")],
        &[("a", "b"), ("b", "a")],
    )
}

fn gentle_test_quivers() -> Vec<(&'static str, QuiverInput)> {
    vec![
        ("1->2", path12()),
        (
            "1->2->3",
            QuiverInput::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[]),
        ),
        (
            "1->2->3 / ab",
            QuiverInput::new(
                &["1", "2", "3"],
                &[("a", "1", "2"), ("b", "2", "3")],
                &[("a", "b")],
            ),
        ),
        (
            "3-cycle / ab",
            QuiverInput::new(
                &["1", "2", "3"],
                &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
                &[("a", "b")],
            ),
        ),
        (
            "2-cycle / ab",
            QuiverInput::new(
                &["1", "2"],
                &[("a", "1", "2"), ("b", "2", "1")],
                &[("a", "b")],
            ),
        ),
        ("2-cycle / ab, ba", two_cycle()),
        (
            "1<-2->3",
            QuiverInput::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")], &[]),
        ),
    ]
}

fn atlas(rows: &[&[i64]]) -> ClusterAtlas {
    enumerate_atlas(&ExchangeMatrix::from_rows(rows).unwrap(), 10_000).unwrap()
}

const A3_CYCLIC: [&[i64]; 3] = [&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]];
const C3_CYCLIC: [&[i64]; 3] = [&[0, -1, 2], &[1, 0, -2], &[-1, 1, 0]];

const C3_G: [[i64; 3]; 12] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [-1, 0, 1],
    [1, -1, 0],
    [0, 2, -1],
    [0, 1, -1],
    [-1, 1, 0],
    [0, -1, 0],
    [0, 0, -1],
    [-2, 0, 1],
    [-1, 0, 0],
];

const C3_FACETS: [[i64; 12]; 9] = [
    [1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, -1, 1, 1, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 1, -2, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, -1, 0, 1, 0, 0, 0, 1, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 1, -2, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, -1, 1, 1, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 1, 0, -2, 0, 0, 1, 0],
    [-1, 0, 0, 0, 1, 0, 1, 0, 0, -1, 0, 0],
];

const TWO_CYCLE_G: [[i64; 2]; 6] = [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]];

const TWO_CYCLE_ROWS: [[i64; 6]; 5] = [
    [1, -1, 1, 0, 0, 0],
    [0, 1, -1, 1, 0, 0],
    [0, 0, 1, -1, 1, 0],
    [0, 0, 0, 1, -1, 1],
    [1, 0, 0, 0, 1, -1],
];

/// Rows indexed by table columns, rewritten in ray order of `fan`.
fn table_rows<const N: usize>(
    fan: &Fan,
    cols: &[RatVec],
    rows: &[[i64; N]],
) -> Result<BTreeSet<RatVec>, String> {
    let mut col_to_ray = Vec::new();
    for g in cols {
        let r = (0..fan.n_rays())
            .find(|&r| fan.ray(r) == g)
            .ok_or(format!("no ray {g}"))?;
        col_to_ray.push(r);
    }
    Ok(rows
        .iter()
        .map(|row| {
            let mut v = RatVec::zeros(fan.n_rays());
            for (c, &x) in row.iter().enumerate() {
                v[col_to_ray[c]] = Rational::from_int(x);
            }
            v.primitive()
        })
        .collect())
}

// Independent redundancy oracle: pass to quotient coordinates y_i with
// f_i = K^T y_i, enumerate the extreme rays of {u : y.u >= 0} from every
// (d-1)-subset of normals, and call i a facet when its tight rays span d-1.
fn brute_force_facets(fan: &Fan, tc: &TypeConeData) -> Option<BTreeSet<usize>> {
    if !fan.zero_height_rays().is_empty() {
        return None;
    }
    let k = left_kernel_basis(&fan.ray_matrix()).ok()?;
    let kt = k.transpose();
    let ys: Vec<RatVec> = tc
        .inequalities
        .iter()
        .map(|ineq| kt.solve(&ineq.normal).unwrap().any().unwrap())
        .collect();
    let d = k.nrows();
    assert_eq!(
        RatMat::from_rows(ys.clone()).rank(),
        d,
        "type cone is pointed"
    );
    let m = ys.len();
    let mut rays: BTreeSet<RatVec> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..d - 1).collect();
    loop {
        let rows: Vec<RatVec> = subset.iter().map(|&i| ys[i].clone()).collect();
        let a = RatMat::new(rows, d).unwrap();
        if a.rank() == d - 1 {
            let u = a.nullspace().remove(0).primitive();
            for cand in [u.clone(), u.neg()] {
                if ys.iter().all(|y| !y.dot(&cand).is_negative()) {
                    rays.insert(cand);
                }
            }
        }
        // next (d-1)-subset in lexicographic order
        let mut i = subset.len();
        loop {
            if i == 0 {
                let mut out = BTreeSet::new();
                for (j, y) in ys.iter().enumerate() {
                    let tight: Vec<RatVec> = rays
                        .iter()
                        .filter(|r| y.dot(r).is_zero())
                        .cloned()
                        .collect();
                    let rank = if tight.is_empty() {
                        0
                    } else {
                        RatMat::new(tight, d).unwrap().rank()
                    };
                    if rank == d - 1 {
                        out.insert(j);
                    }
                }
                return Some(out);
            }
            i -= 1;
            if subset[i] < m - (subset.len() - i) {
                subset[i] += 1;
                for j in i + 1..subset.len() {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn criterion_1() -> Outcome {
    let fan = pentagon();
    let (tc, rep) = analyse(&fan);
    ensure!(
        tc.raw_count() == 5 && tc.inequalities.len() == 5,
        "{} inequalities",
        tc.raw_count()
    );
    let want: BTreeSet<RatVec> = [[1, -1, 1, 0, 0], [0, 1, -1, 1, 0], [0, 0, 1, -1, 1]]
        .iter()
        .map(|r| RatVec::from_ints(r))
        .collect();
    ensure!(facet_normals(&tc, &rep) == want, "facets differ");
    let redundant: BTreeSet<RatVec> = rep
        .redundant
        .iter()
        .map(|r| tc.inequalities[r.inequality].normal.primitive())
        .collect();
    let want_red: BTreeSet<RatVec> = [[1, 0, 0, 1, 0], [0, 1, 0, 0, 1]]
        .iter()
        .map(|r| RatVec::from_ints(r))
        .collect();
    ensure!(redundant == want_red, "redundant set differs");
    ensure!(rep.is_simplicial, "not simplicial");
    let h = qv(&["1/2", "3/4", "5/4", "1", "5/4"]);
    ensure!(fan.is_admissible(&h).unwrap(), "h not admissible");
    Ok("5 inequalities, facets {h1+h3-h2, h2+h4-h3, h3+h5-h4}, h1+h4 and h2+h5 redundant, simplicial".into())
}

fn criterion_2() -> Outcome {
    let fan = pentagon();
    let (tc, _) = analyse(&fan);
    let rays = typecone::extreme_rays(&tc, DEFAULT_DD_CAP).map_err(|e| e.to_string())?;
    let basis = [
        RatVec::from_ints(&[1, 2, 1, 2, 1]),
        RatVec::from_ints(&[0, 1, 1, 0, 1]),
        RatVec::from_ints(&[1, 0, 1, 1, 0]),
    ];
    ensure!(rays.len() == 3, "{} rays", rays.len());
    for b in &basis {
        ensure!(
            rays.iter()
                .any(|r| tc.project(r).same_direction(&tc.project(b))),
            "no ray along {b}"
        );
    }
    let h = qv(&["1/2", "3/4", "5/4", "1", "5/4"]);
    let m = typecone::minkowski_decompose(&tc, &h, &basis).map_err(|e| e.to_string())?;
    ensure!(
        m.coefficients == vec![q("1/6"), q("3/4"), q("1/2")],
        "coefficients {:?}",
        m.coefficients
    );
    Ok("3 extreme rays along (1,2,1,2,1), (0,1,1,0,1), (1,0,1,1,0); h = 1/6, 3/4, 1/2".into())
}

fn criterion_3() -> Outcome {
    let fan = pentagon();
    let c = typecone::coarsen_by_height(&fan, &RatVec::from_ints(&[1, 2, 1, 2, 1]))
        .map_err(|e| e.to_string())?;
    ensure!(
        c.classes.len() == 3 && c.lineality_dim == 0,
        "triangle: {} classes",
        c.classes.len()
    );
    for h in [[0, 1, 1, 0, 1], [1, 0, 1, 1, 0]] {
        let c =
            typecone::coarsen_by_height(&fan, &RatVec::from_ints(&h)).map_err(|e| e.to_string())?;
        ensure!(
            c.classes.len() == 2 && c.lineality_dim == 1,
            "segment {h:?}: {} classes",
            c.classes.len()
        );
    }
    Ok(
        "triangle height gives 3 classes; both segment heights give 2 classes with 1-dim lineality"
            .into(),
    )
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (name, rows, vars, mesh) in [("A3", &A3_CYCLIC, 9, 6), ("C3", &C3_CYCLIC, 12, 9)] {
        let at = atlas(rows);
        let (nv, nm) = (at.variables.len(), at.mesh_pairs.len());
        ensure!(
            (nv, nm) == (vars, mesh),
            "{name}: {nv} variables, {nm} mesh pairs"
        );
        ensure!(nv == nm + at.n(), "{name}: |V| != |M| + n");
        let fan = cluster_fan(&at).unwrap();
        let (tc, rep) = analyse(&fan);
        ensure!(
            rep.is_simplicial && rep.facet_count == nm,
            "{name}: {} facets",
            rep.facet_count
        );
        let mesh_normals: BTreeSet<RatVec> = at
            .mesh_pairs
            .iter()
            .map(|&p| mesh_dependence(&at, p).unwrap().normal(nv).primitive())
            .collect();
        ensure!(
            facet_normals(&tc, &rep) == mesh_normals,
            "{name}: facets are not the mesh normals"
        );
        if name == "C3" {
            let cols: Vec<RatVec> = C3_G.iter().map(|g| RatVec::from_ints(g)).collect();
            let got: BTreeSet<RatVec> = at.variables.iter().cloned().collect();
            ensure!(
                got == cols.iter().cloned().collect(),
                "C3 g-vectors differ from the table"
            );
            ensure!(
                table_rows(&fan, &cols, &C3_FACETS)? == facet_normals(&tc, &rep),
                "C3 facet rows differ"
            );
        }
        notes.push(format!("{name}: {nv} = {nm} + {}", at.n()));
    }
    Ok(format!(
        "{}; facets are the mesh normals, simplicial; C3 table matched",
        notes.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let mut counts = Vec::new();
    for (name, rows) in [("A3", &A3_CYCLIC), ("C3", &C3_CYCLIC)] {
        let at = atlas(rows);
        let rep = verify_mesh_facets(&at).map_err(|e| e.to_string())?;
        ensure!(
            rep.undecomposed.is_empty(),
            "{name}: undecomposed {:?}",
            rep.undecomposed
        );
        let nv = at.variables.len();
        for d in &rep.decompositions {
            ensure!(
                d.combination.iter().all(|(_, c)| !c.is_negative()),
                "{name}: negative coefficient"
            );
            let mut sum = RatVec::zeros(nv);
            for (pair, c) in &d.combination {
                sum = sum.axpy(c, &mesh_dependence(&at, *pair).unwrap().normal(nv));
            }
            ensure!(
                sum == d.normal,
                "{name}: combination for inequality {} does not sum",
                d.inequality
            );
        }
        let ex = rep.decompositions.first().map(|d| {
            let terms: Vec<String> = d
                .combination
                .iter()
                .map(|((a, b), c)| format!("{c}*m({a},{b})"))
                .collect();
            format!(" e.g. n{} = {}", d.inequality, terms.join(" + "))
        });
        counts.push(format!(
            "{name} {} non-mesh normals{}",
            rep.decompositions.len(),
            ex.unwrap_or_default()
        ));
    }
    Ok(counts.join("; "))
}

fn criterion_6() -> Outcome {
    let nk = complex(&path12());
    ensure!(
        nk.strings.len() == 3 && nk.proper.len() == 5,
        "{} strings, {} walks",
        nk.strings.len(),
        nk.proper.len()
    );
    ensure!(
        nk.strings.len() + nk.n_vertices() == nk.proper.len(),
        "string/walk identity fails"
    );
    let fan = non_kissing_fan(&nk).unwrap();
    ensure!(
        find_isomorphism(&fan, &pentagon()).is_some(),
        "not isomorphic to the A2 fan"
    );
    let (tc, rep) = analyse(&fan);
    ensure!(
        rep.is_simplicial && rep.facet_count == 3,
        "{} facets",
        rep.facet_count
    );
    let hooks: BTreeSet<RatVec> = nk
        .strings
        .iter()
        .map(|s| {
            let h = hook_walks(&nk, s).unwrap();
            let mut v = RatVec::zeros(fan.n_rays());
            for (w, c) in [(h.hh, 1), (h.cc, 1), (h.hc, -1), (h.ch, -1)] {
                if let Some(r) = nk.ray_index(w) {
                    v[r] += Rational::from_int(c);
                }
            }
            v.primitive()
        })
        .collect();
    ensure!(
        hooks == facet_normals(&tc, &rep),
        "facets are not the hook sums"
    );
    let h = typecone::realization_from_positive(&tc, &rep, &RatVec::from_ints(&[1, 1, 1]))
        .map_err(|e| e.to_string())?;
    ensure!(fan.is_admissible(&h).unwrap(), "realization not admissible");
    ensure!(
        verify_hook_facets(&nk).unwrap().passed,
        "hook report failed"
    );
    Ok(format!(
        "3 strings + 2 vertices = 5 walks, fan = A2 fan, 3 hook facets, realization {h}"
    ))
}

fn criterion_7() -> Outcome {
    let nk = complex(&two_cycle());
    let bq = validate_gentle(&two_cycle()).unwrap();
    ensure!(
        is_brick(&bq) && !is_two_acyclic(&bq),
        "brick/2-acyclic flags wrong"
    );
    let fan = non_kissing_fan(&nk).unwrap();
    let cols: Vec<RatVec> = TWO_CYCLE_G.iter().map(|g| RatVec::from_ints(g)).collect();
    let got: BTreeSet<RatVec> = fan.rays().iter().cloned().collect();
    ensure!(
        nk.proper.len() == 6 && got == cols.iter().cloned().collect(),
        "walk g-vectors differ"
    );
    let (tc, rep) = analyse(&fan);
    ensure!(
        !rep.is_simplicial && rep.cone_dim == 4,
        "simplicial or wrong dimension"
    );
    let printed = table_rows(&fan, &cols, &TWO_CYCLE_ROWS)?;
    let facets = facet_normals(&tc, &rep);
    ensure!(printed.is_subset(&facets), "a printed row is not a facet");
    let extra: Vec<&RatVec> = facets.difference(&printed).collect();
    let wall = table_rows(&fan, &cols, &[[-1, 1, 0, 0, 0, 1]])?;
    ensure!(
        extra.len() == 1 && wall.contains(extra[0]),
        "unexpected extra facets {extra:?}"
    );
    let oracle = brute_force_facets(&fan, &tc).unwrap();
    ensure!(oracle.len() == 6, "oracle finds {} facets", oracle.len());
    // the printed rows alone admit a height that violates the extra wall
    let witness: RatVec = qv(&["0", "0", "3/2", "2", "1", "0"]);
    let mut h = RatVec::zeros(6);
    for (c, g) in cols.iter().enumerate() {
        h[(0..6).find(|&r| fan.ray(r) == g).unwrap()] = witness[c].clone();
    }
    ensure!(
        printed.iter().all(|f| f.dot(&h).is_positive()),
        "witness violates a printed row"
    );
    ensure!(!fan.is_admissible(&h).unwrap(), "witness is admissible");
    let e1 = nk
        .strings
        .iter()
        .find(|s| s.letters.is_empty() && s.start == 0)
        .unwrap();
    let hw = hook_walks(&nk, e1).unwrap();
    let (a, b) = (nk.ray_index(hw.hh).unwrap(), nk.ray_index(hw.cc).unwrap());
    let exchangeable = fan
        .adjacent_pairs()
        .iter()
        .any(|p| (p.ray_r, p.ray_rp) == (a, b) || (p.ray_r, p.ray_rp) == (b, a));
    ensure!(!exchangeable, "hh and cc are exchangeable");
    Ok(format!(
        "6 walks as listed, dim 4, not simplicial; printed 5 rows are facets plus the wall -h1+h2+h6 \
         (6 irredundant, oracle agrees; known deviation); g(hh) = {}, g(cc) = {} not exchangeable",
        nk.g_vector(hw.hh),
        nk.g_vector(hw.cc)
    ))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    for n in 3..=5 {
        let cases = [
            (
                "complete",
                SimpleGraph::complete(n),
                (1 << (n - 2)) * binom(n, 2),
            ),
            ("path", SimpleGraph::path(n), binom(n, 2)),
            ("cycle", SimpleGraph::cycle(n), 3 * binom(n, 2) - n),
            (
                "star",
                SimpleGraph::star(n),
                n - 1 + (1 << (n - 3)) * binom(n - 1, 2),
            ),
        ];
        for (name, g, want) in cases {
            let (_, rep) = analyse(&nested_fan(&g).unwrap().fan);
            ensure!(
                extremal_pair_count(&g) == want,
                "{name}{n}: {} pairs",
                extremal_pair_count(&g)
            );
            ensure!(
                rep.facet_count == want,
                "{name}{n}: {} facets, expected {want}",
                rep.facet_count
            );
        }
    }
    let mut checked = 0;
    for n in 2..=5 {
        for g in graphs_up_to_isomorphism(n, true) {
            let r = verify_extremal_pairs(&nested_fan(&g).unwrap()).map_err(|e| e.to_string())?;
            ensure!(r.facets_match_pairs && r.passed, "{g}: {r:?}");
            ensure!(
                r.simplicial == g.is_path(),
                "{g}: simplicial {}",
                r.simplicial
            );
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.1}s");
    Ok(format!("closed formulas for n = 3..5; {checked} connected graphs on <= 5 vertices: facets = extremal pairs, simplicial iff path ({secs:.1}s)"))
}

fn criterion_9() -> Outcome {
    let mut graphs = 0;
    let mut upper_ok = 0;
    for n in 2..=6 {
        for g in graphs_up_to_isomorphism(n, false) {
            if g.rank() == 0 {
                continue;
            }
            let nf = nested_fan(&g).unwrap();
            for kind in [HeightKind::Postnikov, HeightKind::Devadoss] {
                ensure!(
                    nf.fan.is_admissible(&classical_heights(&nf, kind)).unwrap(),
                    "{kind:?} fails on {g}"
                );
            }
            if nf
                .fan
                .is_admissible(&classical_heights(&nf, HeightKind::Upper))
                .unwrap()
            {
                upper_ok += 1;
            }
            graphs += 1;
        }
    }
    let mut quivers = 0;
    for (name, q) in gentle_test_quivers() {
        let nk = complex(&q);
        let fan = non_kissing_fan(&nk).unwrap();
        let kn = kissing_numbers(&nk);
        let h: RatVec = nk
            .proper
            .iter()
            .map(|&w| Rational::from_int(kn[w] as i64))
            .collect();
        ensure!(
            fan.is_admissible(&h).unwrap(),
            "kissing numbers fail on {name}"
        );
        quivers += 1;
    }
    Ok(format!(
        "postnikov and devadoss admissible on {graphs} graphs with <= 6 vertices; kissing numbers on {quivers} quivers; \
         upper admissible on {upper_ok} graphs (known deviation: its negation carries the pairing identity)"
    ))
}

fn criterion_10() -> Outcome {
    // involutions along random mutation and flip sequences
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let types: [&[&[i64]]; 4] = [
        &A3_CYCLIC,
        &C3_CYCLIC,
        &[&[0, 1], &[-3, 0]],
        &[
            &[0, 1, 0, 0],
            &[-1, 0, 1, 1],
            &[0, -1, 0, 0],
            &[0, -1, 0, 0],
        ],
    ];
    for rows in types {
        let b = ExchangeMatrix::from_rows(rows).unwrap();
        let mut s = Seed::initial(&b);
        for _ in 0..200 {
            let k = rng.gen_range(0..b.n());
            let t = mutate_seed(&s, k).unwrap();
            ensure!(
                mutate_seed(&t, k).unwrap() == s,
                "mutation is not an involution"
            );
            s = t;
        }
    }
    let quivers = gentle_test_quivers();
    let complexes: Vec<NonKissing> = quivers.iter().map(|(_, q)| complex(q)).collect();
    for nk in &complexes {
        for f in &nk.facets {
            for &w in f {
                let out = nk.flip(f, w).map_err(|e| e.to_string())?;
                let mut back = nk.flip(&out.facet, out.added).unwrap().facet;
                let mut orig = f.clone();
                back.sort_unstable();
                orig.sort_unstable();
                ensure!(back == orig, "flip is not an involution");
            }
        }
    }

    // g.c duality at every seed and facet
    let mut seeds = 0;
    for rows in types {
        let at = atlas(rows);
        for e in &at.seeds {
            for i in 0..at.n() {
                for j in 0..at.n() {
                    let want = if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    ensure!(
                        at.variables[e.vars[i]].dot(&e.seed.c_vector(j)) == want,
                        "seed duality fails"
                    );
                }
            }
            seeds += 1;
        }
    }
    let mut facets = 0;
    for nk in &complexes {
        for f in &nk.facets {
            for &w in f {
                let c = nk.c_vector(w, f).map_err(|e| e.to_string())?;
                for &v in f {
                    let want = if v == w {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    ensure!(nk.g_vector(v).dot(&c) == want, "facet duality fails");
                }
            }
            facets += 1;
        }
    }

    // unique exchange, brute-force oracle and normal-fan round trips
    // each fan comes with one known interior height
    let interior = |fan: &Fan| -> RatVec {
        let (tc, rep) = analyse(fan);
        if rep.is_simplicial {
            let ones = RatVec::from_ints(&vec![1; rep.facet_count]);
            return typecone::realization_from_positive(&tc, &rep, &ones).unwrap();
        }
        let rays = typecone::extreme_rays(&tc, DEFAULT_DD_CAP).unwrap();
        rays.iter()
            .fold(RatVec::zeros(fan.n_rays()), |h, r| h.add(r))
    };
    let mut fans: Vec<(String, Fan, RatVec)> =
        vec![("pentagon".into(), pentagon(), RatVec::from_ints(&[1; 5]))];
    for (i, rows) in types.iter().enumerate() {
        let fan = cluster_fan(&atlas(rows)).unwrap();
        let h = interior(&fan);
        fans.push((format!("cluster{i}"), fan, h));
    }
    for ((name, _), nk) in quivers.iter().zip(&complexes) {
        let fan = non_kissing_fan(nk).unwrap();
        let h = interior(&fan);
        fans.push((name.to_string(), fan, h));
    }
    for n in 2..=5 {
        for g in graphs_up_to_isomorphism(n, true) {
            let nf = nested_fan(&g).unwrap();
            let h = classical_heights(&nf, HeightKind::Postnikov);
            fans.push((g.to_string(), nf.fan, h));
        }
    }
    let mut oracle_checked = 0;
    let mut heights = 0;
    for (name, fan, h0) in &fans {
        ensure!(
            fan.unique_exchange_report().holds,
            "unique exchange fails on {name}"
        );
        let (tc, rep) = analyse(fan);
        if tc.inequalities.len() <= 12 {
            let oracle = brute_force_facets(fan, &tc).unwrap();
            ensure!(
                oracle == rep.facet_indices.iter().copied().collect(),
                "oracle disagrees on {name}"
            );
            oracle_checked += 1;
        }
        ensure!(
            fan.is_admissible(h0).unwrap(),
            "{name}: base height not admissible"
        );
        // perturbations below half the smallest slack stay admissible
        let slack = tc
            .inequalities
            .iter()
            .map(|f| f.normal.dot(h0))
            .min()
            .unwrap();
        let width = tc
            .inequalities
            .iter()
            .map(|f| f.normal.iter().map(Rational::abs).sum::<Rational>())
            .max()
            .unwrap();
        let radius = &slack / (width * Rational::from_int(2));
        for _ in 0..100 {
            let lam = Rational::from_int(rng.gen_range(1..=5));
            let shift: RatVec = (0..fan.ambient_dim())
                .map(|_| Rational::from_int(rng.gen_range(-20..=20)))
                .collect();
            let mut h = h0.scale(&lam).add(&fan.ray_matrix().mul_vec(&shift));
            for i in 0..fan.n_rays() {
                h[i] += &lam * &radius * Rational::new(rng.gen_range(-100..=100), 100);
            }
            let p = typecone::polytope_from_height(fan, &h).map_err(|e| format!("{name}: {e}"))?;
            for (v, cone) in p.vertices.iter().zip(fan.maximal_cones()) {
                let tight: Vec<usize> = (0..fan.n_rays())
                    .filter(|&r| fan.ray(r).dot(v) == h[r])
                    .collect();
                ensure!(&tight == cone, "{name}: round trip fails");
            }
            heights += 1;
        }
    }
    Ok(format!(
        "involutions hold; duality at {seeds} seeds and {facets} facets; unique exchange on {} fans; \
         oracle agrees on {oracle_checked} instances; {heights} random heights round-trip",
        fans.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("A2 type cone", criterion_1),
        ("A2 extreme rays and Minkowski", criterion_2),
        ("A2 coarsening", criterion_3),
        ("cluster counts and tables", criterion_4),
        ("non-mesh decompositions", criterion_5),
        ("gentle path 1->2", criterion_6),
        ("gentle two-cycle", criterion_7),
        ("graph counts and extremal pairs", criterion_8),
        ("height admissibility", criterion_9),
        ("property suites", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

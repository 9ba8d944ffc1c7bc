use std::collections::BTreeSet;

use tclab::exactla::RatVec;
use tclab::gentle::{non_kissing_fan, validate_gentle, NonKissing, QuiverInput};
use tclab::typecone;

const LEFT_G: [[i64; 3]; 8] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, -1, 0],
    [0, 1, -1],
    [-1, 0, 0],
    [0, -1, 0],
    [0, 0, -1],
];

const LEFT_FACETS: [[i64; 8]; 5] = [
    [0, -1, 1, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, -1, 0, 0, 1],
    [-1, 0, 0, 1, 1, 0, 0, -1],
    [1, 0, 0, -1, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 1, -1, 0],
];

const RIGHT_G: [[i64; 3]; 11] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, -1, 0],
    [1, 0, -1],
    [0, -1, 1],
    [0, 1, -1],
    [-1, 0, 1],
    [-1, 0, 0],
    [0, -1, 0],
    [0, 0, -1],
];

const RIGHT_FACETS: [[i64; 11]; 9] = [
    [-1, 1, 0, 0, 1, 0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, -1, 0, 1, 0, 0, 0, 0],
    [1, 0, -1, -1, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 0, 0, 0, 0, 1, -1],
    [0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, -1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, -1, 1, -1, 0],
    [0, -1, 0, 0, 0, 0, 1, 1, -1, 0, 0],
];

/// Gentle quivers on three vertices with at most `max_arrows` arrows
/// (loops allowed) and every subset of length-two relations.
fn gentle_quivers(max_arrows: usize) -> Vec<QuiverInput> {
    let names = ["1", "2", "3"];
    let slots: Vec<(usize, usize)> = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(arrows) = stack.pop() {
        if arrows.len() < max_arrows {
            let from = arrows.last().copied().unwrap_or(0);
            for s in from..slots.len() {
                let mut a = arrows.clone();
                a.push(s);
                stack.push(a);
            }
        }
        let ids: Vec<String> = (0..arrows.len()).map(|i| format!("a{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..arrows.len())
            .flat_map(|i| (0..arrows.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| slots[arrows[i]].1 == slots[arrows[j]].0)
            .collect();
        if pairs.len() > 10 {
            continue;
        }
        let arrow_triples: Vec<(&str, &str, &str)> = arrows
            .iter()
            .zip(&ids)
            .map(|(&s, id)| (id.as_str(), names[slots[s].0], names[slots[s].1]))
            .collect();
        for mask in 0..1u32 << pairs.len() {
            let rels: Vec<(&str, &str)> = (0..pairs.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| (ids[pairs[k].0].as_str(), ids[pairs[k].1].as_str()))
                .collect();
            out.push(QuiverInput::new(&names, &arrow_triples, &rels));
        }
    }
    out
}

fn facet_rows(
    nk: &NonKissing,
    table_g: &[[i64; 3]],
    rows: &[&[i64]],
) -> Option<(BTreeSet<RatVec>, BTreeSet<RatVec>)> {
    let fan = non_kissing_fan(nk).ok()?;
    let n = fan.n_rays();
    let mut col_to_ray = Vec::new();
    for g in table_g {
        col_to_ray.push((0..n).find(|&r| fan.ray(r) == &RatVec::from_ints(g))?);
    }
    let want = rows
        .iter()
        .map(|row| {
            let mut v = vec![0i64; n];
            for (c, &x) in row.iter().enumerate() {
                v[col_to_ray[c]] = x;
            }
            RatVec::from_ints(&v)
        })
        .collect();
    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    let got = rep
        .facet_indices
        .iter()
        .map(|&i| tc.inequalities[i].normal.clone())
        .collect();
    Some((got, want))
}

/// Quivers whose proper-walk g-vectors are exactly the table columns.
fn matching(table_g: &[[i64; 3]]) -> Vec<(QuiverInput, NonKissing)> {
    let want: BTreeSet<Vec<i64>> = table_g.iter().map(|g| g.to_vec()).collect();
    let mut out = Vec::new();
    for q in gentle_quivers(4) {
        let Ok(bq) = validate_gentle(&q) else {
            continue;
        };
        let Ok(nk) = NonKissing::new(&bq, 200) else {
            continue;
        };
        let got: BTreeSet<Vec<i64>> = nk.proper.iter().map(|&w| nk.walk(w).g.clone()).collect();
        if got == want && nk.proper.len() == want.len() {
            out.push((q, nk));
        }
    }
    out
}

fn check(table_g: &[[i64; 3]], rows: &[&[i64]], arrows: &[(&str, &str)], relations: usize) {
    let found = matching(table_g);
    assert_eq!(found.len(), 1, "table should identify a unique quiver");
    let (q, nk) = &found[0];
    let got: Vec<(String, String)> = q
        .arrows
        .iter()
        .map(|a| (a.from.to_string(), a.to.to_string()))
        .collect();
    let want: Vec<(String, String)> = arrows
        .iter()
        .map(|&(u, v)| (u.to_string(), v.to_string()))
        .collect();
    assert_eq!(got, want);
    assert_eq!(q.relations.len(), relations);
    let (got, want) = facet_rows(nk, table_g, rows).unwrap();
    assert_eq!(got, want);
}

#[test]
fn left_table_is_realized() {
    let rows: Vec<&[i64]> = LEFT_FACETS.iter().map(|r| &r[..]).collect();
    check(&LEFT_G, &rows, &[("1", "2"), ("2", "3")], 1);
}

#[test]
fn right_table_is_realized() {
    let rows: Vec<&[i64]> = RIGHT_FACETS.iter().map(|r| &r[..]).collect();
    check(&RIGHT_G, &rows, &[("1", "2"), ("2", "3"), ("3", "1")], 1);
}

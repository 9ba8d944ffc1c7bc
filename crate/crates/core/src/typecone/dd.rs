//! Double description for pointed cones `{u : y_j . u >= 0}`.

use crate::exactla::{RatMat, RatVec};

#[derive(Clone)]
struct Ray {
    u: RatVec,
    zeros: Vec<bool>,
}

/// Extreme rays of `{u in Q^r : y . u >= 0 for all y in constraints}`, as
/// primitive integer vectors in lexicographic order. The constraints must
/// span `Q^r` so that the cone is pointed.
pub fn extreme_rays(constraints: &[RatVec], r: usize) -> Vec<RatVec> {
    let m = constraints.len();
    if r == 0 {
        return Vec::new();
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<RatVec> = Vec::new();
    for (j, y) in constraints.iter().enumerate() {
        rows.push(y.clone());
        if RatMat::from_rows(rows.clone()).rank() == rows.len() {
            chosen.push(j);
            if chosen.len() == r {
                break;
            }
        } else {
            rows.pop();
        }
    }
    assert_eq!(chosen.len(), r, "constraints must span the ambient space");
    let inv = RatMat::from_rows(rows).inverse().expect("independent rows");
    let mut rays: Vec<Ray> = (0..r)
        .map(|k| {
            let mut zeros = vec![false; m];
            for (i, &j) in chosen.iter().enumerate() {
                zeros[j] = i != k;
            }
            Ray {
                u: inv.column(k).primitive(),
                zeros,
            }
        })
        .collect();
    for (j, y) in constraints.iter().enumerate() {
        if chosen.contains(&j) {
            continue;
        }
        let vals: Vec<_> = rays.iter().map(|ray| y.dot(&ray.u)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (ray, v) in rays.iter().zip(&vals) {
            if !v.is_negative() {
                let mut ray = ray.clone();
                if v.is_zero() {
                    ray.zeros[j] = true;
                }
                next.push(ray);
            }
        }
        for (p, vp) in rays.iter().zip(&vals) {
            if !vp.is_positive() {
                continue;
            }
            for (q, vq) in rays.iter().zip(&vals) {
                if !vq.is_negative() || !adjacent(constraints, p, q, r) {
                    continue;
                }
                let u = q.u.scale(vp).sub(&p.u.scale(vq)).primitive();
                let mut zeros: Vec<bool> = p
                    .zeros
                    .iter()
                    .zip(&q.zeros)
                    .map(|(a, b)| *a && *b)
                    .collect();
                zeros[j] = true;
                next.push(Ray { u, zeros });
            }
        }
        rays = next;
    }
    let mut out: Vec<RatVec> = rays.into_iter().map(|r| r.u).collect();
    out.sort();
    out.dedup();
    out
}

fn adjacent(constraints: &[RatVec], p: &Ray, q: &Ray, r: usize) -> bool {
    let common: Vec<RatVec> = p
        .zeros
        .iter()
        .zip(&q.zeros)
        .enumerate()
        .filter(|(_, (a, b))| **a && **b)
        .map(|(i, _)| constraints[i].clone())
        .collect();
    if r <= 2 {
        return true;
    }
    common.len() + 2 >= r && RatMat::from_rows(common).rank() == r - 2
}

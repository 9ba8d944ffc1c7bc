//! Exact feasibility for `A x = b, x >= 0` by phase-one simplex with Bland's rule.

use crate::exactla::{RatVec, Rational};

/// Returns some `x >= 0` with `sum_j x_j * columns[j] = b`, or `None`.
pub fn conic_combination(columns: &[RatVec], b: &RatVec) -> Option<Vec<Rational>> {
    let m = b.len();
    let k = columns.len();
    // tableau rows: constraints with artificial basis; rhs kept in column k
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row: Vec<Rational> = columns
                .iter()
                .map(|c| if flip { -&c[i] } else { c[i].clone() })
                .collect();
            row.push(if flip { -&b[i] } else { b[i].clone() });
            row
        })
        .collect();
    // basis[i] >= k marks an artificial variable
    let mut basis: Vec<usize> = (0..m).map(|i| k + i).collect();
    // reduced costs of the phase-one objective (sum of artificials); last entry is -w
    let mut cost = vec![Rational::zero(); k + 1];
    for row in &t {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                cost[j] -= x;
            }
        }
    }
    while let Some(enter) = (0..k).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][k] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }
    if !cost[k].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < k {
            x[bv] = t[i][k].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], p: usize, q: usize) {
    let inv = t[p][q].recip();
    for x in t[p].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let prow = t[p].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    let eliminate = |row: &mut Vec<Rational>| {
        if row[q].is_zero() {
            return;
        }
        let f = row[q].clone();
        for &j in &nz {
            row[j] -= &f * &prow[j];
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != p {
            eliminate(row);
        }
    }
    let mut c = cost.to_vec();
    eliminate(&mut c);
    cost.clone_from_slice(&c);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let cols = vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])];
        let x = conic_combination(&cols, &RatVec::from_ints(&[2, 3])).unwrap();
        assert_eq!(x, vec![Rational::from_int(2), Rational::from_int(3)]);
        assert!(conic_combination(&cols, &RatVec::from_ints(&[-1, 3])).is_none());
        assert!(conic_combination(&[], &RatVec::from_ints(&[0, 0])).is_some());
        assert!(conic_combination(&[], &RatVec::from_ints(&[0, 1])).is_none());
    }

    #[test]
    fn degenerate_columns() {
        let cols = vec![
            RatVec::from_ints(&[1, 1, 0]),
            RatVec::from_ints(&[1, 1, 0]),
            RatVec::from_ints(&[0, 1, 1]),
            RatVec::from_ints(&[1, 0, -1]),
        ];
        let b = RatVec::from_ints(&[2, 3, 1]);
        let x = conic_combination(&cols, &b).unwrap();
        let got = cols
            .iter()
            .zip(&x)
            .fold(RatVec::zeros(3), |acc, (c, xi)| acc.axpy(xi, c));
        assert_eq!(got, b);
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}

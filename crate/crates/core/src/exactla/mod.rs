//! Exact rational vectors and matrices.

mod rational;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVec(Vec<Rational>);

impl RatVec {
    pub fn new(entries: Vec<Rational>) -> RatVec {
        RatVec(entries)
    }

    pub fn zeros(n: usize) -> RatVec {
        RatVec(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> RatVec {
        let mut v = RatVec::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> RatVec {
        RatVec(xs.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, o: &RatVec) -> Rational {
        debug_assert_eq!(self.len(), o.len());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&o.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn add(&self, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> RatVec {
        RatVec(self.0.iter().map(|a| a * c).collect())
    }

    /// `self + c * o`
    pub fn axpy(&self, c: &Rational, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Positive multiple with coprime integer entries. Zero stays zero.
    pub fn primitive(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for x in &self.0 {
            l = l.lcm(&x.denom());
        }
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        RatVec(ints.into_iter().map(|x| Rational::from(x / &g)).collect())
    }

    /// Primitive integer vector with first nonzero entry positive.
    pub fn direction_key(&self) -> RatVec {
        let p = self.primitive();
        match p.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Whether the two vectors are positive multiples of each other.
    pub fn same_direction(&self, o: &RatVec) -> bool {
        self.primitive() == o.primitive()
    }
}

impl Index<usize> for RatVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl FromIterator<Rational> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rational>>(it: I) -> Self {
        RatVec(it.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a RatVec {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMat {
    rows: Vec<RatVec>,
    ncols: usize,
}

pub enum Solution {
    Unique(RatVec),
    NoSolution,
    Underdetermined {
        particular: RatVec,
        nullspace: Vec<RatVec>,
    },
}

impl Solution {
    /// Some solution, if one exists.
    pub fn any(self) -> Option<RatVec> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Underdetermined { particular, .. } => Some(particular),
            Solution::NoSolution => None,
        }
    }
}

/// Result of Gauss-Jordan elimination.
pub struct Rref {
    pub matrix: RatMat,
    pub pivots: Vec<usize>,
}

impl RatMat {
    pub fn new(rows: Vec<RatVec>, ncols: usize) -> Result<RatMat, LinAlgError> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LinAlgError::DimensionMismatch(format!(
                "row of length {} in matrix with {ncols} columns",
                r.len()
            )));
        }
        Ok(RatMat { rows, ncols })
    }

    /// Panics on ragged rows; column count taken from the first row.
    pub fn from_rows(rows: Vec<RatVec>) -> RatMat {
        let ncols = rows.first().map_or(0, RatVec::len);
        RatMat::new(rows, ncols).expect("ragged matrix")
    }

    pub fn from_ints(rows: &[&[i64]]) -> RatMat {
        RatMat::from_rows(rows.iter().map(|r| RatVec::from_ints(r)).collect())
    }

    pub fn zeros(m: usize, n: usize) -> RatMat {
        RatMat {
            rows: vec![RatVec::zeros(n); m],
            ncols: n,
        }
    }

    pub fn identity(n: usize) -> RatMat {
        RatMat {
            rows: (0..n).map(|i| RatVec::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn column(&self, j: usize) -> RatVec {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        RatMat {
            rows: (0..self.ncols).map(|j| self.column(j)).collect(),
            ncols: self.nrows(),
        }
    }

    /// Matrix whose columns are the given vectors of length `m`.
    pub fn from_columns(cols: &[RatVec], m: usize) -> RatMat {
        let rows = (0..m)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        RatMat {
            rows,
            ncols: cols.len(),
        }
    }

    pub fn mul(&self, o: &RatMat) -> RatMat {
        assert_eq!(self.ncols, o.nrows(), "matrix product shape");
        let ot = o.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| ot.rows.iter().map(|c| r.dot(c)).collect())
            .collect();
        RatMat {
            rows,
            ncols: o.ncols,
        }
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &RatVec) -> RatVec {
        let mut out = RatVec::zeros(self.ncols);
        for (c, r) in v.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !r[j].is_zero() {
                    out[j] += c * &r[j];
                }
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let mut m = self
            .rows
            .iter()
            .map(|r| r.clone().into_vec())
            .collect::<Vec<_>>();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            if !inv.is_one() {
                for x in m[r].iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let prow = m[r].clone();
            let nz: Vec<usize> = (c..self.ncols).filter(|&j| !prow[j].is_zero()).collect();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for &j in &nz {
                    row[j] -= &f * &prow[j];
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rows = m.into_iter().map(RatVec::new).collect();
        Rref {
            matrix: RatMat {
                rows,
                ncols: self.ncols,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = RatVec::zeros(self.ncols);
                x[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -matrix.get(i, f);
                }
                x
            })
            .collect()
    }

    /// The nonzero rows of the reduced row-echelon form.
    pub fn row_space_basis(&self) -> RatMat {
        let Rref { matrix, pivots } = self.rref();
        RatMat {
            rows: matrix.rows.into_iter().take(pivots.len()).collect(),
            ncols: self.ncols,
        }
    }

    pub fn solve(&self, b: &RatVec) -> Result<Solution, LinAlgError> {
        if b.len() != self.nrows() {
            return Err(LinAlgError::DimensionMismatch(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.nrows()
            )));
        }
        let n = self.ncols;
        let aug = RatMat {
            rows: self
                .rows
                .iter()
                .zip(b.iter())
                .map(|(r, bi)| {
                    r.iter()
                        .cloned()
                        .chain(std::iter::once(bi.clone()))
                        .collect()
                })
                .collect(),
            ncols: n + 1,
        };
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&n) {
            return Ok(Solution::NoSolution);
        }
        let mut x = RatVec::zeros(n);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(i, n).clone();
        }
        if pivots.len() == n {
            return Ok(Solution::Unique(x));
        }
        Ok(Solution::Underdetermined {
            particular: x,
            nullspace: self.nullspace(),
        })
    }

    pub fn inverse(&self) -> Result<RatMat, LinAlgError> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} is not square",
                n, self.ncols
            )));
        }
        let aug = RatMat {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .cloned()
                        .chain(RatVec::unit(n, i).into_vec())
                        .collect()
                })
                .collect(),
            ncols: 2 * n,
        };
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinAlgError::Singular);
        }
        let rows = matrix
            .rows
            .into_iter()
            .map(|r| r.into_vec()[n..].iter().cloned().collect())
            .collect();
        Ok(RatMat { rows, ncols: n })
    }
}

pub fn rank(m: &RatMat) -> usize {
    m.rank()
}

/// Rows spanning `{k : k * g = 0}`, in reduced row-echelon form.
pub fn left_kernel_basis(g: &RatMat) -> Result<RatMat, LinAlgError> {
    let (big_n, n) = (g.nrows(), g.ncols());
    let r = g.rank();
    if r < n {
        return Err(LinAlgError::RankDeficient {
            rank: r,
            expected: n,
        });
    }
    let basis = g.transpose().nullspace();
    if basis.is_empty() {
        return Ok(RatMat::zeros(0, big_n));
    }
    Ok(RatMat::from_rows(basis).row_space_basis())
}

pub fn solve(a: &RatMat, b: &RatVec) -> Result<Solution, LinAlgError> {
    a.solve(b)
}

pub fn inverse_transpose(m: &RatMat) -> Result<RatMat, LinAlgError> {
    Ok(m.inverse()?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RatMat {
        RatMat::from_ints(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1]])
    }

    #[test]
    fn ranks() {
        assert_eq!(RatMat::identity(2).rank(), 2);
        assert_eq!(RatMat::zeros(3, 4).rank(), 0);
        assert_eq!(a2().rank(), 2);
    }

    #[test]
    fn kernels() {
        assert_eq!(left_kernel_basis(&RatMat::identity(3)).unwrap().nrows(), 0);
        let k = left_kernel_basis(&a2()).unwrap();
        assert_eq!((k.nrows(), k.ncols()), (3, 5));
        assert_eq!(k.rank(), 3);
        assert_eq!(k.mul(&a2()), RatMat::zeros(3, 2));
        let deficient = RatMat::from_ints(&[&[1, 1], &[2, 2], &[3, 3]]);
        assert_eq!(
            left_kernel_basis(&deficient).unwrap_err(),
            LinAlgError::RankDeficient {
                rank: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn solves() {
        let b = RatVec::from_ints(&[3, -4]);
        assert!(matches!(RatMat::identity(2).solve(&b).unwrap(), Solution::Unique(x) if x == b));
        let bad = RatMat::from_ints(&[&[1], &[1]]);
        assert!(matches!(
            bad.solve(&RatVec::from_ints(&[0, 1])).unwrap(),
            Solution::NoSolution
        ));
        let k = left_kernel_basis(&a2()).unwrap();
        let ones = RatVec::from_ints(&[1, 1, 1]);
        match k.solve(&ones).unwrap() {
            Solution::Underdetermined {
                particular,
                nullspace,
            } => {
                assert_eq!(k.mul_vec(&particular), ones);
                assert_eq!(nullspace.len(), 2);
                for v in &nullspace {
                    assert!(k.mul_vec(v).is_zero());
                }
            }
            _ => panic!("expected an underdetermined system"),
        }
    }

    #[test]
    fn inverse_transposes() {
        assert_eq!(
            inverse_transpose(&RatMat::identity(3)).unwrap(),
            RatMat::identity(3)
        );
        let rot = RatMat::from_ints(&[&[0, 1], &[-1, 0]]);
        assert_eq!(inverse_transpose(&rot).unwrap(), rot);
        let d = RatMat::from_ints(&[&[1, 0], &[0, 2]]);
        let want = RatMat::from_rows(vec![
            RatVec::from_ints(&[1, 0]),
            RatVec::new(vec![Rational::zero(), Rational::new(1, 2)]),
        ]);
        assert_eq!(inverse_transpose(&d).unwrap(), want);
        let sing = RatMat::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse_transpose(&sing).unwrap_err(), LinAlgError::Singular);
    }

    #[test]
    fn primitive_vectors() {
        let v = RatVec::new(vec![
            Rational::new(1, 2),
            Rational::new(-3, 4),
            Rational::zero(),
        ]);
        assert_eq!(v.primitive(), RatVec::from_ints(&[2, -3, 0]));
        assert_eq!(v.neg().direction_key(), RatVec::from_ints(&[2, -3, 0]));
    }
}

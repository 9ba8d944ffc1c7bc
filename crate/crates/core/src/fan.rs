//! Complete simplicial fans, adjacent cone pairs and exchange relations.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::exactla::{RatMat, RatVec, Rational, Solution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("ambient dimension must be positive")]
    DegenerateDimension,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rays {0} and {1} are parallel")]
    DuplicateRay(usize, usize),
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {0} lies in no maximal cone")]
    UnusedRay(usize),
    #[error("cone {0} is not simplicial: {1}")]
    NotSimplicial(usize, String),
    #[error("fan is not complete: {0}")]
    NotComplete(String),
}

/// Raw fan description, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub ambient_dim: usize,
    pub rays: Vec<RatVec>,
    pub maximal_cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub zero_height_rays: Vec<usize>,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdjacentPair {
    pub cone_a: usize,
    pub cone_b: usize,
    /// Ray of `cone_a` not in `cone_b`.
    pub ray_r: usize,
    /// Ray of `cone_b` not in `cone_a`.
    pub ray_rp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeRelation {
    pub ray_r: usize,
    pub ray_rp: usize,
    /// Nonzero coefficients of the dependence, keyed by ray index.
    pub coeffs: BTreeMap<usize, Rational>,
}

impl ExchangeRelation {
    /// The relation as a functional on height vectors.
    pub fn normal(&self, n_rays: usize) -> RatVec {
        let mut v = RatVec::zeros(n_rays);
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn evaluate(&self, h: &RatVec) -> Rational {
        self.coeffs.iter().map(|(&i, c)| c * &h[i]).sum()
    }
}

/// Validated complete simplicial fan.
#[derive(Debug, Clone)]
pub struct Fan {
    spec: FanSpec,
    pairs: Vec<AdjacentPair>,
    relations: Vec<ExchangeRelation>,
}

pub fn build_fan(
    ambient_dim: usize,
    rays: Vec<RatVec>,
    maximal_cones: Vec<Vec<usize>>,
    zero_height_rays: Vec<usize>,
) -> Result<Fan, FanError> {
    Fan::new(FanSpec {
        ambient_dim,
        rays,
        maximal_cones,
        zero_height_rays,
        labels: Vec::new(),
    })
}

impl Fan {
    pub fn new(mut spec: FanSpec) -> Result<Fan, FanError> {
        let n = spec.ambient_dim;
        if n == 0 {
            return Err(FanError::DegenerateDimension);
        }
        let big_n = spec.rays.len();
        if !spec.labels.is_empty() && spec.labels.len() != big_n {
            return Err(FanError::DimensionMismatch(format!(
                "{} labels for {big_n} rays",
                spec.labels.len()
            )));
        }
        let mut dirs: HashMap<RatVec, usize> = HashMap::new();
        for (i, r) in spec.rays.iter().enumerate() {
            if r.len() != n {
                return Err(FanError::DimensionMismatch(format!(
                    "ray {i} has length {}",
                    r.len()
                )));
            }
            if r.is_zero() {
                return Err(FanError::ZeroRay(i));
            }
            if let Some(&j) = dirs.get(&r.primitive()) {
                return Err(FanError::DuplicateRay(j, i));
            }
            dirs.insert(r.primitive(), i);
        }
        for z in &spec.zero_height_rays {
            if *z >= big_n {
                return Err(FanError::DimensionMismatch(format!(
                    "zero-height ray {z} out of range"
                )));
            }
        }
        spec.zero_height_rays.sort_unstable();
        spec.zero_height_rays.dedup();
        let mut used = vec![false; big_n];
        let mut seen = HashSet::new();
        for (ci, c) in spec.maximal_cones.iter_mut().enumerate() {
            c.sort_unstable();
            if c.len() != n || c.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::NotSimplicial(
                    ci,
                    format!("needs {n} distinct rays"),
                ));
            }
            if c.iter().any(|&i| i >= big_n) {
                return Err(FanError::DimensionMismatch(format!(
                    "cone {ci} uses an unknown ray"
                )));
            }
            if !seen.insert(c.clone()) {
                return Err(FanError::NotSimplicial(ci, "repeated cone".into()));
            }
            let m = RatMat::from_rows(c.iter().map(|&i| spec.rays[i].clone()).collect());
            if m.rank() < n {
                return Err(FanError::NotSimplicial(
                    ci,
                    "rays are linearly dependent".into(),
                ));
            }
            for &i in c.iter() {
                used[i] = true;
            }
        }

        let mut ridges: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in spec.maximal_cones.iter().enumerate() {
            for k in 0..n {
                let mut ridge = c.clone();
                let opp = ridge.remove(k);
                ridges.entry(ridge).or_default().push((ci, opp));
            }
        }
        let mut pairs = Vec::new();
        for (ridge, cones) in &ridges {
            if cones.len() != 2 {
                return Err(FanError::NotComplete(format!(
                    "ridge {ridge:?} lies in {} maximal cones",
                    cones.len()
                )));
            }
            let (a, b) = if cones[0].0 < cones[1].0 {
                (cones[0], cones[1])
            } else {
                (cones[1], cones[0])
            };
            pairs.push(AdjacentPair {
                cone_a: a.0,
                cone_b: b.0,
                ray_r: a.1,
                ray_rp: b.1,
            });
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay(i));
        }
        pairs.sort();
        let mut fan = Fan {
            spec,
            pairs,
            relations: Vec::new(),
        };
        let mut relations = Vec::with_capacity(fan.pairs.len());
        for p in &fan.pairs {
            relations.push(fan.compute_relation(p)?);
        }
        fan.relations = relations;
        Ok(fan)
    }

    fn compute_relation(&self, p: &AdjacentPair) -> Result<ExchangeRelation, FanError> {
        let n = self.ambient_dim();
        let shared: Vec<usize> = self.spec.maximal_cones[p.cone_a]
            .iter()
            .copied()
            .filter(|&i| i != p.ray_r)
            .collect();
        let mut cols: Vec<RatVec> = shared.iter().map(|&i| self.spec.rays[i].clone()).collect();
        cols.push(self.spec.rays[p.ray_rp].clone());
        let m = RatMat::from_columns(&cols, n);
        let Ok(Solution::Unique(c)) = m.solve(&self.spec.rays[p.ray_r].neg()) else {
            return Err(FanError::NotSimplicial(
                p.cone_b,
                "no unique dependence".into(),
            ));
        };
        let cp = c[n - 1].clone();
        if !cp.is_positive() {
            return Err(FanError::NotComplete(format!(
                "rays {} and {} lie on the same side of their common ridge",
                p.ray_r, p.ray_rp
            )));
        }
        let scale = Rational::from_int(2) / (Rational::one() + &cp);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p.ray_r, scale.clone());
        coeffs.insert(p.ray_rp, &cp * &scale);
        for (k, &s) in shared.iter().enumerate() {
            if !c[k].is_zero() {
                coeffs.insert(s, &c[k] * &scale);
            }
        }
        Ok(ExchangeRelation {
            ray_r: p.ray_r,
            ray_rp: p.ray_rp,
            coeffs,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.spec.ambient_dim
    }

    pub fn n_rays(&self) -> usize {
        self.spec.rays.len()
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.spec.rays
    }

    pub fn ray(&self, i: usize) -> &RatVec {
        &self.spec.rays[i]
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.spec.maximal_cones
    }

    pub fn zero_height_rays(&self) -> &[usize] {
        &self.spec.zero_height_rays
    }

    pub fn labels(&self) -> &[String] {
        &self.spec.labels
    }

    pub fn label(&self, i: usize) -> String {
        self.spec
            .labels
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("r{i}"))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Fan, FanError> {
        if labels.len() != self.n_rays() {
            return Err(FanError::DimensionMismatch(format!(
                "{} labels for {} rays",
                labels.len(),
                self.n_rays()
            )));
        }
        self.spec.labels = labels;
        Ok(self)
    }

    pub fn spec(&self) -> &FanSpec {
        &self.spec
    }

    /// The ray matrix G, one row per ray.
    pub fn ray_matrix(&self) -> RatMat {
        RatMat::from_rows(self.spec.rays.clone())
    }

    pub fn adjacent_pairs(&self) -> &[AdjacentPair] {
        &self.pairs
    }

    /// Exchange relations, aligned with `adjacent_pairs`.
    pub fn relations(&self) -> &[ExchangeRelation] {
        &self.relations
    }

    pub fn exchange_relation(&self, pair: &AdjacentPair) -> ExchangeRelation {
        match self.pairs.binary_search(pair) {
            Ok(i) => self.relations[i].clone(),
            Err(_) => self
                .compute_relation(pair)
                .expect("pair of a validated fan"),
        }
    }

    pub fn is_admissible(&self, h: &RatVec) -> Result<bool, FanError> {
        if h.len() != self.n_rays() {
            return Err(FanError::DimensionMismatch(format!(
                "{} heights for {} rays",
                h.len(),
                self.n_rays()
            )));
        }
        if self.spec.zero_height_rays.iter().any(|&z| !h[z].is_zero()) {
            return Ok(false);
        }
        Ok(self.relations.iter().all(|r| r.evaluate(h).is_positive()))
    }

    /// Whether adjacent pairs with the same exchanged rays share one relation.
    pub fn unique_exchange_report(&self) -> UniqueExchange {
        let mut groups: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, r) in self.relations.iter().enumerate() {
            let key = (r.ray_r.min(r.ray_rp), r.ray_r.max(r.ray_rp));
            match groups.get(&key) {
                Some(&j) if self.relations[j].coeffs != r.coeffs => {
                    return UniqueExchange {
                        holds: false,
                        witness: Some((j, i)),
                    };
                }
                Some(_) => {}
                None => {
                    groups.insert(key, i);
                }
            }
        }
        UniqueExchange {
            holds: true,
            witness: None,
        }
    }

    /// Primitive normal of the common ridge, positive on `ray_r`.
    pub fn exchange_c_vector(&self, pair: &AdjacentPair) -> RatVec {
        let shared: Vec<RatVec> = self.spec.maximal_cones[pair.cone_a]
            .iter()
            .filter(|&&i| i != pair.ray_r)
            .map(|&i| self.spec.rays[i].clone())
            .collect();
        let n = self.ambient_dim();
        let c = if shared.is_empty() {
            RatVec::unit(n, 0)
        } else {
            RatMat::new(shared, n)
                .expect("ridge rows")
                .nullspace()
                .remove(0)
        };
        let c = c.primitive();
        if c.dot(&self.spec.rays[pair.ray_r]).is_negative() {
            c.neg()
        } else {
            c
        }
    }

    /// The maximal cone with exactly these rays, if any.
    pub fn cone_index(&self, rays: &[usize]) -> Option<usize> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.spec.maximal_cones.iter().position(|c| *c == key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueExchange {
    pub holds: bool,
    /// Two adjacent-pair indices exchanging the same rays with different relations.
    pub witness: Option<(usize, usize)>,
}

/// Linear isomorphism between two fans: ray `i` of the first maps to a
/// positive multiple of ray `ray_map[i]` of the second.
#[derive(Debug, Clone)]
pub struct FanIsomorphism {
    pub ray_map: Vec<usize>,
    pub matrix: RatMat,
}

/// Searches for a linear map sending rays to rays (up to positive scaling)
/// and maximal cones to maximal cones.
pub fn find_isomorphism(a: &Fan, b: &Fan) -> Option<FanIsomorphism> {
    let n = a.ambient_dim();
    if n != b.ambient_dim()
        || a.n_rays() != b.n_rays()
        || a.maximal_cones().len() != b.maximal_cones().len()
    {
        return None;
    }
    let neighbours = |f: &Fan| {
        let mut nb: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for p in f.adjacent_pairs() {
            nb.insert((p.cone_a, p.ray_r), (p.cone_b, p.ray_rp));
            nb.insert((p.cone_b, p.ray_rp), (p.cone_a, p.ray_r));
        }
        nb
    };
    let (nba, nbb) = (neighbours(a), neighbours(b));
    let c0 = &a.maximal_cones()[0];
    for d in 0..b.maximal_cones().len() {
        for perm in permutations(&b.maximal_cones()[d]) {
            let Some(map) = propagate(a, b, &nba, &nbb, c0, &perm) else {
                continue;
            };
            if let Some(matrix) = linear_witness(a, b, &map) {
                return Some(FanIsomorphism {
                    ray_map: map,
                    matrix,
                });
            }
        }
    }
    None
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn propagate(
    a: &Fan,
    b: &Fan,
    nba: &HashMap<(usize, usize), (usize, usize)>,
    nbb: &HashMap<(usize, usize), (usize, usize)>,
    c0: &[usize],
    image: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.n_rays()];
    let mut used = vec![false; b.n_rays()];
    for (&x, &y) in c0.iter().zip(image) {
        map[x] = y;
        used[y] = true;
    }
    let mut cone_img = vec![usize::MAX; a.maximal_cones().len()];
    let d0 = b.cone_index(image)?;
    cone_img[0] = d0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let d = cone_img[c];
        for &x in &a.maximal_cones()[c] {
            let (c2, y) = nba[&(c, x)];
            let (d2, y2) = nbb[&(d, map[x])];
            if map[y] == usize::MAX {
                if used[y2] {
                    return None;
                }
                map[y] = y2;
                used[y2] = true;
            } else if map[y] != y2 {
                return None;
            }
            if cone_img[c2] == usize::MAX {
                cone_img[c2] = d2;
                queue.push_back(c2);
            } else if cone_img[c2] != d2 {
                return None;
            }
        }
    }
    map.iter().all(|&m| m != usize::MAX).then_some(map)
}

fn linear_witness(a: &Fan, b: &Fan, map: &[usize]) -> Option<RatMat> {
    let n = a.ambient_dim();
    let big_n = a.n_rays();
    // unknowns: L (row-major n*n) then one scale per ray
    let width = n * n + big_n;
    let mut rows = Vec::new();
    for i in 0..big_n {
        let (r, s) = (a.ray(i), b.ray(map[i]));
        for row in 0..n {
            let mut eq = RatVec::zeros(width);
            for col in 0..n {
                eq[row * n + col] = r[col].clone();
            }
            eq[n * n + i] = -&s[row];
            rows.push(eq);
        }
    }
    let basis = RatMat::new(rows, width).ok()?.nullspace();
    let mut candidates = basis.clone();
    if let Some(first) = basis.first() {
        candidates.push(
            basis
                .iter()
                .skip(1)
                .fold(first.clone(), |acc, v| acc.add(v)),
        );
    }
    for v in candidates {
        for v in [v.clone(), v.neg()] {
            if (0..big_n).all(|i| v[n * n + i].is_positive()) {
                let l = RatMat::from_rows(
                    (0..n)
                        .map(|row| (0..n).map(|col| v[row * n + col].clone()).collect())
                        .collect(),
                );
                if l.rank() == n {
                    return Some(l);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a2_fan() -> Fan {
        let rays = [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|r| RatVec::from_ints(r))
            .collect();
        build_fan(
            2,
            rays,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
            vec![],
        )
        .unwrap()
    }

    fn line() -> Fan {
        build_fan(
            1,
            vec![RatVec::from_ints(&[1]), RatVec::from_ints(&[-1])],
            vec![vec![0], vec![1]],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(line().adjacent_pairs().len(), 1);
        let rays: Vec<RatVec> = a2_fan().rays().to_vec();
        let err = build_fan(2, rays.clone(), vec![vec![0, 1], vec![1, 2]], vec![]).unwrap_err();
        assert!(matches!(err, FanError::NotComplete(_)), "{err:?}");
        let mut dup = rays.clone();
        dup[4] = RatVec::from_ints(&[2, 0]);
        assert!(matches!(
            build_fan(2, dup, vec![vec![0, 1]], vec![]).unwrap_err(),
            FanError::DuplicateRay(0, 4)
        ));
        assert_eq!(
            build_fan(0, vec![], vec![], vec![]).unwrap_err(),
            FanError::DegenerateDimension
        );
    }

    #[test]
    fn a2_relations() {
        let f = a2_fan();
        assert_eq!(f.adjacent_pairs().len(), 5);
        let ab = f.exchange_relation(&f.adjacent_pairs()[0]);
        let want: BTreeMap<usize, Rational> = [(0, 1), (2, 1), (1, -1)]
            .into_iter()
            .map(|(i, c)| (i, Rational::from_int(c)))
            .collect();
        assert_eq!(ab.coeffs, want);
        let de = f
            .relations()
            .iter()
            .find(|r| r.coeffs.contains_key(&0) && r.coeffs.contains_key(&3))
            .unwrap();
        assert_eq!(de.normal(5), RatVec::from_ints(&[1, 0, 0, 1, 0]));
        let l = line();
        assert_eq!(l.relations()[0].normal(2), RatVec::from_ints(&[1, 1]));
        assert_eq!(
            l.exchange_c_vector(&l.adjacent_pairs()[0]),
            RatVec::from_ints(&[1])
        );
    }

    #[test]
    fn admissibility() {
        let f = a2_fan();
        let h = RatVec::new(vec![
            Rational::new(1, 2),
            Rational::new(3, 4),
            Rational::new(5, 4),
            Rational::from_int(1),
            Rational::new(5, 4),
        ]);
        assert!(f.is_admissible(&h).unwrap());
        assert!(!f.is_admissible(&RatVec::zeros(5)).unwrap());
        assert!(!f
            .is_admissible(&RatVec::from_ints(&[1, 2, 1, 2, 1]))
            .unwrap());
        assert!(f.is_admissible(&RatVec::zeros(4)).is_err());
        assert!(f.unique_exchange_report().holds);
    }

    #[test]
    fn isomorphism_search() {
        let f = a2_fan();
        let rays = [[1, 1], [0, 1], [-1, 0], [-1, -1], [1, 0]]
            .iter()
            .map(|r| RatVec::from_ints(r))
            .collect();
        let g = build_fan(
            2,
            rays,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
            vec![],
        )
        .unwrap();
        assert!(find_isomorphism(&f, &g).is_some());
        let square = [[1, 0], [0, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|r| RatVec::from_ints(r))
            .collect();
        let sq = build_fan(
            2,
            square,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
            vec![],
        )
        .unwrap();
        assert!(find_isomorphism(&f, &sq).is_none());
    }
}

//! Finite-type cluster algebras with principal coefficients: seeds, g- and
//! c-vectors, mesh mutations and the g-vector fan.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactla::{inverse_transpose, RatMat, RatVec, Rational};
use crate::fan::{Fan, FanError, FanSpec};
use crate::typecone::{self, lp};

pub const DEFAULT_SEED_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error("exchange matrix is not square of size {0}")]
    Shape(usize),
    #[error("exchange matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("more than {0} seeds; finite type not verified")]
    CapExceeded(usize),
    #[error("dual C-matrix became singular")]
    SingularCDual,
    #[error("c-vector column {col} is not sign-coherent at seed {seed}")]
    SignIncoherent { seed: usize, col: usize },
    #[error("entry overflow during mutation")]
    Overflow,
    #[error("variables {0} and {1} do not form a mesh pair")]
    NotAMeshPair(usize, usize),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Raw input: `{"n": 3, "B": [[...]], "D": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExchangeMatrixInput {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>) -> Result<ExchangeMatrix, ClusterError> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) || n == 0 {
            return Err(ClusterError::Shape(n));
        }
        let d = symmetrizer(&b).ok_or(ClusterError::NotSkewSymmetrizable)?;
        Ok(ExchangeMatrix { b, d })
    }

    pub fn from_input(inp: &ExchangeMatrixInput) -> Result<ExchangeMatrix, ClusterError> {
        if inp.b.len() != inp.n {
            return Err(ClusterError::Shape(inp.n));
        }
        let m = ExchangeMatrix::new(inp.b.clone())?;
        if let Some(d) = &inp.d {
            let ok = d.len() == inp.n
                && d.iter().all(|&x| x > 0)
                && (0..inp.n).all(|x| (0..inp.n).all(|y| d[x] * m.b[x][y] == -d[y] * m.b[y][x]));
            if !ok {
                return Err(ClusterError::NotSkewSymmetrizable);
            }
            return Ok(ExchangeMatrix {
                b: m.b,
                d: d.clone(),
            });
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<ExchangeMatrix, ClusterError> {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn entry(&self, x: usize, y: usize) -> i64 {
        self.b[x][y]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Row `k` of the dual matrix `-B^T`, i.e. the entries `-b_yk`. Exchange
    /// dependences and mesh mutations at direction `k` are read off this row.
    pub fn dual_row(&self, k: usize) -> Vec<i64> {
        self.b.iter().map(|r| -r[k]).collect()
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn to_input(&self) -> ExchangeMatrixInput {
        ExchangeMatrixInput {
            n: self.n(),
            b: self.b.clone(),
            d: Some(self.d.clone()),
        }
    }
}

/// Positive integers `d` with `d_x b_xy = -d_y b_yx`, if they exist.
fn symmetrizer(b: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = b.len();
    if (0..n).any(|x| b[x][x] != 0) {
        return None;
    }
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let dx = d[x].clone().expect("visited");
            for y in 0..n {
                let (bxy, byx) = (b[x][y], b[y][x]);
                if bxy == 0 && byx == 0 {
                    continue;
                }
                if bxy == 0 || byx == 0 || bxy.signum() == byx.signum() {
                    return None;
                }
                let dy = -(&dx * Rational::from_int(bxy)) / Rational::from_int(byx);
                match &d[y] {
                    Some(old) if *old != dy => return None,
                    Some(_) => {}
                    None => {
                        d[y] = Some(dy);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("all visited")).collect();
    let scaled = RatVec::new(d).primitive();
    Some(
        scaled
            .iter()
            .map(|x| x.to_i64().expect("small symmetrizer"))
            .collect(),
    )
}

fn half_step(byx: i64, bxz: i64) -> Option<i64> {
    let s = (byx.checked_abs()?)
        .checked_mul(bxz)?
        .checked_add(byx.checked_mul(bxz.checked_abs()?)?)?;
    debug_assert!(s.is_even());
    Some(s / 2)
}

/// Applies the mutation rule at `k` to a stack of rows whose row `k` is the
/// exchange row.
fn mutate_rows(rows: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>, ClusterError> {
    let pivot = rows[k].clone();
    let mut out = rows.to_vec();
    for (y, row) in out.iter_mut().enumerate() {
        for z in 0..row.len() {
            if y == k || z == k {
                row[z] = -rows[y][z];
            } else {
                let step = half_step(rows[y][k], pivot[z]).ok_or(ClusterError::Overflow)?;
                row[z] = rows[y][z].checked_add(step).ok_or(ClusterError::Overflow)?;
            }
        }
    }
    Ok(out)
}

pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> ExchangeMatrix {
    let rows = mutate_rows(&b.b, k).expect("mutation overflow");
    ExchangeMatrix {
        b: rows,
        d: b.d.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub b: ExchangeMatrix,
    /// C-matrix of the dual seed; columns are dual c-vectors.
    pub cdual: Vec<Vec<i64>>,
    /// Columns are g-vectors.
    pub g: RatMat,
}

impl Seed {
    pub fn initial(b: &ExchangeMatrix) -> Seed {
        let n = b.n();
        let cdual = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        Seed {
            b: b.clone(),
            cdual,
            g: RatMat::identity(n),
        }
    }

    pub fn g_vector(&self, col: usize) -> RatVec {
        self.g.column(col)
    }

    pub fn c_vector(&self, col: usize) -> RatVec {
        self.cdual
            .iter()
            .map(|r| Rational::from_int(r[col]))
            .collect()
    }

    pub fn cdual_matrix(&self) -> RatMat {
        RatMat::from_rows(self.cdual.iter().map(|r| RatVec::from_ints(r)).collect())
    }

    /// Column index violating sign coherence, if any.
    pub fn sign_incoherent_column(&self) -> Option<usize> {
        let n = self.b.n();
        (0..n).find(|&j| {
            let pos = self.cdual.iter().any(|r| r[j] > 0);
            let neg = self.cdual.iter().any(|r| r[j] < 0);
            pos && neg
        })
    }
}

pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed, ClusterError> {
    let n = s.b.n();
    let b = ExchangeMatrix {
        b: mutate_rows(&s.b.b, k)?,
        d: s.b.d.clone(),
    };
    let mut ext: Vec<Vec<i64>> = (0..n)
        .map(|x| (0..n).map(|y| -s.b.b[y][x]).collect())
        .collect();
    ext.extend(s.cdual.iter().cloned());
    let ext = mutate_rows(&ext, k)?;
    debug_assert!((0..n).all(|x| (0..n).all(|y| ext[x][y] == -b.b[y][x])));
    let cdual: Vec<Vec<i64>> = ext[n..].to_vec();
    let cm = RatMat::from_rows(cdual.iter().map(|r| RatVec::from_ints(r)).collect());
    let g = inverse_transpose(&cm).map_err(|_| ClusterError::SingularCDual)?;
    Ok(Seed { b, cdual, g })
}

#[derive(Debug, Clone)]
pub struct SeedEntry {
    pub seed: Seed,
    /// Variable id of each column.
    pub vars: Vec<usize>,
}

impl SeedEntry {
    pub fn cluster(&self) -> Vec<usize> {
        let mut c = self.vars.clone();
        c.sort_unstable();
        c
    }
}

/// A mutation at a direction whose exchange row is sign-uniform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeshMutation {
    pub seed: usize,
    pub direction: usize,
    pub x: usize,
    pub xp: usize,
    /// Variable at which the mutation ends.
    pub end: usize,
    pub initial: bool,
}

#[derive(Debug, Clone)]
pub struct ClusterAtlas {
    pub initial: ExchangeMatrix,
    /// g-vector of each variable id.
    pub variables: Vec<RatVec>,
    pub var_index: HashMap<RatVec, usize>,
    pub seeds: Vec<SeedEntry>,
    /// `adjacency[s][k]` is the seed reached from seed `s` in direction `k`.
    pub adjacency: Vec<Vec<usize>>,
    pub mesh_pairs: BTreeSet<(usize, usize)>,
}

pub fn enumerate_atlas(b0: &ExchangeMatrix, cap: usize) -> Result<ClusterAtlas, ClusterError> {
    let n = b0.n();
    let first = Seed::initial(b0);
    let mut variables = Vec::new();
    let mut var_index = HashMap::new();
    for j in 0..n {
        var_index.insert(first.g_vector(j), j);
        variables.push(first.g_vector(j));
    }
    let mut seeds = vec![SeedEntry {
        seed: first,
        vars: (0..n).collect(),
    }];
    let mut seed_index: HashMap<Vec<usize>, usize> = HashMap::from([((0..n).collect(), 0)]);
    let mut adjacency: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        if let Some(col) = seeds[s].seed.sign_incoherent_column() {
            return Err(ClusterError::SignIncoherent { seed: s, col });
        }
        for k in 0..n {
            if adjacency[s][k] != usize::MAX {
                continue;
            }
            let next = mutate_seed(&seeds[s].seed, k)?;
            let gk = next.g_vector(k);
            let id = *var_index.entry(gk.clone()).or_insert_with(|| {
                variables.push(gk);
                variables.len() - 1
            });
            let mut vars = seeds[s].vars.clone();
            vars[k] = id;
            let mut key = vars.clone();
            key.sort_unstable();
            let t = match seed_index.get(&key) {
                Some(&t) => t,
                None => {
                    if seeds.len() >= cap {
                        return Err(ClusterError::CapExceeded(cap));
                    }
                    seeds.push(SeedEntry { seed: next, vars });
                    adjacency.push(vec![usize::MAX; n]);
                    seed_index.insert(key, seeds.len() - 1);
                    queue.push_back(seeds.len() - 1);
                    seeds.len() - 1
                }
            };
            adjacency[s][k] = t;
            let old = seeds[s].vars[k];
            if let Some(back) = seeds[t]
                .vars
                .iter()
                .position(|&v| !seeds[s].vars.contains(&v))
            {
                debug_assert_ne!(seeds[t].vars[back], old);
                adjacency[t][back] = s;
            }
        }
    }
    let mut atlas = ClusterAtlas {
        initial: b0.clone(),
        variables,
        var_index,
        seeds,
        adjacency,
        mesh_pairs: BTreeSet::new(),
    };
    atlas.mesh_pairs = mesh_mutations(&atlas)
        .into_iter()
        .filter(|m| !m.initial)
        .map(|m| (m.x.min(m.xp), m.x.max(m.xp)))
        .collect();
    Ok(atlas)
}

impl ClusterAtlas {
    pub fn n(&self) -> usize {
        self.initial.n()
    }

    /// Variable obtained from seed `s` by exchanging its column `k`.
    pub fn exchanged(&self, s: usize, k: usize) -> usize {
        let t = self.adjacency[s][k];
        *self.seeds[t]
            .vars
            .iter()
            .find(|v| !self.seeds[s].vars.contains(v))
            .expect("adjacent seeds")
    }
}

pub fn mesh_mutations(atlas: &ClusterAtlas) -> Vec<MeshMutation> {
    let initial: BTreeSet<usize> = atlas.seeds[0].vars.iter().copied().collect();
    let mut out = Vec::new();
    for (s, entry) in atlas.seeds.iter().enumerate() {
        for k in 0..atlas.n() {
            let row = entry.seed.b.dual_row(k);
            let (x, xp) = (entry.vars[k], atlas.exchanged(s, k));
            let ends: Vec<usize> = [
                (row.iter().all(|&v| v <= 0), x),
                (row.iter().all(|&v| v >= 0), xp),
            ]
            .into_iter()
            .filter(|(ok, _)| *ok)
            .map(|(_, e)| e)
            .collect();
            // a zero row ends at both variables; prefer the non-initial end
            if let Some(&end) = ends.iter().find(|e| !initial.contains(e)).or(ends.first()) {
                let initial = initial.contains(&end);
                out.push(MeshMutation {
                    seed: s,
                    direction: k,
                    x,
                    xp,
                    end,
                    initial,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeshDependence {
    pub x: usize,
    pub xp: usize,
    pub initial: bool,
    /// `|b_yx|` for the variables `y` of the common cluster.
    pub alpha: BTreeMap<usize, i64>,
}

impl MeshDependence {
    /// Inequality normal `e_x + e_x' - sum alpha_y e_y` over all variables.
    pub fn normal(&self, n_vars: usize) -> RatVec {
        let mut v = RatVec::zeros(n_vars);
        v[self.x] = Rational::one();
        v[self.xp] = Rational::one();
        for (&y, &a) in &self.alpha {
            v[y] -= Rational::from_int(a);
        }
        v
    }
}

pub fn mesh_dependence(
    atlas: &ClusterAtlas,
    pair: (usize, usize),
) -> Result<MeshDependence, ClusterError> {
    let key = (pair.0.min(pair.1), pair.0.max(pair.1));
    let m = mesh_mutations(atlas)
        .into_iter()
        .find(|m| (m.x.min(m.xp), m.x.max(m.xp)) == key)
        .ok_or(ClusterError::NotAMeshPair(pair.0, pair.1))?;
    let entry = &atlas.seeds[m.seed];
    let mut alpha = BTreeMap::new();
    if !m.initial {
        for (j, &y) in entry.vars.iter().enumerate() {
            let b = entry.seed.b.b[j][m.direction].abs();
            if j != m.direction && b != 0 {
                alpha.insert(y, b);
            }
        }
    }
    let dep = MeshDependence {
        x: m.x,
        xp: m.xp,
        initial: m.initial,
        alpha,
    };
    let mut sum = atlas.variables[dep.x].add(&atlas.variables[dep.xp]);
    for (&y, &a) in &dep.alpha {
        sum = sum.axpy(&Rational::from_int(-a), &atlas.variables[y]);
    }
    if !sum.is_zero() {
        return Err(ClusterError::NotAMeshPair(pair.0, pair.1));
    }
    Ok(dep)
}

/// Checks that exactly one of the two exchange dependences holds at every
/// mutation; returns the first failing (seed, direction).
pub fn exchange_dichotomy(atlas: &ClusterAtlas) -> Result<(), (usize, usize)> {
    let n = atlas.n();
    for (s, entry) in atlas.seeds.iter().enumerate() {
        for k in 0..n {
            let (x, xp) = (entry.vars[k], atlas.exchanged(s, k));
            let lhs = atlas.variables[x].add(&atlas.variables[xp]);
            let mut neg = RatVec::zeros(n);
            let mut pos = RatVec::zeros(n);
            for (j, &y) in entry.vars.iter().enumerate() {
                let b = -entry.seed.b.b[j][k];
                let g = &atlas.variables[y];
                if b < 0 {
                    neg = neg.axpy(&Rational::from_int(-b), g);
                } else if b > 0 {
                    pos = pos.axpy(&Rational::from_int(b), g);
                }
            }
            let (a, c) = (lhs == neg, lhs == pos);
            if !(a ^ c || (a && neg == pos)) {
                return Err((s, k));
            }
        }
    }
    Ok(())
}

pub fn cluster_fan(atlas: &ClusterAtlas) -> Result<Fan, ClusterError> {
    let spec = FanSpec {
        ambient_dim: atlas.n(),
        rays: atlas.variables.clone(),
        maximal_cones: atlas.seeds.iter().map(SeedEntry::cluster).collect(),
        zero_height_rays: Vec::new(),
        labels: atlas.variables.iter().map(|g| format!("g{g}")).collect(),
    };
    Ok(Fan::new(spec)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct NonMeshDecomposition {
    pub inequality: usize,
    pub normal: RatVec,
    /// (mesh pair, coefficient) with nonnegative coefficients.
    pub combination: Vec<((usize, usize), Rational)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeshFacetReport {
    pub variables: usize,
    pub mesh_pairs: usize,
    pub facet_count: usize,
    pub simplicial: bool,
    pub facets_match_mesh: bool,
    pub decompositions: Vec<NonMeshDecomposition>,
    pub undecomposed: Vec<usize>,
    pub passed: bool,
}

pub fn verify_mesh_facets(atlas: &ClusterAtlas) -> Result<MeshFacetReport, ClusterError> {
    let fan = cluster_fan(atlas)?;
    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    let nv = atlas.variables.len();
    let mesh: Vec<((usize, usize), RatVec)> = atlas
        .mesh_pairs
        .iter()
        .map(|&p| mesh_dependence(atlas, p).map(|d| (p, d.normal(nv))))
        .collect::<Result<_, _>>()?;
    let mesh_set: BTreeSet<RatVec> = mesh.iter().map(|(_, v)| v.clone()).collect();
    let facet_set: BTreeSet<RatVec> = rep
        .facet_indices
        .iter()
        .map(|&i| tc.inequalities[i].normal.clone())
        .collect();
    let gens: Vec<RatVec> = mesh.iter().map(|(_, v)| v.clone()).collect();
    let mut decompositions = Vec::new();
    let mut undecomposed = Vec::new();
    for (i, q) in tc.inequalities.iter().enumerate() {
        if mesh_set.contains(&q.normal) {
            continue;
        }
        match lp::conic_combination(&gens, &q.normal) {
            Some(x) => decompositions.push(NonMeshDecomposition {
                inequality: i,
                normal: q.normal.clone(),
                combination: mesh
                    .iter()
                    .map(|(p, _)| *p)
                    .zip(x)
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            }),
            None => undecomposed.push(i),
        }
    }
    let facets_match_mesh = facet_set == mesh_set;
    let passed = facets_match_mesh && rep.is_simplicial && undecomposed.is_empty();
    Ok(MeshFacetReport {
        variables: nv,
        mesh_pairs: atlas.mesh_pairs.len(),
        facet_count: rep.facet_count,
        simplicial: rep.is_simplicial,
        facets_match_mesh,
        decompositions,
        undecomposed,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[&[0, 1], &[-1, 0]]).unwrap()
    }

    #[test]
    fn matrix_mutation() {
        let m = mutate_matrix(&a2(), 0);
        assert_eq!(m.rows(), &[vec![0, -1], vec![1, 0]]);
        let bc = ExchangeMatrix::from_rows(&[&[0, 2], &[-1, 0]]).unwrap();
        assert_eq!(mutate_matrix(&bc, 0).rows(), &[vec![0, -2], vec![1, 0]]);
        assert_eq!(bc.symmetrizer(), &[1, 2]);
        let a3 = ExchangeMatrix::from_rows(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]).unwrap();
        for k in 0..3 {
            assert_eq!(mutate_matrix(&mutate_matrix(&a3, k), k), a3);
        }
        assert!(ExchangeMatrix::from_rows(&[&[0, 1], &[1, 0]]).is_err());
    }

    #[test]
    fn a2_atlas() {
        let atlas = enumerate_atlas(&a2(), DEFAULT_SEED_CAP).unwrap();
        assert_eq!((atlas.variables.len(), atlas.seeds.len()), (5, 5));
        assert_eq!(atlas.mesh_pairs.len(), 3);
        assert!(exchange_dichotomy(&atlas).is_ok());
        let rep = verify_mesh_facets(&atlas).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn rank_one() {
        let atlas = enumerate_atlas(&ExchangeMatrix::from_rows(&[&[0]]).unwrap(), 10).unwrap();
        let fan = cluster_fan(&atlas).unwrap();
        assert_eq!(
            fan.rays(),
            &[RatVec::from_ints(&[1]), RatVec::from_ints(&[-1])]
        );
        assert_eq!(atlas.mesh_pairs.len(), 1);
    }

    #[test]
    fn seed_involution() {
        let s = Seed::initial(&a2());
        for k in 0..2 {
            assert_eq!(mutate_seed(&mutate_seed(&s, k).unwrap(), k).unwrap(), s);
        }
    }
}

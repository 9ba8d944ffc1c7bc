//! Type cones: assembly, facets, extreme rays, realizations, coarsenings and
//! Minkowski decompositions.

pub mod dd;
pub mod lp;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactla::{left_kernel_basis, RatMat, RatVec, Rational, Solution};
use crate::fan::Fan;

pub const DEFAULT_DD_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeConeError {
    #[error("height vector is not admissible")]
    NotAdmissible,
    #[error("normal-fan certificate failed at cone {0}")]
    CertificateFailed(usize),
    #[error("type cone is not simplicial")]
    NotSimplicial,
    #[error("facet values must be strictly positive")]
    NonPositiveEll,
    #[error("height vector is outside the closed type cone")]
    NotInClosure,
    #[error("Minkowski basis is degenerate")]
    BasisDegenerate,
    #[error("cone dimension {dim} exceeds the double-description cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// One deduplicated inequality of the type cone.
#[derive(Debug, Clone, Serialize)]
pub struct Inequality {
    pub normal: RatVec,
    /// Indices into `fan.adjacent_pairs()` producing this normal.
    pub pairs: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TypeConeData {
    fan: Fan,
    pub inequalities: Vec<Inequality>,
    /// Adjacent-pair index to inequality index.
    pub dedup_map: Vec<usize>,
    pub equalities: Vec<usize>,
    free: Vec<usize>,
    basis: RatMat,
    coords: Vec<RatVec>,
}

pub fn assemble(fan: &Fan) -> TypeConeData {
    let big_n = fan.n_rays();
    let equalities = fan.zero_height_rays().to_vec();
    let free: Vec<usize> = (0..big_n).filter(|i| !equalities.contains(i)).collect();
    let restrict = |v: &RatVec| -> RatVec { free.iter().map(|&i| v[i].clone()).collect() };
    let mut inequalities: Vec<Inequality> = Vec::new();
    let mut index: HashMap<RatVec, usize> = HashMap::new();
    let mut dedup_map = Vec::with_capacity(fan.relations().len());
    for (p, rel) in fan.relations().iter().enumerate() {
        let normal = rel.normal(big_n);
        let key = restrict(&normal).primitive();
        let i = *index.entry(key).or_insert_with(|| {
            inequalities.push(Inequality {
                normal,
                pairs: Vec::new(),
            });
            inequalities.len() - 1
        });
        inequalities[i].pairs.push(p);
        dedup_map.push(i);
    }
    let restricted: Vec<RatVec> = inequalities.iter().map(|q| restrict(&q.normal)).collect();
    let rref = RatMat::new(restricted.clone(), free.len())
        .expect("normals")
        .rref();
    let r = rref.pivots.len();
    let basis = RatMat::new(rref.matrix.rows()[..r].to_vec(), free.len()).expect("basis");
    let coords = restricted
        .iter()
        .map(|a| rref.pivots.iter().map(|&p| a[p].clone()).collect())
        .collect();
    TypeConeData {
        fan: fan.clone(),
        inequalities,
        dedup_map,
        equalities,
        free,
        basis,
        coords,
    }
}

impl TypeConeData {
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// One inequality per adjacent pair, before deduplication.
    pub fn raw_count(&self) -> usize {
        self.dedup_map.len()
    }

    /// Dimension of the type cone modulo lineality and equalities.
    pub fn cone_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Coordinates of the inequalities in the quotient by the lineality space.
    pub fn reduced_normals(&self) -> &[RatVec] {
        &self.coords
    }

    /// Image of a height vector in the quotient coordinates.
    pub fn project(&self, h: &RatVec) -> RatVec {
        let hf: RatVec = self.free.iter().map(|&i| h[i].clone()).collect();
        self.basis.mul_vec(&hf)
    }

    fn embed(&self, hf: &RatVec) -> RatVec {
        let mut h = RatVec::zeros(self.fan.n_rays());
        for (k, &i) in self.free.iter().enumerate() {
            h[i] = hf[k].clone();
        }
        h
    }

    /// Height vector with the given quotient coordinates, orthogonal to the
    /// lineality space.
    pub fn lift(&self, u: &RatVec) -> RatVec {
        let gram = self.basis.mul(&self.basis.transpose());
        let w = gram
            .solve(u)
            .expect("shape")
            .any()
            .expect("basis rows are independent");
        self.embed(&self.basis.transpose().mul_vec(&w))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Redundancy {
    pub inequality: usize,
    /// Nonnegative combination of the other inequalities reproducing this
    /// one modulo lineality, as (inequality index, coefficient).
    pub combination: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FacetReport {
    pub facet_indices: Vec<usize>,
    pub redundant: Vec<Redundancy>,
    pub is_simplicial: bool,
    pub facet_count: usize,
    pub cone_dim: usize,
}

pub fn facets(tc: &TypeConeData) -> FacetReport {
    let m = tc.coords.len();
    let verdicts: Vec<Option<Vec<Rational>>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let others: Vec<RatVec> = tc
                .coords
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, y)| y.clone())
                .collect();
            lp::conic_combination(&others, &tc.coords[i])
        })
        .collect();
    let mut facet_indices = Vec::new();
    let mut redundant = Vec::new();
    for (i, v) in verdicts.into_iter().enumerate() {
        match v {
            None => facet_indices.push(i),
            Some(x) => {
                let others = (0..m).filter(|&j| j != i);
                let combination = others.zip(x).filter(|(_, c)| !c.is_zero()).collect();
                redundant.push(Redundancy {
                    inequality: i,
                    combination,
                });
            }
        }
    }
    let facet_count = facet_indices.len();
    let cone_dim = tc.cone_dim();
    FacetReport {
        facet_indices,
        redundant,
        is_simplicial: facet_count == cone_dim,
        facet_count,
        cone_dim,
    }
}

/// Extreme rays of the closed type cone, lifted to canonical heights.
pub fn extreme_rays(tc: &TypeConeData, cap: usize) -> Result<Vec<RatVec>, TypeConeError> {
    let r = tc.cone_dim();
    if r > cap {
        return Err(TypeConeError::CapExceeded { dim: r, cap });
    }
    let mut reps: Vec<RatVec> = dd::extreme_rays(&tc.coords, r)
        .iter()
        .map(|u| tc.lift(u).primitive())
        .collect();
    reps.sort();
    Ok(reps)
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeV {
    pub ambient_dim: usize,
    pub vertices: Vec<RatVec>,
    pub vertex_cone_map: Vec<usize>,
}

fn cone_vertex(fan: &Fan, cone: usize, h: &RatVec) -> RatVec {
    let c = &fan.maximal_cones()[cone];
    let a = RatMat::from_rows(c.iter().map(|&i| fan.ray(i).clone()).collect());
    let b: RatVec = c.iter().map(|&i| h[i].clone()).collect();
    match a.solve(&b).expect("square system") {
        Solution::Unique(x) => x,
        _ => unreachable!("maximal cones are simplicial"),
    }
}

fn check_len(fan: &Fan, h: &RatVec) -> Result<(), TypeConeError> {
    if h.len() != fan.n_rays() {
        return Err(TypeConeError::DimensionMismatch(format!(
            "{} heights for {} rays",
            h.len(),
            fan.n_rays()
        )));
    }
    Ok(())
}

pub fn polytope_from_height(fan: &Fan, h: &RatVec) -> Result<PolytopeV, TypeConeError> {
    check_len(fan, h)?;
    if !fan.is_admissible(h).expect("length checked") {
        return Err(TypeConeError::NotAdmissible);
    }
    let mut vertices = Vec::with_capacity(fan.maximal_cones().len());
    for (ci, c) in fan.maximal_cones().iter().enumerate() {
        let v = cone_vertex(fan, ci, h);
        for j in 0..fan.n_rays() {
            if !c.contains(&j) && fan.ray(j).dot(&v) >= h[j] {
                return Err(TypeConeError::CertificateFailed(ci));
            }
        }
        vertices.push(v);
    }
    let k = vertices.len();
    Ok(PolytopeV {
        ambient_dim: fan.ambient_dim(),
        vertices,
        vertex_cone_map: (0..k).collect(),
    })
}

/// Vertices `h - G v` in the positive orthant of `R^N`.
pub fn lifted_polytope(fan: &Fan, h: &RatVec) -> Result<PolytopeV, TypeConeError> {
    let p = polytope_from_height(fan, h)?;
    let g = fan.ray_matrix();
    let k = left_kernel_basis(&g).expect("rays span");
    let kh = k.mul_vec(h);
    let mut vertices = Vec::with_capacity(p.vertices.len());
    for (ci, v) in p.vertices.iter().enumerate() {
        let z = h.sub(&g.mul_vec(v));
        if z.iter().any(Rational::is_negative) || k.mul_vec(&z) != kh {
            return Err(TypeConeError::CertificateFailed(ci));
        }
        vertices.push(z);
    }
    Ok(PolytopeV {
        ambient_dim: fan.n_rays(),
        vertices,
        vertex_cone_map: p.vertex_cone_map,
    })
}

/// Height vector with prescribed values on the facet inequalities.
pub fn realization_from_positive(
    tc: &TypeConeData,
    report: &FacetReport,
    ell: &RatVec,
) -> Result<RatVec, TypeConeError> {
    if !report.is_simplicial {
        return Err(TypeConeError::NotSimplicial);
    }
    if ell.len() != report.facet_count {
        return Err(TypeConeError::DimensionMismatch(format!(
            "{} values for {} facets",
            ell.len(),
            report.facet_count
        )));
    }
    if ell.iter().any(|x| !x.is_positive()) {
        return Err(TypeConeError::NonPositiveEll);
    }
    let big_n = tc.fan.n_rays();
    let mut rows: Vec<RatVec> = report
        .facet_indices
        .iter()
        .map(|&i| tc.inequalities[i].normal.clone())
        .collect();
    let mut rhs = ell.clone().into_vec();
    for &z in &tc.equalities {
        rows.push(RatVec::unit(big_n, z));
        rhs.push(Rational::zero());
    }
    let h = RatMat::new(rows, big_n)
        .expect("normals")
        .solve(&RatVec::new(rhs))
        .expect("shape")
        .any()
        .ok_or(TypeConeError::NotSimplicial)?;
    if !tc.fan.is_admissible(&h).expect("length") {
        return Err(TypeConeError::NotAdmissible);
    }
    Ok(h)
}

#[derive(Debug, Clone, Serialize)]
pub struct Coarsening {
    /// Merged classes of maximal cones, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Rays tight at each merged vertex.
    pub class_rays: Vec<Vec<usize>>,
    pub vertices: Vec<RatVec>,
    pub polytope_dim: usize,
    pub lineality_dim: usize,
}

pub fn coarsen_by_height(fan: &Fan, h: &RatVec) -> Result<Coarsening, TypeConeError> {
    check_len(fan, h)?;
    if fan.zero_height_rays().iter().any(|&z| !h[z].is_zero()) {
        return Err(TypeConeError::NotInClosure);
    }
    let k = fan.maximal_cones().len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (pair, rel) in fan.adjacent_pairs().iter().zip(fan.relations()) {
        let v = rel.evaluate(h);
        if v.is_negative() {
            return Err(TypeConeError::NotInClosure);
        }
        if v.is_zero() {
            let (a, b) = (
                find(&mut parent, pair.cone_a),
                find(&mut parent, pair.cone_b),
            );
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for c in 0..k {
        let root = find(&mut parent, c);
        let s = *slot.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[s].push(c);
    }
    let vertices: Vec<RatVec> = classes
        .iter()
        .map(|cl| cone_vertex(fan, cl[0], h))
        .collect();
    let class_rays = vertices
        .iter()
        .map(|v| {
            (0..fan.n_rays())
                .filter(|&j| fan.ray(j).dot(v) == h[j])
                .collect()
        })
        .collect();
    let diffs: Vec<RatVec> = vertices
        .iter()
        .skip(1)
        .map(|v| v.sub(&vertices[0]))
        .collect();
    let polytope_dim = if diffs.is_empty() {
        0
    } else {
        RatMat::from_rows(diffs).rank()
    };
    Ok(Coarsening {
        classes,
        class_rays,
        vertices,
        polytope_dim,
        lineality_dim: fan.ambient_dim() - polytope_dim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinkowskiCoeffs {
    pub coefficients: Vec<Rational>,
    pub translation: RatVec,
}

/// Writes `h` as a combination of the basis heights modulo lineality.
pub fn minkowski_decompose(
    tc: &TypeConeData,
    h: &RatVec,
    basis: &[RatVec],
) -> Result<MinkowskiCoeffs, TypeConeError> {
    check_len(&tc.fan, h)?;
    if basis.iter().any(|b| b.len() != h.len()) {
        return Err(TypeConeError::DimensionMismatch(
            "basis heights have the wrong length".into(),
        ));
    }
    let cols: Vec<RatVec> = basis.iter().map(|b| tc.project(b)).collect();
    let m = RatMat::from_columns(&cols, tc.cone_dim());
    let Solution::Unique(c) = m.solve(&tc.project(h)).expect("shape") else {
        return Err(TypeConeError::BasisDegenerate);
    };
    let mut rest = h.clone();
    for (b, ci) in basis.iter().zip(c.iter()) {
        rest = rest.axpy(&-ci, b);
    }
    let translation = tc
        .fan
        .ray_matrix()
        .solve(&rest)
        .expect("shape")
        .any()
        .ok_or(TypeConeError::BasisDegenerate)?;
    Ok(MinkowskiCoeffs {
        coefficients: c.into_vec(),
        translation,
    })
}

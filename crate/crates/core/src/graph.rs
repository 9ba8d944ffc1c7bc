//! Graph associahedra: tubes, tubings, nested fans, exchangeable and
//! extremal pairs, and the classical height functions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactla::{RatVec, Rational};
use crate::fan::{Fan, FanError, FanSpec};
use crate::gentle::Id;
use crate::typecone;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("repeated edge {0}-{1}")]
    MultiEdge(String, String),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("tubes {0} and {1} are not exchangeable")]
    NotExchangeable(String, String),
    #[error("graph is not connected")]
    NotConnected,
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphInput {
    pub vertices: Vec<Id>,
    #[serde(default)]
    pub edges: Vec<(Id, Id)>,
}

/// Vertex subset as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tube(pub u64);

impl Tube {
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, o: Tube) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn union(self, o: Tube) -> Tube {
        Tube(self.0 | o.0)
    }

    pub fn inter(self, o: Tube) -> Tube {
        Tube(self.0 & o.0)
    }

    pub fn minus(self, o: Tube) -> Tube {
        Tube(self.0 & !o.0)
    }

    pub fn without(self, v: usize) -> Tube {
        Tube(self.0 & !(1 << v))
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&v| self.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub names: Vec<String>,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph, GraphError> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        Self::with_names(names, edges)
    }

    fn with_names(names: Vec<String>, edges: &[(usize, usize)]) -> Result<SimpleGraph, GraphError> {
        let n = names.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::UnknownVertex(u.max(v).to_string()));
            }
            if u == v {
                return Err(GraphError::Loop(names[u].clone()));
            }
            if adj[u] >> v & 1 == 1 {
                return Err(GraphError::MultiEdge(names[u].clone(), names[v].clone()));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(SimpleGraph { names, adj })
    }

    pub fn from_input(input: &GraphInput) -> Result<SimpleGraph, GraphError> {
        let mut index = HashMap::new();
        let names: Vec<String> = input.vertices.iter().map(Id::to_string).collect();
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(s.clone()));
            }
        }
        let lookup = |id: &Id| {
            index
                .get(&id.to_string())
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
        };
        let edges = input
            .edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Self::with_names(names, &edges)
    }

    pub fn to_input(&self) -> GraphInput {
        GraphInput {
            vertices: self.names.iter().map(|s| Id::Str(s.clone())).collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| {
                    (
                        Id::Str(self.names[u].clone()),
                        Id::Str(self.names[v].clone()),
                    )
                })
                .collect(),
        }
    }

    pub fn path(n: usize) -> SimpleGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &e).expect("path")
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            e.push((n - 1, 0));
        }
        Self::new(n, &e).expect("cycle")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let e: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::new(n, &e).expect("complete")
    }

    /// Star with center 0.
    pub fn star(n: usize) -> SimpleGraph {
        let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::new(n, &e).expect("star")
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n_vertices())
            .flat_map(|u| {
                (u + 1..self.n_vertices())
                    .filter(move |&v| self.adj[u] >> v & 1 == 1)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Vertices outside `t` adjacent to it.
    pub fn neighborhood(&self, t: Tube) -> Tube {
        Tube(t.vertices().fold(0, |acc, v| acc | self.adj[v]) & !t.0)
    }

    pub fn is_connected_set(&self, t: Tube) -> bool {
        if t.is_empty() {
            return true;
        }
        let mut seen = 1u64 << t.0.trailing_zeros();
        loop {
            let grown = (Tube(seen).vertices().fold(0, |acc, v| acc | self.adj[v]) & t.0) | seen;
            if grown == seen {
                return seen == t.0;
            }
            seen = grown;
        }
    }

    /// Connected components of the induced subgraph on `t`.
    pub fn components_of(&self, t: Tube) -> Vec<Tube> {
        let mut rest = t.0;
        let mut out = Vec::new();
        while rest != 0 {
            let mut seen = 1u64 << rest.trailing_zeros();
            loop {
                let grown =
                    (Tube(seen).vertices().fold(0, |acc, v| acc | self.adj[v]) & rest) | seen;
                if grown == seen {
                    break;
                }
                seen = grown;
            }
            out.push(Tube(seen));
            rest &= !seen;
        }
        out
    }

    pub fn full(&self) -> Tube {
        Tube(if self.n_vertices() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n_vertices()) - 1
        })
    }

    pub fn components(&self) -> Vec<Tube> {
        self.components_of(self.full())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Dimension of the nested fan.
    pub fn rank(&self) -> usize {
        self.n_vertices() - self.components().len()
    }

    pub fn is_path(&self) -> bool {
        let n = self.n_vertices();
        self.is_connected() && self.edges().len() + 1 == n && (0..n).all(|v| self.degree(v) <= 2)
    }

    pub fn component_of(&self, t: Tube) -> Tube {
        self.components()
            .into_iter()
            .find(|w| t.inter(*w) == t && !t.is_empty())
            .unwrap_or(Tube(0))
    }

    pub fn is_proper(&self, t: Tube) -> bool {
        !t.is_empty() && !self.components().contains(&t)
    }

    /// All nonempty tubes, including the components, ordered by size then mask.
    pub fn tubes(&self) -> Vec<Tube> {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut frontier: Vec<u64> = (0..self.n_vertices()).map(|v| 1 << v).collect();
        while let Some(t) = frontier.pop() {
            if !seen.insert(t) {
                continue;
            }
            for v in self.neighborhood(Tube(t)).vertices() {
                let u = t | 1 << v;
                if !seen.contains(&u) {
                    frontier.push(u);
                }
            }
        }
        let mut out: Vec<Tube> = seen.into_iter().map(Tube).collect();
        out.sort_by_key(|t| (t.len(), t.0));
        out
    }

    pub fn proper_tubes(&self) -> Vec<Tube> {
        let comps = self.components();
        self.tubes()
            .into_iter()
            .filter(|t| !comps.contains(t))
            .collect()
    }

    /// Vertices of `t` whose removal leaves `t` connected.
    pub fn non_disconnecting(&self, t: Tube) -> Vec<usize> {
        t.vertices()
            .filter(|&v| self.is_connected_set(t.without(v)))
            .collect()
    }

    pub fn nd(&self, t: Tube) -> usize {
        self.non_disconnecting(t).len()
    }

    pub fn compatible(&self, a: Tube, b: Tube) -> bool {
        a.is_subset(b)
            || b.is_subset(a)
            || (a.inter(b).is_empty() && !self.is_connected_set(a.union(b)))
    }

    /// Orthogonal projection of the characteristic vector onto the sum-zero
    /// subspace of each component.
    pub fn g_vector(&self, t: Tube) -> RatVec {
        let mut g = RatVec::zeros(self.n_vertices());
        for w in self.components() {
            let k = t.inter(w).len() as i64;
            let shift = Rational::new(k, w.len() as i64);
            for v in w.vertices() {
                g[v] = if t.contains(v) {
                    Rational::one() - &shift
                } else {
                    -shift.clone()
                };
            }
        }
        g
    }

    /// Coordinates on the sum-zero subspace: the last vertex of each component is dropped.
    pub fn h_coordinates(&self, x: &RatVec) -> RatVec {
        let dropped: Vec<usize> = self
            .components()
            .iter()
            .map(|w| 63 - w.0.leading_zeros() as usize)
            .collect();
        (0..self.n_vertices())
            .filter(|v| !dropped.contains(v))
            .map(|v| x[v].clone())
            .collect()
    }

    pub fn format_tube(&self, t: Tube) -> String {
        let names: Vec<&str> = t.vertices().map(|v| self.names[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self
            .edges()
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        write!(f, "G({} vertices; {})", self.n_vertices(), e.join(" "))
    }
}

/// Nested fan in the coordinates of `SimpleGraph::h_coordinates`. Ray `i` is
/// `scales[i]` times the coordinates of `g(tubes[i])`, scaled to a primitive vector.
#[derive(Debug, Clone)]
pub struct NestedFan {
    pub graph: SimpleGraph,
    pub tubes: Vec<Tube>,
    pub scales: Vec<Rational>,
    tube_index: HashMap<Tube, usize>,
    pub fan: Fan,
}

fn maximal_tubings(g: &SimpleGraph, tubes: &[Tube]) -> Vec<Vec<usize>> {
    let n = g.rank();
    let m = tubes.len();
    let words = m.div_ceil(64).max(1);
    let mut compat = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && g.compatible(tubes[i], tubes[j]) {
                compat[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    fn rec(
        compat: &[Vec<u64>],
        n: usize,
        chosen: &mut Vec<usize>,
        cand: Vec<u64>,
        start: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == n {
            out.push(chosen.clone());
            return;
        }
        let left: usize = cand.iter().map(|w| w.count_ones() as usize).sum();
        if chosen.len() + left < n {
            return;
        }
        for i in start..compat.len() {
            if cand[i / 64] >> (i % 64) & 1 == 0 {
                continue;
            }
            let next: Vec<u64> = cand.iter().zip(&compat[i]).map(|(a, b)| a & b).collect();
            chosen.push(i);
            rec(compat, n, chosen, next, i + 1, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    let all: Vec<u64> = (0..words)
        .map(|k| {
            if (k + 1) * 64 <= m {
                u64::MAX
            } else {
                (1u64 << (m % 64)) - 1
            }
        })
        .collect();
    rec(&compat, n, &mut Vec::new(), all, 0, &mut out);
    out
}

pub fn nested_fan(g: &SimpleGraph) -> Result<NestedFan, GraphError> {
    let tubes = g.proper_tubes();
    let mut rays = Vec::with_capacity(tubes.len());
    let mut scales = Vec::with_capacity(tubes.len());
    for &t in &tubes {
        let h = g.h_coordinates(&g.g_vector(t));
        let p = h.primitive();
        let i = h
            .iter()
            .position(|x| !x.is_zero())
            .expect("proper tube has nonzero g");
        scales.push(&p[i] / &h[i]);
        rays.push(p);
    }
    let cones = maximal_tubings(g, &tubes);
    let labels = tubes.iter().map(|&t| g.format_tube(t)).collect();
    let fan = Fan::new(FanSpec {
        ambient_dim: g.rank(),
        rays,
        maximal_cones: cones,
        zero_height_rays: Vec::new(),
        labels,
    })?;
    let tube_index = tubes.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    Ok(NestedFan {
        graph: g.clone(),
        tubes,
        scales,
        tube_index,
        fan,
    })
}

impl NestedFan {
    pub fn ray_of(&self, t: Tube) -> Option<usize> {
        self.tube_index.get(&t).copied()
    }

    /// Height vector on the rays from heights on all nonempty tubes. Heights
    /// of components are removed by a translation inside each component.
    pub fn heights(&self, h: impl Fn(Tube) -> Rational) -> RatVec {
        let g = &self.graph;
        let comps = g.components();
        self.tubes
            .iter()
            .zip(&self.scales)
            .map(|(&t, s)| {
                let w = *comps.iter().find(|w| t.is_subset(**w)).expect("component");
                let shift = Rational::new(t.len() as i64, w.len() as i64) * h(w);
                s * &(h(t) - shift)
            })
            .collect()
    }

    /// Normal on the rays of a dependence `Σ c_t g(t) = 0`; improper tubes are dropped.
    pub fn dependence_normal(&self, coeffs: &[(Tube, i64)]) -> RatVec {
        let mut v = RatVec::zeros(self.tubes.len());
        for &(t, c) in coeffs {
            if let Some(i) = self.ray_of(t) {
                v[i] += Rational::from_int(c) / &self.scales[i];
            }
        }
        v
    }
}

pub fn is_exchangeable(g: &SimpleGraph, t: Tube, tp: Tube) -> bool {
    g.neighborhood(tp).inter(t.minus(tp)).len() == 1
        && g.neighborhood(t).inter(tp.minus(t)).len() == 1
}

/// Coefficients of `g(t) + g(t') = g(t ∪ t') + Σ g(s)` over the components `s`
/// of `t ∩ t'`, with improper tubes omitted.
pub fn exchange_dependence(
    g: &SimpleGraph,
    t: Tube,
    tp: Tube,
) -> Result<Vec<(Tube, i64)>, GraphError> {
    if !is_exchangeable(g, t, tp) {
        return Err(GraphError::NotExchangeable(
            g.format_tube(t),
            g.format_tube(tp),
        ));
    }
    let mut out = vec![(t, 1), (tp, 1)];
    let u = t.union(tp);
    if g.is_proper(u) {
        out.push((u, -1));
    }
    out.extend(g.components_of(t.inter(tp)).into_iter().map(|s| (s, -1)));
    Ok(out)
}

/// Pairs `(s \ {v'}, s \ {v})` over tubes `s` and distinct non-disconnecting `v < v'`.
pub fn extremal_pairs(g: &SimpleGraph) -> Vec<(Tube, Tube)> {
    let mut out = Vec::new();
    for s in g.tubes() {
        let nd = g.non_disconnecting(s);
        for (i, &v) in nd.iter().enumerate() {
            for &vp in &nd[i + 1..] {
                out.push((s.without(vp), s.without(v)));
            }
        }
    }
    out
}

/// `Σ_s C(nd(s), 2)` over all tubes.
pub fn extremal_pair_count(g: &SimpleGraph) -> usize {
    g.tubes()
        .iter()
        .map(|&s| g.nd(s))
        .map(|k| k * k.saturating_sub(1) / 2)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeightKind {
    Postnikov,
    Devadoss,
    Upper,
}

impl std::str::FromStr for HeightKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "postnikov" => Ok(HeightKind::Postnikov),
            "devadoss" => Ok(HeightKind::Devadoss),
            "upper" => Ok(HeightKind::Upper),
            _ => Err(format!("unknown height kind {s}")),
        }
    }
}

/// Classical height on a nonempty tube; `tubes` lists all nonempty tubes.
pub fn tube_height(tubes: &[Tube], kind: HeightKind, t: Tube) -> Rational {
    match kind {
        HeightKind::Postnikov => {
            -Rational::from_int(tubes.iter().filter(|s| s.is_subset(t)).count() as i64)
        }
        HeightKind::Devadoss => -Rational::from_int(3).pow(t.len() as i32 - 2),
        HeightKind::Upper => {
            Rational::from_int(tubes.iter().filter(|s| t.is_subset(**s)).count() as i64)
        }
    }
}

pub fn classical_heights(nf: &NestedFan, kind: HeightKind) -> RatVec {
    let all = nf.graph.tubes();
    nf.heights(|t| tube_height(&all, kind, t))
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalPairReport {
    pub tubes: usize,
    pub extremal_pairs: usize,
    pub formula_count: usize,
    pub facet_count: usize,
    pub facets_match_pairs: bool,
    pub facets_single_vertex_exchange: bool,
    pub c_vectors_supported: bool,
    pub dependences_match_fan: bool,
    pub unique_exchange: bool,
    pub simplicial: bool,
    pub is_path: bool,
    pub passed: bool,
}

pub fn verify_extremal_pairs(nf: &NestedFan) -> Result<ExtremalPairReport, GraphError> {
    let g = &nf.graph;
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    let fan = &nf.fan;
    let tc = typecone::assemble(fan);
    let rep = typecone::facets(&tc);
    let pairs = extremal_pairs(g);
    let want: BTreeSet<RatVec> = pairs
        .iter()
        .map(|&(t, tp)| exchange_dependence(g, t, tp).map(|c| nf.dependence_normal(&c).primitive()))
        .collect::<Result<_, _>>()?;
    let got: BTreeSet<RatVec> = rep
        .facet_indices
        .iter()
        .map(|&i| tc.inequalities[i].normal.primitive())
        .collect();
    let single = rep.facet_indices.iter().all(|&i| {
        tc.inequalities[i].pairs.iter().all(|&p| {
            let rel = &fan.relations()[p];
            let (t, tp) = (nf.tubes[rel.ray_r], nf.tubes[rel.ray_rp]);
            t.minus(tp).len() == 1 && tp.minus(t).len() == 1
        })
    });
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(t, tp) in &pairs {
        let (a, b) = (
            t.minus(tp).0.trailing_zeros() as usize,
            tp.minus(t).0.trailing_zeros() as usize,
        );
        covered.insert((a.min(b), a.max(b)));
    }
    let n = g.n_vertices();
    let c_vectors_supported = covered.len() == n * (n - 1) / 2;
    let dependences_match_fan = fan.relations().iter().all(|rel| {
        let (t, tp) = (nf.tubes[rel.ray_r], nf.tubes[rel.ray_rp]);
        exchange_dependence(g, t, tp).is_ok_and(|c| {
            nf.dependence_normal(&c).primitive() == rel.normal(fan.n_rays()).primitive()
        })
    });
    let mut r = ExtremalPairReport {
        tubes: nf.tubes.len(),
        extremal_pairs: pairs.len(),
        formula_count: extremal_pair_count(g),
        facet_count: rep.facet_count,
        facets_match_pairs: got == want && want.len() == pairs.len(),
        facets_single_vertex_exchange: single,
        c_vectors_supported,
        dependences_match_fan,
        unique_exchange: fan.unique_exchange_report().holds,
        simplicial: rep.is_simplicial,
        is_path: g.is_path(),
        passed: false,
    };
    r.passed = r.facets_match_pairs
        && r.formula_count == r.extremal_pairs
        && r.facets_single_vertex_exchange
        && r.c_vectors_supported
        && r.dependences_match_fan
        && r.unique_exchange
        && r.simplicial == r.is_path;
    Ok(r)
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize, connected_only: bool) -> Vec<SimpleGraph> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let slot_of: BTreeMap<(usize, usize), usize> =
        slots.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let perms: Vec<Vec<usize>> = permutations(n);
    let perm_maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            slots
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (p[i], p[j]);
                    slot_of[&(a.min(b), a.max(b))]
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << slots.len() {
        let is_min = perm_maps.iter().all(|m| {
            let img = (0..slots.len())
                .filter(|&k| mask >> k & 1 == 1)
                .fold(0u32, |acc, k| acc | 1 << m[k]);
            img >= mask
        });
        if !is_min {
            continue;
        }
        let edges: Vec<_> = (0..slots.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| slots[k])
            .collect();
        let g = SimpleGraph::new(n, &edges).expect("simple");
        if !connected_only || g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

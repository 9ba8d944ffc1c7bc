//! Runs one analysis for the `tclab` binary and renders its report.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cluster::{self, ExchangeMatrix, ExchangeMatrixInput};
use crate::exactla::{RatVec, Rational};
use crate::fan::{Fan, FanSpec};
use crate::gentle::{self, NonKissing, QuiverInput};
use crate::graph::{self, GraphInput, HeightKind, SimpleGraph};
use crate::typecone::{self, FacetReport, TypeConeData, TypeConeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cluster,
    Gentle,
    Graph,
    RawFan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: Family,
    pub input: PathBuf,
    pub facets: bool,
    pub rays: bool,
    pub realize: Option<PathBuf>,
    pub minkowski: Option<PathBuf>,
    pub coarsen: Option<PathBuf>,
    pub verify: bool,
    pub format: Format,
    pub max_seeds: usize,
    pub max_walks: usize,
    pub dd_cap: usize,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(family: Family, input: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            family,
            input: input.into(),
            facets: false,
            rays: false,
            realize: None,
            minkowski: None,
            coarsen: None,
            verify: false,
            format: Format::Json,
            max_seeds: cluster::DEFAULT_SEED_CAP,
            max_walks: gentle::DEFAULT_WALK_CAP,
            dd_cap: typecone::DEFAULT_DD_CAP,
            out: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("cannot parse {0}: {1}")]
    Parse(PathBuf, String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RayEntry {
    pub label: String,
    pub vector: RatVec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanSummary {
    pub ambient_dim: usize,
    pub n_rays: usize,
    pub n_cones: usize,
    pub rays: Vec<RayEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetEntry {
    pub inequality: usize,
    pub normal: RatVec,
    pub expression: String,
    /// Exchanged ray labels of the adjacent pairs producing this inequality.
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeConeSummary {
    pub raw_inequalities: usize,
    pub inequalities: usize,
    pub equalities: usize,
    pub cone_dim: usize,
    pub facet_count: usize,
    pub redundant: usize,
    pub simplicial: bool,
    pub facets: Vec<FacetEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexEntry {
    pub cone: Vec<String>,
    pub vertex: RatVec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Realization {
    pub ell: RatVec,
    pub height: RatVec,
    pub vertices: Vec<VertexEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinkowskiReport {
    pub height: RatVec,
    pub summands: Vec<RatVec>,
    pub coefficients: Vec<Rational>,
    pub translation: RatVec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoarseningReport {
    pub height: RatVec,
    pub classes: Vec<Vec<usize>>,
    pub vertices: Vec<RatVec>,
    pub polytope_dim: usize,
    pub lineality_dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verification {
    pub claim: String,
    pub applicable: bool,
    pub passed: bool,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub family: String,
    pub fan: FanSummary,
    pub fan_spec: FanSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_cone: Option<TypeConeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extreme_rays: Option<Vec<RatVec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realization: Option<Realization>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minkowski: Option<MinkowskiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coarsening: Option<CoarseningReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl Report {
    /// 0 on success, 2 when a verified claim fails on this instance.
    pub fn exit_code(&self) -> i32 {
        match &self.verification {
            Some(v) if v.applicable && !v.passed => 2,
            _ => 0,
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| RunError::Parse(path.to_path_buf(), e.to_string()))
}

fn read_vector(path: &Path, len: usize, what: &str) -> Result<RatVec, RunError> {
    let v: Vec<Rational> = read_json(path)?;
    if v.len() != len {
        return Err(RunError::Input(format!(
            "{what} has {} entries, expected {len}",
            v.len()
        )));
    }
    Ok(RatVec::new(v))
}

fn tc_error(e: TypeConeError) -> RunError {
    match e {
        TypeConeError::CapExceeded { .. } => RunError::CapExceeded(e.to_string()),
        _ => RunError::Input(e.to_string()),
    }
}

/// Raw fans are read either as a fan description or from a previous report.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawFanInput {
    Spec(FanSpec),
    Report { fan_spec: FanSpec },
}

enum Instance {
    Cluster(Box<cluster::ClusterAtlas>),
    Gentle(Box<NonKissing>),
    Graph(Box<graph::NestedFan>),
    Raw,
}

fn load(cfg: &RunConfig) -> Result<(Instance, Fan), RunError> {
    let path = &cfg.input;
    match cfg.family {
        Family::Cluster => {
            let inp: ExchangeMatrixInput = read_json(path)?;
            let b = ExchangeMatrix::from_input(&inp).map_err(|e| RunError::Input(e.to_string()))?;
            let atlas = cluster::enumerate_atlas(&b, cfg.max_seeds).map_err(|e| match e {
                cluster::ClusterError::CapExceeded(_) => RunError::CapExceeded(e.to_string()),
                _ => RunError::Input(e.to_string()),
            })?;
            let fan = cluster::cluster_fan(&atlas).map_err(|e| RunError::Input(e.to_string()))?;
            Ok((Instance::Cluster(Box::new(atlas)), fan))
        }
        Family::Gentle => {
            let inp: QuiverInput = read_json(path)?;
            let q = gentle::validate_gentle(&inp).map_err(|e| RunError::Input(e.to_string()))?;
            let nk = NonKissing::new(&q, cfg.max_walks).map_err(|e| match e {
                gentle::GentleError::CapExceeded(_) => RunError::CapExceeded(e.to_string()),
                _ => RunError::Input(e.to_string()),
            })?;
            let fan = gentle::non_kissing_fan(&nk).map_err(|e| RunError::Input(e.to_string()))?;
            Ok((Instance::Gentle(Box::new(nk)), fan))
        }
        Family::Graph => {
            let inp: GraphInput = read_json(path)?;
            let g = SimpleGraph::from_input(&inp).map_err(|e| RunError::Input(e.to_string()))?;
            let nf = graph::nested_fan(&g).map_err(|e| RunError::Input(e.to_string()))?;
            let fan = nf.fan.clone();
            Ok((Instance::Graph(Box::new(nf)), fan))
        }
        Family::RawFan => {
            let spec = match read_json::<RawFanInput>(path)? {
                RawFanInput::Spec(s) | RawFanInput::Report { fan_spec: s } => s,
            };
            let fan = Fan::new(spec).map_err(|e| RunError::Input(e.to_string()))?;
            Ok((Instance::Raw, fan))
        }
    }
}

fn expression(fan: &Fan, normal: &RatVec) -> String {
    let mut s = String::new();
    for (i, c) in normal.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let name = fan.label(i);
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            let _ = write!(s, " {sign} ");
        }
        if mag != Rational::one() {
            let _ = write!(s, "{mag}*");
        }
        let _ = write!(s, "h[{name}]");
    }
    s
}

fn summarize(fan: &Fan, tc: &TypeConeData, rep: &FacetReport) -> TypeConeSummary {
    let facets = rep
        .facet_indices
        .iter()
        .map(|&i| {
            let q = &tc.inequalities[i];
            let pairs = q
                .pairs
                .iter()
                .map(|&p| {
                    let rel = &fan.relations()[p];
                    (fan.label(rel.ray_r), fan.label(rel.ray_rp))
                })
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            FacetEntry {
                inequality: i,
                normal: q.normal.clone(),
                expression: expression(fan, &q.normal),
                pairs,
            }
        })
        .collect();
    TypeConeSummary {
        raw_inequalities: tc.raw_count(),
        inequalities: tc.inequalities.len(),
        equalities: tc.equalities.len(),
        cone_dim: tc.cone_dim(),
        facet_count: rep.facet_count,
        redundant: rep.redundant.len(),
        simplicial: rep.is_simplicial,
        facets,
    }
}

fn verify(inst: &Instance, fan: &Fan, rep: &FacetReport) -> Result<Verification, RunError> {
    let input = |e: &dyn std::fmt::Display| RunError::Input(e.to_string());
    Ok(match inst {
        Instance::Cluster(atlas) => {
            let t = cluster::verify_mesh_facets(atlas).map_err(|e| input(&e))?;
            let dichotomy = cluster::exchange_dichotomy(atlas);
            let passed = t.passed && dichotomy.is_ok();
            Verification {
                claim: "type cone facets are the mesh mutations and it is simplicial".into(),
                applicable: true,
                passed,
                details: json!({ "claim": t, "exchange_dichotomy": dichotomy.is_ok(),
                                 "unique_exchange": fan.unique_exchange_report().holds }),
            }
        }
        Instance::Gentle(nk) => {
            let t = gentle::verify_hook_facets(nk).map_err(|e| input(&e))?;
            let kn: RatVec = {
                let all = gentle::kissing_numbers(nk);
                nk.proper
                    .iter()
                    .map(|&w| Rational::from_int(all[w] as i64))
                    .collect()
            };
            let kn_ok = fan.is_admissible(&kn).map_err(|e| input(&e))?;
            Verification {
                claim: "kissing numbers are admissible; if brick and 2-acyclic, facets are the hook pairs and the type cone is simplicial".into(),
                applicable: true,
                passed: (!t.applicable || t.passed) && kn_ok,
                details: json!({ "claim": t, "kissing_numbers_admissible": kn_ok,
                                 "unique_exchange": fan.unique_exchange_report().holds }),
            }
        }
        Instance::Graph(nf) => {
            let connected = nf.graph.is_connected();
            let t = if connected {
                Some(graph::verify_extremal_pairs(nf).map_err(|e| input(&e))?)
            } else {
                None
            };
            let mut heights = serde_json::Map::new();
            let mut ok = true;
            for kind in [
                HeightKind::Postnikov,
                HeightKind::Devadoss,
                HeightKind::Upper,
            ] {
                let a = fan
                    .is_admissible(&graph::classical_heights(nf, kind))
                    .map_err(|e| input(&e))?;
                if kind != HeightKind::Upper {
                    ok &= a;
                }
                heights.insert(format!("{kind:?}").to_lowercase(), a.into());
            }
            let passed = t.as_ref().is_none_or(|t| t.passed) && ok;
            Verification {
                claim: "type cone facets are the extremal tube pairs; simplicial iff the graph is a path".into(),
                applicable: true,
                passed,
                details: json!({ "claim": t, "heights_admissible": heights,
                                 "unique_exchange": fan.unique_exchange_report().holds }),
            }
        }
        Instance::Raw => Verification {
            claim: "fan validation".into(),
            applicable: false,
            passed: true,
            details: json!({ "unique_exchange": fan.unique_exchange_report().holds, "simplicial_type_cone": rep.is_simplicial }),
        },
    })
}

pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    let (inst, fan) = load(cfg)?;
    let family = match cfg.family {
        Family::Cluster => "cluster",
        Family::Gentle => "gentle",
        Family::Graph => "graph",
        Family::RawFan => "raw-fan",
    };
    let summary = FanSummary {
        ambient_dim: fan.ambient_dim(),
        n_rays: fan.n_rays(),
        n_cones: fan.maximal_cones().len(),
        rays: (0..fan.n_rays())
            .map(|i| RayEntry {
                label: fan.label(i),
                vector: fan.ray(i).clone(),
            })
            .collect(),
    };
    let mut report = Report {
        family: family.into(),
        fan: summary,
        fan_spec: fan.spec().clone(),
        type_cone: None,
        extreme_rays: None,
        realization: None,
        minkowski: None,
        coarsening: None,
        verification: None,
    };
    let needs_tc =
        cfg.facets || cfg.rays || cfg.realize.is_some() || cfg.minkowski.is_some() || cfg.verify;
    if !needs_tc && cfg.coarsen.is_none() {
        return Ok(report);
    }
    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    if cfg.facets || cfg.verify {
        report.type_cone = Some(summarize(&fan, &tc, &rep));
    }
    if cfg.rays || cfg.minkowski.is_some() {
        report.extreme_rays = Some(typecone::extreme_rays(&tc, cfg.dd_cap).map_err(tc_error)?);
    }
    if let Some(p) = &cfg.realize {
        let ell = read_vector(p, rep.facet_count, "facet values")?;
        let h = typecone::realization_from_positive(&tc, &rep, &ell).map_err(tc_error)?;
        let poly = typecone::polytope_from_height(&fan, &h).map_err(tc_error)?;
        let vertices = poly
            .vertices
            .iter()
            .zip(&poly.vertex_cone_map)
            .map(|(v, &c)| VertexEntry {
                cone: fan.maximal_cones()[c]
                    .iter()
                    .map(|&i| fan.label(i))
                    .collect(),
                vertex: v.clone(),
            })
            .collect();
        report.realization = Some(Realization {
            ell,
            height: h,
            vertices,
        });
    }
    if let Some(p) = &cfg.minkowski {
        let h = read_vector(p, fan.n_rays(), "height vector")?;
        let summands = report.extreme_rays.clone().unwrap_or_default();
        let m = typecone::minkowski_decompose(&tc, &h, &summands).map_err(tc_error)?;
        report.minkowski = Some(MinkowskiReport {
            height: h,
            summands,
            coefficients: m.coefficients,
            translation: m.translation,
        });
    }
    if let Some(p) = &cfg.coarsen {
        let h = read_vector(p, fan.n_rays(), "height vector")?;
        let c = typecone::coarsen_by_height(&fan, &h).map_err(tc_error)?;
        report.coarsening = Some(CoarseningReport {
            height: h,
            classes: c.classes,
            vertices: c.vertices,
            polytope_dim: c.polytope_dim,
            lineality_dim: c.lineality_dim,
        });
    }
    if cfg.verify {
        report.verification = Some(verify(&inst, &fan, &rep)?);
    }
    Ok(report)
}

/// V-representation text: a `dim d vertices k` header, then one line of
/// coordinates per vertex followed by the labels of its cone.
pub fn polytope_file(r: &Realization, dim: usize) -> String {
    let mut s = format!("dim {dim} vertices {}\n", r.vertices.len());
    for v in &r.vertices {
        let coords: Vec<String> = v.vertex.iter().map(Rational::to_string).collect();
        let _ = writeln!(s, "{} # {}", coords.join(" "), v.cone.join(" "));
    }
    s
}

pub fn to_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes") + "\n"
}

fn table(header: &[&str], rows: &[Vec<String>], right: &[bool]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if right[i] {
                    format!("{c:>width$}", width = w[i])
                } else {
                    format!("{c:<width$}", width = w[i])
                }
            })
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

fn vec_cell(v: &RatVec) -> String {
    format!(
        "({})",
        v.iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn to_table(r: &Report) -> String {
    let mut s = format!(
        "family {}  dim {}  rays {}  cones {}\n\n",
        r.family, r.fan.ambient_dim, r.fan.n_rays, r.fan.n_cones
    );
    let rows: Vec<Vec<String>> = r
        .fan
        .rays
        .iter()
        .enumerate()
        .map(|(i, e)| vec![i.to_string(), e.label.clone(), vec_cell(&e.vector)])
        .collect();
    s += &table(&["ray", "label", "vector"], &rows, &[true, false, true]);
    if let Some(tc) = &r.type_cone {
        let _ =
            write!(
            s,
            "\ntype cone: {} raw / {} distinct inequalities, {} facets, {} redundant, dim {}, {}\n",
            tc.raw_inequalities,
            tc.inequalities,
            tc.facet_count,
            tc.redundant,
            tc.cone_dim,
            if tc.simplicial { "simplicial" } else { "not simplicial" }
        );
        let rows: Vec<Vec<String>> = tc
            .facets
            .iter()
            .map(|f| {
                let pairs: Vec<String> = f.pairs.iter().map(|(a, b)| format!("{a}|{b}")).collect();
                vec![
                    f.inequality.to_string(),
                    f.expression.clone(),
                    pairs.join(" "),
                ]
            })
            .collect();
        s += &table(
            &["ineq", "facet > 0", "exchanged"],
            &rows,
            &[true, false, false],
        );
    }
    if let Some(rays) = &r.extreme_rays {
        s += "\nextreme rays\n";
        let rows: Vec<Vec<String>> = rays
            .iter()
            .enumerate()
            .map(|(i, v)| vec![i.to_string(), vec_cell(v)])
            .collect();
        s += &table(&["ray", "height"], &rows, &[true, true]);
    }
    if let Some(re) = &r.realization {
        let _ = writeln!(
            s,
            "\nrealization for ell {}: height {}",
            vec_cell(&re.ell),
            vec_cell(&re.height)
        );
        let rows: Vec<Vec<String>> = re
            .vertices
            .iter()
            .map(|v| vec![vec_cell(&v.vertex), v.cone.join(" ")])
            .collect();
        s += &table(&["vertex", "cone"], &rows, &[true, false]);
    }
    if let Some(m) = &r.minkowski {
        let _ = writeln!(s, "\nminkowski decomposition of {}", vec_cell(&m.height));
        let rows: Vec<Vec<String>> = m
            .summands
            .iter()
            .zip(&m.coefficients)
            .map(|(v, c)| vec![c.to_string(), vec_cell(v)])
            .collect();
        s += &table(&["coefficient", "summand"], &rows, &[true, true]);
        let _ = writeln!(s, "translation {}", vec_cell(&m.translation));
    }
    if let Some(c) = &r.coarsening {
        let _ = writeln!(
            s,
            "\ncoarsening by {}: {} classes, polytope dim {}, lineality {}",
            vec_cell(&c.height),
            c.classes.len(),
            c.polytope_dim,
            c.lineality_dim
        );
        let rows: Vec<Vec<String>> = c
            .classes
            .iter()
            .zip(&c.vertices)
            .map(|(cl, v)| vec![format!("{cl:?}"), vec_cell(v)])
            .collect();
        s += &table(&["cones", "vertex"], &rows, &[false, true]);
    }
    if let Some(v) = &r.verification {
        let verdict = match (v.applicable, v.passed) {
            (false, _) => "not applicable",
            (true, true) => "passed",
            (true, false) => "FAILED",
        };
        let _ = writeln!(s, "\nverify: {} ... {verdict}", v.claim);
        let _ = writeln!(s, "{}", serde_json::to_string(&v.details).expect("json"));
    }
    s
}

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Table => to_table(r),
    }
}

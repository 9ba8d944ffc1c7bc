//! Gentle bound quivers: validation, blossoming, strings and walks, kissing,
//! non-kissing facets with g- and c-vectors, flips and hook walks.

mod complex;
mod walks;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fan::FanError;

pub use complex::{
    hook_walks, is_brick, is_two_acyclic, kissing_numbers, non_kissing_fan, verify_hook_facets,
    Distinguished, FlipOutcome, HookFacetReport, HookWalks, NonKissing,
};
pub use walks::{KissWitness, Walk, WalkKind};

pub const DEFAULT_WALK_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GentleError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("vertex {0} has more than two incoming or outgoing arrows")]
    TooManyArrowsAtVertex(String),
    #[error("relation {0}{1} is not a path of length two")]
    RelationNotComposable(String, String),
    #[error("gentle condition (iii) fails at arrow {0}")]
    GentleConditionIII(String),
    #[error("more than {0} strings or walks; quiver is not verified non-kissing finite")]
    CapExceeded(usize),
    #[error("walk {0} is straight")]
    WalkNotBending(usize),
    #[error("walk {0} is not in the facet")]
    WalkNotInFacet(usize),
    #[error("no flip found for walk {walk} (found {candidates} candidates)")]
    FlipFailed { walk: usize, candidates: usize },
    #[error("walk {walk} has {count} distinguished arrows")]
    DistinguishedCount { walk: usize, count: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Vertex and arrow identifiers may be given as JSON strings or integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Int(i64),
    Str(String),
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Int(i) => write!(f, "{i}"),
            Id::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Id {
        Id::Str(s.to_string())
    }
}

impl From<i64> for Id {
    fn from(i: i64) -> Id {
        Id::Int(i)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowInput {
    pub id: Id,
    pub from: Id,
    pub to: Id,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverInput {
    pub vertices: Vec<Id>,
    pub arrows: Vec<ArrowInput>,
    #[serde(default)]
    pub relations: Vec<(Id, Id)>,
}

impl QuiverInput {
    /// Builds an input from `(id, from, to)` triples and relation pairs of arrow ids.
    pub fn new(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[(&str, &str)],
    ) -> QuiverInput {
        QuiverInput {
            vertices: vertices.iter().map(|&v| v.into()).collect(),
            arrows: arrows
                .iter()
                .map(|&(a, s, t)| ArrowInput {
                    id: a.into(),
                    from: s.into(),
                    to: t.into(),
                })
                .collect(),
            relations: relations
                .iter()
                .map(|&(a, b)| (a.into(), b.into()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A validated gentle bound quiver. Relations `(a, b)` mean `ab` lies in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: BTreeSet<(usize, usize)>,
    ins: Vec<Vec<usize>>,
    outs: Vec<Vec<usize>>,
}

/// One arrow traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn fwd(arrow: usize) -> Letter {
        Letter {
            arrow,
            inverse: false,
        }
    }

    pub fn inv(arrow: usize) -> Letter {
        Letter {
            arrow,
            inverse: true,
        }
    }

    pub fn flipped(self) -> Letter {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }
}

/// A string or walk: a start vertex and a letter sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl BoundQuiver {
    fn assemble(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: BTreeSet<(usize, usize)>,
    ) -> BoundQuiver {
        let n = vertices.len();
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            outs[a.source].push(i);
            ins[a.target].push(i);
        }
        BoundQuiver {
            vertices,
            arrows,
            relations,
            ins,
            outs,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.ins[v]
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outs[v]
    }

    pub fn start(&self, l: Letter) -> usize {
        let a = &self.arrows[l.arrow];
        if l.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn end(&self, l: Letter) -> usize {
        let a = &self.arrows[l.arrow];
        if l.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn word_end(&self, w: &Word) -> usize {
        w.letters.last().map_or(w.start, |&l| self.end(l))
    }

    /// Whether `l1 l2` is a reduced, relation-free factor.
    pub fn composable(&self, l1: Letter, l2: Letter) -> bool {
        if self.end(l1) != self.start(l2) {
            return false;
        }
        if l1.arrow == l2.arrow && l1.inverse != l2.inverse {
            return false;
        }
        match (l1.inverse, l2.inverse) {
            (false, false) => !self.relations.contains(&(l1.arrow, l2.arrow)),
            (true, true) => !self.relations.contains(&(l2.arrow, l1.arrow)),
            _ => true,
        }
    }

    /// Letters leaving vertex `v`.
    pub fn letters_at(&self, v: usize) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.outs[v].iter().map(|&a| Letter::fwd(a)).collect();
        out.extend(self.ins[v].iter().map(|&a| Letter::inv(a)));
        out
    }

    pub fn continuations(&self, last: Letter) -> Vec<Letter> {
        self.letters_at(self.end(last))
            .into_iter()
            .filter(|&l| self.composable(last, l))
            .collect()
    }

    pub fn inverse_word(&self, w: &Word) -> Word {
        Word {
            start: self.word_end(w),
            letters: w.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// The smaller of a word and its inverse.
    pub fn canonical(&self, w: &Word) -> Word {
        let inv = self.inverse_word(w);
        if (&inv.letters, inv.start) < (&w.letters, w.start) {
            inv
        } else {
            w.clone()
        }
    }

    pub fn is_string(&self, w: &Word) -> bool {
        let mut at = w.start;
        for (i, &l) in w.letters.iter().enumerate() {
            if l.arrow >= self.n_arrows() || self.start(l) != at {
                return false;
            }
            if i > 0 && !self.composable(w.letters[i - 1], l) {
                return false;
            }
            at = self.end(l);
        }
        true
    }

    /// Vertices visited by a word, including both endpoints.
    pub fn word_vertices(&self, w: &Word) -> Vec<usize> {
        let mut vs = vec![w.start];
        vs.extend(w.letters.iter().map(|&l| self.end(l)));
        vs
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return format!("e{}", self.vertices[w.start]);
        }
        w.letters
            .iter()
            .map(|l| {
                let id = &self.arrows[l.arrow].id;
                if l.inverse {
                    format!("{id}^-1")
                } else {
                    id.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn validate_gentle(q: &QuiverInput) -> Result<BoundQuiver, GentleError> {
    let mut vindex: HashMap<String, usize> = HashMap::new();
    let mut vertices = Vec::new();
    for v in &q.vertices {
        let s = v.to_string();
        if vindex.insert(s.clone(), vertices.len()).is_some() {
            return Err(GentleError::DuplicateId(s));
        }
        vertices.push(s);
    }
    let vertex = |id: &Id| {
        vindex
            .get(&id.to_string())
            .copied()
            .ok_or_else(|| GentleError::UnknownVertex(id.to_string()))
    };
    let mut aindex: HashMap<String, usize> = HashMap::new();
    let mut arrows = Vec::new();
    for a in &q.arrows {
        let id = a.id.to_string();
        if aindex.insert(id.clone(), arrows.len()).is_some() {
            return Err(GentleError::DuplicateId(id));
        }
        arrows.push(Arrow {
            id,
            source: vertex(&a.from)?,
            target: vertex(&a.to)?,
        });
    }
    let arrow = |id: &Id| {
        aindex
            .get(&id.to_string())
            .copied()
            .ok_or_else(|| GentleError::UnknownArrow(id.to_string()))
    };
    let mut relations = BTreeSet::new();
    for (a, b) in &q.relations {
        let (ia, ib) = (arrow(a)?, arrow(b)?);
        if arrows[ia].target != arrows[ib].source {
            return Err(GentleError::RelationNotComposable(
                a.to_string(),
                b.to_string(),
            ));
        }
        relations.insert((ia, ib));
    }
    let quiver = BoundQuiver::assemble(vertices, arrows, relations);
    check_gentle(&quiver)?;
    Ok(quiver)
}

fn check_gentle(q: &BoundQuiver) -> Result<(), GentleError> {
    for v in 0..q.n_vertices() {
        if q.ins[v].len() > 2 || q.outs[v].len() > 2 {
            return Err(GentleError::TooManyArrowsAtVertex(q.vertices[v].clone()));
        }
    }
    for (b, arrow) in q.arrows.iter().enumerate() {
        let preds = &q.ins[arrow.source];
        let succs = &q.outs[arrow.target];
        let rel_in = preds
            .iter()
            .filter(|&&a| q.relations.contains(&(a, b)))
            .count();
        let rel_out = succs
            .iter()
            .filter(|&&c| q.relations.contains(&(b, c)))
            .count();
        if rel_in > 1 || preds.len() - rel_in > 1 || rel_out > 1 || succs.len() - rel_out > 1 {
            return Err(GentleError::GentleConditionIII(arrow.id.clone()));
        }
    }
    Ok(())
}

/// The blossoming quiver. Original vertices and arrows keep their indices;
/// blossoms are appended.
#[derive(Debug, Clone)]
pub struct Blossoming {
    pub quiver: BoundQuiver,
    pub n_vertices: usize,
    pub n_arrows: usize,
}

impl Blossoming {
    pub fn is_blossom(&self, v: usize) -> bool {
        v >= self.n_vertices
    }
}

pub fn blossoming(q: &BoundQuiver) -> Blossoming {
    let (n, m) = (q.n_vertices(), q.n_arrows());
    let mut vertices = q.vertices.clone();
    let mut arrows = q.arrows.clone();
    let taken: BTreeSet<String> = q
        .vertices
        .iter()
        .chain(q.arrows.iter().map(|a| &a.id))
        .cloned()
        .collect();
    let mut counter = 0usize;
    let mut fresh = |taken: &BTreeSet<String>| loop {
        let name = format!("b{counter}");
        counter += 1;
        if !taken.contains(&name) {
            break name;
        }
    };
    let mut relations = q.relations.clone();
    for v in 0..n {
        let mut ins = q.ins[v].clone();
        let mut outs = q.outs[v].clone();
        while ins.len() < 2 {
            let name = fresh(&taken);
            vertices.push(name.clone());
            arrows.push(Arrow {
                id: name,
                source: vertices.len() - 1,
                target: v,
            });
            ins.push(arrows.len() - 1);
        }
        while outs.len() < 2 {
            let name = fresh(&taken);
            vertices.push(name.clone());
            arrows.push(Arrow {
                id: name,
                source: v,
                target: vertices.len() - 1,
            });
            outs.push(arrows.len() - 1);
        }
        let original = |a: usize| a < m;
        let valid = |mm: &[(usize, usize); 2]| {
            let forbidden = mm
                .iter()
                .any(|&(a, b)| original(a) && original(b) && !q.relations.contains(&(a, b)));
            let missing = q
                .relations
                .iter()
                .filter(|&&(a, _)| q.arrows[a].target == v)
                .any(|p| !mm.contains(p));
            !forbidden && !missing
        };
        let m1 = [(ins[0], outs[0]), (ins[1], outs[1])];
        let m2 = [(ins[0], outs[1]), (ins[1], outs[0])];
        let chosen = if valid(&m1) { m1 } else { m2 };
        debug_assert!(valid(&chosen), "gentle quivers always admit a blossoming");
        relations.extend(chosen);
    }
    let quiver = BoundQuiver::assemble(vertices, arrows, relations);
    debug_assert!(check_gentle(&quiver).is_ok());
    Blossoming {
        quiver,
        n_vertices: n,
        n_arrows: m,
    }
}

/// All undirected strings of `q` (zero-length ones first, then by length),
/// each in canonical orientation.
pub fn enumerate_strings(q: &BoundQuiver, cap: usize) -> Result<Vec<Word>, GentleError> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: Vec<Word> = (0..q.n_vertices())
        .map(|v| Word {
            start: v,
            letters: Vec::new(),
        })
        .collect();
    let mut out: Vec<Word> = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in frontier {
            let c = q.canonical(&w);
            if seen.insert(c.clone()) {
                out.push(c);
                if out.len() > cap {
                    return Err(GentleError::CapExceeded(cap));
                }
            }
            let ext: Vec<Letter> = match w.letters.last() {
                None => q.letters_at(w.start),
                Some(&l) => q.continuations(l),
            };
            for l in ext {
                let mut w2 = w.clone();
                w2.letters.push(l);
                next.push(w2);
            }
        }
        if next.iter().any(|w| w.letters.len() > cap) {
            return Err(GentleError::CapExceeded(cap));
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path12() -> QuiverInput {
        QuiverInput::new(&["1", "2"], &[("a", "1", "2")], &[])
    }

    pub(crate) fn two_cycle(both: bool) -> QuiverInput {
        let rel: &[(&str, &str)] = if both {
            &[("a", "b"), ("b", "a")]
        } else {
            &[("a", "b")]
        };
        QuiverInput::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], rel)
    }

    #[test]
    fn validation() {
        assert!(validate_gentle(&QuiverInput::new(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[]
        ))
        .is_ok());
        assert!(validate_gentle(&two_cycle(true)).is_ok());
        let three = QuiverInput::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4")],
            &[],
        );
        assert_eq!(
            validate_gentle(&three),
            Err(GentleError::TooManyArrowsAtVertex("1".into()))
        );
        let bad = QuiverInput::new(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[("b", "a")],
        );
        assert!(matches!(
            validate_gentle(&bad),
            Err(GentleError::RelationNotComposable(..))
        ));
        // two non-relation successors of a
        let star = QuiverInput::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")],
            &[],
        );
        assert_eq!(
            validate_gentle(&star),
            Err(GentleError::GentleConditionIII("a".into()))
        );
    }

    #[test]
    fn blossoms() {
        let single = validate_gentle(&QuiverInput::new(&["1"], &[], &[])).unwrap();
        let b = blossoming(&single);
        assert_eq!(b.quiver.n_vertices(), 5);
        assert_eq!(
            (b.quiver.incoming(0).len(), b.quiver.outgoing(0).len()),
            (2, 2)
        );
        assert_eq!(&b.quiver.vertices[1..], &["b0", "b1", "b2", "b3"]);
        for q in [path12(), two_cycle(true), two_cycle(false)] {
            let b = blossoming(&validate_gentle(&q).unwrap());
            assert!(check_gentle(&b.quiver).is_ok());
            for v in 0..b.n_vertices {
                assert_eq!(
                    (b.quiver.incoming(v).len(), b.quiver.outgoing(v).len()),
                    (2, 2)
                );
            }
        }
    }

    #[test]
    fn strings() {
        let q = validate_gentle(&path12()).unwrap();
        assert_eq!(enumerate_strings(&q, 100).unwrap().len(), 3);
        let q = validate_gentle(&two_cycle(true)).unwrap();
        assert_eq!(enumerate_strings(&q, 100).unwrap().len(), 4);
        let q = validate_gentle(&QuiverInput::new(&["1"], &[], &[])).unwrap();
        assert_eq!(enumerate_strings(&q, 100).unwrap().len(), 1);
    }
}

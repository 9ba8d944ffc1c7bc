use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{Blossoming, GentleError, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WalkKind {
    Proper,
    Straight,
    SelfKissing,
}

/// A substring occurrence between letters `p < q` (0-based) of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub key: u32,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Walk {
    pub word: Word,
    pub vertices: Vec<usize>,
    pub g: Vec<i64>,
    pub kind: WalkKind,
    #[serde(skip)]
    pub(crate) tops: Vec<Occurrence>,
    #[serde(skip)]
    pub(crate) bots: Vec<Occurrence>,
}

impl Walk {
    pub fn letters(&self) -> &[Letter] {
        &self.word.letters
    }

    pub fn len(&self) -> usize {
        self.word.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.letters.is_empty()
    }
}

/// `top` is a top substring of the first walk, `bottom` the matching bottom
/// substring of the second, as letter positions `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KissWitness {
    pub top: (usize, usize),
    pub bottom: (usize, usize),
}

pub(crate) struct WalkTable {
    pub walks: Vec<Walk>,
    pub index: HashMap<Vec<Letter>, usize>,
}

pub(crate) fn enumerate(bl: &Blossoming, cap: usize) -> Result<WalkTable, GentleError> {
    let q = &bl.quiver;
    // a longer walk repeats a letter, which only happens along a band
    let max_len = 2 * q.n_arrows() + 2;
    let mut found: BTreeMap<Vec<Letter>, Word> = BTreeMap::new();
    for b in bl.n_vertices..q.n_vertices() {
        let first = if let Some(&a) = q.outgoing(b).first() {
            Letter::fwd(a)
        } else {
            Letter::inv(q.incoming(b)[0])
        };
        let mut stack = vec![vec![first]];
        while let Some(w) = stack.pop() {
            let last = *w.last().expect("nonempty");
            if bl.is_blossom(q.end(last)) {
                let word = q.canonical(&Word {
                    start: b,
                    letters: w,
                });
                found.insert(word.letters.clone(), word);
                if found.len() > cap {
                    return Err(GentleError::CapExceeded(cap));
                }
                continue;
            }
            if w.len() > max_len {
                return Err(GentleError::CapExceeded(cap));
            }
            for l in q.continuations(last) {
                let mut w2 = w.clone();
                w2.push(l);
                stack.push(w2);
            }
        }
    }
    let mut substring_index: HashMap<Word, u32> = HashMap::new();
    let mut walks = Vec::with_capacity(found.len());
    let mut index = HashMap::new();
    for (letters, word) in found {
        let vertices = q.word_vertices(&word);
        let (mut tops, mut bots) = (Vec::new(), Vec::new());
        let mut g = vec![0i64; bl.n_vertices];
        let n = letters.len();
        for p in 0..n {
            for qq in p + 1..n {
                let top = letters[p].inverse && !letters[qq].inverse;
                let bot = !letters[p].inverse && letters[qq].inverse;
                if !top && !bot {
                    continue;
                }
                let sub = q.canonical(&Word {
                    start: vertices[p + 1],
                    letters: letters[p + 1..qq].to_vec(),
                });
                let next = substring_index.len() as u32;
                let key = *substring_index.entry(sub).or_insert(next);
                let occ = Occurrence { key, p, q: qq };
                if qq == p + 1 {
                    g[vertices[p + 1]] += if top { 1 } else { -1 };
                }
                if top {
                    tops.push(occ);
                } else {
                    bots.push(occ);
                }
            }
        }
        let bending =
            (0..n.saturating_sub(1)).any(|p| letters[p].inverse != letters[p + 1].inverse);
        let self_kiss = tops.iter().any(|t| bots.iter().any(|b| b.key == t.key));
        let kind = if !bending {
            WalkKind::Straight
        } else if self_kiss {
            WalkKind::SelfKissing
        } else {
            WalkKind::Proper
        };
        index.insert(letters, walks.len());
        walks.push(Walk {
            word,
            vertices,
            g,
            kind,
            tops,
            bots,
        });
    }
    Ok(WalkTable { walks, index })
}

/// Every top substring of `a` equal to a bottom substring of `b`.
pub(crate) fn kiss_witnesses(a: &Walk, b: &Walk) -> Vec<KissWitness> {
    let mut out = Vec::new();
    for t in &a.tops {
        for s in b.bots.iter().filter(|s| s.key == t.key) {
            out.push(KissWitness {
                top: (t.p, t.q),
                bottom: (s.p, s.q),
            });
        }
    }
    out
}

pub(crate) fn kiss_count(a: &Walk, b: &Walk) -> usize {
    a.tops
        .iter()
        .map(|t| b.bots.iter().filter(|s| s.key == t.key).count())
        .sum()
}

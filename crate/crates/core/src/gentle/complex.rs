use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::walks::{self, KissWitness, Walk, WalkKind};
use super::{blossoming, enumerate_strings, Blossoming, BoundQuiver, GentleError, Letter, Word};
use crate::exactla::{RatVec, Rational};
use crate::fan::{Fan, FanSpec};
use crate::typecone;

/// Distinguished substring of a walk in a facet: letters strictly between
/// positions `p < q` of the stored orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinguished {
    pub walk: usize,
    pub p: usize,
    pub q: usize,
    pub top: bool,
    pub sigma: Word,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipOutcome {
    pub facet: Vec<usize>,
    pub removed: usize,
    pub added: usize,
    pub mu: usize,
    pub nu: usize,
    /// Canonical orientation of the shared distinguished substring.
    pub sigma: Word,
    pub dependence_holds: bool,
    pub mu_nu_shared: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HookWalks {
    pub hh: usize,
    pub cc: usize,
    pub hc: usize,
    pub ch: usize,
}

/// Walks, facets and flip graph of the reduced non-kissing complex.
#[derive(Debug, Clone)]
pub struct NonKissing {
    pub quiver: BoundQuiver,
    pub blossoming: Blossoming,
    pub strings: Vec<Word>,
    pub walks: Vec<Walk>,
    walk_index: HashMap<Vec<Letter>, usize>,
    pub proper: Vec<usize>,
    ray_of: Vec<Option<usize>>,
    compat: Vec<Vec<u64>>,
    pub facets: Vec<Vec<usize>>,
    facet_index: HashMap<Vec<usize>, usize>,
    /// `flips[f][k]` is the facet obtained by flipping `facets[f][k]`.
    pub flips: Vec<Vec<usize>>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

impl NonKissing {
    pub fn new(q: &BoundQuiver, cap: usize) -> Result<NonKissing, GentleError> {
        let bl = blossoming(q);
        let strings = enumerate_strings(q, cap)?;
        let table = walks::enumerate(&bl, cap)?;
        let proper: Vec<usize> = (0..table.walks.len())
            .filter(|&w| table.walks[w].kind == WalkKind::Proper)
            .collect();
        let mut ray_of = vec![None; table.walks.len()];
        for (i, &w) in proper.iter().enumerate() {
            ray_of[w] = Some(i);
        }
        let words = proper.len().div_ceil(64).max(1);
        let mut compat = vec![vec![0u64; words]; proper.len()];
        for (i, &a) in proper.iter().enumerate() {
            for (j, &b) in proper.iter().enumerate().skip(i + 1) {
                let (wa, wb) = (&table.walks[a], &table.walks[b]);
                if walks::kiss_count(wa, wb) == 0 && walks::kiss_count(wb, wa) == 0 {
                    compat[i][j / 64] |= 1 << (j % 64);
                    compat[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut nk = NonKissing {
            quiver: q.clone(),
            blossoming: bl,
            strings,
            walks: table.walks,
            walk_index: table.index,
            proper,
            ray_of,
            compat,
            facets: Vec::new(),
            facet_index: HashMap::new(),
            flips: Vec::new(),
        };
        nk.enumerate_facets(cap.saturating_mul(10))?;
        Ok(nk)
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn walk(&self, w: usize) -> &Walk {
        &self.walks[w]
    }

    pub fn ray_index(&self, w: usize) -> Option<usize> {
        self.ray_of[w]
    }

    pub fn walks_of_kind(&self, kind: WalkKind) -> Vec<usize> {
        (0..self.walks.len())
            .filter(|&w| self.walks[w].kind == kind)
            .collect()
    }

    pub fn g_vector(&self, w: usize) -> RatVec {
        RatVec::from_ints(&self.walks[w].g)
    }

    pub fn format_walk(&self, w: usize) -> String {
        self.blossoming.quiver.format_word(&self.walks[w].word)
    }

    pub fn format_string(&self, s: &Word) -> String {
        self.quiver.format_word(s)
    }

    pub fn lookup(&self, letters: &[Letter]) -> Option<usize> {
        let bq = &self.blossoming.quiver;
        let first = *letters.first()?;
        let w = bq.canonical(&Word {
            start: bq.start(first),
            letters: letters.to_vec(),
        });
        self.walk_index.get(&w.letters).copied()
    }

    pub fn kissing(&self, a: usize, b: usize) -> Vec<KissWitness> {
        walks::kiss_witnesses(&self.walks[a], &self.walks[b])
    }

    pub fn kisses(&self, a: usize, b: usize) -> usize {
        walks::kiss_count(&self.walks[a], &self.walks[b])
    }

    fn compatible(&self, a: usize, b: usize) -> bool {
        match (self.ray_of[a], self.ray_of[b]) {
            (Some(i), Some(j)) => i == j || bit(&self.compat[i], j),
            _ => false,
        }
    }

    fn enumerate_facets(&mut self, cap: usize) -> Result<(), GentleError> {
        let n = self.n_vertices();
        let mut first: Vec<usize> = Vec::new();
        for &w in &self.proper {
            if first.len() < n && first.iter().all(|&x| self.compatible(x, w)) {
                first.push(w);
            }
        }
        if first.len() != n {
            return Err(GentleError::FlipFailed {
                walk: usize::MAX,
                candidates: first.len(),
            });
        }
        self.facets.push(first.clone());
        self.facet_index.insert(first, 0);
        self.flips.push(vec![usize::MAX; n]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for k in 0..n {
                if self.flips[f][k] != usize::MAX {
                    continue;
                }
                let facet = self.facets[f].clone();
                let added = self.replacement(&facet, k)?;
                let mut next = facet.clone();
                next[k] = added;
                next.sort_unstable();
                let t = match self.facet_index.get(&next) {
                    Some(&t) => t,
                    None => {
                        if self.facets.len() >= cap {
                            return Err(GentleError::CapExceeded(cap));
                        }
                        self.facets.push(next.clone());
                        self.facet_index.insert(next.clone(), self.facets.len() - 1);
                        self.flips.push(vec![usize::MAX; n]);
                        queue.push_back(self.facets.len() - 1);
                        self.facets.len() - 1
                    }
                };
                self.flips[f][k] = t;
                let back = next.iter().position(|&w| w == added).expect("added walk");
                self.flips[t][back] = f;
            }
        }
        Ok(())
    }

    /// The unique proper walk replacing `facet[k]`.
    fn replacement(&self, facet: &[usize], k: usize) -> Result<usize, GentleError> {
        let mut acc: Vec<u64> = vec![u64::MAX; self.compat.first().map_or(1, Vec::len)];
        for (i, &w) in facet.iter().enumerate() {
            if i != k {
                let r = self.ray_of[w].expect("proper");
                for (a, b) in acc.iter_mut().zip(&self.compat[r]) {
                    *a &= b;
                }
            }
        }
        let cands: Vec<usize> = (0..self.proper.len())
            .filter(|&r| bit(&acc, r) && !facet.contains(&self.proper[r]))
            .map(|r| self.proper[r])
            .collect();
        match cands.as_slice() {
            [w] => Ok(*w),
            _ => Err(GentleError::FlipFailed {
                walk: facet[k],
                candidates: cands.len(),
            }),
        }
    }

    pub fn facet_id(&self, facet: &[usize]) -> Option<usize> {
        let mut key = facet.to_vec();
        key.sort_unstable();
        self.facet_index.get(&key).copied()
    }

    fn oriented(&self, w: usize, pos: usize) -> (Vec<Letter>, usize) {
        let letters = self.walks[w].letters();
        if letters[pos].inverse {
            (
                letters.iter().rev().map(|l| l.flipped()).collect(),
                letters.len() - 1 - pos,
            )
        } else {
            (letters.to_vec(), pos)
        }
    }

    /// Compares two occurrences of the same arrow; the walk that leaves the
    /// common substring along that arrow's direction is smaller.
    fn cmp_at(&self, a: (usize, usize), b: (usize, usize)) -> Ordering {
        let (la, pa) = self.oriented(a.0, a.1);
        let (lb, pb) = self.oriented(b.0, b.1);
        let mut k = 1;
        while let (Some(x), Some(y)) = (la.get(pa + k), lb.get(pb + k)) {
            if x != y {
                return if x.inverse {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            k += 1;
        }
        let mut k = 1;
        while k <= pa && k <= pb {
            let (x, y) = (la[pa - k], lb[pb - k]);
            if x != y {
                return if x.inverse {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            k += 1;
        }
        Ordering::Equal
    }

    /// Distinguished substrings of every walk of a facet, in facet order.
    pub fn distinguished(&self, facet: &[usize]) -> Result<Vec<Distinguished>, GentleError> {
        if let Some(&w) = facet
            .iter()
            .find(|&&w| self.walks[w].kind == WalkKind::Straight)
        {
            return Err(GentleError::WalkNotBending(w));
        }
        let mut full: Vec<usize> = facet.to_vec();
        full.extend(self.walks_of_kind(WalkKind::Straight));
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.blossoming.quiver.n_arrows()];
        for &w in &full {
            for (pos, l) in self.walks[w].letters().iter().enumerate() {
                occ[l.arrow].push((w, pos));
            }
        }
        let mut marks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for list in occ.iter().filter(|l| !l.is_empty()) {
            let mut best = list[0];
            for &c in &list[1..] {
                if self.cmp_at(best, c) == Ordering::Less {
                    best = c;
                }
            }
            marks.entry(best.0).or_default().push(best.1);
        }
        facet
            .iter()
            .map(|&w| {
                let mut pos = marks.get(&w).cloned().unwrap_or_default();
                pos.sort_unstable();
                let [p, q] = pos[..] else {
                    return Err(GentleError::DistinguishedCount {
                        walk: w,
                        count: pos.len(),
                    });
                };
                let walk = &self.walks[w];
                let (lp, lq) = (walk.letters()[p], walk.letters()[q]);
                if lp.inverse == lq.inverse {
                    return Err(GentleError::DistinguishedCount { walk: w, count: 2 });
                }
                let sigma = Word {
                    start: walk.vertices[p + 1],
                    letters: walk.letters()[p + 1..q].to_vec(),
                };
                Ok(Distinguished {
                    walk: w,
                    p,
                    q,
                    top: lp.inverse,
                    sigma,
                })
            })
            .collect()
    }

    pub fn distinguished_substring(
        &self,
        walk: usize,
        facet: &[usize],
    ) -> Result<Distinguished, GentleError> {
        let k = facet
            .iter()
            .position(|&w| w == walk)
            .ok_or(GentleError::WalkNotInFacet(walk))?;
        Ok(self.distinguished(facet)?.swap_remove(k))
    }

    pub fn c_vector_of(&self, d: &Distinguished) -> RatVec {
        let mut c = RatVec::zeros(self.n_vertices());
        let sign = if d.top {
            Rational::one()
        } else {
            -Rational::one()
        };
        for &v in &self.walks[d.walk].vertices[d.p + 1..=d.q] {
            c[v] += &sign;
        }
        c
    }

    pub fn c_vector(&self, walk: usize, facet: &[usize]) -> Result<RatVec, GentleError> {
        Ok(self.c_vector_of(&self.distinguished_substring(walk, facet)?))
    }

    pub fn flip(&self, facet: &[usize], walk: usize) -> Result<FlipOutcome, GentleError> {
        let k = facet
            .iter()
            .position(|&w| w == walk)
            .ok_or(GentleError::WalkNotInFacet(walk))?;
        let added = self.replacement(facet, k)?;
        let mut next = facet.to_vec();
        next[k] = added;
        next.sort_unstable();
        let d = self.distinguished_substring(walk, facet)?;
        let d2 = self.distinguished_substring(added, &next)?;
        let l = self.walks[walk].letters();
        let sigma = &l[d.p + 1..d.q];
        let l2 = self.walks[added].letters();
        let n2 = l2.len();
        let reversed: Vec<Letter> = l2.iter().rev().map(|x| x.flipped()).collect();
        let options = [
            (l2.to_vec(), d2.p, d2.q),
            (reversed, n2 - 1 - d2.q, n2 - 1 - d2.p),
        ];
        let mut found = None;
        for (m, p2, q2) in &options {
            if &m[p2 + 1..*q2] != sigma {
                continue;
            }
            let mu: Vec<Letter> = m[..=*p2].iter().chain(&l[d.p + 1..]).copied().collect();
            let nu: Vec<Letter> = l[..=d.p].iter().chain(&m[p2 + 1..]).copied().collect();
            if let (Some(a), Some(b)) = (self.lookup(&mu), self.lookup(&nu)) {
                found = Some((a, b));
                break;
            }
        }
        let (mu, nu) = found.ok_or(GentleError::FlipFailed {
            walk,
            candidates: 1,
        })?;
        let lhs = self.g_vector(walk).add(&self.g_vector(added));
        let rhs = self.g_vector(mu).add(&self.g_vector(nu));
        let in_full =
            |f: &[usize], w: usize| f.contains(&w) || self.walks[w].kind == WalkKind::Straight;
        let mu_nu_shared = [mu, nu]
            .iter()
            .all(|&w| in_full(facet, w) && in_full(&next, w));
        Ok(FlipOutcome {
            facet: next,
            removed: walk,
            added,
            mu,
            nu,
            sigma: self.quiver.canonical(&d.sigma),
            dependence_holds: lhs == rhs,
            mu_nu_shared,
        })
    }

    /// Distinguished substrings over all facets, canonically oriented.
    pub fn distinguishable_strings(&self) -> Result<BTreeSet<Word>, GentleError> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for d in self.distinguished(f)? {
                out.insert(self.quiver.canonical(&d.sigma));
            }
        }
        Ok(out)
    }

    /// Extends `w` on the right by a hook (`hook = true`) or cohook until a blossom.
    fn extend(&self, w: &Word, hook: bool, first: Option<Letter>) -> Word {
        let bq = &self.blossoming.quiver;
        let mut out = w.clone();
        let pick = |last: Letter, inverse: bool| {
            bq.continuations(last)
                .into_iter()
                .find(|l| l.inverse == inverse)
                .expect("4-valent vertex")
        };
        let l1 = match (out.letters.last(), first) {
            (_, Some(l)) => l,
            (Some(&last), None) => pick(last, hook),
            (None, None) => {
                let v = w.start;
                if hook {
                    Letter::inv(bq.incoming(v)[0])
                } else {
                    Letter::fwd(bq.outgoing(v)[0])
                }
            }
        };
        out.letters.push(l1);
        let mut last = l1;
        while !self.blossoming.is_blossom(bq.end(last)) {
            last = pick(last, !hook);
            out.letters.push(last);
        }
        out
    }

    fn two_sided(
        &self,
        sigma: &Word,
        left_hook: bool,
        right_hook: bool,
        first: Option<Letter>,
    ) -> Option<usize> {
        let bq = &self.blossoming.quiver;
        let right = self.extend(sigma, right_hook, first);
        let both = self.extend(&bq.inverse_word(&right), left_hook, None);
        self.lookup(&both.letters)
    }
}

/// Walks obtained from a string by adding hooks or cohooks at both ends.
pub fn hook_walks(nk: &NonKissing, sigma: &Word) -> Option<HookWalks> {
    if !nk.quiver.is_string(sigma) {
        return None;
    }
    let hh = nk.two_sided(sigma, true, true, None)?;
    let cc = nk.two_sided(sigma, false, false, None)?;
    let (hc, ch) = if sigma.letters.is_empty() {
        // straight-through walks via the first and second in-arrows
        let ins = nk.blossoming.quiver.incoming(sigma.start);
        (
            nk.two_sided(sigma, false, true, Some(Letter::inv(ins[0])))?,
            nk.two_sided(sigma, false, true, Some(Letter::inv(ins[1])))?,
        )
    } else {
        (
            nk.two_sided(sigma, true, false, None)?,
            nk.two_sided(sigma, false, true, None)?,
        )
    };
    Some(HookWalks { hh, cc, hc, ch })
}

/// Every undirected cycle of the quiver carries at least two relations.
pub fn is_brick(q: &BoundQuiver) -> bool {
    fn relations_on(q: &BoundQuiver, cyc: &[Letter]) -> usize {
        let n = cyc.len();
        (0..n)
            .filter(|&k| {
                let (x, y) = (cyc[k], cyc[(k + 1) % n]);
                match (x.inverse, y.inverse) {
                    (false, false) => q.relations.contains(&(x.arrow, y.arrow)),
                    (true, true) => q.relations.contains(&(y.arrow, x.arrow)),
                    _ => false,
                }
            })
            .count()
    }
    fn dfs(
        q: &BoundQuiver,
        s: usize,
        min_arrow: usize,
        path: &mut Vec<Letter>,
        seen: &mut Vec<usize>,
    ) -> bool {
        let at = path.last().map_or(s, |&l| q.end(l));
        for l in q.letters_at(at) {
            if l.arrow < min_arrow || path.iter().any(|x| x.arrow == l.arrow) {
                continue;
            }
            let to = q.end(l);
            path.push(l);
            let ok = if to == s {
                relations_on(q, path) >= 2
            } else if seen.contains(&to) {
                true
            } else {
                seen.push(to);
                let ok = dfs(q, s, min_arrow, path, seen);
                seen.pop();
                ok
            };
            path.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    (0..q.n_arrows()).all(|a| {
        let arrow = &q.arrows[a];
        dfs(
            q,
            arrow.source,
            a,
            &mut vec![Letter::fwd(a)],
            &mut vec![arrow.source, arrow.target],
        ) || arrow.source == arrow.target && relations_on(q, &[Letter::fwd(a)]) >= 2
    })
}

pub fn is_two_acyclic(q: &BoundQuiver) -> bool {
    !q.arrows.iter().any(|a| {
        a.source != a.target
            && q.arrows
                .iter()
                .any(|b| b.source == a.target && b.target == a.source)
    })
}

pub fn non_kissing_fan(nk: &NonKissing) -> Result<Fan, GentleError> {
    let spec = FanSpec {
        ambient_dim: nk.n_vertices(),
        rays: nk.proper.iter().map(|&w| nk.g_vector(w)).collect(),
        maximal_cones: nk
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&w| nk.ray_index(w).expect("proper"))
                    .collect()
            })
            .collect(),
        zero_height_rays: Vec::new(),
        labels: nk.proper.iter().map(|&w| nk.format_walk(w)).collect(),
    };
    Ok(Fan::new(spec)?)
}

/// Total number of kisses between each walk and all other walks.
pub fn kissing_numbers(nk: &NonKissing) -> Vec<usize> {
    let n = nk.walks.len();
    (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a)
                .map(|b| nk.kisses(a, b) + nk.kisses(b, a))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct HookFacetReport {
    pub applicable: bool,
    pub brick: bool,
    pub two_acyclic: bool,
    pub strings: usize,
    pub proper_walks: usize,
    pub facet_count: usize,
    pub simplicial: bool,
    pub facets_match_hooks: bool,
    pub realization_admissible: bool,
    pub passed: bool,
}

pub fn verify_hook_facets(nk: &NonKissing) -> Result<HookFacetReport, GentleError> {
    let brick = is_brick(&nk.quiver);
    let two_acyclic = is_two_acyclic(&nk.quiver);
    let fan = non_kissing_fan(nk)?;
    let tc = typecone::assemble(&fan);
    let rep = typecone::facets(&tc);
    let mut rep_out = HookFacetReport {
        applicable: brick && two_acyclic,
        brick,
        two_acyclic,
        strings: nk.strings.len(),
        proper_walks: nk.proper.len(),
        facet_count: rep.facet_count,
        simplicial: rep.is_simplicial,
        facets_match_hooks: false,
        realization_admissible: false,
        passed: false,
    };
    if !rep_out.applicable {
        return Ok(rep_out);
    }
    let n = nk.proper.len();
    let mut hooks = BTreeSet::new();
    for s in &nk.strings {
        let Some(h) = hook_walks(nk, s) else {
            return Ok(rep_out);
        };
        let mut v = RatVec::zeros(n);
        for (w, c) in [(h.hh, 1), (h.cc, 1), (h.hc, -1), (h.ch, -1)] {
            if let Some(r) = nk.ray_index(w) {
                v[r] += Rational::from_int(c);
            }
        }
        hooks.insert(v);
    }
    let facet_normals: BTreeSet<RatVec> = rep
        .facet_indices
        .iter()
        .map(|&i| tc.inequalities[i].normal.clone())
        .collect();
    rep_out.facets_match_hooks = facet_normals == hooks && hooks.len() == nk.strings.len();
    let ell = RatVec::new(vec![Rational::one(); rep.facet_count]);
    rep_out.realization_admissible = typecone::realization_from_positive(&tc, &rep, &ell).is_ok();
    rep_out.passed = rep_out.facets_match_hooks
        && rep_out.simplicial
        && rep_out.realization_admissible
        && nk.strings.len() + nk.n_vertices() == n;
    Ok(rep_out)
}

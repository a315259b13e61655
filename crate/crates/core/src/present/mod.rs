//! Concrete realizations of terms as F_σ subsets of the Baire space.
//!
//! A [`PieceGen`] is a deterministic automaton over natural-number labels
//! whose accepted infinite words form a pruned tree's branch set, a closed
//! subset of ℕ^ω. A [`TreePresentation`] is a finite list of pieces plus at
//! most one ℕ-indexed family of pieces, described by a [`FamilyTemplate`];
//! the denoted space is the union of all branch sets.

mod decide;
mod enumerate;
mod text;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Atom, Factor, Monomial, NormalForm};
use crate::point::Lasso;

pub use self::decide::{decide_compact, decide_uncountable, is_compact, pumping_witness, PumpingWitness};
pub use self::enumerate::{
    enumerate_depth, enumerate_truncated, isolated_points_upto, IsolationReport, PrefixTree,
};
pub use self::text::{from_text, to_text};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("decision needs every member of the indexed family")]
    UnknownForFamily,
    #[error("invalid piece: {0}")]
    InvalidPiece(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A finite interval `lo..=hi` or a cofinite tail `>= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelSet {
    Range { lo: u64, hi: u64 },
    AtLeast(u64),
}

impl LabelSet {
    pub fn single(a: u64) -> LabelSet {
        LabelSet::Range { lo: a, hi: a }
    }

    pub fn contains(self, a: u64) -> bool {
        match self {
            LabelSet::Range { lo, hi } => lo <= a && a <= hi,
            LabelSet::AtLeast(k) => a >= k,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, LabelSet::Range { .. })
    }

    /// Number of labels; `None` for cofinite sets.
    pub fn size(self) -> Option<u64> {
        match self {
            LabelSet::Range { lo, hi } => Some(hi.saturating_sub(lo) + 1),
            LabelSet::AtLeast(_) => None,
        }
    }

    pub fn min(self) -> u64 {
        match self {
            LabelSet::Range { lo, .. } => lo,
            LabelSet::AtLeast(k) => k,
        }
    }

    fn is_valid(self) -> bool {
        match self {
            LabelSet::Range { lo, hi } => lo <= hi,
            LabelSet::AtLeast(_) => true,
        }
    }

    fn disjoint(self, other: LabelSet) -> bool {
        let hi = |s: LabelSet| match s {
            LabelSet::Range { hi, .. } => hi,
            LabelSet::AtLeast(_) => u64::MAX,
        };
        hi(self) < other.min() || hi(other) < self.min()
    }

    /// Labels of the set not exceeding `bound`.
    pub fn labels_upto(self, bound: u64) -> impl Iterator<Item = u64> {
        let (lo, hi) = match self {
            LabelSet::Range { lo, hi } => (lo, hi.min(bound)),
            LabelSet::AtLeast(k) => (k, bound),
        };
        (lo..=hi).filter(move |_| lo <= hi)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelSet::Range { lo, hi } => write!(f, "{lo}..{hi}"),
            LabelSet::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub labels: LabelSet,
    pub target: usize,
}

/// Deterministic pruned-tree generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PieceGen {
    pub start: usize,
    /// Outgoing transitions per state.
    pub states: Vec<Vec<Transition>>,
}

impl PieceGen {
    /// Checks the structural invariants: targets exist, every reachable state
    /// has a transition and label sets out of a state are pairwise disjoint.
    pub fn validate(&self) -> Result<(), PresentationError> {
        let bad = |m: String| Err(PresentationError::InvalidPiece(m));
        if self.start >= self.states.len() {
            return bad(format!("start state {} out of range", self.start));
        }
        for (s, ts) in self.states.iter().enumerate() {
            for (i, t) in ts.iter().enumerate() {
                if t.target >= self.states.len() {
                    return bad(format!("state {s}: target {} out of range", t.target));
                }
                if !t.labels.is_valid() {
                    return bad(format!("state {s}: empty label range {}", t.labels));
                }
                if ts[..i].iter().any(|u| !u.labels.disjoint(t.labels)) {
                    return bad(format!("state {s}: overlapping labels {}", t.labels));
                }
            }
        }
        for s in self.reachable() {
            if self.states[s].is_empty() {
                return bad(format!("state {s} has no continuation"));
            }
        }
        Ok(())
    }

    fn single_loop(labels: LabelSet) -> PieceGen {
        PieceGen { start: 0, states: vec![vec![Transition { labels, target: 0 }]] }
    }

    /// All of ℕ^ω.
    pub fn baire() -> PieceGen {
        PieceGen::single_loop(LabelSet::AtLeast(0))
    }

    /// Binary sequences.
    pub fn cantor() -> PieceGen {
        PieceGen::single_loop(LabelSet::Range { lo: 0, hi: 1 })
    }

    /// One free coordinate from `first`, then zeros.
    fn first_then_zero(first: LabelSet) -> PieceGen {
        PieceGen {
            start: 0,
            states: vec![
                vec![Transition { labels: first, target: 1 }],
                vec![Transition { labels: LabelSet::single(0), target: 1 }],
            ],
        }
    }

    pub fn omega() -> PieceGen {
        PieceGen::first_then_zero(LabelSet::AtLeast(0))
    }

    pub fn finite(n: u64) -> PieceGen {
        PieceGen::first_then_zero(LabelSet::Range { lo: 0, hi: n.max(1) - 1 })
    }

    /// The `k`-th member of the eventually-zero family: `k` free coordinates,
    /// then zeros.
    pub fn eventually_zero(k: u64) -> PieceGen {
        let k = k as usize;
        let mut states: Vec<Vec<Transition>> = (0..k)
            .map(|i| vec![Transition { labels: LabelSet::AtLeast(0), target: i + 1 }])
            .collect();
        states.push(vec![Transition { labels: LabelSet::single(0), target: k }]);
        PieceGen { start: 0, states }
    }

    /// Branches `tag · x` for `x` a branch of `self`.
    pub fn prefixed(&self, tag: &[u64]) -> PieceGen {
        if tag.is_empty() {
            return self.clone();
        }
        let offset = tag.len();
        let mut states: Vec<Vec<Transition>> = tag
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let target = if i + 1 == offset { self.start + offset } else { i + 1 };
                vec![Transition { labels: LabelSet::single(a), target }]
            })
            .collect();
        for ts in &self.states {
            states.push(
                ts.iter()
                    .map(|t| Transition { labels: t.labels, target: t.target + offset })
                    .collect(),
            );
        }
        PieceGen { start: 0, states }
    }

    /// Coordinate interleaving: even positions read `a`, odd positions read `b`.
    pub fn interleave(a: &PieceGen, b: &PieceGen) -> PieceGen {
        let mut index = std::collections::HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        let start = (a.start, b.start, false);
        index.insert(start, 0usize);
        order.push(start);
        queue.push_back(start);
        let mut states: Vec<Vec<Transition>> = vec![Vec::new()];
        while let Some(key @ (sa, sb, odd)) = queue.pop_front() {
            let id = index[&key];
            let outgoing: Vec<(LabelSet, (usize, usize, bool))> = if odd {
                b.states[sb].iter().map(|t| (t.labels, (sa, t.target, false))).collect()
            } else {
                a.states[sa].iter().map(|t| (t.labels, (t.target, sb, true))).collect()
            };
            let mut ts = Vec::with_capacity(outgoing.len());
            for (labels, next) in outgoing {
                let target = *index.entry(next).or_insert_with(|| {
                    order.push(next);
                    queue.push_back(next);
                    states.push(Vec::new());
                    order.len() - 1
                });
                ts.push(Transition { labels, target });
            }
            states[id] = ts;
        }
        PieceGen { start: 0, states }
    }

    pub fn step(&self, state: usize, label: u64) -> Option<usize> {
        self.states[state].iter().find(|t| t.labels.contains(label)).map(|t| t.target)
    }

    /// State after reading `word` from the start, if the word is admitted.
    pub fn run(&self, word: &[u64]) -> Option<usize> {
        self.run_from(self.start, word)
    }

    pub fn run_from(&self, state: usize, word: &[u64]) -> Option<usize> {
        word.iter().try_fold(state, |s, &a| self.step(s, a))
    }

    /// Exact membership of an eventually periodic point in the branch set.
    pub fn accepts(&self, x: &Lasso) -> bool {
        let Some(mut s) = self.run(x.prefix()) else { return false };
        let mut seen = vec![false; self.states.len()];
        loop {
            if seen[s] {
                return true;
            }
            seen[s] = true;
            match self.run_from(s, x.cycle()) {
                Some(t) => s = t,
                None => return false,
            }
        }
    }

    /// Follows least labels from `state` until a state repeats.
    pub fn least_continuation(&self, state: usize) -> Lasso {
        let mut seen = vec![None; self.states.len()];
        let mut word = Vec::new();
        let mut s = state;
        loop {
            if let Some(pos) = seen[s] {
                let cycle: Vec<u64> = word[pos..].to_vec();
                word.truncate(pos);
                return Lasso::new(word, cycle);
            }
            seen[s] = Some(word.len());
            let t = self.states[s]
                .iter()
                .min_by_key(|t| t.labels.min())
                .expect("pruned piece");
            word.push(t.labels.min());
            s = t.target;
        }
    }

    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.start];
        let mut out = Vec::new();
        while let Some(s) = stack.pop() {
            if s >= seen.len() || seen[s] {
                continue;
            }
            seen[s] = true;
            out.push(s);
            stack.extend(self.states[s].iter().map(|t| t.target));
        }
        out.sort_unstable();
        out
    }
}

/// An ℕ-indexed family of pieces, described structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTemplate {
    /// Member `k`: `k` free coordinates then zeros; the union is the set of
    /// eventually-zero sequences, a copy of ℚ.
    EventuallyZero,
    /// The same piece for every index.
    Fixed(PieceGen),
    Prefix(Vec<u64>, Box<FamilyTemplate>),
    /// Members are interleavings; when both sides vary, index `k` is split by
    /// the Cantor pairing function.
    Interleave(Box<FamilyTemplate>, Box<FamilyTemplate>),
    /// Member `k` is member `k / n` of alternative `k % n`.
    Alternate(Vec<FamilyTemplate>),
}

/// Cantor pairing `(i, j) ↦ (i + j)(i + j + 1)/2 + j`.
pub fn pair(i: u64, j: u64) -> u64 {
    (i + j) * (i + j + 1) / 2 + j
}

pub fn unpair(k: u64) -> (u64, u64) {
    let w = (((8.0 * k as f64 + 1.0).sqrt() - 1.0) / 2.0).floor() as u64;
    // correct for floating point at the boundary
    let mut w = w;
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let j = k - w * (w + 1) / 2;
    (w - j, j)
}

impl FamilyTemplate {
    pub fn is_parametric(&self) -> bool {
        match self {
            FamilyTemplate::EventuallyZero => true,
            FamilyTemplate::Fixed(_) => false,
            FamilyTemplate::Prefix(_, t) => t.is_parametric(),
            FamilyTemplate::Interleave(a, b) => a.is_parametric() || b.is_parametric(),
            FamilyTemplate::Alternate(ts) => ts.iter().any(FamilyTemplate::is_parametric),
        }
    }

    fn split(a: &FamilyTemplate, b: &FamilyTemplate, k: u64) -> (u64, u64) {
        match (a.is_parametric(), b.is_parametric()) {
            (true, true) => unpair(k),
            (true, false) => (k, 0),
            (false, _) => (0, k),
        }
    }

    fn join(a: &FamilyTemplate, b: &FamilyTemplate, i: u64, j: u64) -> u64 {
        match (a.is_parametric(), b.is_parametric()) {
            (true, true) => pair(i, j),
            (true, false) => i,
            (false, _) => j,
        }
    }

    pub fn instance(&self, k: u64) -> PieceGen {
        match self {
            FamilyTemplate::EventuallyZero => PieceGen::eventually_zero(k),
            FamilyTemplate::Fixed(p) => p.clone(),
            FamilyTemplate::Prefix(tag, t) => t.instance(k).prefixed(tag),
            FamilyTemplate::Interleave(a, b) => {
                let (i, j) = FamilyTemplate::split(a, b, k);
                PieceGen::interleave(&a.instance(i), &b.instance(j))
            }
            FamilyTemplate::Alternate(ts) => {
                let n = ts.len() as u64;
                ts[(k % n) as usize].instance(k / n)
            }
        }
    }

    /// Indices whose members jointly contain, up to depth `d`, every prefix
    /// admitted by any member. Members grow with the index, so one index per
    /// alternative suffices.
    pub fn covering_indices(&self, d: usize) -> Vec<u64> {
        match self {
            FamilyTemplate::EventuallyZero => vec![d as u64],
            FamilyTemplate::Fixed(_) => vec![0],
            FamilyTemplate::Prefix(tag, t) => t.covering_indices(d.saturating_sub(tag.len())),
            FamilyTemplate::Interleave(a, b) => {
                let left = a.covering_indices(d.div_ceil(2));
                let right = b.covering_indices(d / 2);
                left.iter()
                    .flat_map(|&i| right.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| FamilyTemplate::join(a, b, i, j))
                    .collect()
            }
            FamilyTemplate::Alternate(ts) => {
                let n = ts.len() as u64;
                ts.iter()
                    .enumerate()
                    .flat_map(|(m, t)| {
                        t.covering_indices(d).into_iter().map(move |k| k * n + m as u64)
                    })
                    .collect()
            }
        }
    }

    /// Exact membership in the union of all members.
    pub fn contains(&self, x: &Lasso) -> bool {
        match self {
            FamilyTemplate::EventuallyZero => x.cycle() == [0],
            FamilyTemplate::Fixed(p) => p.accepts(x),
            FamilyTemplate::Prefix(tag, t) => x.starts_with(tag) && t.contains(&x.drop_prefix(tag.len())),
            FamilyTemplate::Interleave(a, b) => a.contains(&x.evens()) && b.contains(&x.odds()),
            FamilyTemplate::Alternate(ts) => ts.iter().any(|t| t.contains(x)),
        }
    }

    fn prefixed(self, tag: &[u64]) -> FamilyTemplate {
        match self {
            FamilyTemplate::Prefix(mut inner_tag, t) => {
                let mut full = tag.to_vec();
                full.append(&mut inner_tag);
                FamilyTemplate::Prefix(full, t)
            }
            other => FamilyTemplate::Prefix(tag.to_vec(), Box::new(other)),
        }
    }
}

/// Finite list of pieces plus at most one indexed family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TreePresentation {
    pub pieces: Vec<PieceGen>,
    pub family: Option<FamilyTemplate>,
}

impl TreePresentation {
    pub fn empty() -> TreePresentation {
        TreePresentation::default()
    }

    pub fn single(piece: PieceGen) -> TreePresentation {
        TreePresentation { pieces: vec![piece], family: None }
    }

    pub fn family(t: FamilyTemplate) -> TreePresentation {
        TreePresentation { pieces: Vec::new(), family: Some(t) }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty() && self.family.is_none()
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        self.pieces.iter().try_for_each(PieceGen::validate)?;
        if let Some(f) = &self.family {
            for k in f.covering_indices(3) {
                f.instance(k).validate()?;
            }
        }
        Ok(())
    }

    /// Exact membership of an eventually periodic point.
    pub fn contains(&self, x: &Lasso) -> bool {
        self.pieces.iter().any(|p| p.accepts(x))
            || self.family.as_ref().is_some_and(|f| f.contains(x))
    }

    /// Fixed pieces followed by the family members covering depth `d`.
    pub fn pieces_for_depth(&self, d: usize) -> Vec<PieceGen> {
        let mut out = self.pieces.clone();
        if let Some(f) = &self.family {
            let mut ks = f.covering_indices(d);
            ks.sort_unstable();
            ks.dedup();
            out.extend(ks.into_iter().map(|k| f.instance(k)));
        }
        out
    }

    pub fn prefixed(&self, tag: &[u64]) -> TreePresentation {
        TreePresentation {
            pieces: self.pieces.iter().map(|p| p.prefixed(tag)).collect(),
            family: self.family.clone().map(|f| f.prefixed(tag)),
        }
    }

    /// Least continuations of `word` inside each piece admitting it (family
    /// members taken at the covering indices for `horizon`).
    pub fn continuations(&self, word: &[u64], horizon: usize) -> Vec<Lasso> {
        let mut out: Vec<Lasso> = self
            .pieces_for_depth(horizon.max(word.len()))
            .iter()
            .filter_map(|p| p.run(word).map(|s| p.least_continuation(s).prepend(word)))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Disjoint sum: `p` tagged by a leading 0, `q` by a leading 1.
pub fn sum_presentation(p: &TreePresentation, q: &TreePresentation) -> TreePresentation {
    let left = p.prefixed(&[0]);
    let right = q.prefixed(&[1]);
    let mut pieces = left.pieces;
    pieces.extend(right.pieces);
    let family = match (left.family, right.family) {
        (Some(a), Some(b)) => Some(FamilyTemplate::Alternate(vec![a, b])),
        (a, b) => a.or(b),
    };
    TreePresentation { pieces, family }
}

/// Product realized by interleaving coordinates: even positions from `p`,
/// odd positions from `q`.
pub fn product_presentation(p: &TreePresentation, q: &TreePresentation) -> TreePresentation {
    let pieces = p
        .pieces
        .iter()
        .flat_map(|a| q.pieces.iter().map(move |b| PieceGen::interleave(a, b)))
        .collect();
    let mut combos = Vec::new();
    if let Some(f) = &p.family {
        for b in &q.pieces {
            combos.push(FamilyTemplate::Interleave(
                Box::new(f.clone()),
                Box::new(FamilyTemplate::Fixed(b.clone())),
            ));
        }
    }
    if let Some(g) = &q.family {
        for a in &p.pieces {
            combos.push(FamilyTemplate::Interleave(
                Box::new(FamilyTemplate::Fixed(a.clone())),
                Box::new(g.clone()),
            ));
        }
    }
    if let (Some(f), Some(g)) = (&p.family, &q.family) {
        combos.push(FamilyTemplate::Interleave(Box::new(f.clone()), Box::new(g.clone())));
    }
    let family = match combos.len() {
        0 => None,
        1 => combos.pop(),
        _ => Some(FamilyTemplate::Alternate(combos)),
    };
    TreePresentation { pieces, family }
}

pub fn atom_presentation(atom: Atom) -> TreePresentation {
    match atom {
        Atom::Fin(n) => TreePresentation::single(PieceGen::finite(n)),
        Atom::Factor(Factor::Omega) => TreePresentation::single(PieceGen::omega()),
        Atom::Factor(Factor::Cantor) => TreePresentation::single(PieceGen::cantor()),
        Atom::Factor(Factor::Baire) => TreePresentation::single(PieceGen::baire()),
        Atom::Factor(Factor::Rationals) => TreePresentation::family(FamilyTemplate::EventuallyZero),
    }
}

/// Atoms of the monomial folded left by [`product_presentation`].
pub fn monomial_presentation(m: &Monomial) -> TreePresentation {
    let mut atoms = m.atoms().into_iter();
    let first = atom_presentation(atoms.next().expect("monomials have an atom"));
    atoms.fold(first, |acc, a| product_presentation(&acc, &atom_presentation(a)))
}

/// Canonical realization: monomials folded left by [`sum_presentation`].
pub fn present(nf: &NormalForm) -> TreePresentation {
    let mut monos = nf.monomials().iter();
    match monos.next() {
        None => TreePresentation::empty(),
        Some(m) => monos.fold(monomial_presentation(m), |acc, m| {
            sum_presentation(&acc, &monomial_presentation(m))
        }),
    }
}

/// Leading tag of summand `i` among `n` in the left-folded sum.
pub fn summand_tag(n: usize, i: usize) -> Vec<u64> {
    assert!(i < n);
    if n == 1 {
        return Vec::new();
    }
    let zeros = if i == 0 { n - 1 } else { n - 1 - i };
    let mut tag = vec![0; zeros];
    if i > 0 {
        tag.push(1);
    }
    tag
}

//! Exact deciders for compactness and uncountability of branch sets.

use std::collections::VecDeque;

use super::{FamilyTemplate, LabelSet, PieceGen, PresentationError, TreePresentation};

fn piece_compact(p: &PieceGen) -> bool {
    p.reachable().into_iter().all(|s| p.states[s].iter().all(|t| t.labels.is_finite()))
}

/// A branch set is compact iff its tree is finitely branching. Undecided
/// (by this function) when an indexed family is present.
pub fn decide_compact(p: &TreePresentation) -> Result<bool, PresentationError> {
    if p.family.is_some() {
        return Err(PresentationError::UnknownForFamily);
    }
    Ok(p.pieces.iter().all(piece_compact))
}

/// [`decide_compact`], resolving families: a non-parametric family is one
/// piece; a parametric one is probed at its covering members, and any
/// noncompact member makes the union noncompact.
pub fn is_compact(p: &TreePresentation) -> bool {
    match decide_compact(p) {
        Ok(b) => b,
        Err(_) => {
            let f = p.family.as_ref().expect("only families are undecided");
            p.pieces.iter().all(piece_compact)
                && (0..=4).all(|d| f.covering_indices(d).into_iter().all(|k| piece_compact(&f.instance(k))))
        }
    }
}

/// Strongly connected components (Tarjan), as a component id per state.
fn components(p: &PieceGen) -> Vec<usize> {
    struct Tarjan<'a> {
        p: &'a PieceGen,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next: usize,
        ncomp: usize,
    }
    impl Tarjan<'_> {
        fn visit(&mut self, v: usize) {
            self.index[v] = Some(self.next);
            self.low[v] = self.next;
            self.next += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for t in &self.p.states[v] {
                let w = t.target;
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                    _ => {}
                }
            }
            if Some(self.low[v]) == self.index[v] {
                while let Some(w) = self.stack.pop() {
                    self.on_stack[w] = false;
                    self.comp[w] = self.ncomp;
                    if w == v {
                        break;
                    }
                }
                self.ncomp += 1;
            }
        }
    }
    let n = p.states.len();
    let mut t = Tarjan {
        p,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![usize::MAX; n],
        next: 0,
        ncomp: 0,
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    t.comp
}

/// A reachable state lying on two different cycles: a component whose
/// internal labelled edges outnumber its states.
fn branching_state(p: &PieceGen) -> Option<usize> {
    let comp = components(p);
    let reachable = p.reachable();
    let mut size = std::collections::HashMap::<usize, u64>::new();
    let mut edges = std::collections::HashMap::<usize, u64>::new();
    for &s in &reachable {
        *size.entry(comp[s]).or_default() += 1;
        for t in &p.states[s] {
            if comp[t.target] == comp[s] {
                let e = edges.entry(comp[s]).or_default();
                *e = e.saturating_add(t.labels.size().unwrap_or(u64::MAX));
            }
        }
    }
    let c = *edges.iter().find(|(c, &e)| e > size[c])?.0;
    reachable.into_iter().find(|&s| {
        p.states[s]
            .iter()
            .filter(|t| comp[t.target] == c)
            .map(|t| t.labels.size().unwrap_or(u64::MAX))
            .fold(0u64, u64::saturating_add)
            >= 2
            && comp[s] == c
    })
}

fn piece_uncountable(p: &PieceGen) -> bool {
    branching_state(p).is_some()
}

fn family_uncountable(f: &FamilyTemplate) -> bool {
    match f {
        FamilyTemplate::EventuallyZero => false,
        FamilyTemplate::Fixed(p) => piece_uncountable(p),
        FamilyTemplate::Prefix(_, t) => family_uncountable(t),
        // members are nonempty, so a product is uncountable iff a factor is
        FamilyTemplate::Interleave(a, b) => family_uncountable(a) || family_uncountable(b),
        FamilyTemplate::Alternate(ts) => ts.iter().any(family_uncountable),
    }
}

/// Uncountable iff some piece's automaton has a reachable state with two
/// label-disjoint loops, which spans a perfect binary subtree.
pub fn decide_uncountable(p: &TreePresentation) -> bool {
    p.pieces.iter().any(piece_uncountable) || p.family.as_ref().is_some_and(family_uncountable)
}

/// A copy of 2^ω inside a branch set: `prefix · {loop_a, loop_b}^ω`. The
/// loops start with different labels, so distinct choice sequences give
/// distinct branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpingWitness {
    pub prefix: Vec<u64>,
    pub loop_a: Vec<u64>,
    pub loop_b: Vec<u64>,
}

impl PumpingWitness {
    /// The branch prefix selected by a finite choice sequence.
    pub fn word(&self, choices: &[bool]) -> Vec<u64> {
        let mut w = self.prefix.clone();
        for &c in choices {
            w.extend_from_slice(if c { &self.loop_b } else { &self.loop_a });
        }
        w
    }
}

fn shortest_path(p: &PieceGen, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<u64>> {
    let mut back: Vec<Option<(usize, u64)>> = vec![None; p.states.len()];
    let mut seen = vec![false; p.states.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(s) = queue.pop_front() {
        if s == to {
            let mut word = Vec::new();
            let mut v = to;
            while let Some((u, a)) = back[v] {
                word.push(a);
                v = u;
            }
            word.reverse();
            return Some(word);
        }
        for t in &p.states[s] {
            if allowed(t.target) && !seen[t.target] {
                seen[t.target] = true;
                back[t.target] = Some((s, t.labels.min()));
                queue.push_back(t.target);
            }
        }
    }
    None
}

pub fn pumping_witness(p: &PieceGen) -> Option<PumpingWitness> {
    let q = branching_state(p)?;
    let comp = components(p);
    let inside = |s: usize| comp[s] == comp[q];
    let prefix = shortest_path(p, p.start, q, |_| true)?;
    // two distinct internal labels out of q
    let mut firsts = p.states[q]
        .iter()
        .filter(|t| inside(t.target))
        .flat_map(|t| {
            let second = match t.labels {
                LabelSet::Range { lo, hi } if lo < hi => Some(lo + 1),
                LabelSet::AtLeast(k) => Some(k + 1),
                _ => None,
            };
            std::iter::once((t.labels.min(), t.target)).chain(second.map(|a| (a, t.target)))
        });
    let (a, ta) = firsts.next()?;
    let (b, tb) = firsts.next()?;
    let mut loop_a = vec![a];
    loop_a.extend(shortest_path(p, ta, q, inside)?);
    let mut loop_b = vec![b];
    loop_b.extend(shortest_path(p, tb, q, inside)?);
    Some(PumpingWitness { prefix, loop_a, loop_b })
}

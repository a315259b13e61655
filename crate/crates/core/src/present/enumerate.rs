//! Finite-depth views of a presentation under a label cap.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{PieceGen, TreePresentation};

/// Run state across all pieces: the (piece, state) pairs still alive.
type Active = Vec<(usize, usize)>;

fn start(pieces: &[PieceGen]) -> Active {
    pieces.iter().enumerate().map(|(i, p)| (i, p.start)).collect()
}

fn advance(pieces: &[PieceGen], active: &Active, label: u64) -> Active {
    let mut next: Active =
        active.iter().filter_map(|&(i, s)| pieces[i].step(s, label).map(|t| (i, t))).collect();
    next.sort_unstable();
    next.dedup();
    next
}

/// Admitted words of one length, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixTree {
    pub depth: usize,
    pub bound: u64,
    pub words: Vec<Vec<u64>>,
}

impl PrefixTree {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[u64]) -> bool {
        self.words.binary_search_by(|x| x.as_slice().cmp(w)).is_ok()
    }
}

/// Indented tree: one node per line, children below their parent.
impl fmt::Display for PrefixTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "depth {} bound {} leaves {}", self.depth, self.bound, self.words.len())?;
        let mut prev: &[u64] = &[];
        for w in &self.words {
            let shared = prev.iter().zip(w).take_while(|(a, b)| a == b).count();
            for (i, a) in w.iter().enumerate().skip(shared) {
                writeln!(f, "{:indent$}{a}", "", indent = 2 * i)?;
            }
            prev = w;
        }
        Ok(())
    }
}

fn enumerate_pieces(pieces: &[PieceGen], d: usize, bound: u64) -> PrefixTree {
    fn go(pieces: &[PieceGen], active: Active, word: &mut Vec<u64>, d: usize, bound: u64, out: &mut Vec<Vec<u64>>) {
        if word.len() == d {
            out.push(word.clone());
            return;
        }
        for a in 0..=bound {
            let next = advance(pieces, &active, a);
            if !next.is_empty() {
                word.push(a);
                go(pieces, next, word, d, bound, out);
                word.pop();
            }
        }
    }
    let mut words = Vec::new();
    if !pieces.is_empty() {
        go(pieces, start(pieces), &mut Vec::new(), d, bound, &mut words);
    }
    PrefixTree { depth: d, bound, words }
}

/// All length-`d` prefixes with labels `<= bound` admitted by some piece.
pub fn enumerate_depth(p: &TreePresentation, d: usize, bound: u64) -> PrefixTree {
    enumerate_pieces(&p.pieces_for_depth(d), d, bound)
}

/// As [`enumerate_depth`], with the family cut to members `0..=max_index`.
pub fn enumerate_truncated(p: &TreePresentation, d: usize, bound: u64, max_index: u64) -> PrefixTree {
    let mut pieces = p.pieces.clone();
    if let Some(f) = &p.family {
        pieces.extend((0..=max_index).map(|k| f.instance(k)));
    }
    enumerate_pieces(&pieces, d, bound)
}

/// Isolation candidates found by [`isolated_points_upto`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolationReport {
    pub depth: usize,
    pub horizon: usize,
    pub bound: u64,
    pub prefixes: Vec<Vec<u64>>,
}

struct Isolation<'a> {
    pieces: &'a [PieceGen],
    bound: u64,
    depth: usize,
    horizon: usize,
    counts: HashMap<(Active, usize), u8>,
    has: HashMap<(Active, usize), bool>,
}

impl Isolation<'_> {
    /// Number of admitted extensions of length `remaining`, capped at 2.
    fn count(&mut self, active: &Active, remaining: usize) -> u8 {
        if active.is_empty() {
            return 0;
        }
        if remaining == 0 {
            return 1;
        }
        let key = (active.clone(), remaining);
        if let Some(&c) = self.counts.get(&key) {
            return c;
        }
        let mut total = 0;
        for a in 0..=self.bound {
            let next = advance(self.pieces, active, a);
            total = (total + self.count(&next, remaining - 1)).min(2);
            if total == 2 {
                break;
            }
        }
        self.counts.insert(key, total);
        total
    }

    fn isolated(&mut self, active: &Active, len: usize) -> bool {
        len >= 1 && self.count(active, self.horizon - len) == 1
    }

    /// Whether some extension of length `len..=depth` is a candidate.
    fn has_candidate(&mut self, active: &Active, len: usize) -> bool {
        if active.is_empty() {
            return false;
        }
        let key = (active.clone(), len);
        if let Some(&b) = self.has.get(&key) {
            return b;
        }
        let b = self.isolated(active, len)
            || (len < self.depth
                && (0..=self.bound).any(|a| {
                    let next = advance(self.pieces, active, a);
                    self.has_candidate(&next, len + 1)
                }));
        self.has.insert(key, b);
        b
    }

    fn collect(&mut self, active: Active, word: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !self.has_candidate(&active, word.len()) {
            return;
        }
        if self.isolated(&active, word.len()) {
            out.push(word.clone());
        }
        if word.len() == self.depth {
            return;
        }
        for a in 0..=self.bound {
            let next = advance(self.pieces, &active, a);
            word.push(a);
            self.collect(next, word, out);
            word.pop();
        }
    }
}

/// Nonempty prefixes of length `<= d` with exactly one admitted extension
/// at the horizon `2d`, labels capped at `bound`. Candidates only: a point
/// is isolated iff some prefix has one extension at every horizon.
pub fn isolated_points_upto(p: &TreePresentation, d: usize, bound: u64) -> IsolationReport {
    let horizon = 2 * d;
    let pieces = p.pieces_for_depth(horizon);
    let mut iso = Isolation {
        pieces: &pieces,
        bound,
        depth: d,
        horizon,
        counts: HashMap::new(),
        has: HashMap::new(),
    };
    let mut prefixes = Vec::new();
    if !pieces.is_empty() {
        iso.collect(start(&pieces), &mut Vec::new(), &mut prefixes);
    }
    IsolationReport { depth: d, horizon, bound, prefixes }
}

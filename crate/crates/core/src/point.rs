//! Eventually periodic points of the Baire space.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The sequence `prefix · cycle · cycle · …`, kept in a minimal form so that
/// structural equality is equality of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLasso", into = "RawLasso")]
pub struct Lasso {
    prefix: Vec<u64>,
    cycle: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawLasso {
    prefix: Vec<u64>,
    cycle: Vec<u64>,
}

impl TryFrom<RawLasso> for Lasso {
    type Error = String;

    fn try_from(raw: RawLasso) -> Result<Self, Self::Error> {
        if raw.cycle.is_empty() {
            return Err("lasso cycle must be non-empty".into());
        }
        Ok(Lasso::new(raw.prefix, raw.cycle))
    }
}

impl From<Lasso> for RawLasso {
    fn from(l: Lasso) -> Self {
        RawLasso { prefix: l.prefix, cycle: l.cycle }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl Lasso {
    /// # Panics
    /// If `cycle` is empty.
    pub fn new(prefix: Vec<u64>, cycle: Vec<u64>) -> Lasso {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        let mut l = Lasso { prefix, cycle };
        l.normalize();
        l
    }

    pub fn constant(label: u64) -> Lasso {
        Lasso::new(Vec::new(), vec![label])
    }

    pub fn zeros() -> Lasso {
        Lasso::constant(0)
    }

    /// `word` followed by zeros.
    pub fn finite(word: &[u64]) -> Lasso {
        Lasso::new(word.to_vec(), vec![0])
    }

    fn normalize(&mut self) {
        let n = self.cycle.len();
        // primitive root of the cycle
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]) {
                self.cycle.truncate(p);
                break;
            }
        }
        // pull the tail of the prefix into the cycle
        while let Some(&last) = self.prefix.last() {
            if last == *self.cycle.last().unwrap() {
                self.prefix.pop();
                self.cycle.rotate_right(1);
            } else {
                break;
            }
        }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u64] {
        &self.cycle
    }

    pub fn at(&self, i: usize) -> u64 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn take(&self, n: usize) -> Vec<u64> {
        (0..n).map(|i| self.at(i)).collect()
    }

    pub fn starts_with(&self, word: &[u64]) -> bool {
        word.iter().enumerate().all(|(i, &a)| self.at(i) == a)
    }

    pub fn prepend(&self, word: &[u64]) -> Lasso {
        let mut prefix = word.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Lasso::new(prefix, self.cycle.clone())
    }

    pub fn drop_prefix(&self, n: usize) -> Lasso {
        if n <= self.prefix.len() {
            return Lasso::new(self.prefix[n..].to_vec(), self.cycle.clone());
        }
        let shift = (n - self.prefix.len()) % self.cycle.len();
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(shift);
        Lasso::new(Vec::new(), cycle)
    }

    /// Replaces the leading `from` by `to`; `None` when `from` is not a prefix.
    pub fn substitute(&self, from: &[u64], to: &[u64]) -> Option<Lasso> {
        self.starts_with(from).then(|| self.drop_prefix(from.len()).prepend(to))
    }

    /// Same sequence with prefix length `p` and cycle length `c` (a multiple
    /// of the current cycle length), `p` at least the current prefix length.
    fn unrolled(&self, p: usize, c: usize) -> (Vec<u64>, Vec<u64>) {
        debug_assert!(p >= self.prefix.len() && c.is_multiple_of(self.cycle.len()));
        ((0..p).map(|i| self.at(i)).collect(), (p..p + c).map(|i| self.at(i)).collect())
    }

    fn split_parity(&self, parity: usize) -> Lasso {
        let p = self.prefix.len() + self.prefix.len() % 2;
        let c = if self.cycle.len().is_multiple_of(2) { self.cycle.len() } else { 2 * self.cycle.len() };
        let (pre, cyc) = self.unrolled(p, c);
        Lasso::new(
            pre.into_iter().skip(parity).step_by(2).collect(),
            cyc.into_iter().skip(parity).step_by(2).collect(),
        )
    }

    /// Coordinates at even positions.
    pub fn evens(&self) -> Lasso {
        self.split_parity(0)
    }

    /// Coordinates at odd positions.
    pub fn odds(&self) -> Lasso {
        self.split_parity(1)
    }

    /// `(a0, b0, a1, b1, …)`.
    pub fn interleave(a: &Lasso, b: &Lasso) -> Lasso {
        let p = a.prefix.len().max(b.prefix.len());
        let c = lcm(a.cycle.len(), b.cycle.len());
        let (ap, ac) = a.unrolled(p, c);
        let (bp, bc) = b.unrolled(p, c);
        let zip = |x: Vec<u64>, y: Vec<u64>| x.into_iter().zip(y).flat_map(|(u, v)| [u, v]).collect();
        Lasso::new(zip(ap, bp), zip(ac, bc))
    }

    /// Length of the longest common prefix; `None` when the points are equal.
    pub fn agreement(&self, other: &Lasso) -> Option<usize> {
        if self == other {
            return None;
        }
        let bound = self.prefix.len().max(other.prefix.len()) + lcm(self.cycle.len(), other.cycle.len());
        (0..bound).find(|&i| self.at(i) != other.at(i)).or(Some(bound))
    }

    /// Agreement as a plain number; equal points agree to `usize::MAX`.
    pub fn agree_len(&self, other: &Lasso) -> usize {
        self.agreement(other).unwrap_or(usize::MAX)
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(".");
        if self.prefix.is_empty() {
            write!(f, "({})^w", join(&self.cycle))
        } else {
            write!(f, "{}.({})^w", join(&self.prefix), join(&self.cycle))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normal_form_is_minimal() {
        assert_eq!(Lasso::new(vec![1, 0, 0], vec![0, 0]), Lasso::new(vec![1], vec![0]));
        assert_eq!(Lasso::new(vec![0, 1], vec![0, 1]), Lasso::new(vec![], vec![0, 1]));
        assert_eq!(Lasso::new(vec![1], vec![0, 1]), Lasso::new(vec![], vec![1, 0]));
        assert_eq!(Lasso::zeros().to_string(), "(0)^w");
    }

    #[test]
    fn agreement_and_substitution() {
        let a = Lasso::finite(&[0, 0, 0, 1]);
        assert_eq!(a.agreement(&Lasso::zeros()), Some(3));
        assert_eq!(a.agreement(&a), None);
        let b = a.substitute(&[0, 0], &[7]).unwrap();
        assert_eq!(b, Lasso::finite(&[7, 0, 1]));
        assert!(a.substitute(&[1], &[]).is_none());
    }

    fn lasso() -> impl Strategy<Value = Lasso> {
        (prop::collection::vec(0u64..3, 0..5), prop::collection::vec(0u64..3, 1..4))
            .prop_map(|(p, c)| Lasso::new(p, c))
    }

    proptest! {
        #[test]
        fn interleave_splits_back(a in lasso(), b in lasso()) {
            let z = Lasso::interleave(&a, &b);
            prop_assert_eq!(z.evens(), a.clone());
            prop_assert_eq!(z.odds(), b.clone());
            for i in 0..20 {
                prop_assert_eq!(z.at(2 * i), a.at(i));
                prop_assert_eq!(z.at(2 * i + 1), b.at(i));
            }
        }

        #[test]
        fn agreement_matches_pointwise(a in lasso(), b in lasso()) {
            match a.agreement(&b) {
                None => prop_assert!((0..40).all(|i| a.at(i) == b.at(i))),
                Some(k) => {
                    prop_assert!((0..k).all(|i| a.at(i) == b.at(i)));
                    prop_assert_ne!(a.at(k), b.at(k));
                }
            }
        }
    }
}

//! Term language for zero-dimensional σ-Polish spaces built from six atoms
//! with topological sum and product, and its sum-of-monomials normal form.

mod parse;
mod sweep;

use std::cmp::Ordering;
use std::fmt;

pub use self::parse::{parse, ParseError};
pub use self::sweep::{normal_forms_upto, sum_of_products, sweep_atoms};

/// Non-empty building blocks of a monomial, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Omega,
    Cantor,
    Baire,
    Rationals,
}

impl Factor {
    pub const ALL: [Factor; 4] = [Factor::Omega, Factor::Cantor, Factor::Baire, Factor::Rationals];

    fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Factor::Omega => "w",
            Factor::Cantor => "2^w",
            Factor::Baire => "N^w",
            Factor::Rationals => "Q",
        }
    }
}

/// A leaf of the term language other than the empty space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Fin(u64),
    Factor(Factor),
}

impl Atom {
    fn rank(&self) -> (u8, u64) {
        match *self {
            Atom::Fin(n) => (0, n),
            Atom::Factor(f) => (1 + f as u8, 0),
        }
    }

    pub fn symbol(&self) -> String {
        match *self {
            Atom::Fin(n) => format!("fin({n})"),
            Atom::Factor(f) => f.symbol().to_string(),
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// Syntax tree of a space expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceTerm {
    Empty,
    Fin(u64),
    Omega,
    Cantor,
    BaireSp,
    Rationals,
    Sum(Vec<SpaceTerm>),
    Prod(Vec<SpaceTerm>),
}

impl SpaceTerm {
    /// Builds a sum, flattening nothing and collapsing the degenerate arities.
    pub fn sum(mut children: Vec<SpaceTerm>) -> SpaceTerm {
        match children.len() {
            0 => SpaceTerm::Empty,
            1 => children.pop().unwrap(),
            _ => SpaceTerm::Sum(children),
        }
    }

    pub fn prod(mut children: Vec<SpaceTerm>) -> SpaceTerm {
        match children.len() {
            0 => SpaceTerm::Fin(1),
            1 => children.pop().unwrap(),
            _ => SpaceTerm::Prod(children),
        }
    }

    pub fn factor(f: Factor) -> SpaceTerm {
        match f {
            Factor::Omega => SpaceTerm::Omega,
            Factor::Cantor => SpaceTerm::Cantor,
            Factor::Baire => SpaceTerm::BaireSp,
            Factor::Rationals => SpaceTerm::Rationals,
        }
    }

    /// Number of leaves in the tree.
    pub fn atom_count(&self) -> usize {
        match self {
            SpaceTerm::Sum(c) | SpaceTerm::Prod(c) => c.iter().map(SpaceTerm::atom_count).sum(),
            _ => 1,
        }
    }

    pub fn normalize(&self) -> NormalForm {
        normalize(self)
    }
}

impl fmt::Display for SpaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &SpaceTerm, f: &mut fmt::Formatter<'_>, in_prod: bool) -> fmt::Result {
            match t {
                SpaceTerm::Empty => f.write_str("0"),
                SpaceTerm::Fin(n) => write!(f, "fin({n})"),
                SpaceTerm::Omega => f.write_str("w"),
                SpaceTerm::Cantor => f.write_str("2^w"),
                SpaceTerm::BaireSp => f.write_str("N^w"),
                SpaceTerm::Rationals => f.write_str("Q"),
                SpaceTerm::Sum(c) => {
                    if in_prod {
                        f.write_str("(")?;
                    }
                    for (i, x) in c.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" + ")?;
                        }
                        go(x, f, false)?;
                    }
                    if in_prod {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                SpaceTerm::Prod(c) => {
                    for (i, x) in c.iter().enumerate() {
                        if i > 0 {
                            f.write_str("*")?;
                        }
                        // nested sums bind looser than '*'; nested products are re-parsed flat
                        go(x, f, true)?;
                    }
                    Ok(())
                }
            }
        }
        go(self, f, false)
    }
}

/// A product of atoms: a finite count times a multiset of infinite factors.
///
/// `fin` is the merged count of all `fin(n)` factors; it is shown as an atom
/// only when it exceeds one or when there are no other factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    fin: u64,
    counts: [u32; 4],
}

impl Monomial {
    pub fn point() -> Monomial {
        Monomial { fin: 1, counts: [0; 4] }
    }

    pub fn finite(n: u64) -> Monomial {
        assert!(n >= 1, "a monomial has at least one point");
        Monomial { fin: n, counts: [0; 4] }
    }

    pub fn atom(f: Factor) -> Monomial {
        let mut m = Monomial::point();
        m.counts[f.index()] = 1;
        m
    }

    pub fn fin(&self) -> u64 {
        self.fin
    }

    pub fn multiplicity(&self, f: Factor) -> u32 {
        self.counts[f.index()]
    }

    pub fn has(&self, f: Factor) -> bool {
        self.multiplicity(f) > 0
    }

    /// True when the monomial is a finite discrete space (no infinite factor).
    pub fn is_finite(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut counts = self.counts;
        for (c, o) in counts.iter_mut().zip(other.counts) {
            *c += o;
        }
        Monomial { fin: self.fin.saturating_mul(other.fin), counts }
    }

    /// Atoms in ascending canonical order, repeated by multiplicity.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        if self.fin > 1 || self.is_finite() {
            out.push(Atom::Fin(self.fin));
        }
        for f in Factor::ALL {
            for _ in 0..self.counts[f.index()] {
                out.push(Atom::Factor(f));
            }
        }
        out
    }

    /// Infinite factors in ascending order, repeated by multiplicity.
    pub fn factors(&self) -> Vec<Factor> {
        Factor::ALL
            .iter()
            .flat_map(|&f| std::iter::repeat_n(f, self.counts[f.index()] as usize))
            .collect()
    }

    pub fn to_term(&self) -> SpaceTerm {
        SpaceTerm::prod(
            self.atoms()
                .into_iter()
                .map(|a| match a {
                    Atom::Fin(n) => SpaceTerm::Fin(n),
                    Atom::Factor(f) => SpaceTerm::factor(f),
                })
                .collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.atoms().cmp(&other.atoms())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms = self.atoms();
        for (i, a) in atoms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(&a.symbol())?;
        }
        Ok(())
    }
}

/// A finite sum of monomials kept sorted; the empty sum is the empty space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    monomials: Vec<Monomial>,
}

impl NormalForm {
    pub fn empty() -> NormalForm {
        NormalForm::default()
    }

    pub fn from_monomials(mut monomials: Vec<Monomial>) -> NormalForm {
        monomials.sort();
        NormalForm { monomials }
    }

    pub fn monomial(m: Monomial) -> NormalForm {
        NormalForm { monomials: vec![m] }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Disjoint sum: multiset union of the summands.
    pub fn sum(&self, other: &NormalForm) -> NormalForm {
        let mut monomials = self.monomials.clone();
        monomials.extend(other.monomials.iter().cloned());
        NormalForm::from_monomials(monomials)
    }

    /// Product: all pairwise monomial products.
    pub fn product(&self, other: &NormalForm) -> NormalForm {
        let monomials = self
            .monomials
            .iter()
            .flat_map(|a| other.monomials.iter().map(move |b| a.mul(b)))
            .collect();
        NormalForm::from_monomials(monomials)
    }

    pub fn to_term(&self) -> SpaceTerm {
        SpaceTerm::sum(self.monomials.iter().map(Monomial::to_term).collect())
    }

    pub fn render(&self) -> String {
        render(self)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        // display order: compare factor lists from the highest atom down
        let mut shown: Vec<&Monomial> = self.monomials.iter().collect();
        shown.sort_by_cached_key(|m| std::cmp::Reverse(m.atoms().into_iter().rev().collect::<Vec<_>>()));
        for (i, m) in shown.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Distributes products over sums, drops empty summands and merges finite
/// factors, returning the sorted sum of monomials.
pub fn normalize(term: &SpaceTerm) -> NormalForm {
    match term {
        SpaceTerm::Empty => NormalForm::empty(),
        SpaceTerm::Fin(n) => NormalForm::monomial(Monomial::finite((*n).max(1))),
        SpaceTerm::Omega => NormalForm::monomial(Monomial::atom(Factor::Omega)),
        SpaceTerm::Cantor => NormalForm::monomial(Monomial::atom(Factor::Cantor)),
        SpaceTerm::BaireSp => NormalForm::monomial(Monomial::atom(Factor::Baire)),
        SpaceTerm::Rationals => NormalForm::monomial(Monomial::atom(Factor::Rationals)),
        SpaceTerm::Sum(children) => children
            .iter()
            .fold(NormalForm::empty(), |acc, c| acc.sum(&normalize(c))),
        SpaceTerm::Prod(children) => children
            .iter()
            .fold(NormalForm::monomial(Monomial::point()), |acc, c| acc.product(&normalize(c))),
    }
}

/// Canonical text of a normal form; parsing it normalizes back to `nf`.
pub fn render(nf: &NormalForm) -> String {
    nf.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str) -> NormalForm {
        normalize(&parse(s).unwrap())
    }

    #[test]
    fn distributes_products_over_sums() {
        let n = nf("Q*(2^w + N^w)");
        let expected = NormalForm::from_monomials(vec![
            Monomial::atom(Factor::Rationals).mul(&Monomial::atom(Factor::Cantor)),
            Monomial::atom(Factor::Rationals).mul(&Monomial::atom(Factor::Baire)),
        ]);
        assert_eq!(n, expected);
    }

    #[test]
    fn empty_is_sum_identity_and_product_annihilator() {
        assert_eq!(nf("0 + Q"), nf("Q"));
        assert_eq!(nf("0*Q"), NormalForm::empty());
        assert_eq!(nf("0"), NormalForm::empty());
    }

    #[test]
    fn finite_factors_merge() {
        assert_eq!(nf("fin(1)*N^w"), nf("N^w"));
        assert_eq!(nf("fin(2)*fin(3)"), NormalForm::monomial(Monomial::finite(6)));
        assert_eq!(render(&nf("fin(2)*fin(3)")), "fin(6)");
        assert_eq!(render(&nf("fin(1)*fin(1)")), "fin(1)");
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&nf("N^w + 2^w*Q")), "Q*2^w + N^w");
        assert_eq!(render(&NormalForm::empty()), "0");
        assert_eq!(render(&nf("Q + N^w")), "Q + N^w");
        assert_eq!(render(&nf("w*fin(3)*Q*Q")), "Q*Q*w*fin(3)");
    }

    #[test]
    fn ordering_is_independent_of_input_order() {
        assert_eq!(nf("Q*2^w + N^w + w"), nf("w + N^w + 2^w*Q"));
        assert_eq!(nf("(w + Q)*(2^w + fin(2))"), nf("(fin(2) + 2^w)*(Q + w)"));
    }

    #[test]
    fn atom_order() {
        let mut atoms = [Atom::Factor(Factor::Rationals),
            Atom::Factor(Factor::Omega),
            Atom::Fin(4),
            Atom::Factor(Factor::Baire),
            Atom::Factor(Factor::Cantor)];
        atoms.sort();
        assert_eq!(atoms[0], Atom::Fin(4));
        assert_eq!(atoms[4], Atom::Factor(Factor::Rationals));
    }
}

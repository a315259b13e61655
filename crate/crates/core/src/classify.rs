//! Weak-homeomorphism classes of terms.
//!
//! Two independent routes compute the class of a normal form:
//! [`classify`] folds per-monomial presence bits through a join-semilattice,
//! while [`classify_by_tree`] walks the case analysis of the classification
//! theorem on whole-space fingerprints and kernel tests from [`decompose`].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::algebra::{normalize, parse, Monomial, NormalForm, SpaceTerm};
use crate::properties::{fingerprint, monomial_fingerprint, Cardinality, PropertyFingerprint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("predicate `{0}` is not a local monomial flag")]
    InvalidPredicate(String),
    #[error("unknown class name `{0}`")]
    UnknownClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeakHomeoClass {
    Empty,
    Finite(u64),
    Omega,
    Cantor,
    BaireCl,
    Q,
    QPlusCantor,
    QTimesCantor,
    QPlusBaire,
    QTimesCantorPlusBaire,
    QTimesBaire,
}

impl WeakHomeoClass {
    /// The nine infinite classes, in the order of the classification list.
    pub const INFINITE: [WeakHomeoClass; 9] = [
        WeakHomeoClass::Omega,
        WeakHomeoClass::Cantor,
        WeakHomeoClass::BaireCl,
        WeakHomeoClass::Q,
        WeakHomeoClass::QPlusCantor,
        WeakHomeoClass::QTimesCantor,
        WeakHomeoClass::QPlusBaire,
        WeakHomeoClass::QTimesCantorPlusBaire,
        WeakHomeoClass::QTimesBaire,
    ];

    /// The eleven table classes, with `Finite(1)` standing for the finite ones.
    pub fn table_classes() -> Vec<WeakHomeoClass> {
        let mut v = vec![WeakHomeoClass::Empty, WeakHomeoClass::Finite(1)];
        v.extend(Self::INFINITE);
        v
    }

    pub fn is_infinite(self) -> bool {
        !matches!(self, WeakHomeoClass::Empty | WeakHomeoClass::Finite(_))
    }

    pub fn name(self) -> String {
        match self {
            WeakHomeoClass::Empty => "0".into(),
            WeakHomeoClass::Finite(n) => format!("fin({n})"),
            WeakHomeoClass::Omega => "w".into(),
            WeakHomeoClass::Cantor => "2^w".into(),
            WeakHomeoClass::BaireCl => "N^w".into(),
            WeakHomeoClass::Q => "Q".into(),
            WeakHomeoClass::QPlusCantor => "Q+2^w".into(),
            WeakHomeoClass::QTimesCantor => "Q*2^w".into(),
            WeakHomeoClass::QPlusBaire => "Q+N^w".into(),
            WeakHomeoClass::QTimesCantorPlusBaire => "(Q*2^w)+N^w".into(),
            WeakHomeoClass::QTimesBaire => "Q*N^w".into(),
        }
    }

    pub fn bits(self) -> ClassBits {
        use Bit::*;
        let b = |bits: &[Bit]| ClassBits::from_bits(bits);
        match self {
            WeakHomeoClass::Empty => ClassBits::EMPTY,
            WeakHomeoClass::Finite(_) => b(&[F]),
            WeakHomeoClass::Omega => b(&[D]),
            WeakHomeoClass::Cantor => b(&[C]),
            WeakHomeoClass::BaireCl => b(&[N]),
            WeakHomeoClass::Q => b(&[Q]),
            WeakHomeoClass::QPlusCantor => b(&[Q, C]),
            WeakHomeoClass::QTimesCantor => b(&[QC]),
            WeakHomeoClass::QPlusBaire => b(&[Q, N]),
            WeakHomeoClass::QTimesCantorPlusBaire => b(&[QC, N]),
            WeakHomeoClass::QTimesBaire => b(&[QN]),
        }
    }

    /// Inverse of [`WeakHomeoClass::bits`]; the finite size is supplied
    /// separately because the bit `f` forgets it.
    pub fn from_bits(bits: ClassBits, finite: u64) -> WeakHomeoClass {
        use Bit::*;
        let bits = bits.reduced();
        let table = [
            (ClassBits::EMPTY, WeakHomeoClass::Empty),
            (ClassBits::from_bits(&[F]), WeakHomeoClass::Finite(finite.max(1))),
            (ClassBits::from_bits(&[D]), WeakHomeoClass::Omega),
            (ClassBits::from_bits(&[C]), WeakHomeoClass::Cantor),
            (ClassBits::from_bits(&[N]), WeakHomeoClass::BaireCl),
            (ClassBits::from_bits(&[Q]), WeakHomeoClass::Q),
            (ClassBits::from_bits(&[Q, C]), WeakHomeoClass::QPlusCantor),
            (ClassBits::from_bits(&[QC]), WeakHomeoClass::QTimesCantor),
            (ClassBits::from_bits(&[Q, N]), WeakHomeoClass::QPlusBaire),
            (ClassBits::from_bits(&[QC, N]), WeakHomeoClass::QTimesCantorPlusBaire),
            (ClassBits::from_bits(&[QN]), WeakHomeoClass::QTimesBaire),
        ];
        table
            .iter()
            .find(|(b, _)| *b == bits)
            .map(|&(_, c)| c)
            .expect("every reduced antichain is a class")
    }
}

impl fmt::Display for WeakHomeoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for WeakHomeoClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl FromStr for WeakHomeoClass {
    type Err = ClassifyError;

    /// Accepts the canonical class names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let fixed = [WeakHomeoClass::Empty]
            .into_iter()
            .chain(WeakHomeoClass::INFINITE)
            .find(|c| c.name() == compact);
        if let Some(c) = fixed {
            return Ok(c);
        }
        if let Some(n) = compact.strip_prefix("fin(").and_then(|r| r.strip_suffix(')')) {
            if let Ok(n) = n.parse::<u64>() {
                if n >= 1 {
                    return Ok(WeakHomeoClass::Finite(n));
                }
            }
        }
        Err(ClassifyError::UnknownClass(s.to_string()))
    }
}

/// Presence bits of the canonical building blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bit {
    /// non-empty finite
    F,
    /// countable discrete type (ω)
    D,
    /// uncountable compact type (2^ω)
    C,
    /// Baire type (ℕ^ω)
    N,
    /// rational type (ℚ)
    Q,
    /// ℚ×2^ω type
    QC,
    /// ℚ×ℕ^ω type
    QN,
}

impl Bit {
    const ALL: [Bit; 7] = [Bit::F, Bit::D, Bit::C, Bit::N, Bit::Q, Bit::QC, Bit::QN];

    fn mask(self) -> u8 {
        1 << self as u8
    }

    /// Bits strictly above `self` in the absorption order.
    fn above(self) -> u8 {
        use Bit::*;
        let m = |bits: &[Bit]| bits.iter().fold(0u8, |acc, b| acc | b.mask());
        match self {
            F => m(&[D, C, N, Q, QC, QN]),
            D => m(&[C, N, Q, QC, QN]),
            C => m(&[N, QC, QN]),
            N => m(&[QN]),
            Q => m(&[QC, QN]),
            QC => m(&[QN]),
            QN => 0,
        }
    }
}

/// An antichain of [`Bit`]s; `join` is union followed by absorption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassBits(u8);

impl ClassBits {
    pub const EMPTY: ClassBits = ClassBits(0);

    pub fn from_bits(bits: &[Bit]) -> ClassBits {
        ClassBits(bits.iter().fold(0, |acc, b| acc | b.mask())).reduced()
    }

    pub fn contains(self, b: Bit) -> bool {
        self.0 & b.mask() != 0
    }

    pub fn bits(self) -> Vec<Bit> {
        Bit::ALL.into_iter().filter(|&b| self.contains(b)).collect()
    }

    /// Drops every bit that lies below another present bit.
    pub fn reduced(self) -> ClassBits {
        let keep = Bit::ALL
            .into_iter()
            .filter(|&b| self.contains(b) && self.0 & b.above() == 0)
            .fold(0, |acc, b| acc | b.mask());
        ClassBits(keep)
    }

    pub fn join(self, other: ClassBits) -> ClassBits {
        ClassBits(self.0 | other.0).reduced()
    }
}

/// Bucket of a single monomial.
pub fn monomial_bit(m: &Monomial) -> Bit {
    let fp = monomial_fingerprint(m);
    let uncountable = fp.cardinality.is_uncountable();
    if m.is_finite() {
        Bit::F
    } else if fp.is_countable && !fp.is_perfect {
        Bit::D
    } else if fp.is_countable {
        Bit::Q
    } else if fp.is_polish && fp.is_sigma_compact && uncountable {
        Bit::C
    } else if fp.is_polish {
        Bit::N
    } else if fp.is_sigma_compact {
        Bit::QC
    } else {
        Bit::QN
    }
}

/// Class of `nf` by folding monomial buckets through the bit lattice.
pub fn classify(nf: &NormalForm) -> WeakHomeoClass {
    let mut bits = ClassBits::EMPTY;
    let mut finite = 0u64;
    for m in nf.monomials() {
        bits = bits.join(ClassBits::from_bits(&[monomial_bit(m)]));
        if m.is_finite() {
            finite = finite.saturating_add(m.fin());
        }
    }
    WeakHomeoClass::from_bits(bits, finite)
}

/// A fingerprint flag read as a property of every non-empty open subset of a
/// monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialPredicate {
    Countable,
    Compact,
    Polish,
    SigmaCompact,
    Perfect,
    Scattered,
    KScattered,
    LocallyCompact,
    NowhereCountable,
    NowhereLocallyCompact,
    NowherePolish,
    NowhereSigmaCompact,
    Baire,
    HereditarilyBaire,
}

impl MonomialPredicate {
    pub fn from_name(name: &str) -> Result<MonomialPredicate, ClassifyError> {
        use MonomialPredicate::*;
        Ok(match name {
            "countable" => Countable,
            "compact" => Compact,
            "polish" => Polish,
            "sigma_compact" => SigmaCompact,
            "perfect" => Perfect,
            "scattered" => Scattered,
            "k_scattered" => KScattered,
            "locally_compact" => LocallyCompact,
            "nowhere_countable" => NowhereCountable,
            "nowhere_locally_compact" => NowhereLocallyCompact,
            "nowhere_polish" => NowherePolish,
            "nowhere_sigma_compact" => NowhereSigmaCompact,
            "baire" => Baire,
            "hereditarily_baire" => HereditarilyBaire,
            other => return Err(ClassifyError::InvalidPredicate(other.to_string())),
        })
    }

    pub fn holds(self, fp: &PropertyFingerprint) -> bool {
        use MonomialPredicate::*;
        match self {
            Countable => fp.is_countable,
            Compact => fp.is_compact,
            Polish => fp.is_polish,
            SigmaCompact => fp.is_sigma_compact,
            Perfect => fp.is_perfect,
            Scattered => fp.is_scattered,
            KScattered => fp.is_k_scattered,
            LocallyCompact => fp.is_locally_compact,
            NowhereCountable => fp.is_nowhere_countable,
            NowhereLocallyCompact => fp.is_nowhere_locally_compact,
            NowherePolish => fp.is_nowhere_polish,
            NowhereSigmaCompact => fp.is_nowhere_sigma_compact,
            Baire => fp.is_baire,
            HereditarilyBaire => fp.is_hereditarily_baire,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `parts[i]` holds the monomials satisfying predicate `i` and no earlier one.
    pub parts: Vec<NormalForm>,
    /// Monomials satisfying none of the predicates.
    pub kernel: NormalForm,
}

/// Splits `nf` by the first predicate each monomial satisfies.
pub fn decompose(nf: &NormalForm, props: &[MonomialPredicate]) -> Decomposition {
    let mut parts = vec![Vec::new(); props.len()];
    let mut kernel = Vec::new();
    for m in nf.monomials() {
        let fp = monomial_fingerprint(m);
        match props.iter().position(|p| p.holds(&fp)) {
            Some(i) => parts[i].push(m.clone()),
            None => kernel.push(m.clone()),
        }
    }
    Decomposition {
        parts: parts.into_iter().map(NormalForm::from_monomials).collect(),
        kernel: NormalForm::from_monomials(kernel),
    }
}

/// [`decompose`] with predicates given by fingerprint flag names.
pub fn decompose_named(nf: &NormalForm, props: &[&str]) -> Result<Decomposition, ClassifyError> {
    let props = props
        .iter()
        .map(|p| MonomialPredicate::from_name(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(decompose(nf, &props))
}

/// Class of `nf` by the case analysis of the classification theorem.
pub fn classify_by_tree(nf: &NormalForm) -> WeakHomeoClass {
    use MonomialPredicate::*;
    let fp = fingerprint(nf);
    if fp.is_polish {
        if fp.is_countable {
            return match fp.cardinality {
                Cardinality::Finite(0) => WeakHomeoClass::Empty,
                Cardinality::Finite(n) => WeakHomeoClass::Finite(n),
                // countable Polish spaces are scattered
                _ => WeakHomeoClass::Omega,
            };
        }
        // uncountable Polish: compact-like or Baire-like
        return if fp.is_sigma_compact { WeakHomeoClass::Cantor } else { WeakHomeoClass::BaireCl };
    }
    if fp.is_sigma_compact {
        if fp.is_countable {
            return WeakHomeoClass::Q;
        }
        // a closed copy of ℚ×2^ω is a monomial neither countable nor Polish
        let split = decompose(nf, &[Countable, Polish]);
        return if split.kernel.is_empty() {
            WeakHomeoClass::QPlusCantor
        } else {
            WeakHomeoClass::QTimesCantor
        };
    }
    // not σ-compact: a nowhere-σ-compact nowhere-Polish kernel is ℚ×ℕ^ω
    let split = decompose(nf, &[SigmaCompact, Polish]);
    if !split.kernel.is_empty() {
        return WeakHomeoClass::QTimesBaire;
    }
    // kernel-free: X ~ S ⊕ P with S σ-compact non-Polish and P Polish
    match classify_by_tree(&split.parts[0]) {
        WeakHomeoClass::QTimesCantor => WeakHomeoClass::QTimesCantorPlusBaire,
        _ => WeakHomeoClass::QPlusBaire,
    }
}

pub fn canonical_term(c: WeakHomeoClass) -> SpaceTerm {
    let text = match c {
        WeakHomeoClass::Empty => "0".to_string(),
        WeakHomeoClass::Finite(n) => format!("fin({n})"),
        WeakHomeoClass::Omega => "w".into(),
        WeakHomeoClass::Cantor => "2^w".into(),
        WeakHomeoClass::BaireCl => "N^w".into(),
        WeakHomeoClass::Q => "Q".into(),
        WeakHomeoClass::QPlusCantor => "Q + 2^w".into(),
        WeakHomeoClass::QTimesCantor => "Q*2^w".into(),
        WeakHomeoClass::QPlusBaire => "Q + N^w".into(),
        WeakHomeoClass::QTimesCantorPlusBaire => "Q*2^w + N^w".into(),
        WeakHomeoClass::QTimesBaire => "Q*N^w".into(),
    };
    parse(&text).expect("canonical terms parse")
}

pub fn canonical_nf(c: WeakHomeoClass) -> NormalForm {
    normalize(&canonical_term(c))
}

pub fn sum_table(a: WeakHomeoClass, b: WeakHomeoClass) -> WeakHomeoClass {
    if let (WeakHomeoClass::Finite(n), WeakHomeoClass::Finite(m)) = (a, b) {
        return WeakHomeoClass::Finite(n.saturating_add(m));
    }
    let finite = match (a, b) {
        (WeakHomeoClass::Finite(n), _) | (_, WeakHomeoClass::Finite(n)) => n,
        _ => 0,
    };
    WeakHomeoClass::from_bits(a.bits().join(b.bits()), finite)
}

pub fn prod_table(a: WeakHomeoClass, b: WeakHomeoClass) -> WeakHomeoClass {
    classify(&canonical_nf(a).product(&canonical_nf(b)))
}

/// Whether the canonical space of `a` is homeomorphic to a closed subspace of
/// the canonical space of `b`.
pub fn embeds_closed(a: WeakHomeoClass, b: WeakHomeoClass) -> bool {
    let source = canonical_nf(a);
    let target = canonical_nf(b);
    if source.is_empty() {
        return true;
    }
    // Each homogeneous summand of the source goes whole into one target summand;
    // the pure-target criteria are closed under finite sums except finite size.
    let mut finite_load = vec![0u64; target.monomials().len()];
    'component: for m in source.monomials() {
        let comp = monomial_fingerprint(m);
        for (i, t) in target.monomials().iter().enumerate() {
            if t.is_finite() {
                if m.is_finite() && finite_load[i] + m.fin() <= t.fin() {
                    finite_load[i] += m.fin();
                    continue 'component;
                }
                continue;
            }
            if closed_in_pure(&comp, monomial_bit(t)) {
                continue 'component;
            }
        }
        return false;
    }
    true
}

/// Closed embeddability of a homogeneous piece into an infinite canonical atom
/// type (one bucket per target summand).
fn closed_in_pure(comp: &PropertyFingerprint, target: Bit) -> bool {
    match target {
        Bit::F => false,
        Bit::D => comp.is_countable && !comp.is_perfect,
        Bit::Q => comp.is_countable,
        Bit::C => comp.is_compact,
        Bit::N => comp.is_polish,
        Bit::QC => comp.is_sigma_compact,
        // every space in the algebra is σ-Polish
        Bit::QN => true,
    }
}

/// Arrows of the closed-embedding diagram among the nine infinite classes.
pub fn diagram_arrows() -> Vec<(WeakHomeoClass, WeakHomeoClass)> {
    use WeakHomeoClass::*;
    vec![
        (Omega, Q),
        (Cantor, BaireCl),
        (Cantor, QPlusCantor),
        (BaireCl, QPlusBaire),
        (Q, QPlusCantor),
        (QPlusCantor, QTimesCantor),
        (QPlusCantor, QPlusBaire),
        (QTimesCantor, QTimesCantorPlusBaire),
        (QPlusBaire, QTimesCantorPlusBaire),
        (QPlusBaire, QTimesBaire),
        (QTimesCantorPlusBaire, QTimesBaire),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use WeakHomeoClass::*;

    fn cls(s: &str) -> WeakHomeoClass {
        classify(&normalize(&parse(s).unwrap()))
    }

    fn tree(s: &str) -> WeakHomeoClass {
        classify_by_tree(&normalize(&parse(s).unwrap()))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(cls("Q*2^w + N^w"), QTimesCantorPlusBaire);
        assert_eq!(cls("Q + 2^w + N^w"), QPlusBaire);
        assert_eq!(cls("2^w*N^w"), BaireCl);
        assert_eq!(cls("w*2^w"), Cantor);
        assert_eq!(cls("Q*Q"), Q);
        assert_eq!(cls("fin(2) + fin(3)"), Finite(5));
        assert_eq!(cls("0"), Empty);
        assert_eq!(cls("fin(2) + w"), Omega);
    }

    #[test]
    fn tree_examples() {
        for s in ["Q*2^w + N^w", "Q + 2^w + N^w", "2^w*N^w", "w*2^w", "Q*Q", "fin(2) + fin(3)"] {
            assert_eq!(cls(s), tree(s), "{s}");
        }
        assert_eq!(tree("Q*N^w + 2^w"), QTimesBaire);
        assert_eq!(tree("w"), Omega);
    }

    #[test]
    fn sum_table_examples() {
        assert_eq!(sum_table(Q, Cantor), QPlusCantor);
        for c in WeakHomeoClass::table_classes() {
            assert_eq!(sum_table(Empty, c), c);
        }
        assert_eq!(sum_table(QTimesCantor, Q), QTimesCantor);
        assert_eq!(sum_table(Cantor, BaireCl), BaireCl);
        assert_eq!(sum_table(QPlusCantor, BaireCl), QPlusBaire);
        assert_eq!(sum_table(Finite(2), Finite(3)), Finite(5));
        assert_eq!(sum_table(Finite(2), Omega), Omega);
    }

    #[test]
    fn prod_table_examples() {
        assert_eq!(prod_table(Q, BaireCl), QTimesBaire);
        assert_eq!(prod_table(Q, Q), Q);
        assert_eq!(prod_table(Cantor, BaireCl), BaireCl);
        for c in WeakHomeoClass::table_classes() {
            assert_eq!(prod_table(Finite(1), c), c);
            assert_eq!(prod_table(Empty, c), Empty);
        }
        assert_eq!(prod_table(Finite(3), Finite(4)), Finite(12));
        assert_eq!(prod_table(Finite(3), Cantor), Cantor);
    }

    #[test]
    fn canonical_terms() {
        assert_eq!(canonical_term(QPlusBaire).normalize().render(), "Q + N^w");
        assert_eq!(canonical_term(QTimesCantorPlusBaire).normalize().render(), "Q*2^w + N^w");
        assert_eq!(canonical_term(Empty).normalize().render(), "0");
        assert_eq!(canonical_term(Finite(4)).normalize().render(), "fin(4)");
        for c in WeakHomeoClass::table_classes() {
            assert_eq!(classify(&canonical_nf(c)), c);
        }
    }

    #[test]
    fn names_round_trip() {
        for c in WeakHomeoClass::table_classes().into_iter().chain([Finite(7)]) {
            assert_eq!(c.name().parse::<WeakHomeoClass>().unwrap(), c);
        }
        assert!("Q+".parse::<WeakHomeoClass>().is_err());
        assert!("fin(0)".parse::<WeakHomeoClass>().is_err());
    }

    #[test]
    fn embedding_examples() {
        assert!(embeds_closed(Cantor, BaireCl));
        assert!(!embeds_closed(BaireCl, Cantor));
        assert!(embeds_closed(Omega, Q));
        assert!(!embeds_closed(QTimesCantor, QPlusBaire));
        assert!(!embeds_closed(Omega, Cantor));
        assert!(embeds_closed(Finite(2), Cantor));
        assert!(!embeds_closed(Finite(3), Finite(2)));
        assert!(!embeds_closed(Omega, Empty));
        for c in WeakHomeoClass::table_classes() {
            assert!(embeds_closed(c, c), "{c}");
            assert!(embeds_closed(Empty, c));
        }
    }

    #[test]
    fn decompose_examples() {
        let nf = |s: &str| normalize(&parse(s).unwrap());
        let d = decompose_named(&nf("Q + 2^w + Q*2^w"), &["countable", "polish"]).unwrap();
        assert_eq!(d.parts, vec![nf("Q"), nf("2^w")]);
        assert_eq!(d.kernel, nf("Q*2^w"));
        let d = decompose_named(&nf("N^w"), &["sigma_compact", "polish"]).unwrap();
        assert_eq!(d.parts, vec![nf("0"), nf("N^w")]);
        assert!(d.kernel.is_empty());
        let d = decompose_named(&nf("Q*N^w"), &["sigma_compact", "polish"]).unwrap();
        assert_eq!(d.kernel, nf("Q*N^w"));
        assert!(matches!(
            decompose_named(&nf("Q"), &["countable", "metrizable"]),
            Err(ClassifyError::InvalidPredicate(p)) if p == "metrizable"
        ));
    }

    #[test]
    fn bit_join_laws() {
        let all: Vec<ClassBits> = WeakHomeoClass::table_classes().iter().map(|c| c.bits()).collect();
        for &a in &all {
            assert_eq!(a.join(ClassBits::EMPTY), a);
            assert_eq!(a.join(a), a);
            for &b in &all {
                assert_eq!(a.join(b), b.join(a));
                for &c in &all {
                    assert_eq!(a.join(b).join(c), a.join(b.join(c)));
                }
            }
        }
    }
}

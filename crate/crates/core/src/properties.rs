//! Structural inference of topological predicates and cardinal invariants.
//!
//! Every monomial is homogeneous: each non-empty open subset of a product of
//! the atoms has the same flags as the whole product. The monomial rules below
//! only look at which infinite factors occur; sums combine them summand-wise.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Factor, Monomial, NormalForm};
use crate::classify::{classify, WeakHomeoClass};

/// Cardinality of a space in this algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinality {
    Finite(u64),
    Aleph0,
    Continuum,
}

impl Cardinality {
    pub fn add(self, other: Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.saturating_add(b)),
            (a, b) => a.max(b),
        }
    }

    pub fn mul(self, other: Cardinality) -> Cardinality {
        use Cardinality::*;
        match (self, other) {
            (Finite(0), _) | (_, Finite(0)) => Finite(0),
            (Finite(a), Finite(b)) => Finite(a.saturating_mul(b)),
            (a, b) => a.max(b),
        }
    }

    pub fn is_uncountable(self) -> bool {
        self == Cardinality::Continuum
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Aleph0 => f.write_str("aleph0"),
            Cardinality::Continuum => f.write_str("c"),
        }
    }
}

/// Countable cardinal bound used for nw, hl, hd and Ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountableBound {
    Finite,
    Aleph0,
}

impl fmt::Display for CountableBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountableBound::Finite => f.write_str("finite"),
            CountableBound::Aleph0 => f.write_str("aleph0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PropertyFingerprint {
    pub is_empty: bool,
    pub is_countable: bool,
    pub is_compact: bool,
    pub is_polish: bool,
    pub is_sigma_compact: bool,
    pub is_perfect: bool,
    pub is_scattered: bool,
    pub is_k_scattered: bool,
    pub is_locally_compact: bool,
    pub is_nowhere_countable: bool,
    pub is_nowhere_locally_compact: bool,
    pub is_nowhere_polish: bool,
    pub is_nowhere_sigma_compact: bool,
    pub is_baire: bool,
    pub is_hereditarily_baire: bool,
    pub cardinality: Cardinality,
}

impl PropertyFingerprint {
    /// Convention for the empty space: universal flags hold, "nowhere" flags
    /// are false.
    pub fn empty() -> PropertyFingerprint {
        PropertyFingerprint {
            is_empty: true,
            is_countable: true,
            is_compact: true,
            is_polish: true,
            is_sigma_compact: true,
            is_perfect: true,
            is_scattered: true,
            is_k_scattered: true,
            is_locally_compact: true,
            is_nowhere_countable: false,
            is_nowhere_locally_compact: false,
            is_nowhere_polish: false,
            is_nowhere_sigma_compact: false,
            is_baire: true,
            is_hereditarily_baire: true,
            cardinality: Cardinality::Finite(0),
        }
    }

    /// Flag rows as `(name, value)` pairs in declaration order.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("empty", self.is_empty),
            ("countable", self.is_countable),
            ("compact", self.is_compact),
            ("polish", self.is_polish),
            ("sigma_compact", self.is_sigma_compact),
            ("perfect", self.is_perfect),
            ("scattered", self.is_scattered),
            ("k_scattered", self.is_k_scattered),
            ("locally_compact", self.is_locally_compact),
            ("nowhere_countable", self.is_nowhere_countable),
            ("nowhere_locally_compact", self.is_nowhere_locally_compact),
            ("nowhere_polish", self.is_nowhere_polish),
            ("nowhere_sigma_compact", self.is_nowhere_sigma_compact),
            ("baire", self.is_baire),
            ("hereditarily_baire", self.is_hereditarily_baire),
        ]
    }
}

pub fn monomial_cardinality(m: &Monomial) -> Cardinality {
    if m.has(Factor::Cantor) || m.has(Factor::Baire) {
        Cardinality::Continuum
    } else if m.has(Factor::Omega) || m.has(Factor::Rationals) {
        Cardinality::Aleph0
    } else {
        Cardinality::Finite(m.fin())
    }
}

/// Flags of a single (homogeneous) monomial.
pub fn monomial_fingerprint(m: &Monomial) -> PropertyFingerprint {
    let q = m.has(Factor::Rationals);
    let c = m.has(Factor::Cantor);
    let n = m.has(Factor::Baire);
    let w = m.has(Factor::Omega);
    let perfect = q || c || n;
    PropertyFingerprint {
        is_empty: false,
        is_countable: !c && !n,
        is_compact: !w && !q && !n,
        is_polish: !q,
        is_sigma_compact: !n,
        is_perfect: perfect,
        is_scattered: !perfect,
        is_k_scattered: !q && !n,
        is_locally_compact: !q && !n,
        is_nowhere_countable: c || n,
        is_nowhere_locally_compact: q || n,
        is_nowhere_polish: q,
        is_nowhere_sigma_compact: n,
        is_baire: !q,
        is_hereditarily_baire: !q,
        cardinality: monomial_cardinality(m),
    }
}

/// Exact predicate values for the space denoted by `nf`.
pub fn fingerprint(nf: &NormalForm) -> PropertyFingerprint {
    let monos = nf.monomials();
    if monos.is_empty() {
        return PropertyFingerprint::empty();
    }
    let parts: Vec<PropertyFingerprint> = monos.iter().map(monomial_fingerprint).collect();
    let all = |f: fn(&PropertyFingerprint) -> bool| parts.iter().all(f);
    PropertyFingerprint {
        is_empty: false,
        is_countable: all(|p| p.is_countable),
        // a finite sum of compact spaces is compact
        is_compact: all(|p| p.is_compact),
        is_polish: all(|p| p.is_polish),
        is_sigma_compact: all(|p| p.is_sigma_compact),
        is_perfect: all(|p| p.is_perfect),
        is_scattered: all(|p| p.is_scattered),
        is_k_scattered: all(|p| p.is_k_scattered),
        is_locally_compact: all(|p| p.is_locally_compact),
        is_nowhere_countable: all(|p| p.is_nowhere_countable),
        is_nowhere_locally_compact: all(|p| p.is_nowhere_locally_compact),
        is_nowhere_polish: all(|p| p.is_nowhere_polish),
        is_nowhere_sigma_compact: all(|p| p.is_nowhere_sigma_compact),
        is_baire: all(|p| p.is_baire),
        is_hereditarily_baire: all(|p| p.is_hereditarily_baire),
        cardinality: parts
            .iter()
            .fold(Cardinality::Finite(0), |acc, p| acc.add(p.cardinality)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantRecord {
    pub nw: CountableBound,
    pub hl: CountableBound,
    pub hd: CountableBound,
    pub psi: CountableBound,
    /// Covering dimension: -1 for the empty space, 0 otherwise.
    pub dim: i8,
    pub cardinality: Cardinality,
}

pub fn invariants(nf: &NormalForm) -> InvariantRecord {
    let cardinality = fingerprint(nf).cardinality;
    let bound = match cardinality {
        Cardinality::Finite(_) => CountableBound::Finite,
        _ => CountableBound::Aleph0,
    };
    InvariantRecord {
        nw: bound,
        hl: bound,
        hd: bound,
        psi: bound,
        dim: if nf.is_empty() { -1 } else { 0 },
        cardinality,
    }
}

/// A property that weak homeomorphisms preserve within this algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PreservedProperty {
    Invariants,
    Polish,
    SigmaCompact,
    HereditarilyBaire,
    Countable,
    Cardinality,
}

impl PreservedProperty {
    pub fn name(self) -> &'static str {
        match self {
            PreservedProperty::Invariants => "invariants",
            PreservedProperty::Polish => "polish",
            PreservedProperty::SigmaCompact => "sigma_compact",
            PreservedProperty::HereditarilyBaire => "hereditarily_baire",
            PreservedProperty::Countable => "countable",
            PreservedProperty::Cardinality => "cardinality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservedValues {
    pub invariants: InvariantRecord,
    pub is_polish: bool,
    pub is_sigma_compact: bool,
    pub is_hereditarily_baire: bool,
    pub is_countable: bool,
    pub cardinality: Cardinality,
}

impl PreservedValues {
    pub fn of(nf: &NormalForm) -> PreservedValues {
        let fp = fingerprint(nf);
        PreservedValues {
            invariants: invariants(nf),
            is_polish: fp.is_polish,
            is_sigma_compact: fp.is_sigma_compact,
            is_hereditarily_baire: fp.is_hereditarily_baire,
            is_countable: fp.is_countable,
            cardinality: fp.cardinality,
        }
    }

    /// Properties on which the two value sets differ.
    pub fn differences(&self, other: &PreservedValues) -> Vec<PreservedProperty> {
        let mut out = Vec::new();
        if self.invariants != other.invariants {
            out.push(PreservedProperty::Invariants);
        }
        if self.is_polish != other.is_polish {
            out.push(PreservedProperty::Polish);
        }
        if self.is_sigma_compact != other.is_sigma_compact {
            out.push(PreservedProperty::SigmaCompact);
        }
        if self.is_hereditarily_baire != other.is_hereditarily_baire {
            out.push(PreservedProperty::HereditarilyBaire);
        }
        if self.is_countable != other.is_countable {
            out.push(PreservedProperty::Countable);
        }
        if self.cardinality != other.cardinality {
            out.push(PreservedProperty::Cardinality);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PreservationReport {
    /// Same class and every preserved property agrees.
    Ok { class: WeakHomeoClass, shared: PreservedValues },
    /// Same class but some preserved property differs; never expected.
    Violation { class: WeakHomeoClass, differing: Vec<PreservedProperty> },
    /// Different classes, with the preserved properties that tell them apart
    /// (possibly none).
    Distinct {
        left: WeakHomeoClass,
        right: WeakHomeoClass,
        distinguishing: Vec<PreservedProperty>,
    },
}

impl PreservationReport {
    pub fn is_ok(&self) -> bool {
        !matches!(self, PreservationReport::Violation { .. })
    }
}

pub fn check_preservation(a: &NormalForm, b: &NormalForm) -> PreservationReport {
    let (ca, cb) = (classify(a), classify(b));
    let (va, vb) = (PreservedValues::of(a), PreservedValues::of(b));
    let differing = va.differences(&vb);
    if ca == cb {
        if differing.is_empty() {
            PreservationReport::Ok { class: ca, shared: va }
        } else {
            PreservationReport::Violation { class: ca, differing }
        }
    } else {
        PreservationReport::Distinct { left: ca, right: cb, distinguishing: differing }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normalize, parse};

    fn fp(s: &str) -> PropertyFingerprint {
        fingerprint(&normalize(&parse(s).unwrap()))
    }

    #[test]
    fn rationals() {
        let p = fp("Q");
        assert!(p.is_countable && !p.is_polish && p.is_sigma_compact);
        assert!(p.is_perfect && p.is_nowhere_locally_compact);
        assert!(!p.is_baire);
    }

    #[test]
    fn baire_space() {
        let p = fp("N^w");
        assert!(p.is_polish && !p.is_sigma_compact && p.is_nowhere_locally_compact);
    }

    #[test]
    fn rationals_times_cantor() {
        let p = fp("Q*2^w");
        assert!(p.is_sigma_compact && p.is_nowhere_countable && p.is_nowhere_locally_compact);
        assert!(!p.is_polish);
    }

    #[test]
    fn omega_times_cantor() {
        let p = fp("w*2^w");
        assert!(p.is_polish && p.is_sigma_compact && p.is_locally_compact && p.is_perfect);
        assert!(!p.is_countable && !p.is_compact);
        assert_eq!(p.cardinality, Cardinality::Continuum);
    }

    #[test]
    fn sums_take_conjunctions() {
        let p = fp("Q + 2^w");
        assert!(!p.is_countable && !p.is_polish && p.is_sigma_compact);
        assert!(!p.is_nowhere_countable && !p.is_nowhere_polish);
        let p = fp("fin(2) + fin(3)");
        assert!(p.is_compact && p.is_scattered && !p.is_perfect);
        assert_eq!(p.cardinality, Cardinality::Finite(5));
    }

    #[test]
    fn empty_space_convention() {
        let p = fp("0");
        assert!(p.is_empty && p.is_perfect && p.is_compact);
        assert!(!p.is_nowhere_countable && !p.is_nowhere_polish);
        let inv = invariants(&NormalForm::empty());
        assert_eq!(inv.dim, -1);
        assert_eq!(inv.cardinality, Cardinality::Finite(0));
    }

    #[test]
    fn invariant_examples() {
        let inv = invariants(&normalize(&parse("Q").unwrap()));
        assert_eq!(inv.nw, CountableBound::Aleph0);
        assert_eq!(inv.hl, CountableBound::Aleph0);
        assert_eq!(inv.hd, CountableBound::Aleph0);
        assert_eq!(inv.dim, 0);
        assert_eq!(inv.cardinality, Cardinality::Aleph0);
        let inv = invariants(&normalize(&parse("2^w*Q").unwrap()));
        assert_eq!(inv.cardinality, Cardinality::Continuum);
        assert_eq!(inv.nw, CountableBound::Aleph0);
        assert!(inv.psi <= inv.hl);
    }

    #[test]
    fn cardinal_arithmetic() {
        use Cardinality::*;
        assert_eq!(Aleph0.mul(Continuum), Continuum);
        assert_eq!(Finite(0).mul(Continuum), Finite(0));
        assert_eq!(Finite(3).add(Aleph0), Aleph0);
        assert_eq!(Finite(2).mul(Finite(3)), Finite(6));
    }

    #[test]
    fn preservation_examples() {
        let n = |s: &str| normalize(&parse(s).unwrap());
        let r = check_preservation(&n("Q + 2^w + N^w"), &n("Q + N^w"));
        assert!(matches!(r, PreservationReport::Ok { class: WeakHomeoClass::QPlusBaire, .. }));
        match check_preservation(&n("2^w"), &n("N^w")) {
            PreservationReport::Distinct { distinguishing, .. } => {
                assert!(distinguishing.contains(&PreservedProperty::SigmaCompact))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(check_preservation(&n("fin(2)"), &n("fin(2)")), PreservationReport::Ok { .. }));
        match check_preservation(&n("Q + 2^w"), &n("Q*2^w")) {
            PreservationReport::Distinct { distinguishing, .. } => assert!(distinguishing.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }
}

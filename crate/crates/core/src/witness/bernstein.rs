//! The Cantor–Bernstein layering for mutual closed embeddings.
//!
//! With `X_0 = X`, `Y_0 = Y`, `X_{n+1} = g(Y_n)` and `Y_{n+1} = f(X_n)`, the
//! bijection `h` is `f` on `X_∞` and the even layers `X_{2n} ∖ X_{2n+1}`, and
//! `g⁻¹` on the odd layers.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::cert::{Certificate, Certified, Count, CoverPiece};
use super::map::{Located, MapSpec, Parity, PieceMap, Primitive, SetSpec};
use super::WitnessError;
use crate::point::Lasso;

/// Chains longer than this are treated as reaching the limit layer.
const CHAIN_CAP: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bernstein {
    /// Closed embedding `X → Y`.
    pub f: PieceMap,
    /// Closed embedding `Y → X`.
    pub g: PieceMap,
}

impl Bernstein {
    /// Length of the alternating preimage chain starting with `first`; `None`
    /// for the limit layer.
    fn chain(first: &PieceMap, second: &PieceMap, x: &Lasso) -> Option<usize> {
        let mut seen = HashSet::new();
        let mut cur = x.clone();
        for n in 0..CHAIN_CAP {
            if !seen.insert((n % 2, cur.clone())) {
                return None;
            }
            let m = if n % 2 == 0 { first } else { second };
            match m.apply_inverse(&cur) {
                Some(next) => cur = next,
                None => return Some(n),
            }
        }
        None
    }

    /// Layer `n` with `x ∈ X_n ∖ X_{n+1}`, `Some(None)` for `X_∞`.
    pub fn domain_layer(&self, x: &Lasso) -> Option<Option<usize>> {
        self.f.domain().contains(x).then(|| Bernstein::chain(&self.g, &self.f, x))
    }

    pub fn codomain_layer(&self, y: &Lasso) -> Option<Option<usize>> {
        self.f.codomain().contains(y).then(|| Bernstein::chain(&self.f, &self.g, y))
    }

    fn forward_by_f(&self, x: &Lasso) -> Option<bool> {
        Some(self.domain_layer(x)?.is_none_or(|n| n % 2 == 0))
    }

    /// `y = f(x)` exactly when `x` is sent by `f`: odd or limit layers of `Y`.
    fn backward_by_f(&self, y: &Lasso) -> Option<bool> {
        Some(self.codomain_layer(y)?.is_none_or(|n| n % 2 == 1))
    }

    pub fn apply(&self, x: &Lasso) -> Option<Lasso> {
        if self.forward_by_f(x)? {
            self.f.apply(x)
        } else {
            self.g.apply_inverse(x)
        }
    }

    pub fn apply_inverse(&self, y: &Lasso) -> Option<Lasso> {
        if self.backward_by_f(y)? {
            self.f.apply_inverse(y)
        } else {
            self.g.apply(y)
        }
    }

    pub fn locate(&self, x: &Lasso) -> Option<Located> {
        let (tag, (id, spec)) = if self.forward_by_f(x)? {
            (0, self.f.locate(x)?)
        } else {
            (1, self.g.inverse().locate(x)?)
        };
        let mut full = vec![tag];
        full.extend(id);
        Some((full, spec))
    }

    pub fn locate_inverse(&self, y: &Lasso) -> Option<Located> {
        let (tag, (id, spec)) = if self.backward_by_f(y)? {
            (0, self.f.inverse().locate(y)?)
        } else {
            (1, self.g.locate(y)?)
        };
        let mut full = vec![tag];
        full.extend(id);
        Some((full, spec))
    }
}

fn closed_definable(s: &SetSpec) -> bool {
    match s {
        SetSpec::All | SetSpec::Presentation(_) | SetSpec::Cylinder(_) | SetSpec::Point(_) => true,
        SetSpec::Union(v) | SetSpec::Inter(v) => v.iter().all(closed_definable),
        _ => false,
    }
}

fn pieces(m: &PieceMap) -> Result<&[(SetSpec, MapSpec)], WitnessError> {
    match m {
        PieceMap::Pieces { pieces, .. } => Ok(pieces),
        _ => Err(WitnessError::NotPiecewise),
    }
}

/// Checks that `m` maps sampled points injectively into its codomain and
/// that its image is closed: every piece is a closed definable set mapped by
/// invertible primitives (closed embeddings) or is a single point sent to a
/// constant, and there are finitely many pieces.
pub fn check_embedding(m: &PieceMap, depth: usize, bound: u64) -> Result<(), WitnessError> {
    let domain = m.domain();
    let codomain = m.codomain();
    let samples = domain.sample(depth, bound);
    for (set, spec) in pieces(m)? {
        let invertible = spec.inverse().is_some() || matches!(set, SetSpec::Point(_));
        if !closed_definable(set) || !invertible {
            let prefix = samples.iter().find(|x| set.contains(x)).map(|x| x.take(depth)).unwrap_or_default();
            return Err(WitnessError::ImageNotClosedAtDepth { depth, prefix });
        }
    }
    let mut seen: HashMap<Lasso, Lasso> = HashMap::new();
    for x in samples {
        let y = m.apply(&x).ok_or_else(|| WitnessError::OutsideCodomain(x.clone()))?;
        if !codomain.contains(&y) {
            return Err(WitnessError::OutsideCodomain(x));
        }
        if let Some(other) = seen.insert(y, x.clone()) {
            return Err(WitnessError::NotInjective(other, x));
        }
    }
    Ok(())
}

fn is_identity(m: &PieceMap) -> bool {
    matches!(m, PieceMap::Pieces { pieces, domain, codomain }
        if domain == codomain
            && pieces.len() == 1
            && matches!(pieces[0].0, SetSpec::All)
            && pieces[0].1.0.iter().all(|p| *p == Primitive::Identity))
}

/// Weak homeomorphism from mutual closed embeddings. The certificate covers
/// are the layer sets intersected with the pieces of `f` and `g`, keyed by
/// layer index; each is a countable union of layers, so counts are `ω`.
pub fn cantor_bernstein(f: &PieceMap, g: &PieceMap, depth: usize, bound: u64) -> Result<Certified, WitnessError> {
    if f.codomain() != g.domain() || g.codomain() != f.domain() {
        return Err(WitnessError::DomainMismatch);
    }
    check_embedding(f, depth, bound)?;
    check_embedding(g, depth, bound)?;
    if is_identity(f) && is_identity(g) {
        return Ok(Certified::identity(f.domain(), "cantor-bernstein: identity embeddings"));
    }
    let b = Box::new(Bernstein { f: f.clone(), g: g.clone() });
    let layers = |codomain, parity| SetSpec::Layers { bernstein: b.clone(), codomain, parity };
    let fp = pieces(f)?;
    let gp = pieces(g)?;
    let inv = |set: &SetSpec, spec: &MapSpec| -> Result<MapSpec, WitnessError> {
        match (spec.inverse(), set) {
            (Some(i), _) => Ok(i),
            (None, SetSpec::Point(p)) => Ok(MapSpec::one(Primitive::Constant(p.clone()))),
            _ => Err(WitnessError::NotPiecewise),
        }
    };
    let image = |set: &SetSpec, spec: &MapSpec| match (spec.has_constant(), set) {
        (true, SetSpec::Point(p)) => SetSpec::Point(spec.apply(p).unwrap_or_else(|| p.clone())),
        _ => SetSpec::Image { map: spec.clone(), set: Box::new(set.clone()) },
    };
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for (set, spec) in fp {
        forward.push(CoverPiece {
            set: SetSpec::Inter(vec![layers(false, Parity::Even), set.clone()]),
            modulus: spec.clone(),
        });
        backward.push(CoverPiece {
            set: SetSpec::Inter(vec![layers(true, Parity::Odd), image(set, spec)]),
            modulus: inv(set, spec)?,
        });
    }
    for (set, spec) in gp {
        forward.push(CoverPiece {
            set: SetSpec::Inter(vec![layers(false, Parity::Odd), image(set, spec)]),
            modulus: inv(set, spec)?,
        });
        backward.push(CoverPiece {
            set: SetSpec::Inter(vec![layers(true, Parity::Even), set.clone()]),
            modulus: spec.clone(),
        });
    }
    let cert = Certificate {
        domain: f.domain(),
        codomain: f.codomain(),
        forward,
        backward,
        forward_count: Count::Omega,
        backward_count: Count::Omega,
        provenance: "cantor-bernstein".into(),
    };
    Ok(Certified { map: PieceMap::Bernstein(b), cert })
}

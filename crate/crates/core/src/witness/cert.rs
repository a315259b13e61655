//! Closed-cover certificates and their finite-depth verification.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::map::{MapSpec, PieceMap, SetSpec};
use super::{Space, WitnessError};
use crate::point::Lasso;

/// A piece count: finite, or the countable marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Count {
    Finite(u64),
    Omega,
}

impl Count {
    pub fn mul(self, other: Count) -> Count {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a.saturating_mul(b)),
            (Count::Finite(0), _) | (_, Count::Finite(0)) => Count::Finite(0),
            _ => Count::Omega,
        }
    }

    pub fn le(self, other: Count) -> bool {
        match (self, other) {
            (_, Count::Omega) => true,
            (Count::Finite(a), Count::Finite(b)) => a <= b,
            (Count::Omega, Count::Finite(_)) => false,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Omega => f.write_str("w"),
        }
    }
}

/// A set of the cover with a declared modulus; points sharing a membership
/// key form one closed piece on which the map is continuous with that
/// modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverPiece {
    pub set: SetSpec,
    pub modulus: MapSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub domain: Space,
    pub codomain: Space,
    pub forward: Vec<CoverPiece>,
    pub backward: Vec<CoverPiece>,
    pub forward_count: Count,
    pub backward_count: Count,
    pub provenance: String,
}

impl Certificate {
    pub fn inverse(&self) -> Certificate {
        Certificate {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            forward_count: self.backward_count,
            backward_count: self.forward_count,
            provenance: format!("inverse of {}", self.provenance),
        }
    }

    fn is_identity(&self) -> bool {
        let single = |c: &[CoverPiece]| {
            c.len() == 1 && c[0].set == SetSpec::All && c[0].modulus == MapSpec::identity()
        };
        self.domain == self.codomain && single(&self.forward) && single(&self.backward)
    }
}

/// A map together with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub map: PieceMap,
    pub cert: Certificate,
}

impl Certified {
    pub fn identity(space: Space, provenance: &str) -> Certified {
        let piece = || vec![CoverPiece { set: SetSpec::All, modulus: MapSpec::identity() }];
        Certified {
            map: PieceMap::identity(space.clone()),
            cert: Certificate {
                domain: space.clone(),
                codomain: space,
                forward: piece(),
                backward: piece(),
                forward_count: Count::Finite(1),
                backward_count: Count::Finite(1),
                provenance: provenance.into(),
            },
        }
    }

    /// Certificate from the pieces of a [`PieceMap::Pieces`] map whose
    /// pieces are closed and whose inverse is continuous on the given
    /// backward cover.
    pub fn from_pieces(map: PieceMap, backward: Vec<CoverPiece>, provenance: &str) -> Certified {
        let PieceMap::Pieces { domain, codomain, pieces } = &map else {
            panic!("from_pieces needs a piecewise map");
        };
        let forward: Vec<CoverPiece> =
            pieces.iter().map(|(s, m)| CoverPiece { set: s.clone(), modulus: m.clone() }).collect();
        let cert = Certificate {
            domain: domain.clone(),
            codomain: codomain.clone(),
            forward_count: Count::Finite(forward.len() as u64),
            backward_count: Count::Finite(backward.len() as u64),
            forward,
            backward,
            provenance: provenance.into(),
        };
        Certified { map, cert }
    }

    pub fn inverse(&self) -> Certified {
        Certified { map: self.map.inverse(), cert: self.cert.inverse() }
    }

    pub fn verify(&self, depth: usize) -> VerificationReport {
        verify(&self.map, &self.cert, depth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The map's domain or codomain differs from the certificate's.
    Mismatch { direction: Direction },
    Coverage { direction: Direction, prefix: Vec<u64>, point: Lasso },
    Undefined { direction: Direction, point: Lasso },
    OutsideCodomain { direction: Direction, point: Lasso, image: Lasso },
    NotInjective { direction: Direction, first: Lasso, second: Lasso },
    /// `h⁻¹(h(x)) ≠ x` or `h(h⁻¹(y)) ≠ y`.
    InverseMismatch { direction: Direction, point: Lasso },
    Continuity {
        direction: Direction,
        piece: usize,
        depth: usize,
        first: Lasso,
        second: Lasso,
        required: usize,
        found: usize,
    },
    CountExceeded { direction: Direction, declared: Count, observed: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = |d: &Direction| match d {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        match self {
            Violation::Mismatch { direction } => write!(f, "{}: map and certificate spaces differ", dir(direction)),
            Violation::Coverage { direction, prefix, point } => {
                write!(f, "{}: {point} (prefix {prefix:?}) lies in no cover piece", dir(direction))
            }
            Violation::Undefined { direction, point } => write!(f, "{}: undefined at {point}", dir(direction)),
            Violation::OutsideCodomain { direction, point, image } => {
                write!(f, "{}: {point} maps to {image}, outside the target", dir(direction))
            }
            Violation::NotInjective { direction, first, second } => {
                write!(f, "{}: {first} and {second} have the same image", dir(direction))
            }
            Violation::InverseMismatch { direction, point } => {
                write!(f, "{}: inverse does not return {point}", dir(direction))
            }
            Violation::Continuity { direction, piece, depth, first, second, required, found } => write!(
                f,
                "{}: piece {piece}: {first} and {second} agree to depth {depth} but their images agree on {found} < {required}",
                dir(direction)
            ),
            Violation::CountExceeded { direction, declared, observed } => {
                write!(f, "{}: {observed} closed pieces observed, {declared} declared", dir(direction))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub depth: usize,
    pub bound: u64,
    pub forward_samples: usize,
    pub backward_samples: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "depth {} bound {}: {} forward and {} backward samples",
            self.depth, self.bound, self.forward_samples, self.backward_samples
        )?;
        if self.passed() {
            return writeln!(f, "pass");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Violations of one kind reported per direction before the rest are dropped.
const REPORT_CAP: usize = 8;

struct Collector {
    counts: HashMap<&'static str, usize>,
    out: Vec<Violation>,
}

impl Collector {
    fn push(&mut self, kind: &'static str, v: Violation) {
        let n = self.counts.entry(kind).or_default();
        *n += 1;
        if *n <= REPORT_CAP {
            self.out.push(v);
        }
    }
}

fn check_direction(
    direction: Direction,
    apply: &dyn Fn(&Lasso) -> Option<Lasso>,
    back: &dyn Fn(&Lasso) -> Option<Lasso>,
    source: &Space,
    target: &Space,
    cover: &[CoverPiece],
    declared: Count,
    depth: usize,
    bound: u64,
) -> (usize, Vec<Violation>) {
    let mut c = Collector { counts: HashMap::new(), out: Vec::new() };
    let samples = source.sample(depth, bound);
    let mut images: HashMap<Lasso, Lasso> = HashMap::new();
    // (piece, key) -> points with their images
    let mut groups: HashMap<(usize, Vec<u64>), Vec<(Lasso, Lasso)>> = HashMap::new();
    for x in &samples {
        let Some(y) = apply(x) else {
            c.push("undefined", Violation::Undefined { direction, point: x.clone() });
            continue;
        };
        if !target.contains(&y) {
            c.push("outside", Violation::OutsideCodomain { direction, point: x.clone(), image: y.clone() });
        }
        if back(&y).as_ref() != Some(x) {
            c.push("inverse", Violation::InverseMismatch { direction, point: x.clone() });
        }
        if let Some(first) = images.insert(y.clone(), x.clone()) {
            c.push("injective", Violation::NotInjective { direction, first, second: x.clone() });
        }
        let mut covered = false;
        for (i, piece) in cover.iter().enumerate() {
            if let Some(key) = piece.set.member(x) {
                covered = true;
                groups.entry((i, key)).or_default().push((x.clone(), y.clone()));
            }
        }
        if !covered {
            c.push("coverage", Violation::Coverage { direction, prefix: x.take(depth), point: x.clone() });
        }
    }
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort();
    for key in &keys {
        let members = &groups[key];
        let modulus = &cover[key.0].modulus;
        'depths: for m in 1..=depth {
            let mut reps: HashMap<Vec<u64>, &(Lasso, Lasso)> = HashMap::new();
            for pair in members {
                let rep = *reps.entry(pair.0.take(m)).or_insert(pair);
                let required = modulus.modulus(m);
                let found = rep.1.agree_len(&pair.1);
                if found < required {
                    c.push(
                        "continuity",
                        Violation::Continuity {
                            direction,
                            piece: key.0,
                            depth: m,
                            first: rep.0.clone(),
                            second: pair.0.clone(),
                            required,
                            found,
                        },
                    );
                    break 'depths;
                }
            }
        }
    }
    let observed = keys.iter().collect::<BTreeSet<_>>().len() as u64;
    if !Count::Finite(observed).le(declared) {
        c.push("count", Violation::CountExceeded { direction, declared, observed });
    }
    (samples.len(), c.out)
}

/// [`verify_with_bound`] with labels capped at 1.
pub fn verify(h: &PieceMap, cert: &Certificate, depth: usize) -> VerificationReport {
    verify_with_bound(h, cert, depth, 1)
}

/// Checks, on points sampled from the admitted depth-`d` prefixes: coverage
/// of both spaces by the declared pieces, that `h` and `h⁻¹` are mutually
/// inverse injections between the spaces, the declared moduli on every
/// closed piece, and the declared piece counts.
pub fn verify_with_bound(h: &PieceMap, cert: &Certificate, depth: usize, bound: u64) -> VerificationReport {
    let mut violations = Vec::new();
    if h.domain() != cert.domain {
        violations.push(Violation::Mismatch { direction: Direction::Forward });
    }
    if h.codomain() != cert.codomain {
        violations.push(Violation::Mismatch { direction: Direction::Backward });
    }
    let fwd = |x: &Lasso| h.apply(x);
    let bwd = |y: &Lasso| h.apply_inverse(y);
    let (nf, vf) = check_direction(
        Direction::Forward,
        &fwd,
        &bwd,
        &cert.domain,
        &cert.codomain,
        &cert.forward,
        cert.forward_count,
        depth,
        bound,
    );
    let (nb, vb) = check_direction(
        Direction::Backward,
        &bwd,
        &fwd,
        &cert.codomain,
        &cert.domain,
        &cert.backward,
        cert.backward_count,
        depth,
        bound,
    );
    violations.extend(vf);
    violations.extend(vb);
    VerificationReport { depth, bound, forward_samples: nf, backward_samples: nb, violations }
}

/// Certificate for `b ∘ a`: forward pieces are the intersections of `a`'s
/// pieces with preimages of `b`'s, so counts multiply.
pub fn compose(a: &Certified, b: &Certified) -> Result<Certified, WitnessError> {
    if a.cert.codomain != b.cert.domain {
        return Err(WitnessError::DomainMismatch);
    }
    if a.cert.is_identity() {
        return Ok(b.clone());
    }
    if b.cert.is_identity() {
        return Ok(a.clone());
    }
    let forward = a
        .cert
        .forward
        .iter()
        .flat_map(|p| {
            b.cert.forward.iter().map(move |q| CoverPiece {
                set: SetSpec::Inter(vec![
                    p.set.clone(),
                    SetSpec::Preimage { map: Box::new(a.map.clone()), set: Box::new(q.set.clone()) },
                ]),
                modulus: p.modulus.clone().then(&q.modulus),
            })
        })
        .collect();
    let b_inv = b.map.inverse();
    let backward = b
        .cert
        .backward
        .iter()
        .flat_map(|q| {
            let b_inv = &b_inv;
            a.cert.backward.iter().map(move |p| CoverPiece {
                set: SetSpec::Inter(vec![
                    q.set.clone(),
                    SetSpec::Preimage { map: Box::new(b_inv.clone()), set: Box::new(p.set.clone()) },
                ]),
                modulus: q.modulus.clone().then(&p.modulus),
            })
        })
        .collect();
    let cert = Certificate {
        domain: a.cert.domain.clone(),
        codomain: b.cert.codomain.clone(),
        forward,
        backward,
        forward_count: a.cert.forward_count.mul(b.cert.forward_count),
        backward_count: a.cert.backward_count.mul(b.cert.backward_count),
        provenance: format!("({}) then ({})", a.cert.provenance, b.cert.provenance),
    };
    Ok(Certified { map: PieceMap::Composite(vec![a.map.clone(), b.map.clone()]), cert })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::{present, PieceGen, TreePresentation};
    use crate::witness::{Primitive, Space};
    use crate::{normalize, parse};

    fn space(s: &str) -> Space {
        Space::new(present(&normalize(&parse(s).unwrap())))
    }

    #[test]
    fn identity_passes() {
        for s in ["2^w", "Q*2^w", "w + N^w"] {
            let id = Certified::identity(space(s), "identity");
            for d in 1..=5 {
                assert!(id.verify(d).passed(), "{s} at {d}");
            }
        }
    }

    #[test]
    fn swap_is_discontinuous_as_one_piece() {
        let c = Space::new(TreePresentation::single(PieceGen::cantor()));
        let zero = Lasso::zeros();
        let one = Lasso::constant(1);
        let map = PieceMap::Pieces {
            domain: c.clone(),
            codomain: c.clone(),
            pieces: vec![
                (SetSpec::Point(zero.clone()), MapSpec::one(Primitive::Constant(one.clone()))),
                (SetSpec::Point(one.clone()), MapSpec::one(Primitive::Constant(zero.clone()))),
                (
                    SetSpec::Diff(Box::new(SetSpec::All), Box::new(SetSpec::points([zero.clone(), one.clone()]))),
                    MapSpec::identity(),
                ),
            ],
        };
        let false_claim = Certificate {
            domain: c.clone(),
            codomain: c.clone(),
            forward: vec![CoverPiece { set: SetSpec::All, modulus: MapSpec::identity() }],
            backward: vec![CoverPiece { set: SetSpec::All, modulus: MapSpec::identity() }],
            forward_count: Count::Finite(1),
            backward_count: Count::Finite(1),
            provenance: "false claim".into(),
        };
        let report = verify(&map, &false_claim, 6);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Continuity { direction: Direction::Forward, .. })));
    }

    #[test]
    fn counts_multiply() {
        assert_eq!(Count::Finite(2).mul(Count::Finite(3)), Count::Finite(6));
        assert_eq!(Count::Finite(2).mul(Count::Omega), Count::Omega);
        assert!(Count::Finite(5).le(Count::Omega));
        assert!(!Count::Omega.le(Count::Finite(5)));
    }
}

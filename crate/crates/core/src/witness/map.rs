//! Primitive point maps, presentation-definable sets and piecewise maps.

use serde::{Deserialize, Serialize};

use super::bernstein::Bernstein;
use super::Space;
use crate::point::Lasso;
use crate::present::TreePresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Even coordinates.
    Left,
    /// Odd coordinates.
    Right,
}

/// Continuous point maps with a syntactic modulus of continuity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    Identity,
    /// Replace the leading `from` by `to`.
    PrefixSubst { from: Vec<u64>, to: Vec<u64> },
    /// A prefix substitution on sum tags.
    Retag { from: Vec<u64>, to: Vec<u64> },
    /// `x ↦ x ⋈ constant` with `x` on `side`.
    Interleave { constant: Lasso, side: Side },
    /// Inverse of [`Primitive::Interleave`]: keeps the `side` coordinates of
    /// points whose other side is `constant`.
    Deinterleave { constant: Lasso, side: Side },
    /// Moves member `k` of the eventually-zero family to member `k + shift`
    /// by prepending zeros.
    FamilyShift { shift: usize },
    /// Drops `shift` leading zeros.
    FamilyUnshift { shift: usize },
    Constant(Lasso),
}

impl Primitive {
    pub fn apply(&self, x: &Lasso) -> Option<Lasso> {
        match self {
            Primitive::Identity => Some(x.clone()),
            Primitive::PrefixSubst { from, to } | Primitive::Retag { from, to } => x.substitute(from, to),
            Primitive::Interleave { constant, side } => Some(match side {
                Side::Left => Lasso::interleave(x, constant),
                Side::Right => Lasso::interleave(constant, x),
            }),
            Primitive::Deinterleave { constant, side } => {
                let (keep, other) = match side {
                    Side::Left => (x.evens(), x.odds()),
                    Side::Right => (x.odds(), x.evens()),
                };
                (other == *constant).then_some(keep)
            }
            Primitive::FamilyShift { shift } => Some(x.prepend(&vec![0; *shift])),
            Primitive::FamilyUnshift { shift } => x.substitute(&vec![0; *shift], &[]),
            Primitive::Constant(c) => Some(c.clone()),
        }
    }

    pub fn inverse(&self) -> Option<Primitive> {
        Some(match self {
            Primitive::Identity => Primitive::Identity,
            Primitive::PrefixSubst { from, to } => Primitive::PrefixSubst { from: to.clone(), to: from.clone() },
            Primitive::Retag { from, to } => Primitive::Retag { from: to.clone(), to: from.clone() },
            Primitive::Interleave { constant, side } => {
                Primitive::Deinterleave { constant: constant.clone(), side: *side }
            }
            Primitive::Deinterleave { constant, side } => {
                Primitive::Interleave { constant: constant.clone(), side: *side }
            }
            Primitive::FamilyShift { shift } => Primitive::FamilyUnshift { shift: *shift },
            Primitive::FamilyUnshift { shift } => Primitive::FamilyShift { shift: *shift },
            Primitive::Constant(_) => return None,
        })
    }

    /// Points of the domain agreeing on `m` coordinates have images agreeing
    /// on `modulus(m)` coordinates; `usize::MAX` stands for all of them.
    pub fn modulus(&self, m: usize) -> usize {
        if m == usize::MAX {
            return usize::MAX;
        }
        match self {
            Primitive::Identity => m,
            // every point of the domain starts with `from`
            Primitive::PrefixSubst { from, to } | Primitive::Retag { from, to } => {
                m.max(from.len()) - from.len() + to.len()
            }
            Primitive::Interleave { side: Side::Left, .. } => 2 * m,
            Primitive::Interleave { side: Side::Right, .. } => 2 * m + 1,
            Primitive::Deinterleave { side: Side::Left, .. } => m.div_ceil(2),
            Primitive::Deinterleave { side: Side::Right, .. } => m / 2,
            Primitive::FamilyShift { shift } => m + shift,
            Primitive::FamilyUnshift { shift } => m.max(*shift) - shift,
            Primitive::Constant(_) => usize::MAX,
        }
    }
}

/// Primitives applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MapSpec(pub Vec<Primitive>);

impl MapSpec {
    pub fn identity() -> MapSpec {
        MapSpec(vec![Primitive::Identity])
    }

    pub fn one(p: Primitive) -> MapSpec {
        MapSpec(vec![p])
    }

    pub fn prefix_subst(from: &[u64], to: &[u64]) -> MapSpec {
        MapSpec::one(Primitive::PrefixSubst { from: from.to_vec(), to: to.to_vec() })
    }

    pub fn then(mut self, other: &MapSpec) -> MapSpec {
        self.0.extend(other.0.iter().cloned());
        self
    }

    pub fn apply(&self, x: &Lasso) -> Option<Lasso> {
        self.0.iter().try_fold(x.clone(), |acc, p| p.apply(&acc))
    }

    pub fn inverse(&self) -> Option<MapSpec> {
        self.0.iter().rev().map(Primitive::inverse).collect::<Option<Vec<_>>>().map(MapSpec)
    }

    pub fn modulus(&self, m: usize) -> usize {
        self.0.iter().fold(m, |acc, p| p.modulus(acc))
    }

    pub fn has_constant(&self) -> bool {
        self.0.iter().any(|p| matches!(p, Primitive::Constant(_)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// Even layers together with the limit layer.
    Even,
    Odd,
}

/// Subsets of ℕ^ω defined from presentations and maps. Membership yields a
/// key: points of one set sharing a key lie in one closed shell, the unit on
/// which continuity is declared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SetSpec {
    #[default]
    All,
    Presentation(TreePresentation),
    Cylinder(Vec<u64>),
    Point(Lasso),
    Union(Vec<SetSpec>),
    Inter(Vec<SetSpec>),
    Diff(Box<SetSpec>, Box<SetSpec>),
    /// Points whose image under `map` lies in `set`.
    Preimage { map: Box<PieceMap>, set: Box<SetSpec> },
    /// Image of `set` under an invertible `map`.
    Image { map: MapSpec, set: Box<SetSpec> },
    /// `within ∖ avoiding` for a closed `avoiding`, split into the closed
    /// shells on which the first coordinate leaving `avoiding` is fixed.
    Shells { within: Box<SetSpec>, avoiding: Box<SetSpec> },
    /// Cantor–Bernstein layers of the domain (`codomain = false`) or the
    /// codomain, keyed by layer index.
    Layers { bernstein: Box<Bernstein>, codomain: bool, parity: Parity },
}

const SHELL_SEARCH: usize = 4096;

fn push_key(key: &mut Vec<u64>, part: Vec<u64>) {
    key.push(part.len() as u64);
    key.extend(part);
}

impl SetSpec {
    pub fn member(&self, x: &Lasso) -> Option<Vec<u64>> {
        match self {
            SetSpec::All => Some(Vec::new()),
            SetSpec::Presentation(p) => p.contains(x).then(Vec::new),
            SetSpec::Cylinder(w) => x.starts_with(w).then(Vec::new),
            SetSpec::Point(p) => (x == p).then(Vec::new),
            SetSpec::Union(sets) => sets.iter().enumerate().find_map(|(i, s)| {
                s.member(x).map(|k| {
                    let mut key = vec![i as u64];
                    key.extend(k);
                    key
                })
            }),
            SetSpec::Inter(sets) => {
                let mut key = Vec::new();
                for s in sets {
                    push_key(&mut key, s.member(x)?);
                }
                Some(key)
            }
            SetSpec::Diff(a, b) => {
                let k = a.member(x)?;
                b.member(x).is_none().then_some(k)
            }
            SetSpec::Preimage { map, set } => set.member(&map.apply(x)?),
            SetSpec::Image { map, set } => {
                let pre = map.inverse()?.apply(x)?;
                let k = set.member(&pre)?;
                (map.apply(&pre).as_ref() == Some(x)).then_some(k)
            }
            SetSpec::Shells { within, avoiding } => {
                let mut key = within.member(x)?;
                if avoiding.member(x).is_some() {
                    return None;
                }
                let k = (0..SHELL_SEARCH)
                    .find(|&k| !avoiding.admits_prefix(&x.take(k)))
                    .unwrap_or(SHELL_SEARCH);
                key.push(k as u64);
                Some(key)
            }
            SetSpec::Layers { bernstein, codomain, parity } => {
                let index = if *codomain { bernstein.codomain_layer(x)? } else { bernstein.domain_layer(x)? };
                let is_even = index.is_none_or(|n| n % 2 == 0);
                // the limit layer goes with the even ones in the domain and
                // with the odd ones in the codomain
                let wanted = match (codomain, index) {
                    (true, None) => *parity == Parity::Odd,
                    _ => is_even == (*parity == Parity::Even),
                };
                wanted.then(|| vec![index.map_or(u64::MAX, |n| n as u64)])
            }
        }
    }

    pub fn contains(&self, x: &Lasso) -> bool {
        self.member(x).is_some()
    }

    /// Whether some point of the set starts with `w`. Exact for closed sets
    /// built from presentations, cylinders and points; `true` otherwise.
    pub fn admits_prefix(&self, w: &[u64]) -> bool {
        match self {
            SetSpec::Presentation(p) => p.pieces_for_depth(w.len()).iter().any(|piece| piece.run(w).is_some()),
            SetSpec::Cylinder(c) => c.iter().zip(w).all(|(a, b)| a == b),
            SetSpec::Point(p) => p.starts_with(w),
            SetSpec::Union(sets) => sets.iter().any(|s| s.admits_prefix(w)),
            SetSpec::Inter(sets) => sets.iter().all(|s| s.admits_prefix(w)),
            _ => true,
        }
    }

    pub fn points(points: impl IntoIterator<Item = Lasso>) -> SetSpec {
        SetSpec::Union(points.into_iter().map(SetSpec::Point).collect())
    }
}

/// How a map was assembled; every variant knows its inverse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceMap {
    /// Disjoint domain pieces, each mapped by its own primitive composition.
    Pieces { domain: Space, codomain: Space, pieces: Vec<(SetSpec, MapSpec)> },
    Bernstein(Box<Bernstein>),
    /// Applied left to right.
    Composite(Vec<PieceMap>),
    Inverse(Box<PieceMap>),
}

/// Piece identifier and modulus of the piece a point falls in.
pub type Located = (Vec<u64>, MapSpec);

impl PieceMap {
    pub fn identity(space: Space) -> PieceMap {
        PieceMap::Pieces { domain: space.clone(), codomain: space, pieces: vec![(SetSpec::All, MapSpec::identity())] }
    }

    pub fn domain(&self) -> Space {
        match self {
            PieceMap::Pieces { domain, .. } => domain.clone(),
            PieceMap::Bernstein(b) => b.f.domain(),
            PieceMap::Composite(ms) => ms.first().map(PieceMap::domain).unwrap_or_default(),
            PieceMap::Inverse(m) => m.codomain(),
        }
    }

    pub fn codomain(&self) -> Space {
        match self {
            PieceMap::Pieces { codomain, .. } => codomain.clone(),
            PieceMap::Bernstein(b) => b.f.codomain(),
            PieceMap::Composite(ms) => ms.last().map(PieceMap::codomain).unwrap_or_default(),
            PieceMap::Inverse(m) => m.domain(),
        }
    }

    pub fn inverse(&self) -> PieceMap {
        match self {
            PieceMap::Inverse(m) => (**m).clone(),
            m => PieceMap::Inverse(Box::new(m.clone())),
        }
    }

    pub fn apply(&self, x: &Lasso) -> Option<Lasso> {
        match self {
            PieceMap::Pieces { pieces, .. } => {
                let (_, spec) = pieces.iter().find(|(s, _)| s.contains(x))?;
                spec.apply(x)
            }
            PieceMap::Bernstein(b) => b.apply(x),
            PieceMap::Composite(ms) => ms.iter().try_fold(x.clone(), |acc, m| m.apply(&acc)),
            PieceMap::Inverse(m) => m.apply_inverse(x),
        }
    }

    pub fn apply_inverse(&self, y: &Lasso) -> Option<Lasso> {
        match self {
            PieceMap::Pieces { pieces, .. } => pieces.iter().find_map(|(s, spec)| {
                inverse_on_piece(s, spec, y)
            }),
            PieceMap::Bernstein(b) => b.apply_inverse(y),
            PieceMap::Composite(ms) => ms.iter().rev().try_fold(y.clone(), |acc, m| m.apply_inverse(&acc)),
            PieceMap::Inverse(m) => m.apply(y),
        }
    }

    /// The piece containing `x` and its modulus.
    pub fn locate(&self, x: &Lasso) -> Option<Located> {
        match self {
            PieceMap::Pieces { pieces, .. } => {
                let i = pieces.iter().position(|(s, _)| s.contains(x))?;
                Some((vec![i as u64], pieces[i].1.clone()))
            }
            PieceMap::Bernstein(b) => b.locate(x),
            PieceMap::Composite(ms) => {
                let mut id = Vec::new();
                let mut spec = MapSpec::default();
                let mut cur = x.clone();
                for m in ms {
                    let (i, s) = m.locate(&cur)?;
                    push_key(&mut id, i);
                    spec = spec.then(&s);
                    cur = m.apply(&cur)?;
                }
                Some((id, spec))
            }
            PieceMap::Inverse(m) => m.locate_inverse(x),
        }
    }

    fn locate_inverse(&self, y: &Lasso) -> Option<Located> {
        match self {
            PieceMap::Pieces { pieces, .. } => pieces.iter().enumerate().find_map(|(i, (s, spec))| {
                let x = inverse_on_piece(s, spec, y)?;
                let inv = spec.inverse().unwrap_or_else(|| MapSpec::one(Primitive::Constant(x)));
                Some((vec![i as u64], inv))
            }),
            PieceMap::Bernstein(b) => b.locate_inverse(y),
            PieceMap::Composite(ms) => {
                PieceMap::Composite(ms.iter().rev().map(PieceMap::inverse).collect()).locate(y)
            }
            PieceMap::Inverse(m) => m.locate(y),
        }
    }
}

/// Preimage of `y` under one piece, if `y` is in that piece's image.
fn inverse_on_piece(set: &SetSpec, spec: &MapSpec, y: &Lasso) -> Option<Lasso> {
    let x = match (spec.inverse(), set) {
        (Some(inv), _) => inv.apply(y)?,
        (None, SetSpec::Point(p)) => p.clone(),
        (None, _) => return None,
    };
    (set.contains(&x) && spec.apply(&x).as_ref() == Some(y)).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lasso() -> impl Strategy<Value = Lasso> {
        (prop::collection::vec(0u64..3, 0..6), prop::collection::vec(0u64..3, 1..4))
            .prop_map(|(p, c)| Lasso::new(p, c))
    }

    fn primitive() -> impl Strategy<Value = Primitive> {
        let word = || prop::collection::vec(0u64..3, 0..3);
        prop_oneof![
            Just(Primitive::Identity),
            (word(), word()).prop_map(|(from, to)| Primitive::PrefixSubst { from, to }),
            (lasso(), any::<bool>()).prop_map(|(constant, l)| Primitive::Interleave {
                constant,
                side: if l { Side::Left } else { Side::Right }
            }),
            (0usize..4).prop_map(|shift| Primitive::FamilyShift { shift }),
            lasso().prop_map(Primitive::Constant),
        ]
    }

    proptest! {
        /// Every primitive honours its modulus on sampled pairs.
        #[test]
        fn primitives_respect_modulus(p in primitive(), x in lasso(), y in lasso()) {
            if let (Some(fx), Some(fy)) = (p.apply(&x), p.apply(&y)) {
                let m = x.agree_len(&y);
                prop_assert!(fx.agree_len(&fy) >= p.modulus(m), "{p:?} {x} {y}");
            }
        }

        #[test]
        fn inverses_undo(p in primitive(), x in lasso()) {
            if let (Some(inv), Some(fx)) = (p.inverse(), p.apply(&x)) {
                prop_assert_eq!(inv.apply(&fx), Some(x));
            }
        }
    }

    #[test]
    fn image_membership() {
        let spec = MapSpec::prefix_subst(&[], &[1]);
        let img = SetSpec::Image { map: spec, set: Box::new(SetSpec::Cylinder(vec![0])) };
        assert!(img.contains(&Lasso::finite(&[1, 0, 4])));
        assert!(!img.contains(&Lasso::finite(&[1, 2])));
        assert!(!img.contains(&Lasso::finite(&[0])));
    }

    #[test]
    fn shells_are_keyed_by_exit_depth() {
        let s = SetSpec::Shells { within: Box::new(SetSpec::All), avoiding: Box::new(SetSpec::Point(Lasso::zeros())) };
        assert_eq!(s.member(&Lasso::finite(&[0, 0, 1])), Some(vec![3]));
        assert_eq!(s.member(&Lasso::zeros()), None);
    }
}

//! Layered identities and discontinuity supports.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::cert::{Certificate, Certified, Count, CoverPiece};
use super::map::{MapSpec, PieceMap, Primitive, SetSpec};
use super::{Space, WitnessError};
use crate::point::Lasso;
use crate::present::{FamilyTemplate, TreePresentation};

fn retag(from: &[u64], to: &[u64]) -> MapSpec {
    MapSpec::one(Primitive::Retag { from: from.to_vec(), to: to.to_vec() })
}

/// `n` copies of `p`, copy `i` behind the tag `i`.
fn tagged_copies(p: &TreePresentation, n: usize) -> TreePresentation {
    let copies: Vec<TreePresentation> = (0..n).map(|i| p.prefixed(&[i as u64])).collect();
    let pieces = copies.iter().flat_map(|c| c.pieces.iter().cloned()).collect();
    let mut families: Vec<FamilyTemplate> = copies.into_iter().filter_map(|c| c.family).collect();
    let family = match families.len() {
        0 => None,
        1 => families.pop(),
        _ => Some(FamilyTemplate::Alternate(families)),
    };
    TreePresentation { pieces, family }
}

/// The identity from `X` onto `⊕_α (F_α ∖ F_{α+1})`, where `F_0 = X`, the
/// given closed sets are `F_1 ⊇ F_2 ⊇ …` and the chain ends with `∅`. Layer
/// `α` is tagged by a leading `α`. Forward pieces are the closed shells of
/// each layer, so the forward count is `ω`; the inverse is continuous on
/// each of the finitely many tags.
pub fn layered_identity(space: &Space, filtration: &[SetSpec], depth: usize, bound: u64) -> Result<Certified, WitnessError> {
    if filtration.is_empty() {
        return Ok(Certified::identity(space.clone(), "layered identity: trivial chain"));
    }
    let mut sets = vec![space.within.clone()];
    sets.extend(filtration.iter().cloned());
    for x in space.sample(depth, bound) {
        for layer in 2..sets.len() {
            if sets[layer].contains(&x) && !sets[layer - 1].contains(&x) {
                return Err(WitnessError::NotDecreasing { depth, point: x, layer, previous: layer - 1 });
            }
        }
    }
    let n = sets.len();
    let layer_set = |a: usize| match sets.get(a + 1) {
        Some(next) => SetSpec::Diff(Box::new(sets[a].clone()), Box::new(next.clone())),
        None => sets[a].clone(),
    };
    let codomain = Space {
        presentation: tagged_copies(&space.presentation, n),
        within: SetSpec::Union(
            (0..n)
                .map(|a| SetSpec::Image { map: retag(&[], &[a as u64]), set: Box::new(layer_set(a)) })
                .collect(),
        ),
    };
    let pieces = (0..n).map(|a| (layer_set(a), retag(&[], &[a as u64]))).collect();
    let forward = (0..n)
        .map(|a| CoverPiece {
            set: match sets.get(a + 1) {
                Some(next) => SetSpec::Shells { within: Box::new(sets[a].clone()), avoiding: Box::new(next.clone()) },
                None => sets[a].clone(),
            },
            modulus: retag(&[], &[a as u64]),
        })
        .collect();
    let backward = (0..n)
        .map(|a| CoverPiece { set: SetSpec::Cylinder(vec![a as u64]), modulus: retag(&[a as u64], &[]) })
        .collect();
    let map = PieceMap::Pieces { domain: space.clone(), codomain: codomain.clone(), pieces };
    let cert = Certificate {
        domain: space.clone(),
        codomain,
        forward,
        backward,
        forward_count: Count::Omega,
        backward_count: Count::Finite(n as u64),
        provenance: "layered identity".into(),
    };
    Ok(Certified { map, cert })
}

/// Iterated discontinuity supports, each rendered as the set of depth-`d`
/// prefixes of its sampled points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeChain {
    pub depth: usize,
    pub bound: u64,
    pub supports: Vec<BTreeSet<Vec<u64>>>,
    /// Index of the first empty support, or of the support at which the
    /// chain stabilized.
    pub wdi: usize,
    /// Whether the chain reached the empty set.
    pub weakly_discontinuous: bool,
}

struct Sampled {
    point: Lasso,
    piece: Vec<u64>,
    modulus: MapSpec,
    image: Lasso,
}

/// Discontinuity supports of `m` at depth `d` with labels capped at 1.
///
/// Points are sampled at the finer depth `D = d + d/2`. A point `x` of the
/// current support is flagged when at every scale `t` in `[d, D)` some point
/// `y` agreeing with `x` on exactly `t` coordinates lies in the support and
/// in another piece, and its image separates from `h(x)` before the modulus
/// of `x`'s piece allows. The candidates `y` are `x` with coordinate `t`
/// changed and the least continuations of `x|t` followed by another label;
/// a sampled support contains `y` when it contains a point with the same
/// depth-`D` prefix. Supports are reported as depth-`d` prefix sets.
pub fn wdi_chain(m: &PieceMap, depth: usize) -> DerivativeChain {
    wdi_chain_with_bound(m, depth, 1)
}

pub fn wdi_chain_with_bound(m: &PieceMap, depth: usize, bound: u64) -> DerivativeChain {
    let depth = depth.max(1);
    let fine = (depth + depth / 2).max(depth + 1);
    let domain = m.domain();
    let sample = |x: &Lasso| -> Option<Sampled> {
        let (piece, modulus) = m.locate(x)?;
        Some(Sampled { point: x.clone(), piece, modulus, image: m.apply(x)? })
    };
    let all: Vec<Sampled> = domain.sample(fine, bound).iter().filter_map(sample).collect();
    let candidates = |x: &Lasso, t: usize| -> Vec<Sampled> {
        let stem = x.take(t);
        (0..=bound)
            .filter(|&a| a != x.at(t))
            .flat_map(|a| {
                let mut w = stem.clone();
                w.push(a);
                let mut ys = domain.presentation.continuations(&w, fine);
                ys.push(x.drop_prefix(t + 1).prepend(&w));
                ys
            })
            .filter(|y| domain.contains(y))
            .filter_map(|y| sample(&y))
            .collect()
    };
    let render = |pts: &[&Sampled]| pts.iter().map(|s| s.point.take(depth)).collect::<BTreeSet<_>>();

    let mut current: Vec<&Sampled> = all.iter().collect();
    let mut supports = vec![render(&current)];
    let mut whole = true;
    loop {
        let fine_prefixes: HashSet<Vec<u64>> = current.iter().map(|s| s.point.take(fine)).collect();
        let next: Vec<&Sampled> = current
            .iter()
            .copied()
            .filter(|x| {
                (depth..fine).all(|t| {
                    candidates(&x.point, t).iter().any(|y| {
                        (whole || fine_prefixes.contains(&y.point.take(fine)))
                            && y.piece != x.piece
                            && x.image.agree_len(&y.image) < x.modulus.modulus(t)
                    })
                })
            })
            .collect();
        whole = false;
        if next.len() == current.len() {
            let wdi = supports.len() - 1;
            return DerivativeChain { depth, bound, supports, wdi, weakly_discontinuous: false };
        }
        supports.push(render(&next));
        if next.is_empty() {
            let wdi = supports.len() - 1;
            return DerivativeChain { depth, bound, supports, wdi, weakly_discontinuous: true };
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::{LabelSet, PieceGen, Transition};

    fn cantor() -> Space {
        Space::new(TreePresentation::single(PieceGen::cantor()))
    }

    #[test]
    fn point_filtration() {
        let c = cantor();
        let h = layered_identity(&c, &[SetSpec::Point(Lasso::zeros())], 8, 1).unwrap();
        assert!(h.verify(8).passed(), "{}", h.verify(8));
        let chain = wdi_chain(&h.map, 8);
        assert_eq!(chain.wdi, 2);
        assert!(chain.weakly_discontinuous);
        assert_eq!(chain.supports[0].len(), 256);
        assert_eq!(chain.supports[1], BTreeSet::from([vec![0; 8]]));
        assert!(chain.supports[2].is_empty());
    }

    #[test]
    fn continuous_identity() {
        let chain = wdi_chain(&PieceMap::identity(cantor()), 8);
        assert_eq!(chain.wdi, 1);
        assert!(chain.supports[1].is_empty());
    }

    #[test]
    fn two_step_filtration() {
        // sequences with at most one 1, a copy of ω + 1
        let at_most_one = PieceGen {
            start: 0,
            states: vec![
                vec![
                    Transition { labels: LabelSet::single(0), target: 0 },
                    Transition { labels: LabelSet::single(1), target: 1 },
                ],
                vec![Transition { labels: LabelSet::single(0), target: 1 }],
            ],
        };
        let f1 = SetSpec::Presentation(TreePresentation::single(at_most_one));
        let f2 = SetSpec::Point(Lasso::zeros());
        let h = layered_identity(&cantor(), &[f1.clone(), f2], 8, 1).unwrap();
        assert!(h.verify(8).passed(), "{}", h.verify(8));
        let chain = wdi_chain(&h.map, 8);
        assert_eq!(chain.wdi, 3);
        let rendered: BTreeSet<Vec<u64>> =
            cantor().sample(8, 1).iter().filter(|x| f1.contains(x)).map(|x| x.take(8)).collect();
        assert_eq!(chain.supports[1], rendered);
        assert_eq!(chain.supports[2], BTreeSet::from([vec![0; 8]]));
    }

    #[test]
    fn rejects_increasing_chains() {
        let err = layered_identity(&cantor(), &[SetSpec::Point(Lasso::zeros()), SetSpec::Cylinder(vec![1])], 4, 1);
        assert!(matches!(err, Err(WitnessError::NotDecreasing { .. })));
    }
}

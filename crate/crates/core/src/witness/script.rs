//! Constructive witnesses from a term to the canonical representative of its
//! class, built from a fixed library of explicit closed embeddings.

use serde::{Deserialize, Serialize};

use super::bernstein::cantor_bernstein;
use super::cert::{compose, verify_with_bound, Certified, CoverPiece};
use super::map::{MapSpec, PieceMap, Primitive, SetSpec, Side};
use super::{Space, VerificationReport, WitnessError};
use crate::algebra::{normalize, parse, Factor, Monomial, NormalForm};
use crate::classify::{canonical_nf, classify};
use crate::point::Lasso;
use crate::present::{present, summand_tag};

/// Depth and label bound used for the embedding checks while building.
const BUILD_DEPTH: usize = 6;
const BUILD_BOUND: u64 = 1;

/// An explicit closed embedding between canonical monomial realizations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbedEntry {
    pub source: &'static str,
    pub target: &'static str,
    pub map: MapSpec,
    pub note: &'static str,
}

fn beside_zeros(side: Side) -> MapSpec {
    MapSpec::one(Primitive::Interleave { constant: Lasso::zeros(), side })
}

/// The library. Identities are inclusions of realizations: `w` and `Q` are
/// closed in `N^w`, `w` is a closed discrete set of eventually-zero points,
/// binary sequences form a closed subtree of `N^w`. Products with `Q` take a
/// factor to a slice through `0^w`.
pub fn embed_lib() -> Vec<EmbedEntry> {
    let id = MapSpec::identity;
    vec![
        EmbedEntry { source: "w", target: "Q", map: id(), note: "discrete eventually-zero points" },
        EmbedEntry { source: "w", target: "N^w", map: id(), note: "closed discrete subset" },
        EmbedEntry { source: "2^w", target: "N^w", map: id(), note: "binary subtree" },
        EmbedEntry { source: "Q", target: "Q*2^w", map: beside_zeros(Side::Left), note: "Q x {0^w}" },
        EmbedEntry { source: "w", target: "Q*2^w", map: beside_zeros(Side::Left), note: "w x {0^w}" },
        EmbedEntry { source: "2^w", target: "Q*2^w", map: beside_zeros(Side::Right), note: "{0^w} x 2^w" },
        EmbedEntry { source: "Q", target: "Q*N^w", map: beside_zeros(Side::Left), note: "Q x {0^w}" },
        EmbedEntry { source: "w", target: "Q*N^w", map: beside_zeros(Side::Left), note: "w x {0^w}" },
        EmbedEntry { source: "2^w", target: "Q*N^w", map: beside_zeros(Side::Right), note: "{0^w} x 2^w" },
        EmbedEntry { source: "N^w", target: "Q*N^w", map: beside_zeros(Side::Right), note: "{0^w} x N^w" },
        EmbedEntry { source: "Q*2^w", target: "Q*N^w", map: id(), note: "binary second factor" },
    ]
}

fn monomial_of(text: &str) -> Monomial {
    normalize(&parse(text).expect("library terms parse")).monomials()[0].clone()
}

/// Closed embedding of one monomial realization into another.
fn lib_embedding(source: &Monomial, target: &Monomial) -> Option<MapSpec> {
    if source == target {
        return Some(MapSpec::identity());
    }
    if source.is_finite() {
        let into_line = [monomial_of("w"), monomial_of("Q"), monomial_of("N^w")];
        if into_line.contains(target) || (*target == monomial_of("2^w") && source.fin() <= 2) {
            return Some(MapSpec::identity());
        }
        if [monomial_of("Q*2^w"), monomial_of("Q*N^w")].contains(target) {
            return Some(beside_zeros(Side::Left));
        }
        return None;
    }
    embed_lib()
        .into_iter()
        .find(|e| monomial_of(e.source) == *source && monomial_of(e.target) == *target)
        .map(|e| e.map)
}

/// Prefix-free subtags `1^j 0` separating several summands sent into one
/// target summand, spread over the even coordinates of two-factor products.
fn subtag(target: &Monomial, j: usize) -> Option<Vec<u64>> {
    let mut tag = vec![1; j];
    tag.push(0);
    let atoms = target.atoms().len();
    if atoms == 2 {
        return Some(tag.into_iter().flat_map(|a| [a, 0]).collect());
    }
    let splittable = [Factor::Cantor, Factor::Baire, Factor::Rationals];
    (atoms == 1 && splittable.iter().any(|&f| *target == Monomial::atom(f))).then_some(tag)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub kind: String,
    pub description: String,
    pub from: String,
    pub to: String,
    pub witness: Certified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivationScript {
    pub source: String,
    pub target: String,
    pub steps: Vec<Step>,
    /// All steps composed; absent for the empty script.
    pub composite: Option<Certified>,
}

impl DerivationScript {
    /// Verification report for each step and the composite.
    pub fn verify(&self, depth: usize) -> Vec<(String, VerificationReport)> {
        self.verify_with_bound(depth, 1)
    }

    pub fn verify_with_bound(&self, depth: usize, bound: u64) -> Vec<(String, VerificationReport)> {
        let check = |c: &Certified| verify_with_bound(&c.map, &c.cert, depth, bound);
        let mut out: Vec<(String, VerificationReport)> = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("step {} ({})", i + 1, s.kind), check(&s.witness)))
            .collect();
        if let Some(c) = &self.composite {
            out.push(("composite".into(), check(c)));
        }
        out
    }
}

fn space_of(nf: &NormalForm) -> Space {
    Space::new(present(nf))
}

fn tags(nf: &NormalForm) -> Vec<Vec<u64>> {
    let n = nf.monomials().len();
    (0..n).map(|i| summand_tag(n, i)).collect()
}

/// Replaces every power `F^k` of a single perfect factor by `F`; the
/// realizations coincide as point sets, so the map only retags summands.
fn collapse_powers(nf: &NormalForm) -> Option<(NormalForm, Step)> {
    let collapse = |m: &Monomial| {
        let fs = m.factors();
        let perfect = [Factor::Cantor, Factor::Baire, Factor::Rationals];
        match fs.first() {
            Some(&f) if m.fin() == 1 && fs.len() >= 2 && fs.iter().all(|&g| g == f) && perfect.contains(&f) => {
                Some(Monomial::atom(f))
            }
            _ => None,
        }
    };
    if nf.monomials().iter().all(|m| collapse(m).is_none()) {
        return None;
    }
    let new_monos: Vec<Monomial> = nf.monomials().iter().map(|m| collapse(m).unwrap_or_else(|| m.clone())).collect();
    let target = NormalForm::from_monomials(new_monos.clone());
    // position of each old summand in the sorted result, stable on ties
    let mut order: Vec<usize> = (0..new_monos.len()).collect();
    order.sort_by(|&a, &b| new_monos[a].cmp(&new_monos[b]).then(a.cmp(&b)));
    let mut position = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let (old_tags, new_tags) = (tags(nf), tags(&target));
    let pieces: Vec<(SetSpec, MapSpec)> = (0..old_tags.len())
        .map(|i| {
            let (from, to) = (old_tags[i].clone(), new_tags[position[i]].clone());
            (SetSpec::Cylinder(from.clone()), MapSpec::one(Primitive::Retag { from, to }))
        })
        .collect();
    let backward = pieces
        .iter()
        .map(|(_, spec)| {
            let inv = spec.inverse().expect("retags invert");
            let Primitive::Retag { from, .. } = &inv.0[0] else { unreachable!() };
            CoverPiece { set: SetSpec::Cylinder(from.clone()), modulus: inv.clone() }
        })
        .collect();
    let map = PieceMap::Pieces { domain: space_of(nf), codomain: space_of(&target), pieces };
    let step = Step {
        kind: "registered".into(),
        description: "interleaving collapse: powers of 2^w, N^w and Q realize the same point sets".into(),
        from: nf.render(),
        to: target.render(),
        witness: Certified::from_pieces(map, backward, "registered homeomorphism: interleaving collapse"),
    };
    Some((target, step))
}

fn finite_bijection(nf: &NormalForm, target: &NormalForm) -> Step {
    let t = tags(nf);
    let mut pieces = Vec::new();
    let mut backward = Vec::new();
    let mut next = 0u64;
    for (m, tag) in nf.monomials().iter().zip(&t) {
        for a in 0..m.fin() {
            let mut w = tag.clone();
            w.push(a);
            let (src, dst) = (Lasso::finite(&w), Lasso::finite(&[next]));
            pieces.push((SetSpec::Point(src.clone()), MapSpec::one(Primitive::Constant(dst.clone()))));
            backward.push(CoverPiece { set: SetSpec::Point(dst), modulus: MapSpec::one(Primitive::Constant(src)) });
            next += 1;
        }
    }
    let map = PieceMap::Pieces { domain: space_of(nf), codomain: space_of(target), pieces };
    Step {
        kind: "finite".into(),
        description: "bijection of finite discrete spaces".into(),
        from: nf.render(),
        to: target.render(),
        witness: Certified::from_pieces(map, backward, "finite bijection"),
    }
}

/// Mutual closed embeddings between a sum and the canonical sum it reduces
/// to: every source summand goes into a target summand through the library,
/// every target summand back onto an identical source summand.
fn absorption(nf: &NormalForm, target: &NormalForm) -> Result<Step, WitnessError> {
    let unsupported = || WitnessError::UnsupportedWitness(nf.render());
    let (src, dst) = (nf.monomials(), target.monomials());
    let (src_tags, dst_tags) = (tags(nf), tags(target));
    let mut used = vec![0usize; dst.len()];
    let mut f_pieces = Vec::new();
    for (i, m) in src.iter().enumerate() {
        let (t, embed) = dst
            .iter()
            .position(|t| t == m)
            .map(|t| (t, MapSpec::identity()))
            .or_else(|| dst.iter().enumerate().find_map(|(t, tm)| lib_embedding(m, tm).map(|e| (t, e))))
            .ok_or_else(unsupported)?;
        f_pieces.push((i, t, embed));
        used[t] += 1;
    }
    let mut seen = vec![0usize; dst.len()];
    let mut pieces = Vec::new();
    for (i, t, embed) in f_pieces {
        let mut to = dst_tags[t].clone();
        if used[t] > 1 {
            to.extend(subtag(&dst[t], seen[t]).ok_or_else(unsupported)?);
            seen[t] += 1;
        }
        let spec = MapSpec::one(Primitive::Retag { from: src_tags[i].clone(), to: Vec::new() })
            .then(&embed)
            .then(&MapSpec::one(Primitive::Retag { from: Vec::new(), to }));
        pieces.push((SetSpec::Cylinder(src_tags[i].clone()), spec));
    }
    let g_pieces = dst
        .iter()
        .enumerate()
        .map(|(t, m)| {
            let i = src.iter().position(|s| s == m).ok_or_else(unsupported)?;
            let spec = MapSpec::one(Primitive::Retag { from: dst_tags[t].clone(), to: src_tags[i].clone() });
            Ok((SetSpec::Cylinder(dst_tags[t].clone()), spec))
        })
        .collect::<Result<Vec<_>, WitnessError>>()?;
    let (x, y) = (space_of(nf), space_of(target));
    let f = PieceMap::Pieces { domain: x.clone(), codomain: y.clone(), pieces };
    let g = PieceMap::Pieces { domain: y, codomain: x, pieces: g_pieces };
    let witness = cantor_bernstein(&f, &g, BUILD_DEPTH, BUILD_BOUND)?;
    Ok(Step {
        kind: "cantor-bernstein".into(),
        description: "mutual closed embeddings from the embedding library".into(),
        from: nf.render(),
        to: target.render(),
        witness,
    })
}

/// A certified script from `nf`'s realization to that of the canonical
/// representative of its class.
pub fn canonical_witness(nf: &NormalForm) -> Result<DerivationScript, WitnessError> {
    let target = canonical_nf(classify(nf));
    let mut steps = Vec::new();
    if *nf != target {
        if target.monomials().iter().all(Monomial::is_finite) {
            steps.push(finite_bijection(nf, &target));
        } else {
            let mut current = nf.clone();
            if let Some((collapsed, step)) = collapse_powers(&current) {
                steps.push(step);
                current = collapsed;
            }
            if current != target {
                steps.push(absorption(&current, &target)?);
            }
        }
    }
    let composite = match steps.split_first() {
        None => None,
        Some((first, rest)) => {
            Some(rest.iter().try_fold(first.witness.clone(), |acc, s| compose(&acc, &s.witness))?)
        }
    };
    Ok(DerivationScript { source: nf.render(), target: target.render(), steps, composite })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(s: &str) -> NormalForm {
        normalize(&parse(s).unwrap())
    }

    #[test]
    fn canonical_input_gives_empty_script() {
        let s = canonical_witness(&nf("Q*2^w + N^w")).unwrap();
        assert!(s.steps.is_empty() && s.composite.is_none());
    }

    #[test]
    fn q_squared_is_one_registered_step() {
        let s = canonical_witness(&nf("Q*Q")).unwrap();
        assert_eq!(s.steps.len(), 1);
        assert_eq!(s.steps[0].kind, "registered");
        assert!(s.verify(8).iter().all(|(_, r)| r.passed()));
    }

    #[test]
    fn sum_reduces_to_q_plus_baire() {
        let s = canonical_witness(&nf("Q + 2^w + N^w")).unwrap();
        assert_eq!(s.target, "Q + N^w");
        assert_eq!(s.steps.last().unwrap().kind, "cantor-bernstein");
        for (name, r) in s.verify(8) {
            assert!(r.passed(), "{name}: {r}");
        }
    }

    #[test]
    fn finite_sums() {
        let s = canonical_witness(&nf("fin(2) + fin(3)")).unwrap();
        assert_eq!(s.target, "fin(5)");
        assert!(s.verify(4).iter().all(|(_, r)| r.passed()));
    }

    #[test]
    fn unsupported_is_reported() {
        assert!(matches!(canonical_witness(&nf("w + 2^w")), Err(WitnessError::UnsupportedWitness(_))));
    }
}

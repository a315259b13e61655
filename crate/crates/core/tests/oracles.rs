use wht_core::algebra::{normal_forms_upto, sum_of_products, sweep_atoms, Atom, Factor};
use wht_core::present::{
    atom_presentation, decide_uncountable, enumerate_depth, is_compact, isolated_points_upto, present,
    product_presentation, pumping_witness, sum_presentation, TreePresentation,
};
use wht_core::properties::fingerprint;
use wht_core::normalize;

const BOUND: u64 = 4;

fn atoms() -> Vec<TreePresentation> {
    let mut v = vec![atom_presentation(Atom::Fin(2)), atom_presentation(Atom::Fin(3))];
    v.extend(Factor::ALL.iter().map(|&f| atom_presentation(Atom::Factor(f))));
    v
}

#[test]
fn deciders_match_fingerprints() {
    for (nf, _) in normal_forms_upto(3) {
        let p = present(&nf);
        let fp = fingerprint(&nf);
        assert_eq!(is_compact(&p), fp.is_compact, "{}", nf.render());
        assert_eq!(decide_uncountable(&p), fp.cardinality.is_uncountable(), "{}", nf.render());
    }
}

#[test]
fn family_free_compactness_is_bounded_branching() {
    // a pruned finitely-branching tree stops growing once the label bound
    // exceeds every label it uses
    for (t, _) in sum_of_products(&sweep_atoms(), 2) {
        let p = present(&normalize(&t));
        if p.family.is_some() {
            continue;
        }
        let narrow = enumerate_depth(&p, 4, 6).len();
        let wide = enumerate_depth(&p, 4, 7).len();
        assert_eq!(is_compact(&p), narrow == wide, "{t}");
    }
}

#[test]
fn pumping_witnesses_embed_binary_trees() {
    for p in atoms() {
        for piece in &p.pieces {
            let Some(w) = pumping_witness(piece) else { continue };
            let mut words = std::collections::BTreeSet::new();
            for bits in 0u32..16 {
                let choices: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
                let word = w.word(&choices);
                assert!(piece.run(&word).is_some());
                words.insert(word);
            }
            assert_eq!(words.len(), 16);
        }
    }
}

#[test]
fn perfectness_oracle() {
    for (nf, _) in normal_forms_upto(3) {
        if nf.is_empty() {
            continue;
        }
        let p = present(&nf);
        if fingerprint(&nf).is_perfect {
            let r = isolated_points_upto(&p, 8, BOUND);
            assert!(r.prefixes.is_empty(), "{}: {:?}", nf.render(), r.prefixes.first());
        } else {
            assert!(!isolated_points_upto(&p, 4, BOUND).prefixes.is_empty(), "{}", nf.render());
        }
    }
}

#[test]
fn sums_and_products_enumerate_structurally() {
    let ps = atoms();
    for p in &ps {
        for q in &ps {
            let s = sum_presentation(p, q);
            let r = product_presentation(p, q);
            for d in 1..=4usize {
                let (a, b) = (enumerate_depth(p, d, BOUND), enumerate_depth(q, d, BOUND));
                assert_eq!(enumerate_depth(&s, d + 1, BOUND).len(), a.len() + b.len());
                let prod = enumerate_depth(&r, 2 * d, BOUND);
                assert_eq!(prod.len(), a.len() * b.len());
                for w in &prod.words {
                    let evens: Vec<u64> = w.iter().step_by(2).copied().collect();
                    let odds: Vec<u64> = w.iter().skip(1).step_by(2).copied().collect();
                    assert!(a.contains(&evens) && b.contains(&odds));
                }
            }
        }
    }
}

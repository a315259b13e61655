use std::collections::HashMap;

use wht_core::algebra::normal_forms_upto;
use wht_core::classify::{canonical_nf, embeds_closed, prod_table, sum_table};
use wht_core::properties::{check_preservation, fingerprint, invariants, PreservedValues};
use wht_core::{classify, classify_by_tree, normalize, parse, WeakHomeoClass};

use WeakHomeoClass::*;

fn cls(s: &str) -> WeakHomeoClass {
    classify(&normalize(&parse(s).unwrap()))
}

#[test]
fn nine_canonical_classes() {
    let names = ["w", "2^w", "N^w", "Q", "Q + 2^w", "Q*2^w", "Q + N^w", "Q*2^w + N^w", "Q*N^w"];
    let classes: Vec<_> = names.iter().map(|s| cls(s)).collect();
    assert_eq!(classes, WeakHomeoClass::INFINITE.to_vec());
    assert_eq!(cls("Q + 2^w + N^w"), QPlusBaire);
    let (c, b) = (fingerprint(&canonical_nf(Cantor)), fingerprint(&canonical_nf(BaireCl)));
    assert!(c.is_sigma_compact && !b.is_sigma_compact);
}

#[test]
fn sweep_routes_agree_and_are_congruent() {
    let nfs = normal_forms_upto(5);
    assert!(nfs.len() > 1000, "sweep has {} normal forms", nfs.len());
    for (nf, _) in &nfs {
        assert_eq!(classify(nf), classify_by_tree(nf), "{}", nf.render());
    }
    for (a, n) in &nfs {
        for (b, m) in &nfs {
            if n + m > 5 {
                continue;
            }
            let (ca, cb) = (classify(a), classify(b));
            assert_eq!(classify(&a.sum(b)), sum_table(ca, cb), "{} + {}", a.render(), b.render());
            assert_eq!(classify(&a.product(b)), prod_table(ca, cb), "{} * {}", a.render(), b.render());
        }
    }
}

#[test]
fn equal_classes_share_invariants() {
    let mut by_class: HashMap<WeakHomeoClass, Vec<_>> = HashMap::new();
    for (nf, _) in normal_forms_upto(5) {
        by_class.entry(classify(&nf)).or_default().push(nf);
    }
    for (c, members) in &by_class {
        let first = &members[0];
        let values = PreservedValues::of(first);
        for other in &members[1..] {
            assert_eq!(invariants(first), invariants(other), "{c}");
            assert!(values.differences(&PreservedValues::of(other)).is_empty(), "{c}: {}", other.render());
            assert!(check_preservation(first, other).is_ok());
        }
    }
}

#[test]
fn k_scattered_terms_are_compact_classes() {
    for (nf, _) in normal_forms_upto(4) {
        let fp = fingerprint(&nf);
        assert_eq!(fp.is_k_scattered, fp.is_polish && fp.is_sigma_compact, "{}", nf.render());
        if fp.is_k_scattered {
            assert!(matches!(classify(&nf), Empty | Finite(_) | Omega | Cantor), "{}", nf.render());
        }
        assert_eq!(fp.is_baire, fp.is_polish);
        assert_eq!(fp.is_hereditarily_baire, fp.is_polish);
    }
}

#[test]
fn sum_table_laws() {
    let cs = WeakHomeoClass::table_classes();
    for &a in &cs {
        assert_eq!(sum_table(a, Empty), a);
        if a.is_infinite() {
            assert_eq!(sum_table(a, a), a);
        }
        for &b in &cs {
            assert_eq!(sum_table(a, b), sum_table(b, a));
            for &c in &cs {
                assert_eq!(sum_table(sum_table(a, b), c), sum_table(a, sum_table(b, c)));
            }
        }
    }
}

#[test]
fn prod_table_laws() {
    let cs = WeakHomeoClass::table_classes();
    for &a in &cs {
        assert_eq!(prod_table(a, Finite(1)), a);
        assert_eq!(prod_table(a, Empty), Empty);
        for &b in &cs {
            assert_eq!(prod_table(a, b), prod_table(b, a));
        }
    }
    for c in [Cantor, BaireCl, Q, QTimesCantor, QTimesBaire] {
        assert_eq!(prod_table(c, c), c);
    }
}

#[test]
fn closed_embeddings_inherit_hereditary_properties() {
    for &a in &WeakHomeoClass::INFINITE {
        assert!(embeds_closed(a, a));
        for &b in &WeakHomeoClass::INFINITE {
            if embeds_closed(a, b) {
                let (fa, fb) = (fingerprint(&canonical_nf(a)), fingerprint(&canonical_nf(b)));
                assert!(!fb.is_sigma_compact || fa.is_sigma_compact, "{a} -> {b}");
                assert!(!fb.is_polish || fa.is_polish, "{a} -> {b}");
                assert!(!fb.is_countable || fa.is_countable, "{a} -> {b}");
            }
        }
    }
    assert!(!embeds_closed(BaireCl, Cantor));
    assert!(embeds_closed(Cantor, BaireCl));
}

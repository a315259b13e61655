use proptest::prelude::*;

use wht_core::present::{from_text, present, to_text};
use wht_core::{classify, normalize, parse, render, SpaceTerm};

fn term() -> impl Strategy<Value = SpaceTerm> {
    let leaf = prop_oneof![
        Just(SpaceTerm::Empty),
        (1u64..5).prop_map(SpaceTerm::Fin),
        Just(SpaceTerm::Omega),
        Just(SpaceTerm::Cantor),
        Just(SpaceTerm::BaireSp),
        Just(SpaceTerm::Rationals),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(SpaceTerm::Sum),
            prop::collection::vec(inner, 2..4).prop_map(SpaceTerm::Prod),
        ]
    })
}

proptest! {
    #[test]
    fn display_parses_back(t in term()) {
        let text = t.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(normalize(&back), normalize(&t), "{}", text);
    }

    #[test]
    fn render_is_a_fixed_point(t in term()) {
        let nf = normalize(&t);
        let again = normalize(&parse(&render(&nf)).unwrap());
        prop_assert_eq!(render(&again), render(&nf));
        prop_assert_eq!(classify(&again), classify(&nf));
    }

    #[test]
    fn presentations_serialize_losslessly(t in term()) {
        let p = present(&normalize(&t));
        prop_assert_eq!(from_text(&to_text(&p)).unwrap(), p);
    }
}

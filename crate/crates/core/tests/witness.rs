use wht_core::point::Lasso;
use wht_core::present::present;
use wht_core::witness::{
    canonical_witness, cantor_bernstein, compose, layered_identity, verify, Certificate, Certified, Count,
    CoverPiece, MapSpec, PieceMap, Primitive, SetSpec, Side, Space, Violation,
};
use wht_core::{normalize, parse};

fn space(s: &str) -> Space {
    Space::new(present(&normalize(&parse(s).unwrap())))
}

fn whole(domain: &Space, codomain: &Space, spec: MapSpec) -> PieceMap {
    PieceMap::Pieces { domain: domain.clone(), codomain: codomain.clone(), pieces: vec![(SetSpec::All, spec)] }
}

fn cantor_example() -> Certified {
    let c = space("2^w");
    let f = whole(&c, &c, MapSpec::prefix_subst(&[], &[0]));
    let g = whole(&c, &c, MapSpec::prefix_subst(&[], &[1]));
    cantor_bernstein(&f, &g, 10, 1).unwrap()
}

/// `Q×2^ω` against `Q×2^ω ⊕ Q`: `f` is the first summand inclusion, `g`
/// sends the `Q` summand onto `Q×{0^ω}` and the product summand onto the
/// complementary clopen set `Q×[1]`.
fn q_cantor_example() -> Certified {
    let x = space("Q*2^w");
    let y = space("Q + Q*2^w");
    let (q, qc) = (Lasso::zeros(), Lasso::new(vec![0, 1], vec![0]));
    let qcx = Lasso::new(vec![0, 0, 0, 1], vec![0]);
    assert!(y.contains(&Lasso::new(vec![1], vec![0])) && y.contains(&Lasso::new(vec![0], vec![0])));
    assert!(x.contains(&q) && x.contains(&qc) && x.contains(&qcx));
    let f = whole(&x, &y, MapSpec::prefix_subst(&[], &[0]));
    let g = PieceMap::Pieces {
        domain: y.clone(),
        codomain: x.clone(),
        pieces: vec![
            (
                SetSpec::Cylinder(vec![1]),
                MapSpec::prefix_subst(&[1], &[])
                    .then(&MapSpec::one(Primitive::Interleave { constant: Lasso::zeros(), side: Side::Left })),
            ),
            (SetSpec::Cylinder(vec![0]), MapSpec::prefix_subst(&[0], &[0, 1])),
        ],
    };
    cantor_bernstein(&f, &g, 10, 1).unwrap()
}

#[test]
fn cantor_prefix_embeddings() {
    let h = cantor_example();
    let report = h.verify(10);
    assert!(report.passed(), "{report}");
    assert!(report.forward_samples > 1000);
}

#[test]
fn rationals_times_cantor() {
    let h = q_cantor_example();
    let report = h.verify(10);
    assert!(report.passed(), "{report}");
}

#[test]
fn dropped_piece_is_a_coverage_violation() {
    for h in [cantor_example(), q_cantor_example()] {
        let mut cert = h.cert.clone();
        cert.forward.remove(0);
        let report = verify(&h.map, &cert, 8);
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Coverage { .. })), "{report}");
    }
}

#[test]
fn false_continuity_claim_is_caught() {
    let c = space("2^w");
    let (zero, one) = (Lasso::zeros(), Lasso::constant(1));
    let swap = PieceMap::Pieces {
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
    let one_piece = || vec![CoverPiece { set: SetSpec::All, modulus: MapSpec::identity() }];
    let claim = Certificate {
        domain: c.clone(),
        codomain: c.clone(),
        forward: one_piece(),
        backward: one_piece(),
        forward_count: Count::Finite(1),
        backward_count: Count::Finite(1),
        provenance: "swap claimed continuous".into(),
    };
    let report = verify(&swap, &claim, 8);
    assert!(report.violations.iter().any(|v| matches!(v, Violation::Continuity { .. })), "{report}");
}

fn constructed() -> Vec<Certified> {
    let c = space("2^w");
    let layered = layered_identity(&c, &[SetSpec::Point(Lasso::zeros())], 6, 1).unwrap();
    let finite = canonical_witness(&normalize(&parse("fin(2) + fin(3)").unwrap())).unwrap().composite.unwrap();
    let cb = cantor_example();
    vec![
        Certified::identity(c.clone(), "identity"),
        layered.clone(),
        layered.inverse(),
        cb.clone(),
        cb.inverse(),
        finite.clone(),
        finite.inverse(),
    ]
}

#[test]
fn composition_counts_are_bounded_by_products() {
    let all = constructed();
    let mut composed = 0;
    for a in &all {
        for b in &all {
            let Ok(ab) = compose(a, b) else { continue };
            composed += 1;
            assert!(ab.cert.forward_count.le(a.cert.forward_count.mul(b.cert.forward_count)));
            assert!(ab.cert.backward_count.le(a.cert.backward_count.mul(b.cert.backward_count)));
            let report = ab.verify(6);
            assert!(report.passed(), "{} then {}: {report}", a.cert.provenance, b.cert.provenance);
        }
    }
    // three self-maps of 2^ω, the layered pair through the tagged copies,
    // and the finite bijection with its inverse
    assert_eq!(composed, 19);
}

#[test]
fn bernstein_round_trip() {
    let h = cantor_example();
    let back = compose(&h, &h.inverse()).unwrap();
    let report = back.verify(8);
    assert!(report.passed(), "{report}");
}

use diffkit::term::{
    annotate, interpret, interpret_at, normalize, parse, random_term, rewriter_oracle, symbolic_derive, typecheck, Term,
};
use diffkit::{Element, EqualityStrategy, Error, Model, Registry, Space};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TERMS: usize = 500;
const DEPTH: usize = 4;

fn registries() -> Vec<Registry> {
    vec![
        Registry::builtin(&Model::findiff(), &Space::Cyclic(7)).unwrap(),
        Registry::builtin(&Model::smooth(), &Space::Real(1)).unwrap(),
        Registry::builtin(&Model::module(3), &Space::Cyclic(7)).unwrap(),
        Registry::builtin(&Model::streams(8), &Space::stream(&Space::Cyclic(3), 8)).unwrap(),
    ]
}

fn oracle_strategy() -> EqualityStrategy {
    EqualityStrategy::auto(0x7E2B).with_bound(2_401).with_samples(48)
}

#[test]
fn rewriter_agrees_with_every_model() {
    for reg in registries() {
        let summary = rewriter_oracle(&reg, TERMS, DEPTH, 11, &oracle_strategy()).unwrap();
        assert_eq!(summary.terms, TERMS);
        assert!(summary.holds(), "{}: {summary:?}", reg.model().name());
        assert!(summary.checked >= TERMS as u64);
    }
}

#[test]
fn rewriter_is_reproducible() {
    let reg = &registries()[0];
    let a = rewriter_oracle(reg, 40, DEPTH, 3, &oracle_strategy()).unwrap();
    let b = rewriter_oracle(reg, 40, DEPTH, 3, &oracle_strategy()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn generated_terms_are_well_typed_and_shallow() {
    for reg in registries() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (t, dom, cod) = random_term(&mut rng, &reg, DEPTH);
            assert!(t.depth() <= DEPTH);
            let typed = annotate(&t, &reg, Some(&dom.space(reg.base())), Some(&cod.space(reg.base()))).unwrap();
            assert_eq!(typed.dom, dom.space(reg.base()));
            assert!(symbolic_derive(&t).is_normal());
        }
    }
}

#[test]
fn square_derivative_on_integers() {
    let z = Space::bounded(-100, 100);
    let reg = Registry::builtin(&Model::findiff(), &z).unwrap();
    let d = interpret(&parse("(d (prim sq))").unwrap(), &reg).unwrap();
    assert_eq!(d.eval(&Element::ints(&[3, 2])), Element::int(16));
    let rewritten = interpret(&symbolic_derive(&parse("(comp (prim mul) (pair id id))").unwrap()), &reg).unwrap();
    assert_eq!(rewritten.eval(&Element::ints(&[3, 2])), Element::int(16));
}

#[test]
fn smooth_rewrite_of_a_cube() {
    let reg = Registry::builtin(&Model::smooth(), &Space::Real(1)).unwrap();
    let t = parse("(comp (prim mul) (pair id (prim sq)))").unwrap();
    let d = interpret(&symbolic_derive(&t), &reg).unwrap();
    let v = d.eval(&Element::reals(&[2.0, 1.0])).as_real().unwrap();
    assert!((v - 12.0).abs() < 1e-9);
}

#[test]
fn ill_typed_terms_are_rejected() {
    let reg = &registries()[0];
    assert!(matches!(
        typecheck(&parse("(comp (prim sq) (pair id id))").unwrap(), reg),
        Err(Error::Type { .. })
    ));
    assert!(matches!(
        typecheck(&parse("(add pi0 id)").unwrap(), reg),
        Err(Error::Type { .. })
    ));
    assert!(matches!(
        typecheck(&parse("(prim nope)").unwrap(), reg),
        Err(Error::UnknownPrimitive(_))
    ));
}

#[test]
fn terminal_codomain_interprets() {
    let reg = &registries()[0];
    let z7 = Space::Cyclic(7);
    let f = interpret_at(&parse("(d one)").unwrap(), reg, None, None).unwrap();
    assert_eq!(f.cod(), &Space::Terminal);
    assert_eq!(f.dom(), &z7.square());
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Id),
        Just(Term::Pi0),
        Just(Term::Pi1),
        Just(Term::Zero),
        Just(Term::One),
        "[a-z][a-z0-9_]{0,6}".prop_map(|n| Term::prim(&n)),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(g, f)| Term::comp(g, f)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Term::pair(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Term::add(f, g)),
            inner.clone().prop_map(Term::eps),
            inner.prop_map(Term::d),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(t in arb_term()) {
        prop_assert_eq!(parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn normal_forms_are_fixed_points(t in arb_term()) {
        let n = normalize(&t);
        prop_assert!(n.is_normal());
        prop_assert_eq!(normalize(&n), n.clone());
    }

    #[test]
    fn json_round_trip(t in arb_term()) {
        let text = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<Term>(&text).unwrap(), t);
    }

    #[test]
    fn seeded_oracle_holds_on_z7(seed in any::<u64>()) {
        let reg = Registry::builtin(&Model::findiff(), &Space::Cyclic(7)).unwrap();
        let summary = rewriter_oracle(&reg, 4, DEPTH, seed, &oracle_strategy()).unwrap();
        prop_assert!(summary.holds(), "{:?}", summary);
    }
}

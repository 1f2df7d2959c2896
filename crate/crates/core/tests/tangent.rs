use diffkit::models::smooth::{coordinatewise, Expr};
use diffkit::models::streams::head_affinity;
use diffkit::models::subjects::{random_head_affine, random_subjects};
use diffkit::morphism::{self, Morphism};
use diffkit::tangent::{
    check_kleisli_cdc, check_kleisli_compose, check_linear_algebra, check_monad_laws, check_sharp,
    check_tangent_identities, findiff_decomposition, kleisli_compose, kleisli_derivative,
    kleisli_identity, kleisli_pair, multiplication, random_kleisli, sharp, tangent_map, unit,
    AlgebraCandidate, KleisliMap,
};
use diffkit::{AxiomId, Element, EqualityStrategy, Model, Space};

fn z(n: u64) -> Space {
    Space::Cyclic(n)
}

fn ints(f: &Morphism, x: &[i64]) -> Vec<i64> {
    f.eval(&Element::ints(x)).to_ints().unwrap()
}

fn int_map(space: &Space, label: &str, f: impl Fn(i64) -> i64 + Send + Sync + 'static) -> Morphism {
    Morphism::new(space.clone(), space.clone(), label, move |x| {
        Element::int(f(x.as_int().unwrap()))
    })
}

fn all_pass(reports: &[diffkit::LawReport]) {
    for r in reports {
        assert!(r.passed(), "{r}");
    }
}

/// Exhaustive, with room for the eight coordinates of `T(T(T(Z5)))`.
fn exhaustive() -> EqualityStrategy {
    EqualityStrategy::exhaustive().with_bound(1 << 20)
}

fn integers() -> Space {
    Space::bounded(-1000, 1000)
}

#[test]
fn tangent_map_of_findiff_square() {
    let m = Model::findiff();
    let sq = int_map(&integers(), "sq", |x| x * x);
    let t = tangent_map(&m, &sq).unwrap();
    assert_eq!(ints(&t, &[3, 2]), vec![9, 25 - 9]);
}

#[test]
fn unit_and_multiplication_formulas() {
    let zz = integers();
    assert_eq!(ints(&unit(&zz), &[4]), vec![4, 0]);
    let fd = multiplication(&Model::findiff(), &zz);
    assert_eq!(ints(&fd, &[1, 2, 3, 4]), vec![1, 2 + 3 + 4]);
    let sm = multiplication(&Model::smooth(), &Space::Real(1));
    let out = sm.eval(&Element::reals(&[1.0, 2.0, 3.0, 4.0])).to_reals().unwrap();
    assert_eq!(out, vec![1.0, 5.0]);
}

#[test]
fn tangent_of_identity_on_z3_squared_is_identity() {
    let a = Space::square(&z(3));
    let t = tangent_map(&Model::findiff(), &morphism::identity(&a)).unwrap();
    let id = morphism::identity(&a.square());
    assert!(diffkit::morphisms_equal(&t, &id, &EqualityStrategy::exhaustive()).unwrap().holds());
}

#[test]
fn monad_laws_hold_in_every_model() {
    let stream = Space::stream(&z(3), 4);
    let cases = [
        (Model::findiff(), z(5), exhaustive(), random_subjects(&Model::findiff(), &z(5), 4, 9)),
        (Model::smooth(), Space::Real(1), EqualityStrategy::sampled(256, 1), random_subjects(&Model::smooth(), &Space::Real(1), 4, 9)),
        (Model::module(3), z(5), exhaustive(), random_subjects(&Model::module(3), &z(5), 4, 9)),
        (Model::streams(4), stream.clone(), EqualityStrategy::sampled(256, 2), random_head_affine(&stream, 4, 9)),
    ];
    for (model, space, strat, subjects) in cases {
        let subjects = subjects.unwrap();
        all_pass(&check_monad_laws(&model, &space, &subjects, &strat).unwrap());
        all_pass(&check_tangent_identities(&model, &space, &subjects, &strat).unwrap());
    }
}

#[test]
fn stream_naturality_failures_come_from_non_affine_heads() {
    let model = Model::streams(4);
    let space = Space::stream(&z(3), 4);
    let strat = EqualityStrategy::sampled(256, 2);
    let subjects = random_subjects(&model, &space, 8, 9).unwrap();
    let reports = check_monad_laws(&model, &space, &subjects, &strat).unwrap();
    let mut failures = 0;
    for r in reports.iter().filter(|r| r.failed()) {
        assert_eq!(r.axiom, "Natural.mult", "{r}");
        let f = subjects.iter().find(|f| f.label() == r.subject).unwrap();
        assert!(!head_affinity(f, &strat).unwrap().holds(), "{r}");
        failures += 1;
    }
    assert!(failures > 0);
}

#[test]
fn sharp_examples() {
    let m = Model::findiff();
    let zz = integers();
    let f = KleisliMap::new(int_map(&zz, "sq", |x| x * x), morphism::identity(&zz)).unwrap();
    let s = sharp(&m, &f).unwrap();
    assert_eq!(ints(&s, &[3, 2]), vec![9, 3 + 16 + 2]);
    let oracle = tangent_map(&m, &f.as_morphism()).unwrap();
    let via_monad = morphism::compose(&multiplication(&m, &zz), &oracle).unwrap();
    assert_eq!(ints(&via_monad, &[3, 2]), vec![9, 21]);

    let sm = Model::smooth();
    let sq = coordinatewise(1, Expr::Mul(Box::new(Expr::Var(0)), Box::new(Expr::Var(0))), "sq");
    let s = sharp(&sm, &KleisliMap::lift(&sq)).unwrap();
    let out = s.eval(&Element::reals(&[2.0, 1.0])).to_reals().unwrap();
    assert_eq!(out, vec![4.0, 4.0]);

    let ident = sharp(&m, &kleisli_identity(&z(5))).unwrap();
    let id = morphism::identity(&z(5).square());
    assert!(diffkit::morphisms_equal(&ident, &id, &EqualityStrategy::exhaustive()).unwrap().holds());
}

#[test]
fn kleisli_composite_matches_hand_computation() {
    let m = Model::findiff();
    let zz = integers();
    let f = KleisliMap::new(
        morphism::identity(&zz),
        morphism::constant(&zz, &zz, Element::int(1)),
    )
    .unwrap();
    let g = KleisliMap::lift(&int_map(&zz, "sq", |x| x * x));
    let gf = kleisli_compose(&m, &g, &f).unwrap();
    assert_eq!(ints(&gf.as_morphism(), &[3]), vec![9, 16 - 9]);
}

#[test]
fn kleisli_composite_general_findiff_shape() {
    let m = Model::findiff();
    let z7 = z(7);
    let f = KleisliMap::new(int_map(&z7, "sq", |x| x * x % 7), int_map(&z7, "inc", |x| (x + 1) % 7)).unwrap();
    let g = KleisliMap::new(int_map(&z7, "dbl", |x| 2 * x % 7), int_map(&z7, "cube", |x| x * x * x % 7)).unwrap();
    let gf = kleisli_compose(&m, &g, &f).unwrap().as_morphism();
    let g0 = |v: i64| (2 * v).rem_euclid(7);
    let g1 = |v: i64| (v * v * v).rem_euclid(7);
    for x in 0..7i64 {
        let (f0, f1) = ((x * x) % 7, (x + 1) % 7);
        let outer = g1(f0);
        let change_of_g0 = g0(f0 + f1) - g0(f0);
        let change_of_g1 = g1(f0 + f1) - g1(f0);
        let expected = vec![g0(f0), (outer + change_of_g0 + change_of_g1).rem_euclid(7)];
        assert_eq!(ints(&gf, &[x]), expected, "x = {x}");
    }
}

#[test]
fn kleisli_closed_form_agrees_with_definition_exhaustively() {
    let m = Model::findiff();
    let maps = random_kleisli(&m, &z(5), 12, 3).unwrap();
    for g in &maps {
        for f in &maps {
            let r = check_kleisli_compose(&m, g, f, &EqualityStrategy::exhaustive()).unwrap();
            assert!(r.holds(), "{:?}", r.counterexample);
        }
    }
}

#[test]
fn kleisli_identity_is_a_unit() {
    let m = Model::findiff();
    let maps = random_kleisli(&m, &z(5), 5, 4).unwrap();
    let id = kleisli_identity(&z(5));
    let exact = EqualityStrategy::exhaustive();
    for f in &maps {
        let left = kleisli_compose(&m, &id, f).unwrap();
        let right = kleisli_compose(&m, f, &id).unwrap();
        assert!(diffkit::morphisms_equal(&left.as_morphism(), &f.as_morphism(), &exact).unwrap().holds());
        assert!(diffkit::morphisms_equal(&right.as_morphism(), &f.as_morphism(), &exact).unwrap().holds());
    }
}

#[test]
fn kleisli_structure_examples() {
    let m = Model::findiff();
    let zz = integers();
    let id = kleisli_identity(&zz);
    let paired = kleisli_pair(&id, &id).unwrap().as_morphism();
    assert_eq!(ints(&paired, &[2]), vec![2, 2, 0, 0]);

    let d = kleisli_derivative(&m, &kleisli_identity(&z(5))).unwrap();
    let p1 = KleisliMap::lift(&morphism::proj1(&z(5), &z(5)));
    let exact = EqualityStrategy::exhaustive();
    assert!(diffkit::morphisms_equal(&d.as_morphism(), &p1.as_morphism(), &exact).unwrap().holds());
}

#[test]
fn sharp_matches_monad_in_every_model() {
    let cases = [
        (Model::findiff(), z(5), EqualityStrategy::exhaustive()),
        (Model::smooth(), Space::Real(1), EqualityStrategy::sampled(256, 5)),
        (Model::module(2), z(5), EqualityStrategy::exhaustive()),
        (Model::streams(4), Space::stream(&z(3), 4), EqualityStrategy::sampled(256, 6)),
    ];
    for (model, space, strat) in cases {
        for f in random_kleisli(&model, &space, 4, 11).unwrap() {
            assert!(check_sharp(&model, &f, &strat).unwrap().holds(), "{}", f.label());
        }
    }
}

#[test]
fn kleisli_difference_axioms_findiff() {
    let m = Model::findiff();
    let subjects = random_kleisli(&m, &z(3), 3, 21).unwrap();
    let reports = check_kleisli_cdc(&m, &subjects, &AxiomId::CDC, &EqualityStrategy::auto(1)).unwrap();
    all_pass(&reports);
}

#[test]
fn kleisli_difference_axioms_smooth_include_additivity() {
    let m = Model::smooth();
    let subjects = random_kleisli(&m, &Space::Real(1), 3, 22).unwrap();
    let reports = check_kleisli_cdc(&m, &subjects, &AxiomId::CDC, &EqualityStrategy::sampled(64, 3)).unwrap();
    assert!(reports.iter().any(|r| r.axiom == AxiomId::Additivity.to_string()));
    all_pass(&reports);
}

#[test]
fn zero_kleisli_subject_passes_trivially() {
    let m = Model::findiff();
    let zero = KleisliMap::lift(&morphism::zero(&z(3), &z(3)));
    let reports = check_kleisli_cdc(&m, &[zero], &AxiomId::CDC, &EqualityStrategy::auto(2)).unwrap();
    all_pass(&reports);
}

#[test]
fn free_algebras_are_linear() {
    let cases = [
        (Model::findiff(), z(5), exhaustive()),
        (Model::smooth(), Space::Real(1), EqualityStrategy::sampled(256, 7)),
        (Model::module(2), z(5), exhaustive()),
        (Model::streams(4), Space::stream(&z(3), 4), EqualityStrategy::sampled(256, 8)),
    ];
    for (model, space, strat) in cases {
        let free = AlgebraCandidate::free(&model, &space);
        all_pass(&check_linear_algebra(&model, &free, &strat).unwrap());
    }
}

#[test]
fn findiff_algebra_decomposes_through_a_homomorphism() {
    let m = Model::findiff();
    let z5 = z(5);
    let exact = EqualityStrategy::exhaustive();
    let nu = Morphism::new(z5.square(), z5.clone(), "x + 2y", |p| {
        let v = p.to_ints().unwrap();
        Element::int((v[0] + 2 * v[1]).rem_euclid(5))
    });
    let cand = AlgebraCandidate::new(z5.clone(), nu).unwrap();
    let reports = check_linear_algebra(&m, &cand, &exact).unwrap();
    assert!(reports.iter().find(|r| r.axiom == "Alg.linear").unwrap().passed());
    assert!(reports.iter().find(|r| r.axiom == "Alg.unit").unwrap().passed());
    let (e, hom, decomposition) = findiff_decomposition(&m, &cand, &exact).unwrap();
    assert!(hom.holds() && decomposition.holds());
    for y in 0..5 {
        assert_eq!(ints(&e, &[y]), vec![(2 * y) % 5]);
    }

    let bad = Morphism::new(z5.square(), z5.clone(), "x + y^2", |p| {
        let v = p.to_ints().unwrap();
        Element::int((v[0] + v[1] * v[1]).rem_euclid(5))
    });
    let cand = AlgebraCandidate::new(z5, bad).unwrap();
    let reports = check_linear_algebra(&m, &cand, &exact).unwrap();
    assert!(reports.iter().find(|r| r.axiom == "Alg.linear").unwrap().failed());
}

#[test]
fn algebra_candidate_rejects_wrong_shape() {
    let z5 = z(5);
    assert!(AlgebraCandidate::new(z5.clone(), morphism::identity(&z5)).is_err());
}

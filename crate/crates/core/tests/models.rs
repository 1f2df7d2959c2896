use diffkit::kernel::{check_in, is_additive, is_epsilon_linear, is_linear};
use diffkit::models::smooth::{self, central_difference, Expr};
use diffkit::models::streams::{self, causality_check, head_affinity, stream_linear_check, SimpleOperator};
use diffkit::models::subjects::{random_additive, random_head_affine, random_subjects, random_subjects_between};
use diffkit::morphism::{self, Morphism};
use diffkit::{check_axiom, AxiomId, Element, EqualityStrategy, Model, Registry, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STREAM_LEN: usize = 8;

fn rotations(subjects: &[Morphism]) -> impl Iterator<Item = Vec<Morphism>> + '_ {
    (0..subjects.len()).map(move |i| subjects[i..].iter().chain(&subjects[..i]).cloned().collect())
}

fn stream_bases() -> Vec<Space> {
    vec![Space::Cyclic(3), Space::bounded(-9, 9)]
}

fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

#[test]
fn dual_derivative_matches_central_difference() {
    let m = Model::smooth();
    let dom = Space::Real(2);
    let subjects = random_subjects_between(&m, &dom, &Space::Real(2), 200, 31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut worst = 0.0f64;
    for f in &subjects {
        let x: Vec<f64> = (0..2).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let dir: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let at: Vec<f64> = x.iter().chain(&dir).copied().collect();
        let exact = m.derivative(f).unwrap().eval(&Element::reals(&at)).to_reals().unwrap();
        let estimate = central_difference(f, &x, &dir, 1e-5);
        for (a, b) in exact.iter().zip(&estimate) {
            let err = relative_error(*a, *b);
            worst = worst.max(err);
            assert!(err <= 1e-4, "{} at {x:?} along {dir:?}: {a} vs {b}", f.label());
        }
    }
    assert!(worst > 0.0);
}

#[test]
fn cube_and_sine_have_exact_derivatives() {
    let cube = smooth::from_exprs(1, vec![Expr::mul(Expr::var(0), Expr::mul(Expr::var(0), Expr::var(0)))]);
    let d = Model::smooth().derivative(&cube).unwrap();
    let v = d.eval(&Element::reals(&[2.0, 1.0])).as_real().unwrap();
    assert!((v - 12.0).abs() <= 1e-9);
    let sin = smooth::from_exprs(1, vec![Expr::sin(Expr::var(0))]);
    let d = Model::smooth().derivative(&sin).unwrap();
    assert_eq!(d.eval(&Element::reals(&[0.0, 2.0])).as_real(), Some(2.0));
}

#[test]
fn smooth_registry_primitives_match_central_difference() {
    let reg = Registry::builtin(&Model::smooth(), &Space::Real(1)).unwrap();
    for (name, f) in reg.iter() {
        let w = f.dom().width();
        let x: Vec<f64> = (0..w).map(|i| 0.3 + i as f64).collect();
        let dir = vec![0.7; w];
        let at: Vec<f64> = x.iter().chain(&dir).copied().collect();
        let exact = reg.model().derivative(f).unwrap().eval(&Element::reals(&at)).to_reals().unwrap();
        for (a, b) in exact.iter().zip(central_difference(f, &x, &dir, 1e-5)) {
            assert!(relative_error(*a, b) <= 1e-4, "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn stream_operator_passes_on_head_affine_subjects() {
    let m = Model::streams(STREAM_LEN);
    let strategy = EqualityStrategy::sampled(256, 3);
    for base in stream_bases() {
        let space = Space::stream(&base, STREAM_LEN);
        let subjects = random_head_affine(&space, 24, 5).unwrap();
        for rotated in rotations(&subjects) {
            for axiom in AxiomId::CDC {
                let r = check_axiom(&m, axiom, &rotated, &strategy).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }
}

#[test]
fn stream_operator_fails_exactly_off_head_affine_subjects() {
    let m = Model::streams(STREAM_LEN);
    let strategy = EqualityStrategy::sampled(256, 3);
    for base in stream_bases() {
        let space = Space::stream(&base, STREAM_LEN);
        let subjects = random_subjects(&m, &space, 32, 5).unwrap();
        let mut failing = 0;
        for rotated in rotations(&subjects) {
            let affine = head_affinity(&rotated[0], &strategy).unwrap().holds();
            for axiom in AxiomId::CDC {
                let r = check_axiom(&m, axiom, &rotated, &strategy).unwrap();
                let expected_failure = !affine && matches!(axiom, AxiomId::CdC2 | AxiomId::CdC6);
                assert_eq!(r.failed(), expected_failure, "{r}");
                failing += usize::from(r.failed());
            }
        }
        assert!(failing > 0, "no subject off the head-affine class on {space}");
    }
}

#[test]
fn pointwise_square_breaks_additivity_in_the_change() {
    let base = Space::bounded(-9, 9);
    let space = Space::stream(&base, 2);
    let reg = Registry::builtin(&Model::streams(2), &space).unwrap();
    let sq = reg.get("sq").unwrap();
    let d = reg.model().derivative(sq).unwrap();
    assert_eq!(d.eval(&Element::ints(&[1, 1, 1, 1])), Element::ints(&[3, 3]));
    // the head entry is a plain finite difference: 0 -> 2 gives 4, twice 0 -> 1 gives 2
    assert_eq!(d.eval(&Element::ints(&[0, 0, 2, 0])), Element::ints(&[4, 0]));
    assert_eq!(d.eval(&Element::ints(&[0, 0, 1, 0])), Element::ints(&[1, 0]));
    let r = check_axiom(reg.model(), AxiomId::CdC2, std::slice::from_ref(sq), &EqualityStrategy::sampled(256, 1)).unwrap();
    assert!(r.failed());
}

#[test]
fn simple_operator_fails_the_projection_law() {
    let cat = SimpleOperator::new(STREAM_LEN);
    for base in stream_bases() {
        let space = Space::stream(&base, STREAM_LEN);
        let id = morphism::identity(&space);
        let r = check_in(&cat, AxiomId::CdC3, std::slice::from_ref(&id), &EqualityStrategy::sampled(256, 9)).unwrap();
        assert!(r.failed(), "{r}");
        let d = streams::simple_derivative(&id);
        let a = Element::ints(&[1; STREAM_LEN]);
        let b: Element = Element::ints(&[1, 2, 0, 1, 2, 0, 1, 2]);
        let out = d.eval(&Element::pair(&a, &b)).to_ints().unwrap();
        assert_eq!(out[0], 0);
        assert_ne!(out[0], b.to_ints().unwrap()[0]);
        assert_eq!(&out[1..], &b.to_ints().unwrap()[1..]);
    }
}

#[test]
fn registered_stream_primitives_are_causal() {
    let strategy = EqualityStrategy::sampled(256, 4);
    for base in stream_bases() {
        let space = Space::stream(&base, STREAM_LEN);
        let reg = Registry::builtin(&Model::streams(STREAM_LEN), &space).unwrap();
        assert!(reg.names().count() >= 8);
        for (name, f) in reg.iter() {
            assert!(causality_check(f, &strategy).is_ok(), "{name}");
        }
        assert!(causality_check(&streams::shift_left(&space).unwrap(), &strategy).is_err());
    }
}

#[test]
fn module_subjects_are_linear_and_eps_linear() {
    for r in [2, 3] {
        let m = Model::module(r);
        for base in [Space::Cyclic(7), Space::Cyclic(5).square(), Space::bounded(-50, 50)] {
            let strategy = EqualityStrategy::auto(11).with_samples(128);
            let reg = Registry::builtin(&m, &base).unwrap();
            let mut subjects: Vec<Morphism> = reg.iter().map(|(_, f)| f.clone()).collect();
            subjects.extend(random_subjects(&m, &base, 10, 12).unwrap());
            for f in &subjects {
                assert!(is_linear(&m, f, &strategy).unwrap().holds(), "{}", f.label());
                assert!(is_epsilon_linear(&m, f, &strategy).unwrap().holds(), "{}", f.label());
            }
        }
    }
}

#[test]
fn stream_linearity_matches_its_characterisation() {
    let strategy = EqualityStrategy::sampled(128, 21);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut verdicts = [0usize; 2];
    for base in stream_bases() {
        let space = Space::stream(&base, STREAM_LEN);
        let m = Model::streams(STREAM_LEN);
        let reg = Registry::builtin(&m, &space).unwrap();
        let mut subjects: Vec<Morphism> = reg
            .iter()
            .filter(|(_, f)| f.dom() == &space)
            .map(|(_, f)| f.clone())
            .collect();
        subjects.extend(random_subjects(&m, &space, 16, 23).unwrap());
        subjects.extend(random_head_affine(&space, 8, 24).unwrap());
        for _ in 0..4 {
            let linear_tail = streams::pointwise(&space, &random_additive(&mut rng, &base, &base), "matrix").unwrap();
            subjects.push(linear_tail.clone());
            subjects.push(morphism::compose(&linear_tail, &streams::truncation(&space)).unwrap());
        }
        for f in &subjects {
            let v = stream_linear_check(f, STREAM_LEN, &strategy).unwrap();
            assert!(v.consistent(), "{}: {v:?}", f.label());
            verdicts[usize::from(v.linear)] += 1;
        }
    }
    assert!(verdicts[0] > 0 && verdicts[1] > 0, "{verdicts:?}");
}

#[test]
fn doubling_is_linear_and_squaring_is_not() {
    let z = Space::bounded(-50, 50);
    let strategy = EqualityStrategy::auto(5);
    for m in [Model::findiff(), Model::module(3)] {
        let dbl = Registry::builtin(&m, &z).unwrap().get("dbl").unwrap().clone();
        assert!(is_linear(&m, &dbl, &strategy).unwrap().holds());
        assert!(is_additive(&dbl, &strategy).unwrap().holds());
    }
    let m = Model::findiff();
    let sq = Registry::builtin(&m, &z).unwrap().get("sq").unwrap().clone();
    assert!(!is_linear(&m, &sq, &strategy).unwrap().holds());
    assert!(!is_additive(&sq, &strategy).unwrap().holds());
}

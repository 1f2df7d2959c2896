use diffkit::lambda::{
    all_functions, check_closed_left_additive, check_curry_round_trip, check_dlambda, check_ev_identities, curry,
    curry_derivative_sides, ev, uncurry,
};
use diffkit::models::subjects::{random_subjects_between, random_table};
use diffkit::morphism::{self, Morphism};
use diffkit::{check_axiom, morphisms_equal, AxiomId, Element, EqualityStrategy, Model, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn z(n: u64) -> Space {
    Space::Cyclic(n)
}

fn exhaustive() -> EqualityStrategy {
    EqualityStrategy::exhaustive()
}

fn small_spaces() -> Vec<Space> {
    vec![z(2), z(3), z(4), z(2).square()]
}

fn random_pool(count: usize, seed: u64) -> Vec<(Morphism, Morphism)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces = small_spaces();
    (0..count)
        .map(|_| {
            let a = &spaces[rng.gen_range(0..spaces.len())];
            let b = &spaces[rng.gen_range(0..spaces.len())];
            let c = &spaces[rng.gen_range(0..spaces.len())];
            let g = random_table(&mut rng, &Space::product(a, b), c).unwrap();
            let f = random_table(&mut rng, a, b).unwrap();
            (g, f)
        })
        .collect()
}

#[test]
fn curry_derivative_worked_example() {
    let ints = Space::bounded(-20, 20);
    let z5 = z(5);
    let mul = Morphism::new(Space::product(&ints, &z5), ints.clone(), "mul", |p| {
        let v = p.to_ints().unwrap();
        Element::int(v[0] * v[1])
    });
    let (lhs, rhs) = curry_derivative_sides(&Model::findiff(), &mul).unwrap();
    let at = Element::ints(&[2, 3]);
    let row = |table: &Element| table.to_ints().unwrap()[4];
    assert_eq!(row(&lhs.eval(&at)), 5 * 4 - 2 * 4);
    assert_eq!(row(&rhs.eval(&at)), 12);
}

#[test]
fn difference_lambda_axioms_hold_for_all_small_tables() {
    let m = Model::findiff();
    let subjects = all_functions(&z(2).square(), &z(3)).unwrap();
    assert_eq!(subjects.len(), 81);
    for f in &subjects {
        for r in check_dlambda(&m, f, &exhaustive()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn difference_lambda_axioms_hold_on_random_pool() {
    let m = Model::findiff();
    for (g, _) in random_pool(20, 7) {
        for r in check_dlambda(&m, &g, &exhaustive()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn zero_subject_has_zero_sides() {
    let m = Model::findiff();
    let zero = morphism::zero(&z(3).square(), &z(2));
    let (lhs, rhs) = curry_derivative_sides(&m, &zero).unwrap();
    let nothing = morphism::zero(lhs.dom(), lhs.cod());
    assert!(morphisms_equal(&lhs, &nothing, &exhaustive()).unwrap().holds());
    assert!(morphisms_equal(&rhs, &nothing, &exhaustive()).unwrap().holds());
}

#[test]
fn evaluation_identities_hold() {
    let m = Model::findiff();
    let z3 = z(3);
    let mul = Morphism::new(z3.square(), z3.clone(), "mul", |p| {
        let v = p.to_ints().unwrap();
        Element::int(v[0] * v[1] % 3)
    });
    for r in check_ev_identities(&m, &mul, &morphism::identity(&z3), &exhaustive()).unwrap() {
        assert!(r.passed(), "{r}");
    }
    for (g, f) in random_pool(20, 8) {
        for r in check_ev_identities(&m, &g, &f, &exhaustive()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
    let subjects = all_functions(&z(2).square(), &z(3)).unwrap();
    let f = morphism::identity(&z(2));
    for g in &subjects {
        for r in check_ev_identities(&m, g, &f, &exhaustive()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn evaluation_identities_with_degenerate_maps() {
    let m = Model::findiff();
    let z3 = z(3);
    let g = all_functions(&z3.square(), &z3).unwrap().remove(4000);
    for r in check_ev_identities(&m, &g, &morphism::zero(&z3, &z3), &exhaustive()).unwrap() {
        assert!(r.passed(), "{r}");
    }
    let zero_g = morphism::zero(&z3.square(), &z3);
    for r in check_ev_identities(&m, &zero_g, &morphism::identity(&z3), &exhaustive()).unwrap() {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn curry_and_uncurry_are_inverse() {
    let subjects = all_functions(&z(2).square(), &z(3)).unwrap();
    for f in &subjects {
        assert!(check_curry_round_trip(f, &exhaustive()).unwrap().holds());
    }
    for (g, _) in random_pool(20, 9) {
        assert!(check_curry_round_trip(&g, &exhaustive()).unwrap().holds());
    }
}

#[test]
fn curried_tables_evaluate_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_table(&mut rng, &z(3).square(), &z(4)).unwrap();
    let curried = curry(&f).unwrap();
    let evaluation = ev(&z(3), &z(4)).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            let table = curried.eval(&Element::int(a));
            let via_ev = evaluation.eval(&Element::pair(&table, &Element::int(b)));
            assert_eq!(via_ev, f.eval(&Element::ints(&[a, b])));
        }
    }
    let back = uncurry(&curried).unwrap();
    assert_eq!(back.eval(&Element::ints(&[2, 1])), f.eval(&Element::ints(&[2, 1])));
}

#[test]
fn currying_preserves_sums_and_zero() {
    let m = Model::findiff();
    let z2 = z(2);
    let mul = Morphism::new(z2.square(), z2.clone(), "mul", |p| {
        let v = p.to_ints().unwrap();
        Element::int(v[0] * v[1])
    });
    for r in check_closed_left_additive(&m, &mul, &mul, &exhaustive()).unwrap() {
        assert!(r.passed(), "{r}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let a = random_table(&mut rng, &z(3).square(), &z(5)).unwrap();
        let b = random_table(&mut rng, &z(3).square(), &z(5)).unwrap();
        for r in check_closed_left_additive(&m, &a, &b, &exhaustive()).unwrap() {
            assert!(r.passed(), "{r}");
        }
        let zero = morphism::zero(a.dom(), a.cod());
        for r in check_closed_left_additive(&m, &a, &zero, &exhaustive()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn table_valued_maps_satisfy_the_difference_axioms() {
    let m = Model::findiff();
    let tables = Space::function(&z(2), &z(3));
    let subjects = random_subjects_between(&m, &z(3), &tables, 4, 17).unwrap();
    for i in 0..subjects.len() {
        let rotated: Vec<Morphism> = subjects[i..].iter().chain(&subjects[..i]).cloned().collect();
        for axiom in [AxiomId::CdC0, AxiomId::CdC1, AxiomId::CdC2, AxiomId::CdC4, AxiomId::CdC6, AxiomId::CdC7] {
            let r = check_axiom(&m, axiom, &rotated, &EqualityStrategy::auto(1)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn exponentials_are_findiff_only() {
    let f = morphism::zero(&z(2).square(), &z(2));
    assert!(check_dlambda(&Model::module(2), &f, &exhaustive()).is_err());
}

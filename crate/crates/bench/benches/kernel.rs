use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diffkit::models::subjects::random_subjects;
use diffkit::term::{interpret, parse, symbolic_derive};
use diffkit::{check_axiom, AxiomId, Element, EqualityStrategy, Model, Registry, Space};
use diffkit_bench::{rotations, stream_space};
use std::hint::black_box;

fn derivative_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivative_eval");
    let cases = [
        (Model::findiff(), Space::Cyclic(7), Element::ints(&[3, 2])),
        (Model::smooth(), Space::Real(1), Element::reals(&[0.5, 1.0])),
        (Model::streams(8), stream_space(8), Element::ints(&[1; 16])),
    ];
    for (model, space, at) in cases {
        let sq = Registry::builtin(&model, &space).unwrap().get("sq").unwrap().clone();
        let d = model.derivative(&sq).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(model.name()), &at, |b, at| {
            b.iter(|| d.eval(black_box(at)))
        });
    }
    group.finish();
}

fn axiom_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("axiom_check");
    group.sample_size(20);
    let m = Model::findiff();
    let subjects = random_subjects(&m, &Space::Cyclic(7), 4, 1).unwrap();
    let pool: Vec<_> = rotations(&subjects).next().unwrap();
    for axiom in [AxiomId::CdC2, AxiomId::CdC5, AxiomId::CdC7] {
        group.bench_function(BenchmarkId::new("findiff_z7", axiom.name()), |b| {
            b.iter(|| check_axiom(&m, axiom, black_box(&pool), &EqualityStrategy::exhaustive()).unwrap())
        });
    }
    group.finish();
}

fn rewriter(c: &mut Criterion) {
    let reg = Registry::builtin(&Model::findiff(), &Space::Cyclic(7)).unwrap();
    let term = parse("(comp (prim sq) (add (prim inc) (comp (prim dbl) (prim sq))))").unwrap();
    c.bench_function("symbolic_derive", |b| b.iter(|| symbolic_derive(black_box(&term))));
    c.bench_function("interpret_derivative", |b| {
        b.iter(|| {
            let f = interpret(&symbolic_derive(&term), &reg).unwrap();
            f.eval(&Element::ints(&[3, 2]))
        })
    });
}

criterion_group!(benches, derivative_eval, axiom_checks, rewriter);
criterion_main!(benches);

use std::time::Instant;

use anyhow::{bail, Context, Result};
use diffkit::kernel::{check_flatness, law_report};
use diffkit::lambda::{all_functions, check_curry_round_trip, check_dlambda, check_ev_identities};
use diffkit::models::subjects::{random_subjects, random_table};
use diffkit::tangent::{
    check_kleisli_cdc, check_kleisli_compose, check_linear_algebra, check_monad_laws, check_sharp,
    check_tangent_identities, findiff_decomposition, random_kleisli, AlgebraCandidate,
};
use diffkit::term::{derive_n, interpret, parse, typecheck};
use diffkit::{element, run_suite, AxiomId, EqualityStrategy, LawReport, Model, ModelTag, Morphism, Registry, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::input;
use crate::report::{DeriveOutput, EvalOutput, RunReport, REPORT_VERSION};
use crate::{Command, Common, Format, Pool};

pub struct Output {
    pub text: String,
    pub violations: bool,
}

/// Model, base space and strategy resolved from the shared options.
struct Setup {
    model: Model,
    space: Space,
    seed: u64,
    strategy: EqualityStrategy,
    format: Format,
}

fn default_space(tag: &ModelTag) -> Space {
    match tag {
        ModelTag::FinDiff => Space::bounded(-20, 20),
        ModelTag::ModuleMaps { .. } => Space::Cyclic(7),
        ModelTag::Smooth => Space::Real(1),
        ModelTag::Streams { k } => Space::stream(&Space::Cyclic(3), *k),
    }
}

fn seed_override(flag: u64) -> Result<u64> {
    match std::env::var("DIFFKIT_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("DIFFKIT_SEED=`{v}` is not an unsigned integer")),
        Err(_) => Ok(flag),
    }
}

fn setup(common: &Common) -> Result<Setup> {
    let tag: ModelTag = common.model.parse()?;
    let model = Model::new(tag);
    let space = match &common.space {
        Some(s) => s.parse()?,
        None => default_space(model.tag()),
    };
    model.check_space(&space)?;
    let seed = seed_override(common.seed)?;
    let strategy = EqualityStrategy::auto(seed)
        .with_samples(common.samples)
        .with_bound(common.bound);
    Ok(Setup {
        model,
        space,
        seed,
        strategy,
        format: common.format,
    })
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn finish(setup: &Setup, echo: String, results: Vec<LawReport>, started: Instant) -> Result<Output> {
    let elapsed = started.elapsed().as_millis() as u64;
    let report = RunReport::new(echo, setup.model.name(), setup.seed, results, elapsed);
    let text = match setup.format {
        Format::Json => json(&report)?,
        Format::Table => report.table(),
    };
    Ok(Output {
        text,
        violations: report.failed(),
    })
}

/// Registered endomaps of the base space, an optional table and `count` random subjects.
fn subject_pool(setup: &Setup, pool: &Pool) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    if let Some(path) = &pool.table {
        let table = input::load(path)?;
        let f = table
            .subject
            .with_context(|| format!("{} has no `table` field", path.display()))?;
        if f.dom() != &setup.space || f.cod() != &setup.space {
            bail!("table subject must map {} to itself", setup.space);
        }
        out.push(f.in_model(setup.model.tag().clone()));
    }
    if !pool.no_primitives {
        let registry = Registry::builtin(&setup.model, &setup.space)?;
        out.extend(
            registry
                .iter()
                .filter(|(_, f)| f.dom() == &setup.space && f.cod() == &setup.space)
                .map(|(_, f)| f.clone()),
        );
    }
    out.extend(random_subjects(&setup.model, &setup.space, pool.subjects, setup.seed)?);
    if out.is_empty() {
        bail!("the subject pool is empty");
    }
    Ok(out)
}

pub fn run(command: Command, echo: String) -> Result<Output> {
    let started = Instant::now();
    match command {
        Command::Eval { common, term, at } => eval(&setup(&common)?, echo, &term, &at),
        Command::Derive { common, term, order } => derive(&setup(&common)?, echo, &term, order),
        Command::Check { common, pool, axioms } => {
            let setup = setup(&common)?;
            let axioms = AxiomId::parse_list(&axioms)?;
            let subjects = subject_pool(&setup, &pool)?;
            let results = run_suite(&setup.model, &subjects, &axioms, &setup.strategy)?;
            finish(&setup, echo, results, started)
        }
        Command::MonadLaws { common, pool } => {
            let setup = setup(&common)?;
            let subjects = subject_pool(&setup, &pool)?;
            let mut results = check_monad_laws(&setup.model, &setup.space, &subjects, &setup.strategy)?;
            results.extend(check_tangent_identities(&setup.model, &setup.space, &subjects, &setup.strategy)?);
            finish(&setup, echo, results, started)
        }
        Command::KleisliCheck { common, subjects, axioms } => {
            let setup = setup(&common)?;
            let axioms = AxiomId::parse_list(&axioms)?;
            let results = kleisli(&setup, subjects.max(1), &axioms)?;
            finish(&setup, echo, results, started)
        }
        Command::AlgebraCheck { common, table } => {
            let setup = setup(&common)?;
            let results = algebra(&setup, table.as_deref())?;
            finish(&setup, echo, results, started)
        }
        Command::LambdaCheck {
            common,
            max_size,
            subjects,
        } => {
            let setup = setup(&common)?;
            let results = lambda(&setup, max_size, subjects)?;
            finish(&setup, echo, results, started)
        }
        Command::Flatness { common } => {
            let setup = setup(&common)?;
            let registry = Registry::builtin(&setup.model, &setup.space)?;
            let prims: Vec<Morphism> = registry
                .iter()
                .filter(|(_, f)| f.dom() == &setup.space && f.cod() == &setup.space)
                .map(|(_, f)| f.clone())
                .collect();
            let results = check_flatness(&setup.model, &setup.space, &prims, &setup.strategy)?;
            finish(&setup, echo, results, started)
        }
    }
}

fn eval(setup: &Setup, echo: String, text: &str, at: &str) -> Result<Output> {
    let registry = Registry::builtin(&setup.model, &setup.space)?;
    let term = parse(text)?;
    let f = interpret(&term, &registry)?;
    let point = element::parse(f.dom(), at).with_context(|| format!("point `{at}` in {}", f.dom()))?;
    let value = element::format(f.cod(), &f.eval(&point));
    let text = match setup.format {
        Format::Table => format!("{value}\n"),
        Format::Json => json(&EvalOutput {
            version: REPORT_VERSION,
            command: echo,
            model: setup.model.name(),
            term: term.to_string(),
            dom: f.dom().to_string(),
            cod: f.cod().to_string(),
            at: element::format(f.dom(), &point),
            value,
        })?,
    };
    Ok(Output { text, violations: false })
}

fn derive(setup: &Setup, echo: String, text: &str, order: usize) -> Result<Output> {
    let registry = Registry::builtin(&setup.model, &setup.space)?;
    let term = parse(text)?;
    typecheck(&term, &registry)?;
    let derived = derive_n(&term, order);
    let (dom, cod) = typecheck(&derived, &registry)?;
    let text = match setup.format {
        Format::Table => format!("{derived}\n"),
        Format::Json => json(&DeriveOutput {
            version: REPORT_VERSION,
            command: echo,
            model: setup.model.name(),
            term: term.to_string(),
            order,
            derivative: derived.to_string(),
            dom: dom.to_string(),
            cod: cod.to_string(),
        })?,
    };
    Ok(Output { text, violations: false })
}

fn kleisli(setup: &Setup, count: usize, axioms: &[AxiomId]) -> Result<Vec<LawReport>> {
    let (model, strategy) = (&setup.model, &setup.strategy);
    let maps = random_kleisli(model, &setup.space, count, setup.seed)?;
    let name = model.name();
    let mut out = Vec::new();
    for (i, g) in maps.iter().enumerate() {
        let f = &maps[(i + 1) % maps.len()];
        let s = strategy.fork(i as u64);
        let subject = format!("{} after {}", g.label(), f.label());
        out.push(law_report("Kleisli.compose", &name, subject, &s, check_kleisli_compose(model, g, f, &s)?));
    }
    for (i, f) in maps.iter().enumerate() {
        let s = strategy.fork(i as u64);
        out.push(law_report("Kleisli.sharp", &name, f.label(), &s, check_sharp(model, f, &s)?));
    }
    out.extend(check_kleisli_cdc(model, &maps, axioms, strategy)?);
    Ok(out)
}

fn algebra(setup: &Setup, table: Option<&std::path::Path>) -> Result<Vec<LawReport>> {
    let (model, strategy) = (&setup.model, &setup.strategy);
    let mut candidates = vec![AlgebraCandidate::free(model, &setup.space)];
    if let Some(path) = table {
        let input = input::load(path)?;
        let nu = input
            .nu
            .with_context(|| format!("{} has no `nu` field", path.display()))?;
        model.check_space(&input.space)?;
        candidates.push(AlgebraCandidate::new(input.space, nu)?);
    }
    let mut out = Vec::new();
    for candidate in &candidates {
        let reports = check_linear_algebra(model, candidate, strategy)?;
        let passed = reports.iter().all(LawReport::passed);
        out.extend(reports);
        if passed && model.tag() == &ModelTag::FinDiff {
            let (_, homomorphism, decomposition) = findiff_decomposition(model, candidate, strategy)?;
            let subject = candidate.structure.label().to_string();
            out.push(law_report("Alg.extract", &model.name(), subject.clone(), strategy, homomorphism));
            out.push(law_report("Alg.decompose", &model.name(), subject, strategy, decomposition));
        }
    }
    Ok(out)
}

fn lambda(setup: &Setup, max_size: u128, count: usize) -> Result<Vec<LawReport>> {
    let (model, strategy) = (&setup.model, &setup.strategy);
    let z = Space::Cyclic;
    let spaces: Vec<Space> = [z(2), z(3), z(4), z(2).square(), z(5), z(6), z(2).square().square()]
        .into_iter()
        .filter(|s| s.size().is_some_and(|n| n <= max_size))
        .collect();
    if spaces.is_empty() {
        bail!("--max-size must be at least 2");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(setup.seed);
    let mut pool = Vec::new();
    for i in 0..count {
        let pick = |rng: &mut ChaCha8Rng| spaces[rng.gen_range(0..spaces.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let g = random_table(&mut rng, &Space::product(&a, &b), &c)?.named(format!("g{i}"));
        let f = random_table(&mut rng, &a, &b)?.named(format!("f{i}"));
        pool.push((g, f));
    }
    if max_size >= 3 {
        let identity = diffkit::morphism::identity(&z(2));
        for g in all_functions(&z(2).square(), &z(3))? {
            pool.push((g, identity.clone()));
        }
    }
    let mut out = Vec::new();
    for (i, (g, f)) in pool.iter().enumerate() {
        let s = strategy.fork(i as u64);
        out.extend(check_dlambda(model, g, &s)?);
        out.extend(check_ev_identities(model, g, f, &s)?);
        let round_trip = check_curry_round_trip(g, &s)?;
        out.push(law_report("Curry.round_trip", &model.name(), g.label().to_string(), &s, round_trip));
    }
    Ok(out)
}

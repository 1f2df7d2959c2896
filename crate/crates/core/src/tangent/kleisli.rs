//! The Kleisli category of the tangent monad.
//!
//! A Kleisli map `A -> B` is a base map `A -> T(B)`, stored as its two
//! components. Composition uses the closed form and is cross-checked against
//! the monad definition `mu . T(g) . f` on a few seeded points.

use crate::equality::{morphisms_equal, EqualityReport, EqualityStrategy};
use crate::error::{Error, Result};
use crate::kernel::{check_in, is_linear, AxiomId, DifferenceCategory, Model, ModelTag};
use crate::models::subjects::random_subjects;
use crate::morphism::{self, Morphism};
use crate::report::LawReport;
use crate::space::Space;
use crate::tangent::monad::{multiplication, tangent_map, unit};

/// Points sampled by the built-in oracle on every composite in release builds.
pub const ORACLE_POINTS: usize = 8;
const ORACLE_SEED: u64 = 0x6B1E_15C1;
const DEBUG_ORACLE_BOUND: u128 = 4096;
const DEBUG_ORACLE_SAMPLES: usize = 64;

/// The strategy used by the built-in composition oracle.
pub fn oracle_strategy() -> EqualityStrategy {
    if cfg!(debug_assertions) {
        EqualityStrategy::auto(ORACLE_SEED)
            .with_bound(DEBUG_ORACLE_BOUND)
            .with_samples(DEBUG_ORACLE_SAMPLES)
    } else {
        EqualityStrategy::sampled(ORACLE_POINTS, ORACLE_SEED)
    }
}

/// A map `A -> T(B)` split as `<primal, tangent>`.
#[derive(Clone, Debug)]
pub struct KleisliMap {
    pub primal: Morphism,
    pub tangent: Morphism,
}

impl KleisliMap {
    pub fn new(primal: Morphism, tangent: Morphism) -> Result<KleisliMap> {
        if primal.dom() != tangent.dom() || primal.cod() != tangent.cod() {
            return Err(Error::DomainMismatch {
                expected: format!("{} -> {}", primal.dom(), primal.cod()),
                found: format!("{} -> {}", tangent.dom(), tangent.cod()),
            });
        }
        Ok(KleisliMap { primal, tangent })
    }

    /// `<f, 0>`, the image of a base map.
    pub fn lift(f: &Morphism) -> KleisliMap {
        KleisliMap {
            primal: f.clone(),
            tangent: morphism::zero(f.dom(), f.cod()),
        }
    }

    /// Splits a base map `A -> B x B`.
    pub fn from_morphism(f: &Morphism) -> Result<KleisliMap> {
        let (b0, b1) = f.cod().factors().ok_or_else(|| {
            Error::ShapeMismatch(format!("{} is not a tangent space", f.cod()))
        })?;
        if b0 != b1 {
            return Err(Error::ShapeMismatch(format!("{} is not a tangent space", f.cod())));
        }
        Ok(KleisliMap {
            primal: morphism::compose(&morphism::proj0(b0, b1), f)?,
            tangent: morphism::compose(&morphism::proj1(b0, b1), f)?,
        })
    }

    pub fn dom(&self) -> &Space {
        self.primal.dom()
    }

    pub fn cod(&self) -> &Space {
        self.primal.cod()
    }

    /// The underlying base map `<primal, tangent>: A -> T(B)`.
    pub fn as_morphism(&self) -> Morphism {
        morphism::pair(&self.primal, &self.tangent)
            .expect("components share a domain")
            .named(self.label())
    }

    pub fn label(&self) -> String {
        format!("<{}, {}>", self.primal.label(), self.tangent.label())
    }
}

/// `mu . T(g) . f`, the composite straight from the monad structure.
pub fn kleisli_compose_definitional(model: &Model, g: &KleisliMap, f: &KleisliMap) -> Result<Morphism> {
    let tg = tangent_map(model, &g.as_morphism())?;
    let mu = multiplication(model, g.cod());
    morphism::compose(&mu, &morphism::compose(&tg, &f.as_morphism())?)
}

/// `<g0 f0, d[g0] <f0, f1> + g1 (f0 + eps f1)>`, without the oracle.
pub fn kleisli_compose_closed(model: &Model, g: &KleisliMap, f: &KleisliMap) -> Result<KleisliMap> {
    if g.dom() != f.cod() {
        return Err(Error::DomainMismatch {
            expected: g.dom().to_string(),
            found: f.cod().to_string(),
        });
    }
    let primal = morphism::compose(&g.primal, &f.primal)?;
    let moved = morphism::add(&f.primal, &model.epsilon(&f.tangent))?;
    let tangent = morphism::add(
        &morphism::compose(&model.derivative(&g.primal)?, &morphism::pair(&f.primal, &f.tangent)?)?,
        &morphism::compose(&g.tangent, &moved)?,
    )?;
    Ok(KleisliMap { primal, tangent })
}

/// Kleisli composite `g . f`, checked against its definition by [`oracle_strategy`].
pub fn kleisli_compose(model: &Model, g: &KleisliMap, f: &KleisliMap) -> Result<KleisliMap> {
    kleisli_compose_with(model, g, f, &oracle_strategy())
}

/// Kleisli composite `g . f`, checked against its definition under `oracle`.
pub fn kleisli_compose_with(
    model: &Model,
    g: &KleisliMap,
    f: &KleisliMap,
    oracle: &EqualityStrategy,
) -> Result<KleisliMap> {
    let closed = kleisli_compose_closed(model, g, f)?;
    let report = kleisli_compose_agreement(model, g, f, &closed, oracle)?;
    match report.counterexample {
        None => Ok(closed),
        Some(c) => Err(Error::OracleMismatch { point: c.point }),
    }
}

fn kleisli_compose_agreement(
    model: &Model,
    g: &KleisliMap,
    f: &KleisliMap,
    closed: &KleisliMap,
    strategy: &EqualityStrategy,
) -> Result<EqualityReport> {
    let definitional = kleisli_compose_definitional(model, g, f)?;
    morphisms_equal(&closed.as_morphism(), &definitional, strategy)
}

/// Compares the closed-form composite with its definition under `strategy`.
pub fn check_kleisli_compose(
    model: &Model,
    g: &KleisliMap,
    f: &KleisliMap,
    strategy: &EqualityStrategy,
) -> Result<EqualityReport> {
    let closed = kleisli_compose_closed(model, g, f)?;
    kleisli_compose_agreement(model, g, f, &closed, strategy)
}

/// `f# = <f0 pi0, f1 pi0 + d[f0] + eps(d[f1])>: T(A) -> T(B)`
pub fn sharp(model: &Model, f: &KleisliMap) -> Result<Morphism> {
    let a = f.dom();
    let first = morphism::proj0(a, a);
    let tangent = morphism::add(
        &morphism::add(&morphism::compose(&f.tangent, &first)?, &model.derivative(&f.primal)?)?,
        &model.epsilon(&model.derivative(&f.tangent)?),
    )?;
    morphism::pair(&morphism::compose(&f.primal, &first)?, &tangent)
}

/// `f# = mu . T(f)` checked under `strategy`.
pub fn check_sharp(model: &Model, f: &KleisliMap, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    let via_monad = morphism::compose(
        &multiplication(model, f.cod()),
        &tangent_map(model, &f.as_morphism())?,
    )?;
    morphisms_equal(&sharp(model, f)?, &via_monad, strategy)
}

pub fn kleisli_identity(space: &Space) -> KleisliMap {
    KleisliMap::from_morphism(&unit(space)).expect("unit lands in a tangent space")
}

pub fn kleisli_pair(f: &KleisliMap, g: &KleisliMap) -> Result<KleisliMap> {
    Ok(KleisliMap {
        primal: morphism::pair(&f.primal, &g.primal)?,
        tangent: morphism::pair(&f.tangent, &g.tangent)?,
    })
}

pub fn kleisli_add(f: &KleisliMap, g: &KleisliMap) -> Result<KleisliMap> {
    Ok(KleisliMap {
        primal: morphism::add(&f.primal, &g.primal)?,
        tangent: morphism::add(&f.tangent, &g.tangent)?,
    })
}

pub fn kleisli_epsilon(model: &Model, f: &KleisliMap) -> KleisliMap {
    KleisliMap {
        primal: model.epsilon(&f.primal),
        tangent: model.epsilon(&f.tangent),
    }
}

pub fn kleisli_derivative(model: &Model, f: &KleisliMap) -> Result<KleisliMap> {
    Ok(KleisliMap {
        primal: model.derivative(&f.primal)?,
        tangent: model.derivative(&f.tangent)?,
    })
}

/// Linear in the Kleisli category exactly when both components are linear.
pub fn kleisli_is_linear(model: &Model, f: &KleisliMap, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    Ok(EqualityReport::combine([
        is_linear(model, &f.primal, strategy)?,
        is_linear(model, &f.tangent, strategy)?,
    ]))
}

/// The Kleisli category of a model, seen through the law checker.
#[derive(Clone, Debug)]
pub struct Kleisli<'a> {
    pub model: &'a Model,
    pub oracle: EqualityStrategy,
}

impl<'a> Kleisli<'a> {
    pub fn new(model: &'a Model) -> Kleisli<'a> {
        Kleisli {
            model,
            oracle: oracle_strategy(),
        }
    }
}

impl DifferenceCategory for Kleisli<'_> {
    type Map = KleisliMap;

    fn name(&self) -> String {
        format!("kleisli({})", self.model.name())
    }

    fn label(&self, f: &KleisliMap) -> String {
        f.label()
    }

    fn dom(&self, f: &KleisliMap) -> Space {
        f.dom().clone()
    }

    fn cod(&self, f: &KleisliMap) -> Space {
        f.cod().clone()
    }

    fn identity(&self, a: &Space) -> KleisliMap {
        kleisli_identity(a)
    }

    fn proj0(&self, a: &Space, b: &Space) -> KleisliMap {
        KleisliMap::lift(&morphism::proj0(a, b))
    }

    fn proj1(&self, a: &Space, b: &Space) -> KleisliMap {
        KleisliMap::lift(&morphism::proj1(a, b))
    }

    fn zero(&self, dom: &Space, cod: &Space) -> KleisliMap {
        KleisliMap::lift(&morphism::zero(dom, cod))
    }

    fn compose(&self, g: &KleisliMap, f: &KleisliMap) -> Result<KleisliMap> {
        kleisli_compose_with(self.model, g, f, &self.oracle)
    }

    fn pair(&self, f: &KleisliMap, g: &KleisliMap) -> Result<KleisliMap> {
        kleisli_pair(f, g)
    }

    fn add(&self, f: &KleisliMap, g: &KleisliMap) -> Result<KleisliMap> {
        kleisli_add(f, g)
    }

    fn epsilon(&self, f: &KleisliMap) -> KleisliMap {
        kleisli_epsilon(self.model, f)
    }

    fn derivative(&self, f: &KleisliMap) -> Result<KleisliMap> {
        kleisli_derivative(self.model, f)
    }

    fn point_space(&self, a: &Space) -> Space {
        a.square()
    }

    fn point(&self, selector: Morphism) -> KleisliMap {
        KleisliMap::from_morphism(&selector).expect("selectors land in a tangent space")
    }

    fn equal(&self, f: &KleisliMap, g: &KleisliMap, strategy: &EqualityStrategy) -> Result<EqualityReport> {
        morphisms_equal(&f.as_morphism(), &g.as_morphism(), strategy)
    }
}

/// Runs `axioms` in the Kleisli category for every subject. The smooth model
/// always includes additivity of the derivative.
pub fn check_kleisli_cdc(
    model: &Model,
    subjects: &[KleisliMap],
    axioms: &[AxiomId],
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    let cat = Kleisli::new(model);
    let mut axioms = axioms.to_vec();
    if model.tag() == &ModelTag::Smooth && !axioms.contains(&AxiomId::Additivity) {
        axioms.push(AxiomId::Additivity);
    }
    let mut out = Vec::new();
    for i in 0..subjects.len() {
        let rotated: Vec<KleisliMap> = subjects[i..].iter().chain(&subjects[..i]).cloned().collect();
        for &axiom in &axioms {
            if axiom.uses_subject() || i == 0 {
                out.push(check_in(&cat, axiom, &rotated, &strategy.fork(i as u64))?);
            }
        }
    }
    Ok(out)
}

/// Random Kleisli endomaps built from pairs of random base subjects.
pub fn random_kleisli(model: &Model, space: &Space, count: usize, seed: u64) -> Result<Vec<KleisliMap>> {
    let maps = random_subjects(model, space, 2 * count, seed)?;
    maps.chunks(2)
        .map(|pair| KleisliMap::new(pair[0].clone(), pair[1].clone()))
        .collect()
}


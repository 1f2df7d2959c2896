//! Linear algebras of the tangent monad.

use crate::element::{self, Element};
use crate::equality::{holds_everywhere, morphisms_equal, Counterexample, EqualityReport, EqualityStrategy};
use crate::error::{Error, Result};
use crate::kernel::{is_additive, is_linear, law_report, Model, ModelTag};
use crate::morphism::{self, Morphism};
use crate::report::LawReport;
use crate::space::Space;
use crate::tangent::monad::{multiplication, tangent_map, tangent_space, unit};

/// A carrier `A` with a structure map `T(A) -> A`.
#[derive(Clone, Debug)]
pub struct AlgebraCandidate {
    pub carrier: Space,
    pub structure: Morphism,
}

impl AlgebraCandidate {
    pub fn new(carrier: Space, structure: Morphism) -> Result<AlgebraCandidate> {
        if structure.dom() != &tangent_space(&carrier) || structure.cod() != &carrier {
            return Err(Error::ShapeMismatch(format!(
                "structure map must be T({carrier}) -> {carrier}"
            )));
        }
        Ok(AlgebraCandidate { carrier, structure })
    }

    /// The free algebra `(T(A), mu)`.
    pub fn free(model: &Model, space: &Space) -> AlgebraCandidate {
        AlgebraCandidate {
            carrier: tangent_space(space),
            structure: multiplication(model, space),
        }
    }

    /// `nu(x, y) = x + e(y)` for an endomap `e`.
    pub fn from_endomap(space: &Space, e: &Morphism) -> Result<AlgebraCandidate> {
        let first = morphism::proj0(space, space);
        let moved = morphism::compose(e, &morphism::proj1(space, space))?;
        let nu = morphism::add(&first, &moved)?.named(format!("x + {}(y)", e.label()));
        AlgebraCandidate::new(space.clone(), nu)
    }
}

/// Unit law, associativity law and linearity of the structure map.
pub fn check_linear_algebra(
    model: &Model,
    candidate: &AlgebraCandidate,
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    let a = &candidate.carrier;
    let nu = &candidate.structure;
    let subject = nu.label().to_string();
    let unit_law = morphisms_equal(&morphism::compose(nu, &unit(a))?, &morphism::identity(a), strategy)?;
    let assoc = morphisms_equal(
        &morphism::compose(nu, &tangent_map(model, nu)?)?,
        &morphism::compose(nu, &multiplication(model, a))?,
        strategy,
    )?;
    let linear = is_linear(model, nu, strategy)?;
    let name = model.name();
    Ok(vec![
        law_report("Alg.unit", &name, subject.clone(), strategy, unit_law),
        law_report("Alg.assoc", &name, subject.clone(), strategy, assoc),
        law_report("Alg.linear", &name, subject, strategy, linear),
    ])
}

/// In the finite-difference model: `e(y) = nu(0, y)`, whether `e` is a
/// homomorphism, and whether `nu(x, y) = x + e(y)` everywhere.
pub fn findiff_decomposition(
    model: &Model,
    candidate: &AlgebraCandidate,
    strategy: &EqualityStrategy,
) -> Result<(Morphism, EqualityReport, EqualityReport)> {
    if model.tag() != &ModelTag::FinDiff {
        return Err(Error::ModelRestriction(
            "the decomposition is specific to the finite-difference model".into(),
        ));
    }
    let a = candidate.carrier.clone();
    let nu = candidate.structure.clone();
    let zero = a.zero();
    let inner = nu.clone();
    let e = Morphism::new(a.clone(), a.clone(), "e", move |y| inner.eval(&Element::pair(&zero, y)));
    let homomorphism = is_additive(&e, strategy)?;
    let leaves = a.layout().leaves;
    let pairs = a.square();
    let w = a.width();
    let decomposition = holds_everywhere(&pairs, strategy, |p| {
        let (x, y) = p.split(w);
        let lhs = nu.eval(p);
        let rhs = element::add(&leaves, &x, &e.eval(&y));
        (!element::close(&lhs, &rhs, strategy.abs_tol, strategy.rel_tol)).then(|| Counterexample {
            point: element::format(&pairs, p),
            lhs: element::format(&a, &lhs),
            rhs: element::format(&a, &rhs),
        })
    })?;
    Ok((e, homomorphism, decomposition))
}

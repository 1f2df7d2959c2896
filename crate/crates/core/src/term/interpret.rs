//! Interpretation of typed terms as morphisms of a model.

use crate::error::{Error, Result};
use crate::models::Registry;
use crate::morphism::{self, Morphism};
use crate::space::Space;
use crate::term::syntax::Term;
use crate::term::types::{annotate, TypedTerm};

fn factors(space: &Space) -> Result<(&Space, &Space)> {
    space
        .factors()
        .ok_or_else(|| Error::ShapeMismatch(format!("{space} is not a product")))
}

fn build(typed: &TypedTerm, registry: &Registry) -> Result<Morphism> {
    let model = registry.model();
    let child = |i: usize| build(&typed.children[i], registry);
    let out = match &typed.node {
        Term::Id => morphism::identity(&typed.dom),
        Term::Pi0 => {
            let (a, b) = factors(&typed.dom)?;
            morphism::proj0(a, b)
        }
        Term::Pi1 => {
            let (a, b) = factors(&typed.dom)?;
            morphism::proj1(a, b)
        }
        Term::Zero => morphism::zero(&typed.dom, &typed.cod),
        Term::One => morphism::terminal(&typed.dom),
        Term::Prim(name) => registry.get(name)?.clone(),
        Term::Comp(..) => morphism::compose(&child(0)?, &child(1)?)?,
        Term::Pair(..) => morphism::pair(&child(0)?, &child(1)?)?,
        Term::Add(..) => morphism::add(&child(0)?, &child(1)?)?,
        Term::Eps(_) => model.epsilon(&child(0)?),
        Term::D(_) => model.derivative(&child(0)?)?,
    };
    Ok(out.named(typed.node.to_string()))
}

/// The morphism denoted by `term` in the registry's model, at its inferred type.
pub fn interpret(term: &Term, registry: &Registry) -> Result<Morphism> {
    interpret_at(term, registry, None, None)
}

/// As [`interpret`], with the root's domain and codomain optionally fixed.
pub fn interpret_at(term: &Term, registry: &Registry, dom: Option<&Space>, cod: Option<&Space>) -> Result<Morphism> {
    let typed = annotate(term, registry, dom, cod)?;
    build(&typed, registry)
}

//! Named primitive maps per model, the leaves of the term language.

use std::sync::Arc;

use crate::element::Scalar;
use crate::equality::EqualityStrategy;
use crate::error::{Error, Result};
use crate::kernel::{Model, ModelTag};
use crate::models::smooth::{self, Expr};
use crate::models::{module, streams};
use crate::morphism::{self, Morphism};
use crate::space::{Leaf, Space};

/// The primitives available over one base space in one model.
#[derive(Clone, Debug)]
pub struct Registry {
    model: Model,
    base: Space,
    entries: Vec<(String, Morphism)>,
}

fn int_leafwise(space: &Space, name: &str, op: fn(i64) -> Option<i64>) -> Morphism {
    let leaves: Arc<[Leaf]> = space.layout().leaves;
    Morphism::new(space.clone(), space.clone(), name, move |x| {
        x.scalars()
            .iter()
            .zip(leaves.iter())
            .map(|(s, leaf)| reduce(*leaf, op(s.as_int().expect("integer leaf"))))
            .collect()
    })
}

fn int_leafwise2(space: &Space, name: &str, op: fn(i64, i64) -> Option<i64>) -> Morphism {
    let leaves: Arc<[Leaf]> = space.layout().leaves;
    let w = leaves.len();
    Morphism::new(space.square(), space.clone(), name, move |x| {
        let (a, b) = x.scalars().split_at(w);
        a.iter()
            .zip(b)
            .zip(leaves.iter())
            .map(|((u, v), leaf)| reduce(*leaf, op(u.as_int().unwrap(), v.as_int().unwrap())))
            .collect()
    })
}

pub(crate) fn reduce(leaf: Leaf, value: Option<i64>) -> Scalar {
    let v = value.unwrap_or_else(|| panic!("integer overflow in {leaf:?}"));
    match leaf {
        Leaf::Cyclic(n) => Scalar::Int(v.rem_euclid(n as i64)),
        _ => Scalar::Int(v),
    }
}

fn square(v: i64) -> Option<i64> {
    v.checked_mul(v)
}

fn cube(v: i64) -> Option<i64> {
    v.checked_mul(v)?.checked_mul(v)
}

fn integer_primitives(base: &Space) -> Vec<(&'static str, Morphism)> {
    vec![
        ("sq", int_leafwise(base, "sq", square)),
        ("cube", int_leafwise(base, "cube", cube)),
        ("inc", int_leafwise(base, "inc", |v| v.checked_add(1))),
        ("dbl", int_leafwise(base, "dbl", |v| v.checked_mul(2))),
        ("neg", int_leafwise(base, "neg", |v| v.checked_neg())),
        ("mul", int_leafwise2(base, "mul", |a, b| a.checked_mul(b))),
        ("plus", int_leafwise2(base, "plus", |a, b| a.checked_add(b))),
    ]
}

fn smooth_primitives(dim: usize) -> Vec<(&'static str, Morphism)> {
    let x = || Expr::var(0);
    vec![
        ("sq", smooth::coordinatewise(dim, Expr::mul(x(), x()), "sq")),
        (
            "cube",
            smooth::coordinatewise(dim, Expr::mul(x(), Expr::mul(x(), x())), "cube"),
        ),
        ("sin", smooth::coordinatewise(dim, Expr::sin(x()), "sin")),
        ("cos", smooth::coordinatewise(dim, Expr::cos(x()), "cos")),
        ("exp", smooth::coordinatewise(dim, Expr::exp(x()), "exp")),
        (
            "inc",
            smooth::coordinatewise(dim, Expr::add(x(), Expr::Const(1.0)), "inc"),
        ),
        (
            "dbl",
            smooth::coordinatewise(dim, Expr::mul(Expr::Const(2.0), x()), "dbl"),
        ),
        ("neg", smooth::coordinatewise(dim, Expr::neg(x()), "neg")),
        (
            "mul",
            smooth::coordinatewise2(dim, Expr::mul(Expr::var(0), Expr::var(1)), "mul"),
        ),
        (
            "plus",
            smooth::coordinatewise2(dim, Expr::add(Expr::var(0), Expr::var(1)), "plus"),
        ),
    ]
}

fn module_primitives(base: &Space) -> Vec<(&'static str, Morphism)> {
    let id = morphism::identity(base);
    vec![
        ("dbl", morphism::scale(2, &id).named("dbl")),
        ("trip", morphism::scale(3, &id).named("trip")),
        ("neg", morphism::neg(&id).named("neg")),
        (
            "plus",
            morphism::add(&morphism::proj0(base, base), &morphism::proj1(base, base))
                .expect("same shape")
                .named("plus"),
        ),
        (
            "diag",
            morphism::pair(&id, &id).expect("same domain").named("diag"),
        ),
    ]
}

fn stream_primitives(stream: &Space) -> Result<Vec<(&'static str, Morphism)>> {
    let Space::Stream { base, .. } = stream else {
        return Err(Error::ModelRestriction(format!(
            "stream primitives need a stream base, found {stream}"
        )));
    };
    let scalar: Vec<(&'static str, Morphism)> = integer_primitives(base);
    let mut out = Vec::new();
    for (name, f) in scalar {
        let lifted = if f.dom() == &**base {
            streams::pointwise(stream, &f, name)?
        } else {
            streams::pointwise2(stream, &f, name)?
        };
        if name != "cube" {
            out.push((name, lifted));
        }
    }
    out.push(("delay", streams::delay(stream)?));
    out.push(("psum", streams::prefix_sum(stream)?));
    out.push(("trunc", streams::truncation(stream)));
    Ok(out)
}

impl Registry {
    pub fn empty(model: &Model, base: &Space) -> Result<Registry> {
        model.check_space(base)?;
        Ok(Registry {
            model: model.clone(),
            base: base.clone(),
            entries: Vec::new(),
        })
    }

    pub fn builtin(model: &Model, base: &Space) -> Result<Registry> {
        let mut registry = Registry::empty(model, base)?;
        let prims = match model.tag() {
            ModelTag::FinDiff => integer_primitives(base),
            ModelTag::Smooth => match base {
                Space::Real(d) => smooth_primitives(*d),
                other => {
                    return Err(Error::ModelRestriction(format!(
                        "smooth primitives need a real base, found {other}"
                    )))
                }
            },
            ModelTag::ModuleMaps { .. } => module_primitives(base),
            ModelTag::Streams { .. } => stream_primitives(base)?,
        };
        for (name, f) in prims {
            registry.register(name, f)?;
        }
        Ok(registry)
    }

    /// Adds a primitive after the model-specific admission check.
    pub fn register(&mut self, name: &str, f: Morphism) -> Result<()> {
        self.model.check_space(f.dom())?;
        self.model.check_space(f.cod())?;
        match self.model.tag() {
            ModelTag::ModuleMaps { .. } => module::check_additive(&f)?,
            ModelTag::Streams { .. } => {
                streams::causality_check(&f, &EqualityStrategy::sampled(32, 0x0CA05A1))?
            }
            _ => {}
        }
        let f = f.named(name).in_model(self.model.tag().clone());
        self.entries.retain(|(n, _)| n != name);
        self.entries.push((name.to_string(), f));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Morphism> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::UnknownPrimitive(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Morphism)> {
        self.entries.iter().map(|(n, f)| (n.as_str(), f))
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn base(&self) -> &Space {
        &self.base
    }
}

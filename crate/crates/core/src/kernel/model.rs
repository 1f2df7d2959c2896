use crate::change_action::ChangeAction;
use crate::error::{Error, Result};
use crate::kernel::ModelTag;
use crate::models::{findiff, module, primitives, smooth, streams};
use crate::morphism::{self, Morphism};
use crate::space::{Leaf, Space};

/// A concrete difference category: an infinitesimal extension and a difference operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    tag: ModelTag,
}

impl From<ModelTag> for Model {
    fn from(tag: ModelTag) -> Model {
        Model { tag }
    }
}

impl Model {
    pub fn new(tag: ModelTag) -> Model {
        Model { tag }
    }

    pub fn findiff() -> Model {
        Model::new(ModelTag::FinDiff)
    }

    pub fn smooth() -> Model {
        Model::new(ModelTag::Smooth)
    }

    pub fn module(r: i64) -> Model {
        Model::new(ModelTag::ModuleMaps { r })
    }

    pub fn streams(k: usize) -> Model {
        Model::new(ModelTag::Streams { k })
    }

    pub fn tag(&self) -> &ModelTag {
        &self.tag
    }

    pub fn name(&self) -> String {
        self.tag.to_string()
    }

    /// Whether `space` is an object of this model.
    pub fn supports(&self, space: &Space) -> bool {
        if space.validate().is_err() {
            return false;
        }
        let leaves = space.leaves();
        let has_real = leaves.contains(&Leaf::Real);
        match &self.tag {
            ModelTag::FinDiff | ModelTag::ModuleMaps { .. } => !has_real,
            ModelTag::Smooth => {
                leaves.iter().all(|l| *l == Leaf::Real) && !contains_tables(space)
            }
            ModelTag::Streams { k } => !has_real && streams::is_stream_shaped(space, *k),
        }
    }

    pub fn check_space(&self, space: &Space) -> Result<()> {
        if self.supports(space) {
            Ok(())
        } else {
            Err(Error::ModelRestriction(format!(
                "{space} is not an object of {}",
                self.tag
            )))
        }
    }

    fn check_morphism(&self, f: &Morphism) -> Result<()> {
        if let Some(tag) = f.model() {
            if tag != &self.tag {
                return Err(Error::ModelRestriction(format!(
                    "`{}` belongs to {tag}, not {}",
                    f.label(),
                    self.tag
                )));
            }
        }
        self.check_space(f.dom())?;
        self.check_space(f.cod())
    }

    /// The infinitesimal extension of the identity on `space`.
    pub fn epsilon_space(&self, space: &Space) -> Morphism {
        let id = morphism::identity(space);
        self.epsilon(&id).named("eps")
    }

    /// The infinitesimal extension of `f`, computed as `eps_B . f`.
    pub fn epsilon(&self, f: &Morphism) -> Morphism {
        let out = match &self.tag {
            ModelTag::FinDiff => f.clone(),
            ModelTag::Smooth => morphism::zero(f.dom(), f.cod()),
            ModelTag::ModuleMaps { r } => morphism::scale(*r, f),
            ModelTag::Streams { .. } => streams::truncate_after(f),
        };
        let out = out.named(format!("(eps {})", f.label()));
        match f.model() {
            Some(tag) => out.in_model(tag.clone()),
            None => out,
        }
    }

    /// The difference operator `d[f]: A x A -> B`.
    pub fn derivative(&self, f: &Morphism) -> Result<Morphism> {
        self.check_morphism(f)?;
        let out = match &self.tag {
            ModelTag::FinDiff => findiff::derivative(f),
            ModelTag::Smooth => smooth::derivative(f),
            ModelTag::ModuleMaps { .. } => module::derivative(f)?,
            ModelTag::Streams { .. } => streams::derivative(f),
        };
        let out = out.named(format!("(d {})", f.label()));
        Ok(match f.model() {
            Some(tag) => out.in_model(tag.clone()),
            None => out,
        })
    }

    /// The `n`-fold difference operator.
    pub fn derivative_n(&self, f: &Morphism, n: usize) -> Result<Morphism> {
        (0..n).try_fold(f.clone(), |acc, _| self.derivative(&acc))
    }

    /// The induced action `pi0 + eps(pi1): A x A -> A`.
    pub fn oplus(&self, space: &Space) -> Morphism {
        let p0 = morphism::proj0(space, space);
        let p1 = morphism::proj1(space, space);
        morphism::add(&p0, &self.epsilon(&p1))
            .expect("projections share a domain")
            .named("oplus")
    }

    /// The change action on `space` induced by the infinitesimal extension.
    pub fn change_action(&self, space: &Space) -> ChangeAction {
        let plus = morphism::add(
            &morphism::proj0(space, space),
            &morphism::proj1(space, space),
        )
        .expect("projections share a domain");
        ChangeAction::new(self.oplus(space), plus, space.zero()).expect("well-shaped")
    }

    /// The built-in primitives over `base`, keyed by name.
    pub fn primitives(&self, base: &Space) -> Result<primitives::Registry> {
        primitives::Registry::builtin(self, base)
    }
}

fn contains_tables(space: &Space) -> bool {
    match space {
        Space::Function { .. } => true,
        Space::Product(a, b) => contains_tables(a) || contains_tables(b),
        Space::Stream { base, .. } => contains_tables(base),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;

    #[test]
    fn restricts_spaces() {
        assert!(Model::findiff().supports(&Space::Cyclic(7)));
        assert!(!Model::findiff().supports(&Space::Real(1)));
        assert!(Model::smooth().supports(&Space::product(&Space::Real(2), &Space::Terminal)));
        assert!(Model::streams(4).supports(&"Stream(Z3,4)".parse().unwrap()));
        assert!(!Model::streams(4).supports(&"Stream(Z3,5)".parse().unwrap()));
        assert!(!Model::streams(4).supports(&Space::Cyclic(3)));
    }

    #[test]
    fn findiff_oplus_is_addition() {
        let z7 = Space::Cyclic(7);
        let op = Model::findiff().oplus(&z7);
        assert_eq!(op.eval(&Element::ints(&[5, 4])), Element::int(2));
    }
}

//! The symbolic derivative: pushes `d` down to the primitives.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::equality::{holds_everywhere, morphisms_equal, Counterexample, EqualityReport, EqualityStrategy};
use crate::error::Result;
use crate::models::Registry;
use crate::morphism::Morphism;
use crate::space::Space;
use crate::term::generate::TermGenerator;
use crate::term::interpret::interpret_at;
use crate::term::syntax::Term;
use crate::term::types::annotate;

/// `d[t]` for a term already in normal form.
fn derive_normal(t: &Term) -> Term {
    match t {
        Term::Id => Term::Pi1,
        Term::Pi0 => Term::comp(Term::Pi0, Term::Pi1),
        Term::Pi1 => Term::comp(Term::Pi1, Term::Pi1),
        Term::Zero => Term::Zero,
        Term::One => Term::One,
        Term::Prim(_) | Term::D(_) => Term::d(t.clone()),
        Term::Comp(g, f) => Term::comp(
            derive_normal(g),
            Term::pair(Term::comp((**f).clone(), Term::Pi0), derive_normal(f)),
        ),
        Term::Pair(f, g) => Term::pair(derive_normal(f), derive_normal(g)),
        Term::Add(f, g) => Term::add(derive_normal(f), derive_normal(g)),
        Term::Eps(f) => Term::eps(derive_normal(f)),
    }
}

/// Rewrites every `d` node so that it only applies to primitives.
pub fn normalize(t: &Term) -> Term {
    match t {
        Term::D(inner) => derive_normal(&normalize(inner)),
        Term::Comp(g, f) => Term::comp(normalize(g), normalize(f)),
        Term::Pair(f, g) => Term::pair(normalize(f), normalize(g)),
        Term::Add(f, g) => Term::add(normalize(f), normalize(g)),
        Term::Eps(f) => Term::eps(normalize(f)),
        leaf => leaf.clone(),
    }
}

/// A normal-form term equal to `d[t]`.
pub fn symbolic_derive(t: &Term) -> Term {
    derive_normal(&normalize(t))
}

/// The `order`-fold symbolic derivative.
pub fn derive_n(t: &Term, order: usize) -> Term {
    (0..order).fold(normalize(t), |acc, _| derive_normal(&acc))
}

/// Compares the model's derivative of `t` with the interpretation of its
/// symbolic derivative, both typed at `A x A -> C` for `t: A -> C`.
pub fn check_symbolic_derivative(
    t: &Term,
    registry: &Registry,
    dom: Option<&Space>,
    cod: Option<&Space>,
    strategy: &EqualityStrategy,
) -> Result<EqualityReport> {
    let typed = annotate(t, registry, dom, cod)?;
    let dom = Space::product(&typed.dom, &typed.dom);
    let direct = interpret_at(&Term::d(t.clone()), registry, Some(&dom), Some(&typed.cod))?;
    let rewritten = interpret_at(&symbolic_derive(t), registry, Some(&dom), Some(&typed.cod))?;
    morphisms_equal(&direct, &rewritten, strategy)
}

fn finite(x: &Element) -> bool {
    x.scalars().iter().all(|s| s.as_real().is_none_or(f64::is_finite))
}

fn finite_on(maps: [&Morphism; 2], strategy: &EqualityStrategy) -> Result<bool> {
    let report = holds_everywhere(maps[0].dom(), strategy, |x| {
        if maps.iter().all(|f| finite(&f.eval(x))) {
            None
        } else {
            Some(Counterexample {
                point: crate::element::format(maps[0].dom(), x),
                lhs: String::new(),
                rhs: String::new(),
            })
        }
    })?;
    Ok(report.holds())
}

/// The outcome of comparing symbolic and semantic derivatives on random terms.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub terms: usize,
    /// Generated terms discarded because they produced non-finite values.
    pub rejected: usize,
    pub checked: u64,
    pub violations: u64,
    pub failing_term: Option<String>,
    pub counterexample: Option<Counterexample>,
}

impl OracleSummary {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `count` random terms of depth at most `depth` over the registry.
pub fn rewriter_oracle(
    registry: &Registry,
    count: usize,
    depth: usize,
    seed: u64,
    strategy: &EqualityStrategy,
) -> Result<OracleSummary> {
    let generator = TermGenerator::new(registry);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = registry.base();
    let mut summary = OracleSummary::default();
    while summary.terms < count {
        let (t, dom, cod) = generator.random(&mut rng, depth);
        let (dom, cod) = (dom.space(base), cod.space(base));
        let square = dom.square();
        let direct = interpret_at(&Term::d(t.clone()), registry, Some(&square), Some(&cod))?;
        let rewritten = interpret_at(&symbolic_derive(&t), registry, Some(&square), Some(&cod))?;
        let point_strategy = strategy.fork(summary.terms as u64);
        if !finite_on([&direct, &rewritten], &point_strategy)? {
            summary.rejected += 1;
            continue;
        }
        let report = morphisms_equal(&direct, &rewritten, &point_strategy)?;
        summary.terms += 1;
        summary.checked += report.checked;
        summary.violations += report.violations;
        if summary.counterexample.is_none() && report.counterexample.is_some() {
            summary.failing_term = Some(t.to_string());
            summary.counterexample = report.counterexample;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Model;
    use crate::term::syntax::parse;

    #[test]
    fn chain_rule_shape() {
        let t = parse("(comp (prim sq) (prim inc))").unwrap();
        assert_eq!(
            symbolic_derive(&t).to_string(),
            "(comp (d (prim sq)) (pair (comp (prim inc) pi0) (d (prim inc))))"
        );
        assert!(symbolic_derive(&t).is_normal());
    }

    #[test]
    fn nested_derivatives_are_pushed_down() {
        let t = parse("(d (pair id (d (prim sq))))").unwrap();
        let n = normalize(&t);
        assert!(n.is_normal());
        assert_eq!(n.to_string(), "(pair pi1 (d (d (prim sq))))");
        assert_eq!(derive_n(&parse("(prim sq)").unwrap(), 2).to_string(), "(d (d (prim sq)))");
    }

    #[test]
    fn rewritten_square_matches_on_z7() {
        let reg = Registry::builtin(&Model::findiff(), &Space::Cyclic(7)).unwrap();
        let t = parse("(comp (prim mul) (pair (prim sq) (eps id)))").unwrap();
        let r = check_symbolic_derivative(&t, &reg, None, None, &EqualityStrategy::exhaustive()).unwrap();
        assert_eq!((r.checked, r.violations), (49, 0));
    }
}

//! Linearity, vanishing and flatness predicates.

use crate::element;
use crate::equality::{holds_everywhere, morphisms_equal, Counterexample, EqualityReport, EqualityStrategy};
use crate::error::Result;
use crate::kernel::axioms::{check_axiom, AxiomId};
use crate::kernel::Model;
use crate::morphism::{self, Morphism};
use crate::report::LawReport;
use crate::space::Space;

/// `d[f] = f . pi1`
pub fn is_linear(model: &Model, f: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    let df = model.derivative(f)?;
    let second = morphism::compose(f, &morphism::proj1(f.dom(), f.dom()))?;
    morphisms_equal(&df, &second, strategy)
}

/// Linearity of `eps(f)`.
pub fn is_epsilon_linear(model: &Model, f: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    is_linear(model, &model.epsilon(f), strategy)
}

/// `eps(1_A) = 0`
pub fn is_epsilon_vanishing(model: &Model, space: &Space, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    morphisms_equal(&model.epsilon_space(space), &morphism::zero(space, space), strategy)
}

/// `f(x + y) = f(x) + f(y)` and `f(0) = 0`.
pub fn is_additive(f: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    let dom = f.dom();
    let w = dom.width();
    let (dl, cl) = (dom.layout().leaves, f.cod().layout().leaves);
    let pairs = dom.square();
    let zero_in = dom.zero();
    let zero_out = f.cod().zero();
    let mut report = holds_everywhere(&pairs, strategy, |p| {
        let (x, y) = p.split(w);
        let lhs = f.eval(&element::add(&dl, &x, &y));
        let rhs = element::add(&cl, &f.eval(&x), &f.eval(&y));
        (!element::close(&lhs, &rhs, strategy.abs_tol, strategy.rel_tol)).then(|| Counterexample {
            point: element::format(&pairs, p),
            lhs: element::format(f.cod(), &lhs),
            rhs: element::format(f.cod(), &rhs),
        })
    })?;
    let at_zero = f.eval(&zero_in);
    report.checked += 1;
    if !element::close(&at_zero, &zero_out, strategy.abs_tol, strategy.rel_tol) {
        report.violations += 1;
        report.counterexample.get_or_insert(Counterexample {
            point: element::format(dom, &zero_in),
            lhs: element::format(f.cod(), &at_zero),
            rhs: element::format(f.cod(), &zero_out),
        });
    }
    Ok(report)
}

/// The four flatness conditions on `space`.
///
/// The third condition quantifies over maps and is checked on `primitives`;
/// without primitives the identity stands in.
pub fn check_flatness(
    model: &Model,
    space: &Space,
    primitives: &[Morphism],
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    let id = morphism::identity(space);
    let mut out = Vec::new();
    for axiom in [AxiomId::F1, AxiomId::F2, AxiomId::F4] {
        out.push(check_axiom(model, axiom, std::slice::from_ref(&id), strategy)?);
    }
    let subjects: Vec<Morphism> = if primitives.is_empty() {
        vec![id]
    } else {
        primitives.to_vec()
    };
    for f in &subjects {
        out.push(check_axiom(model, AxiomId::F3, std::slice::from_ref(f), strategy)?);
    }
    out.sort_by_key(|r| r.axiom.clone());
    Ok(out)
}

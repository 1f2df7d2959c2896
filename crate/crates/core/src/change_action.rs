//! Change actions and derivatives between them.
//!
//! A change action on a space `A` is a monoid of changes `D` together with an
//! action `A x D -> A`. A derivative of `f: A -> B` sends a base point and a
//! change on `A` to a change on `B` compatible with the two actions.

use crate::element::{self, Element};
use crate::equality::{holds_everywhere, Counterexample, EqualityReport, EqualityStrategy};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::space::Space;

#[derive(Clone, Debug)]
pub struct ChangeAction {
    pub base: Space,
    pub delta: Space,
    /// `base x delta -> base`
    pub action: Morphism,
    /// `delta x delta -> delta`
    pub plus: Morphism,
    pub zero: Element,
}

impl ChangeAction {
    pub fn new(action: Morphism, plus: Morphism, zero: Element) -> Result<ChangeAction> {
        let (base, delta) = action
            .dom()
            .factors()
            .map(|(a, d)| (a.clone(), d.clone()))
            .ok_or_else(|| Error::ShapeMismatch("action must take a pair".into()))?;
        if action.cod() != &base {
            return Err(Error::ShapeMismatch("action must land in the base".into()));
        }
        if plus.dom() != &delta.square() || plus.cod() != &delta {
            return Err(Error::ShapeMismatch("plus must be a binary operation on changes".into()));
        }
        if !delta.contains(&zero) {
            return Err(Error::ShapeMismatch("zero change is not a change".into()));
        }
        Ok(ChangeAction {
            base,
            delta,
            action,
            plus,
            zero,
        })
    }

    pub fn act(&self, x: &Element, d: &Element) -> Element {
        self.action.eval(&Element::pair(x, d))
    }

    pub fn combine(&self, d: &Element, e: &Element) -> Element {
        self.plus.eval(&Element::pair(d, e))
    }
}

fn cube(space: &Space, n: usize) -> Space {
    (1..n).fold(space.clone(), |acc, _| Space::product(space, &acc))
}

fn unpack(x: &Element, width: usize, n: usize) -> Vec<Element> {
    (0..n).map(|i| x.slice(i * width..(i + 1) * width)).collect()
}

fn compare(
    space: &Space,
    strategy: &EqualityStrategy,
    point_space: &Space,
    point: &Element,
    lhs: &Element,
    rhs: &Element,
) -> Option<Counterexample> {
    if element::close(lhs, rhs, strategy.abs_tol, strategy.rel_tol) {
        None
    } else {
        Some(Counterexample {
            point: element::format(point_space, point),
            lhs: element::format(space, lhs),
            rhs: element::format(space, rhs),
        })
    }
}

/// Monoid laws for changes, then the two action laws.
pub fn check_change_action(
    ca: &ChangeAction,
    strategy: &EqualityStrategy,
) -> Result<(EqualityReport, EqualityReport)> {
    let d = &ca.delta;
    let w = d.width();
    let triples = cube(d, 3);
    let monoid = holds_everywhere(&triples, strategy, |p| {
        let v = unpack(p, w, 3);
        let assoc_l = ca.combine(&ca.combine(&v[0], &v[1]), &v[2]);
        let assoc_r = ca.combine(&v[0], &ca.combine(&v[1], &v[2]));
        compare(d, strategy, &triples, p, &assoc_l, &assoc_r)
            .or_else(|| compare(d, strategy, &triples, p, &ca.combine(&v[0], &ca.zero), &v[0]))
            .or_else(|| compare(d, strategy, &triples, p, &ca.combine(&ca.zero, &v[0]), &v[0]))
    })?;

    let points = Space::product(&ca.base, &d.square());
    let (wa, base) = (ca.base.width(), &ca.base);
    let action = holds_everywhere(&points, strategy, |p| {
        let x = p.slice(0..wa);
        let y = p.slice(wa..wa + w);
        let z = p.slice(wa + w..wa + 2 * w);
        let unit = compare(base, strategy, &points, p, &ca.act(&x, &ca.zero), &x);
        unit.or_else(|| {
            let lhs = ca.act(&x, &ca.combine(&y, &z));
            let rhs = ca.act(&ca.act(&x, &y), &z);
            compare(base, strategy, &points, p, &lhs, &rhs)
        })
    })?;
    Ok((monoid, action))
}

/// The derivative condition and the regularity conditions for `df` as a derivative of `f`.
pub fn check_cad_derivative(
    source: &ChangeAction,
    target: &ChangeAction,
    f: &Morphism,
    df: &Morphism,
    strategy: &EqualityStrategy,
) -> Result<(EqualityReport, EqualityReport)> {
    let (a, d) = (&source.base, &source.delta);
    let (wa, wd) = (a.width(), d.width());
    let eb = &target.delta;
    let pairs = Space::product(a, d);
    let derivative = holds_everywhere(&pairs, strategy, |p| {
        let (x, y) = p.split(wa);
        let lhs = f.eval(&source.act(&x, &y));
        let rhs = target.act(&f.eval(&x), &df.eval(p));
        compare(&target.base, strategy, &pairs, p, &lhs, &rhs)
    })?;
    let triples = Space::product(a, &d.square());
    let regular = holds_everywhere(&triples, strategy, |p| {
        let x = p.slice(0..wa);
        let y = p.slice(wa..wa + wd);
        let z = p.slice(wa + wd..wa + 2 * wd);
        let at = |base: &Element, change: &Element| df.eval(&Element::pair(base, change));
        let lhs = at(&x, &source.combine(&y, &z));
        let rhs = target.combine(&at(&x, &y), &at(&source.act(&x, &y), &z));
        compare(eb, strategy, &triples, p, &lhs, &rhs)
            .or_else(|| compare(eb, strategy, &triples, p, &at(&x, &source.zero), &target.zero))
    })?;
    Ok((derivative, regular))
}

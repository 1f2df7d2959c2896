//! Typed maps between spaces and the model-independent combinators.

use std::fmt;
use std::sync::Arc;

use crate::element::{self, Element};
use crate::error::{Error, Result};
use crate::kernel::ModelTag;
use crate::space::Space;

pub type EvalFn = dyn Fn(&Element) -> Element + Send + Sync;

/// A map `dom -> cod` evaluated on flat elements.
#[derive(Clone)]
pub struct Morphism {
    dom: Space,
    cod: Space,
    model: Option<ModelTag>,
    label: Arc<str>,
    eval: Arc<EvalFn>,
    /// Set when the map only copies input scalars: output scalar `i` is input scalar `picks[i]`.
    picks: Option<Arc<[usize]>>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.label, self.dom, self.cod)
    }
}

impl Morphism {
    pub fn new<F>(dom: Space, cod: Space, label: impl Into<Arc<str>>, eval: F) -> Morphism
    where
        F: Fn(&Element) -> Element + Send + Sync + 'static,
    {
        Morphism {
            dom,
            cod,
            model: None,
            label: label.into(),
            eval: Arc::new(eval),
            picks: None,
        }
    }

    /// A map that rearranges input scalars, with the given source index per output scalar.
    pub fn selector(dom: Space, cod: Space, label: impl Into<Arc<str>>, picks: Vec<usize>) -> Morphism {
        assert_eq!(picks.len(), cod.width(), "one pick per output scalar");
        assert!(picks.iter().all(|&i| i < dom.width()), "pick outside the domain");
        let picks: Arc<[usize]> = picks.into();
        let chosen = picks.clone();
        let mut out = Morphism::new(dom, cod, label, move |x| {
            let s = x.scalars();
            chosen.iter().map(|&i| s[i].clone()).collect()
        });
        out.picks = Some(picks);
        out
    }

    fn is_identity_selector(&self) -> bool {
        self.dom == self.cod
            && self
                .picks
                .as_ref()
                .is_some_and(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// Ties the map to a model; structural maps stay untagged and are valid everywhere.
    pub fn in_model(mut self, tag: ModelTag) -> Morphism {
        self.model = Some(tag);
        self
    }

    pub fn named(mut self, label: impl Into<Arc<str>>) -> Morphism {
        self.label = label.into();
        self
    }

    pub fn dom(&self) -> &Space {
        &self.dom
    }

    pub fn cod(&self) -> &Space {
        &self.cod
    }

    pub fn model(&self) -> Option<&ModelTag> {
        self.model.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluates without checking that `x` lies in the domain.
    #[inline]
    pub fn eval(&self, x: &Element) -> Element {
        (self.eval)(x)
    }

    /// Evaluates after checking that `x` lies in the domain.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !self.dom.contains(x) {
            return Err(Error::DomainMismatch {
                expected: self.dom.to_string(),
                found: format!("{x:?}"),
            });
        }
        Ok(self.eval(x))
    }

    fn tag_with(&self, other: &Morphism) -> Option<ModelTag> {
        self.model.clone().or_else(|| other.model.clone())
    }
}

fn expect_space(expected: &Space, found: &Space) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DomainMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

fn split_product(space: &Space) -> Result<(&Space, &Space)> {
    space.factors().ok_or_else(|| Error::DomainMismatch {
        expected: "a product space".into(),
        found: space.to_string(),
    })
}

pub fn identity(space: &Space) -> Morphism {
    let picks = (0..space.width()).collect();
    Morphism::selector(space.clone(), space.clone(), "id", picks)
}

/// The map picking out scalars `offset..offset + width(cod)` of `dom`.
pub fn slice(dom: &Space, cod: &Space, offset: usize, label: &str) -> Morphism {
    let end = offset + cod.width();
    assert!(end <= dom.width(), "slice outside the domain");
    Morphism::selector(dom.clone(), cod.clone(), label, (offset..end).collect())
}

pub fn proj0(a: &Space, b: &Space) -> Morphism {
    slice(&Space::product(a, b), a, 0, "pi0")
}

pub fn proj1(a: &Space, b: &Space) -> Morphism {
    slice(&Space::product(a, b), b, a.width(), "pi1")
}

/// First projection out of a product domain.
pub fn fst(dom: &Space) -> Result<Morphism> {
    let (a, b) = split_product(dom)?;
    Ok(proj0(a, b))
}

/// Second projection out of a product domain.
pub fn snd(dom: &Space) -> Result<Morphism> {
    let (a, b) = split_product(dom)?;
    Ok(proj1(a, b))
}

/// The unique map into the terminal space.
pub fn terminal(dom: &Space) -> Morphism {
    Morphism::new(dom.clone(), Space::Terminal, "one", |_| Element::unit())
}

pub fn zero(dom: &Space, cod: &Space) -> Morphism {
    let value = cod.zero();
    Morphism::new(dom.clone(), cod.clone(), "zero", move |_| value.clone())
}

pub fn constant(dom: &Space, cod: &Space, value: Element) -> Morphism {
    let label = format!("const {}", element::format(cod, &value));
    Morphism::new(dom.clone(), cod.clone(), label, move |_| value.clone())
}

/// `g . f`
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    expect_space(g.dom(), f.cod())?;
    let label = format!("(comp {} {})", g.label, f.label);
    let model = g.tag_with(f);
    if f.is_identity_selector() {
        let mut out = g.clone().named(label);
        out.model = model;
        return Ok(out);
    }
    if g.is_identity_selector() {
        let mut out = f.clone().named(label);
        out.model = model;
        return Ok(out);
    }
    let mut out = match (&g.picks, &f.picks) {
        (Some(gp), Some(fp)) => {
            let picks = gp.iter().map(|&i| fp[i]).collect();
            Morphism::selector(f.dom.clone(), g.cod.clone(), label, picks)
        }
        _ => {
            let (gf, ff) = (g.eval.clone(), f.eval.clone());
            Morphism::new(f.dom.clone(), g.cod.clone(), label, move |x| gf(&ff(x)))
        }
    };
    out.model = model;
    Ok(out)
}

/// `<f, g>`
pub fn pair(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    expect_space(f.dom(), g.dom())?;
    let label = format!("(pair {} {})", f.label, g.label);
    let cod = Space::product(&f.cod, &g.cod);
    let mut out = match (&f.picks, &g.picks) {
        (Some(fp), Some(gp)) => {
            let picks = fp.iter().chain(gp.iter()).copied().collect();
            Morphism::selector(f.dom.clone(), cod, label, picks)
        }
        _ => {
            let (ff, gf) = (f.eval.clone(), g.eval.clone());
            Morphism::new(f.dom.clone(), cod, label, move |x| Element::pair(&ff(x), &gf(x)))
        }
    };
    out.model = f.tag_with(g);
    Ok(out)
}

/// `f x g`
pub fn product(f: &Morphism, g: &Morphism) -> Morphism {
    let split = f.dom.width();
    let (ff, gf) = (f.eval.clone(), g.eval.clone());
    let mut out = Morphism::new(
        Space::product(&f.dom, &g.dom),
        Space::product(&f.cod, &g.cod),
        format!("(prod {} {})", f.label, g.label),
        move |x| {
            let (a, b) = x.split(split);
            Element::pair(&ff(&a), &gf(&b))
        },
    );
    out.model = f.tag_with(g);
    out
}

fn pointwise(
    f: &Morphism,
    g: &Morphism,
    name: &str,
    op: fn(&[crate::space::Leaf], &Element, &Element) -> Element,
) -> Result<Morphism> {
    expect_space(f.dom(), g.dom())?;
    expect_space(f.cod(), g.cod())?;
    let leaves = f.cod.layout().leaves;
    let (ff, gf) = (f.eval.clone(), g.eval.clone());
    let mut out = Morphism::new(
        f.dom.clone(),
        f.cod.clone(),
        format!("({name} {} {})", f.label, g.label),
        move |x| op(&leaves, &ff(x), &gf(x)),
    );
    out.model = f.tag_with(g);
    Ok(out)
}

/// Pointwise sum `f + g`.
pub fn add(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    pointwise(f, g, "add", element::add)
}

/// Pointwise difference `f - g`.
pub fn sub(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    pointwise(f, g, "sub", element::sub)
}

pub fn neg(f: &Morphism) -> Morphism {
    let leaves = f.cod.layout().leaves;
    let ff = f.eval.clone();
    let mut out = Morphism::new(
        f.dom.clone(),
        f.cod.clone(),
        format!("(neg {})", f.label),
        move |x| element::neg(&leaves, &ff(x)),
    );
    out.model = f.model.clone();
    out
}

/// Integer multiple `r * f`.
pub fn scale(r: i64, f: &Morphism) -> Morphism {
    let leaves = f.cod.layout().leaves;
    let ff = f.eval.clone();
    let mut out = Morphism::new(
        f.dom.clone(),
        f.cod.clone(),
        format!("(scale {r} {})", f.label),
        move |x| element::scale(&leaves, r, &ff(x)),
    );
    out.model = f.model.clone();
    out
}

/// `(A x B) x (C x D) -> (A x C) x (B x D)`, exchanging the middle coordinates.
pub fn middle_swap(a: &Space, b: &Space, c: &Space, d: &Space) -> Morphism {
    let (wa, wb, wc) = (a.width(), b.width(), c.width());
    let dom = Space::product(&Space::product(a, b), &Space::product(c, d));
    let cod = Space::product(&Space::product(a, c), &Space::product(b, d));
    Morphism::new(dom, cod, "swap", move |x| {
        let s = x.scalars();
        let (xa, rest) = s.split_at(wa);
        let (xb, rest) = rest.split_at(wb);
        let (xc, xd) = rest.split_at(wc);
        xa.iter()
            .chain(xc)
            .chain(xb)
            .chain(xd)
            .cloned()
            .collect()
    })
}

/// A finite map given by its values in the enumeration order of `dom`.
pub fn table(dom: &Space, cod: &Space, values: Vec<Element>) -> Result<Morphism> {
    let size = dom
        .size()
        .ok_or_else(|| Error::NotFinite(dom.to_string()))?;
    if values.len() as u128 != size {
        return Err(Error::ShapeMismatch(format!(
            "table for {dom} needs {size} entries, found {}",
            values.len()
        )));
    }
    if let Some(bad) = values.iter().find(|v| !cod.contains(v)) {
        return Err(Error::ShapeMismatch(format!("{bad:?} is not in {cod}")));
    }
    let leaves = dom.leaves();
    let values: Arc<[Element]> = values.into();
    let label = format!(
        "table[{}]",
        values
            .iter()
            .map(|v| element::format(cod, v))
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(Morphism::new(dom.clone(), cod.clone(), label, move |x| {
        let i = crate::space::index_in(&leaves, x.scalars()).expect("argument outside the table domain");
        values[i as usize].clone()
    }))
}

/// The values of a map on a finite domain, in enumeration order.
pub fn tabulate(f: &Morphism) -> Result<Vec<Element>> {
    Ok(f.dom().enumerate()?.map(|x| f.eval(&x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projections_and_pairs() {
        let z5 = Space::Cyclic(5);
        let p = pair(&proj1(&z5, &z5), &proj0(&z5, &z5)).unwrap();
        assert_eq!(p.eval(&Element::ints(&[1, 2])), Element::ints(&[2, 1]));
        assert!(compose(&p, &identity(&z5)).is_err());
    }

    #[test]
    fn sums_are_pointwise() {
        let z7 = Space::Cyclic(7);
        let id = identity(&z7);
        let twice = add(&id, &id).unwrap();
        assert_eq!(twice.eval(&Element::int(5)), Element::int(3));
        assert_eq!(sub(&twice, &id).unwrap().eval(&Element::int(5)), Element::int(5));
    }

    #[test]
    fn middle_swap_exchanges() {
        let z = Space::Cyclic(9);
        let s = middle_swap(&z, &z, &z, &z);
        assert_eq!(s.eval(&Element::ints(&[1, 2, 3, 4])), Element::ints(&[1, 3, 2, 4]));
    }

    #[test]
    fn tables_look_up_by_index() {
        let z3 = Space::Cyclic(3);
        let t = table(&z3, &z3, vec![Element::int(2), Element::int(0), Element::int(1)]).unwrap();
        assert_eq!(t.eval(&Element::int(1)), Element::int(0));
        assert_eq!(tabulate(&t).unwrap().len(), 3);
    }
}

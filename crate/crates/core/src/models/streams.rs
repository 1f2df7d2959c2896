//! Causal maps between finite stream prefixes.
//!
//! The infinitesimal extension is the truncation `z`, which zeroes the first
//! entry of every stream. The difference operator is computed indexwise: the
//! first entry is a plain finite difference and the later entries use the
//! truncated change.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{self, Element, Scalar};
use crate::equality::{holds_everywhere, mix, Counterexample, EqualityReport, EqualityStrategy};
use crate::error::{Error, Result};
use crate::kernel::{is_linear, DifferenceCategory, Model, ModelTag};
use crate::models::primitives::reduce;
use crate::morphism::{self, Morphism};
use crate::space::Space;

/// Whether `space` is built from streams of length `k` over finite-difference bases.
pub fn is_stream_shaped(space: &Space, k: usize) -> bool {
    match space {
        Space::Stream { base, len } => *len == k && is_plain_base(base),
        Space::Product(a, b) => is_stream_shaped(a, k) && is_stream_shaped(b, k),
        Space::Terminal => true,
        _ => false,
    }
}

fn is_plain_base(space: &Space) -> bool {
    match space {
        Space::Cyclic(_) | Space::BoundedInt { .. } | Space::Terminal => true,
        Space::Product(a, b) => is_plain_base(a) && is_plain_base(b),
        _ => false,
    }
}

fn head_mask(space: &Space) -> Arc<[bool]> {
    space
        .stream_indices()
        .into_iter()
        .map(|i| i == Some(0))
        .collect()
}

fn zero_heads(mask: &[bool], x: &Element) -> Element {
    x.scalars()
        .iter()
        .zip(mask)
        .map(|(s, &head)| if head { Scalar::Int(0) } else { s.clone() })
        .collect()
}

/// The truncation `z` on `space`.
pub fn truncation(space: &Space) -> Morphism {
    let mask = head_mask(space);
    Morphism::new(space.clone(), space.clone(), "z", move |x| zero_heads(&mask, x))
}

/// `z . f`
pub fn truncate_after(f: &Morphism) -> Morphism {
    let mask = head_mask(f.cod());
    let inner = f.clone();
    Morphism::new(f.dom().clone(), f.cod().clone(), "eps", move |x| {
        zero_heads(&mask, &inner.eval(x))
    })
}

pub fn derivative(f: &Morphism) -> Morphism {
    let dom = f.dom().clone();
    let w = dom.width();
    let dom_leaves = dom.layout().leaves;
    let cod_leaves = f.cod().layout().leaves;
    let (dom_heads, cod_heads) = (head_mask(&dom), head_mask(f.cod()));
    let inner = f.clone();
    Morphism::new(dom.square(), f.cod().clone(), "d", move |p| {
        let (a, b) = p.split(w);
        let base = inner.eval(&a);
        let full = inner.eval(&element::add(&dom_leaves, &a, &b));
        let tail = inner.eval(&element::add(&dom_leaves, &a, &zero_heads(&dom_heads, &b)));
        let head_part = element::sub(&cod_leaves, &full, &base);
        let tail_part = element::sub(&cod_leaves, &tail, &base);
        head_part
            .scalars()
            .iter()
            .zip(tail_part.scalars())
            .zip(cod_heads.iter())
            .map(|((h, t), &is_head)| if is_head { h.clone() } else { t.clone() })
            .collect()
    })
}

/// The operator `f(a + z(b)) - f(a)` at every index, which is not a difference operator.
pub fn simple_derivative(f: &Morphism) -> Morphism {
    let dom = f.dom().clone();
    let w = dom.width();
    let dom_leaves = dom.layout().leaves;
    let cod_leaves = f.cod().layout().leaves;
    let heads = head_mask(&dom);
    let inner = f.clone();
    Morphism::new(dom.square(), f.cod().clone(), "d_simple", move |p| {
        let (a, b) = p.split(w);
        let moved = inner.eval(&element::add(&dom_leaves, &a, &zero_heads(&heads, &b)));
        element::sub(&cod_leaves, &moved, &inner.eval(&a))
    })
}

/// The stream model with its derivative replaced by [`simple_derivative`].
#[derive(Clone, Debug)]
pub struct SimpleOperator {
    pub model: Model,
}

impl SimpleOperator {
    pub fn new(k: usize) -> SimpleOperator {
        SimpleOperator {
            model: Model::streams(k),
        }
    }
}

impl DifferenceCategory for SimpleOperator {
    type Map = Morphism;

    fn name(&self) -> String {
        format!("{} (simple)", self.model.name())
    }

    fn label(&self, f: &Morphism) -> String {
        f.label().to_string()
    }

    fn dom(&self, f: &Morphism) -> Space {
        f.dom().clone()
    }

    fn cod(&self, f: &Morphism) -> Space {
        f.cod().clone()
    }

    fn identity(&self, a: &Space) -> Morphism {
        morphism::identity(a)
    }

    fn proj0(&self, a: &Space, b: &Space) -> Morphism {
        morphism::proj0(a, b)
    }

    fn proj1(&self, a: &Space, b: &Space) -> Morphism {
        morphism::proj1(a, b)
    }

    fn zero(&self, dom: &Space, cod: &Space) -> Morphism {
        morphism::zero(dom, cod)
    }

    fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        morphism::compose(g, f)
    }

    fn pair(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        morphism::pair(f, g)
    }

    fn add(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        morphism::add(f, g)
    }

    fn epsilon(&self, f: &Morphism) -> Morphism {
        self.model.epsilon(f)
    }

    fn derivative(&self, f: &Morphism) -> Result<Morphism> {
        self.model.check_space(f.dom())?;
        Ok(simple_derivative(f))
    }

    fn point_space(&self, a: &Space) -> Space {
        a.clone()
    }

    fn point(&self, selector: Morphism) -> Morphism {
        selector
    }

    fn equal(&self, f: &Morphism, g: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
        crate::equality::morphisms_equal(f, g, strategy)
    }
}

fn stream_parts(space: &Space) -> Result<(Space, usize)> {
    match space {
        Space::Stream { base, len } => Ok(((**base).clone(), *len)),
        other => Err(Error::ShapeMismatch(format!("{other} is not a stream space"))),
    }
}

/// Applies a base map at every index.
pub fn pointwise(space: &Space, f: &Morphism, name: &str) -> Result<Morphism> {
    let (base, len) = stream_parts(space)?;
    if f.dom() != &base {
        return Err(Error::DomainMismatch {
            expected: base.to_string(),
            found: f.dom().to_string(),
        });
    }
    let (wi, wo) = (base.width(), f.cod().width());
    let cod = Space::stream(f.cod(), len);
    let inner = f.clone();
    Ok(Morphism::new(space.clone(), cod, name, move |x| {
        let mut out = Vec::with_capacity(len * wo);
        for n in 0..len {
            out.extend(inner.eval(&x.slice(n * wi..(n + 1) * wi)).scalars().iter().cloned());
        }
        out.into_iter().collect()
    }))
}

/// Applies a binary base map at every index of a pair of streams.
pub fn pointwise2(space: &Space, f: &Morphism, name: &str) -> Result<Morphism> {
    let (base, len) = stream_parts(space)?;
    let w = base.width();
    let total = w * len;
    let inner = f.clone();
    Ok(Morphism::new(space.square(), space.clone(), name, move |x| {
        let mut out = Vec::with_capacity(total);
        for n in 0..len {
            let a = x.slice(n * w..(n + 1) * w);
            let b = x.slice(total + n * w..total + (n + 1) * w);
            out.extend(inner.eval(&Element::pair(&a, &b)).scalars().iter().cloned());
        }
        out.into_iter().collect()
    }))
}

fn index_map(space: &Space, name: &str, map: impl Fn(&[Element], usize) -> Element + Send + Sync + 'static) -> Result<Morphism> {
    let (base, len) = stream_parts(space)?;
    let w = base.width();
    Ok(Morphism::new(space.clone(), space.clone(), name, move |x| {
        let items: Vec<Element> = (0..len).map(|n| x.slice(n * w..(n + 1) * w)).collect();
        (0..len)
            .flat_map(|n| map(&items, n).scalars().to_vec())
            .collect()
    }))
}

/// `out_0 = 0`, `out_{n+1} = a_n`.
pub fn delay(space: &Space) -> Result<Morphism> {
    let (base, _) = stream_parts(space)?;
    let zero = base.zero();
    index_map(space, "delay", move |a, n| if n == 0 { zero.clone() } else { a[n - 1].clone() })
}

/// `out_n = a_0 + ... + a_n`.
pub fn prefix_sum(space: &Space) -> Result<Morphism> {
    let (base, _) = stream_parts(space)?;
    let leaves = base.layout().leaves;
    index_map(space, "psum", move |a, n| {
        a[1..=n]
            .iter()
            .fold(a[0].clone(), |acc, x| element::add(&leaves, &acc, x))
    })
}

/// `out_n = a_{n+1}`, `out_{K-1} = 0`; reads ahead, so it is not causal.
pub fn shift_left(space: &Space) -> Result<Morphism> {
    let (base, len) = stream_parts(space)?;
    let zero = base.zero();
    index_map(space, "shift_left", move |a, n| {
        if n + 1 < len {
            a[n + 1].clone()
        } else {
            zero.clone()
        }
    })
}

/// A random causal map whose output at `n` is `table(a_n, a_{n-1})` for a random table.
pub fn windowed_table(space: &Space, table: Morphism) -> Result<Morphism> {
    let (base, _) = stream_parts(space)?;
    if table.dom() != &base.square() || table.cod() != &base {
        return Err(Error::ShapeMismatch("window table must map B x B -> B".into()));
    }
    let zero = base.zero();
    let label = format!("window {}", table.label());
    index_map(space, &label, move |a, n| {
        let prev = if n == 0 { &zero } else { &a[n - 1] };
        table.eval(&Element::pair(&a[n], prev))
    })
}

/// Replaces the first output entry of a stream endomap by `scale * a_0 + offset`.
///
/// The difference operator only satisfies the additivity axioms on maps whose
/// first output entry is affine in the first input entry; this produces such maps.
pub fn with_affine_head(f: &Morphism, scale: i64, offset: i64) -> Result<Morphism> {
    let (base, _) = stream_parts(f.dom())?;
    if f.cod() != f.dom() {
        return Err(Error::ShapeMismatch("affine heads are defined for endomaps".into()));
    }
    let leaves = base.layout().leaves;
    let w = base.width();
    let shift: Element = leaves.iter().map(|&leaf| reduce(leaf, Some(offset))).collect();
    let inner = f.clone();
    let label = format!("(head {scale}x+{offset} {})", f.label());
    Ok(Morphism::new(f.dom().clone(), f.cod().clone(), label, move |x| {
        let head = element::scale(&leaves, scale, &x.slice(0..w));
        let head = element::add(&leaves, &head, &shift);
        let rest = inner.eval(x);
        head.scalars()
            .iter()
            .chain(&rest.scalars()[w..])
            .cloned()
            .collect()
    }))
}

/// Whether the first output entry satisfies `h(a + b) + h(0) = h(a) + h(b)`.
pub fn head_affinity(f: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    let dom = f.dom();
    let w = dom.width();
    let heads = head_mask(f.cod());
    let (dl, cl) = (dom.layout().leaves, f.cod().layout().leaves);
    let pairs = dom.square();
    let at_zero = f.eval(&dom.zero());
    let head_of = |e: &Element| -> Element {
        e.scalars()
            .iter()
            .zip(heads.iter())
            .filter(|(_, &h)| h)
            .map(|(s, _)| s.clone())
            .collect()
    };
    let head_leaves: Vec<_> = cl.iter().zip(heads.iter()).filter(|(_, &h)| h).map(|(l, _)| *l).collect();
    holds_everywhere(&pairs, strategy, |p| {
        let (a, b) = p.split(w);
        let joint = f.eval(&element::add(&dl, &a, &b));
        let lhs = element::add(&head_leaves, &head_of(&joint), &head_of(&at_zero));
        let rhs = element::add(&head_leaves, &head_of(&f.eval(&a)), &head_of(&f.eval(&b)));
        (lhs != rhs).then(|| Counterexample {
            point: element::format(&pairs, p),
            lhs: format!("{:?}", lhs.to_ints().unwrap_or_default()),
            rhs: format!("{:?}", rhs.to_ints().unwrap_or_default()),
        })
    })
}

/// Samples pairs agreeing below each cut-off and compares the outputs there.
pub fn causality_check(f: &Morphism, strategy: &EqualityStrategy) -> Result<()> {
    let (dom, cod) = (f.dom(), f.cod());
    let (di, ci) = (dom.stream_indices(), cod.stream_indices());
    let len = di.iter().chain(&ci).flatten().max().map_or(0, |m| m + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(mix(strategy.seed, 0xCA05A1));
    for _ in 0..strategy.samples.max(1) {
        let a = dom.sample(&mut rng, strategy.real_range);
        let fresh = dom.sample(&mut rng, strategy.real_range);
        for prefix in 1..=len {
            let b: Element = a
                .scalars()
                .iter()
                .zip(fresh.scalars())
                .zip(&di)
                .map(|((x, y), idx)| match idx {
                    Some(n) if *n >= prefix => y.clone(),
                    _ => x.clone(),
                })
                .collect();
            let (fa, fb) = (f.eval(&a), f.eval(&b));
            let agree = fa
                .scalars()
                .iter()
                .zip(fb.scalars())
                .zip(&ci)
                .all(|((x, y), idx)| !matches!(idx, Some(n) if *n < prefix) || x == y);
            if !agree {
                return Err(Error::NotCausal {
                    subject: f.label().to_string(),
                    first: element::format(dom, &a),
                    second: element::format(dom, &b),
                    prefix,
                });
            }
        }
    }
    Ok(())
}

/// Outcome of comparing the linearity test with its indexwise characterisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StreamLinearity {
    pub linear: bool,
    pub homomorphism: bool,
    pub head_insensitive: bool,
}

impl StreamLinearity {
    /// Linear exactly when additive and blind to the first input entry in later outputs.
    pub fn consistent(&self) -> bool {
        self.linear == (self.homomorphism && self.head_insensitive)
    }
}

pub fn stream_linear_check(f: &Morphism, k: usize, strategy: &EqualityStrategy) -> Result<StreamLinearity> {
    let model = Model::new(ModelTag::Streams { k });
    let linear = is_linear(&model, f, strategy)?.holds();
    let homomorphism = crate::kernel::is_additive(f, strategy)?.holds();
    let z = truncation(f.dom());
    let tails = truncation(f.cod());
    let lhs = morphism::compose(&tails, &morphism::compose(f, &z)?)?;
    let rhs = morphism::compose(&tails, f)?;
    let head_insensitive = crate::equality::morphisms_equal(&lhs, &rhs, strategy)?.holds();
    Ok(StreamLinearity {
        linear,
        homomorphism,
        head_insensitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3(k: usize) -> Space {
        Space::stream(&Space::Cyclic(3), k)
    }

    #[test]
    fn truncation_zeroes_head() {
        let s = Space::stream(&Space::bounded(-9, 9), 3);
        let z = truncation(&s);
        assert_eq!(z.eval(&Element::ints(&[1, 2, 3])), Element::ints(&[0, 2, 3]));
    }

    #[test]
    fn square_difference_example() {
        let s = Space::stream(&Space::bounded(-9, 9), 2);
        let sq = Morphism::new(Space::bounded(-9, 9), Space::bounded(-9, 9), "sq", |x| {
            let v = x.as_int().unwrap();
            Element::int(v * v)
        });
        let f = pointwise(&s, &sq, "sq").unwrap();
        let d = derivative(&f);
        assert_eq!(d.eval(&Element::ints(&[1, 1, 1, 1])), Element::ints(&[3, 3]));
    }

    #[test]
    fn affine_head_replaces_first_entry() {
        let s = Space::stream(&Space::bounded(-99, 99), 3);
        let f = with_affine_head(&prefix_sum(&s).unwrap(), 2, 1).unwrap();
        assert_eq!(f.eval(&Element::ints(&[3, 4, 5])), Element::ints(&[7, 7, 12]));
        let strat = EqualityStrategy::sampled(64, 3);
        assert!(head_affinity(&f, &strat).unwrap().holds());
        let sq = Morphism::new(Space::bounded(-99, 99), Space::bounded(-99, 99), "sq", |x| {
            let v = x.as_int().unwrap();
            Element::int(v * v)
        });
        assert!(!head_affinity(&pointwise(&s, &sq, "sq").unwrap(), &strat).unwrap().holds());
    }

    #[test]
    fn shift_left_is_not_causal() {
        let f = shift_left(&z3(4)).unwrap();
        let err = causality_check(&f, &EqualityStrategy::sampled(64, 1)).unwrap_err();
        assert!(matches!(err, Error::NotCausal { .. }));
        assert!(causality_check(&delay(&z3(4)).unwrap(), &EqualityStrategy::sampled(64, 1)).is_ok());
        assert!(causality_check(&truncation(&z3(4)), &EqualityStrategy::sampled(64, 1)).is_ok());
    }
}

//! Spaces: the objects every model works over.
//!
//! Elements are stored flat, one scalar per leaf, so a space mostly serves as a
//! layout description: which leaves there are, what group each leaf carries and
//! how the leaves are nested into products, streams and lookup tables.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::{Element, Scalar};
use crate::error::{Error, Result};

/// Lower and upper bound for sampled real coordinates.
pub const DEFAULT_REAL_RANGE: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// The integers modulo `n`.
    Cyclic(u64),
    /// The integers, enumerated and sampled over `lo..=hi`.
    BoundedInt { lo: i64, hi: i64 },
    /// Real vectors of the given dimension.
    Real(usize),
    /// Prefixes of length `len` of streams over `base`.
    Stream { base: Box<Space>, len: usize },
    Product(Box<Space>, Box<Space>),
    Terminal,
    /// Total lookup tables from a finite `arg` into `res`.
    Function { arg: Box<Space>, res: Box<Space> },
}

/// One scalar slot of a flattened element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leaf {
    Cyclic(u64),
    Int { lo: i64, hi: i64 },
    Real,
}

impl Leaf {
    fn radix(self) -> Option<u128> {
        match self {
            Leaf::Cyclic(n) => Some(n as u128),
            Leaf::Int { lo, hi } => Some((hi as i128 - lo as i128 + 1) as u128),
            Leaf::Real => None,
        }
    }

    fn digit(self, value: &Scalar) -> Option<u128> {
        match (self, value) {
            (Leaf::Cyclic(n), Scalar::Int(v)) if *v >= 0 && (*v as u64) < n => Some(*v as u128),
            (Leaf::Int { lo, hi }, Scalar::Int(v)) if lo <= *v && *v <= hi => {
                Some((*v as i128 - lo as i128) as u128)
            }
            _ => None,
        }
    }

    fn from_digit(self, digit: u128) -> Scalar {
        match self {
            Leaf::Cyclic(_) => Scalar::Int(digit as i64),
            Leaf::Int { lo, .. } => Scalar::Int((lo as i128 + digit as i128) as i64),
            Leaf::Real => unreachable!("real leaves have no digits"),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Leaf::Real => Scalar::Real(0.0.into()),
            _ => Scalar::Int(0),
        }
    }
}

/// Flattened view of a space, shared by the closures that operate on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub leaves: Arc<[Leaf]>,
}

impl Layout {
    pub fn width(&self) -> usize {
        self.leaves.len()
    }

    pub fn zero(&self) -> Element {
        self.leaves.iter().map(|l| l.zero()).collect()
    }
}

impl Space {
    pub fn cyclic(n: u64) -> Space {
        Space::Cyclic(n)
    }

    pub fn bounded(lo: i64, hi: i64) -> Space {
        Space::BoundedInt { lo, hi }
    }

    pub fn product(a: &Space, b: &Space) -> Space {
        Space::Product(Box::new(a.clone()), Box::new(b.clone()))
    }

    /// The tangent object `A x A`.
    pub fn square(&self) -> Space {
        Space::product(self, self)
    }

    pub fn stream(base: &Space, len: usize) -> Space {
        Space::Stream {
            base: Box::new(base.clone()),
            len,
        }
    }

    pub fn function(arg: &Space, res: &Space) -> Space {
        Space::Function {
            arg: Box::new(arg.clone()),
            res: Box::new(res.clone()),
        }
    }

    /// Components of a product, or `None` for any other kind.
    pub fn factors(&self) -> Option<(&Space, &Space)> {
        match self {
            Space::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn width(&self) -> usize {
        match self {
            Space::Cyclic(_) | Space::BoundedInt { .. } => 1,
            Space::Real(d) => *d,
            Space::Stream { base, len } => base.width() * len,
            Space::Product(a, b) => a.width() + b.width(),
            Space::Terminal => 0,
            Space::Function { arg, res } => {
                let rows = arg.size().unwrap_or(0) as usize;
                rows * res.width()
            }
        }
    }

    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::with_capacity(self.width());
        self.push_leaves(&mut out);
        out
    }

    fn push_leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            Space::Cyclic(n) => out.push(Leaf::Cyclic(*n)),
            Space::BoundedInt { lo, hi } => out.push(Leaf::Int { lo: *lo, hi: *hi }),
            Space::Real(d) => out.extend(std::iter::repeat_n(Leaf::Real, *d)),
            Space::Stream { base, len } => {
                for _ in 0..*len {
                    base.push_leaves(out);
                }
            }
            Space::Product(a, b) => {
                a.push_leaves(out);
                b.push_leaves(out);
            }
            Space::Terminal => {}
            Space::Function { arg, res } => {
                for _ in 0..arg.size().unwrap_or(0) {
                    res.push_leaves(out);
                }
            }
        }
    }

    pub fn layout(&self) -> Layout {
        Layout {
            leaves: self.leaves().into(),
        }
    }

    /// Number of elements, `None` when the space is not finite.
    ///
    /// Sizes that overflow `u128` saturate.
    pub fn size(&self) -> Option<u128> {
        if let Space::Function { arg, .. } = self {
            arg.size()?;
        }
        self.leaves()
            .iter()
            .try_fold(1u128, |acc, l| l.radix().map(|r| acc.saturating_mul(r)))
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Checks structural well-formedness (non-empty groups, finite table arguments).
    pub fn validate(&self) -> Result<()> {
        match self {
            Space::Cyclic(0) => Err(Error::InvalidValue("Z0 is empty".into())),
            Space::BoundedInt { lo, hi } if lo > hi => {
                Err(Error::InvalidValue(format!("empty range Int[{lo},{hi}]")))
            }
            Space::Stream { len: 0, .. } => {
                Err(Error::InvalidValue("stream prefixes need length > 0".into()))
            }
            Space::Stream { base, .. } => base.validate(),
            Space::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            Space::Function { arg, res } => {
                if !arg.is_finite() {
                    return Err(Error::NotFinite(arg.to_string()));
                }
                arg.validate()?;
                res.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> Element {
        self.layout().zero()
    }

    /// The element at position `index` in lexicographic enumeration order.
    pub fn element_at(&self, index: u128) -> Result<Element> {
        let size = self
            .size()
            .ok_or_else(|| Error::NotEnumerable(self.to_string()))?;
        if index >= size {
            return Err(Error::InvalidValue(format!(
                "index {index} out of range for {self}"
            )));
        }
        let leaves = self.leaves();
        let mut digits = vec![Scalar::Int(0); leaves.len()];
        let mut rest = index;
        for (slot, leaf) in digits.iter_mut().zip(&leaves).rev() {
            let r = leaf.radix().expect("finite");
            *slot = leaf.from_digit(rest % r);
            rest /= r;
        }
        Ok(digits.into_iter().collect())
    }

    /// Position of `element` in enumeration order.
    pub fn index_of(&self, element: &Element) -> Option<u128> {
        let leaves = self.leaves();
        index_in(&leaves, element.scalars())
    }

    /// Every element in enumeration order.
    pub fn enumerate(&self) -> Result<Enumeration> {
        let size = self
            .size()
            .ok_or_else(|| Error::NotEnumerable(self.to_string()))?;
        Ok(Enumeration {
            leaves: self.leaves(),
            next: if size == 0 { None } else { Some(self.zero_digits()) },
        })
    }

    fn zero_digits(&self) -> Element {
        self.leaves().iter().map(|l| l.from_digit(0)).collect()
    }

    /// Draws an element uniformly (reals uniformly in `[-range, range]`).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, real_range: f64) -> Element {
        self.leaves()
            .iter()
            .map(|leaf| sample_leaf(*leaf, rng, real_range))
            .collect()
    }

    /// Whether `element` is a well-formed value of this space.
    pub fn contains(&self, element: &Element) -> bool {
        let leaves = self.leaves();
        leaves.len() == element.len()
            && leaves
                .iter()
                .zip(element.scalars())
                .all(|(leaf, s)| match (leaf, s) {
                    (Leaf::Cyclic(n), Scalar::Int(v)) => *v >= 0 && (*v as u64) < *n,
                    (Leaf::Int { .. }, Scalar::Int(_)) => true,
                    (Leaf::Real, Scalar::Real(_)) => true,
                    _ => false,
                })
    }

    /// Stream index of every scalar slot; slots outside streams get `None`.
    pub fn stream_indices(&self) -> Vec<Option<usize>> {
        let mut out = Vec::with_capacity(self.width());
        self.push_stream_indices(&mut out);
        out
    }

    fn push_stream_indices(&self, out: &mut Vec<Option<usize>>) {
        match self {
            Space::Stream { base, len } => {
                let w = base.width();
                for n in 0..*len {
                    out.extend(std::iter::repeat_n(Some(n), w));
                }
            }
            Space::Product(a, b) => {
                a.push_stream_indices(out);
                b.push_stream_indices(out);
            }
            other => out.extend(std::iter::repeat_n(None, other.width())),
        }
    }
}

pub(crate) fn index_in(leaves: &[Leaf], scalars: &[Scalar]) -> Option<u128> {
    if leaves.len() != scalars.len() {
        return None;
    }
    let mut index = 0u128;
    for (leaf, s) in leaves.iter().zip(scalars) {
        index = index.checked_mul(leaf.radix()?)? + leaf.digit(s)?;
    }
    Some(index)
}

fn sample_leaf<R: Rng + ?Sized>(leaf: Leaf, rng: &mut R, real_range: f64) -> Scalar {
    match leaf {
        Leaf::Cyclic(n) => Scalar::Int(rng.gen_range(0..n) as i64),
        Leaf::Int { lo, hi } => Scalar::Int(rng.gen_range(lo..=hi)),
        Leaf::Real => Scalar::Real(rng.gen_range(-real_range..=real_range).into()),
    }
}

/// Odometer over the elements of a finite space.
pub struct Enumeration {
    leaves: Vec<Leaf>,
    next: Option<Element>,
}

impl Iterator for Enumeration {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for (slot, leaf) in succ.scalars_mut().iter_mut().zip(&self.leaves).rev() {
            let r = leaf.radix().expect("finite");
            let d = leaf.digit(slot).expect("in range") + 1;
            if d < r {
                *slot = leaf.from_digit(d);
                carried = false;
                break;
            }
            *slot = leaf.from_digit(0);
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Cyclic(n) => write!(f, "Z{n}"),
            Space::BoundedInt { lo, hi } => write!(f, "Int[{lo},{hi}]"),
            Space::Real(d) => write!(f, "R^{d}"),
            Space::Stream { base, len } => write!(f, "Stream({base},{len})"),
            Space::Product(a, b) => write!(f, "({a} x {b})"),
            Space::Terminal => write!(f, "1"),
            Space::Function { arg, res } => write!(f, "({arg} => {res})"),
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Space> {
        let mut parser = SpaceParser { src: s, pos: 0 };
        let space = parser.space()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        space.validate()?;
        Ok(space)
    }
}

impl Serialize for Space {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Space, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct SpaceParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpaceParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let text = &rest[..len];
        let value = text.parse().map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok(value)
    }

    fn natural(&mut self) -> Result<u64> {
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| self.error("expected a non-negative integer"))
    }

    fn space(&mut self) -> Result<Space> {
        self.skip_ws();
        if self.eat("(") {
            let left = self.space()?;
            let out = if self.eat("=>") {
                Space::function(&left, &self.space()?)
            } else if self.eat("x") {
                Space::product(&left, &self.space()?)
            } else {
                return Err(self.error("expected `x` or `=>`"));
            };
            self.expect(")")?;
            Ok(out)
        } else if self.eat("Stream") {
            self.expect("(")?;
            let base = self.space()?;
            self.expect(",")?;
            let len = self.natural()? as usize;
            self.expect(")")?;
            Ok(Space::stream(&base, len))
        } else if self.eat("Int") {
            self.expect("[")?;
            let lo = self.integer()?;
            self.expect(",")?;
            let hi = self.integer()?;
            self.expect("]")?;
            Ok(Space::bounded(lo, hi))
        } else if self.eat("R^") {
            Ok(Space::Real(self.natural()? as usize))
        } else if self.eat("Z") {
            Ok(Space::Cyclic(self.natural()?))
        } else if self.eat("1") {
            Ok(Space::Terminal)
        } else {
            Err(self.error("expected a space"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_syntax() {
        for text in [
            "Z7",
            "Int[-100,100]",
            "R^2",
            "Stream(Z3,8)",
            "(Z5 x Z5)",
            "1",
            "(Z2 => Z3)",
            "((Z2 x Z2) => Z3)",
        ] {
            let space: Space = text.parse().unwrap();
            assert_eq!(space.to_string(), text);
        }
    }

    #[test]
    fn sizes() {
        assert_eq!("(Z5 x Z5)".parse::<Space>().unwrap().size(), Some(25));
        assert_eq!("Stream(Z3,8)".parse::<Space>().unwrap().size(), Some(6561));
        assert_eq!("((Z2 x Z2) => Z3)".parse::<Space>().unwrap().size(), Some(81));
        assert_eq!(Space::Real(1).size(), None);
        assert_eq!(Space::Terminal.size(), Some(1));
    }

    #[test]
    fn enumeration_matches_index() {
        let space: Space = "(Z3 x Int[-1,1])".parse().unwrap();
        let all: Vec<_> = space.enumerate().unwrap().collect();
        assert_eq!(all.len(), 9);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(space.index_of(e), Some(i as u128));
            assert_eq!(&space.element_at(i as u128).unwrap(), e);
        }
    }

    #[test]
    fn rejects_bad_syntax() {
        assert!("Z".parse::<Space>().is_err());
        assert!("(Z2 Z3)".parse::<Space>().is_err());
        assert!("(R^1 => Z2)".parse::<Space>().is_err());
    }
}

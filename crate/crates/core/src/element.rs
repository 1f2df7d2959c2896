//! Flat element representation and the pointwise group operations on it.

use std::fmt::Write as _;
use std::ops::Range;

use smallvec::SmallVec;

use crate::dual::DualNumber;
use crate::error::{Error, Result};
use crate::space::{Leaf, Space};

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Int(i64),
    Real(DualNumber),
}

impl Scalar {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Scalar::Int(v) => Some(*v),
            Scalar::Real(_) => None,
        }
    }

    pub fn as_dual(&self) -> Option<&DualNumber> {
        match self {
            Scalar::Real(d) => Some(d),
            Scalar::Int(_) => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        self.as_dual().map(DualNumber::primal)
    }
}

/// A value of some space, one scalar per leaf of the space's layout.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Element(SmallVec<[Scalar; 8]>);

impl FromIterator<Scalar> for Element {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Element(iter.into_iter().collect())
    }
}

impl Element {
    pub fn unit() -> Element {
        Element(SmallVec::new())
    }

    pub fn int(v: i64) -> Element {
        Element(smallvec::smallvec![Scalar::Int(v)])
    }

    pub fn real(v: f64) -> Element {
        Element(smallvec::smallvec![Scalar::Real(v.into())])
    }

    pub fn ints(values: &[i64]) -> Element {
        values.iter().map(|&v| Scalar::Int(v)).collect()
    }

    pub fn reals(values: &[f64]) -> Element {
        values.iter().map(|&v| Scalar::Real(v.into())).collect()
    }

    pub fn pair(a: &Element, b: &Element) -> Element {
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        out.extend(a.0.iter().cloned());
        out.extend(b.0.iter().cloned());
        Element(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.0
    }

    pub fn scalars_mut(&mut self) -> &mut [Scalar] {
        &mut self.0
    }

    pub fn slice(&self, range: Range<usize>) -> Element {
        Element(self.0[range].iter().cloned().collect())
    }

    pub fn split(&self, mid: usize) -> (Element, Element) {
        (self.slice(0..mid), self.slice(mid..self.len()))
    }

    /// The single integer of a one-leaf element.
    pub fn as_int(&self) -> Option<i64> {
        match self.0.as_slice() {
            [s] => s.as_int(),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self.0.as_slice() {
            [s] => s.as_real(),
            _ => None,
        }
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Scalar::as_int).collect()
    }

    pub fn to_reals(&self) -> Option<Vec<f64>> {
        self.0.iter().map(Scalar::as_real).collect()
    }

    /// Union of dual generators used anywhere in the element.
    pub fn generators(&self) -> u64 {
        self.0
            .iter()
            .filter_map(Scalar::as_dual)
            .fold(0, |acc, d| acc | d.generators())
    }
}

fn int_op(leaf: Leaf, value: Option<i64>) -> Scalar {
    let v = value.unwrap_or_else(|| panic!("integer overflow in {leaf:?}"));
    match leaf {
        Leaf::Cyclic(n) => Scalar::Int(v.rem_euclid(n as i64)),
        _ => Scalar::Int(v),
    }
}

fn mismatch() -> ! {
    panic!("scalar kind does not match the layout")
}

pub fn add(leaves: &[Leaf], a: &Element, b: &Element) -> Element {
    add_scalars(leaves, &a.0, &b.0)
}

/// Sum of two scalar runs laid out as `leaves`.
pub fn add_scalars(leaves: &[Leaf], a: &[Scalar], b: &[Scalar]) -> Element {
    debug_assert_eq!(a.len(), leaves.len());
    debug_assert_eq!(b.len(), leaves.len());
    leaves
        .iter()
        .zip(a.iter().zip(b))
        .map(|(leaf, pair)| match pair {
            (Scalar::Int(x), Scalar::Int(y)) => int_op(*leaf, x.checked_add(*y)),
            (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(x + y),
            _ => mismatch(),
        })
        .collect()
}

pub fn sub(leaves: &[Leaf], a: &Element, b: &Element) -> Element {
    leaves
        .iter()
        .zip(a.0.iter().zip(&b.0))
        .map(|(leaf, pair)| match pair {
            (Scalar::Int(x), Scalar::Int(y)) => int_op(*leaf, x.checked_sub(*y)),
            (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(x - y),
            _ => mismatch(),
        })
        .collect()
}

pub fn neg(leaves: &[Leaf], a: &Element) -> Element {
    leaves
        .iter()
        .zip(&a.0)
        .map(|(leaf, s)| match s {
            Scalar::Int(x) => int_op(*leaf, x.checked_neg()),
            Scalar::Real(x) => Scalar::Real(-x),
        })
        .collect()
}

/// Integer multiple `r * a`, the action of the integers on every abelian group.
pub fn scale(leaves: &[Leaf], r: i64, a: &Element) -> Element {
    leaves
        .iter()
        .zip(&a.0)
        .map(|(leaf, s)| match s {
            Scalar::Int(x) => int_op(*leaf, x.checked_mul(r)),
            Scalar::Real(x) => Scalar::Real(x.scale(r as f64)),
        })
        .collect()
}

/// Tolerance test `|a - b| <= abs + rel * max(|a|, |b|)`, exact on integers.
pub fn reals_close(a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= abs_tol + rel_tol * a.abs().max(b.abs())
}

pub fn close(a: &Element, b: &Element, abs_tol: f64, rel_tol: f64) -> bool {
    a.len() == b.len()
        && a.0.iter().zip(&b.0).all(|pair| match pair {
            (Scalar::Int(x), Scalar::Int(y)) => x == y,
            (Scalar::Real(x), Scalar::Real(y)) => {
                reals_close(x.primal(), y.primal(), abs_tol, rel_tol)
            }
            _ => false,
        })
}

/// Renders `element` using the point syntax of `space`.
pub fn format(space: &Space, element: &Element) -> String {
    let mut out = String::new();
    let mut cursor = 0;
    write_value(space, element.scalars(), &mut cursor, &mut out);
    out
}

fn write_scalar(s: &Scalar, out: &mut String) {
    match s {
        Scalar::Int(v) => write!(out, "{v}").unwrap(),
        Scalar::Real(d) => write!(out, "{}", d.primal()).unwrap(),
    }
}

fn write_value(space: &Space, scalars: &[Scalar], cursor: &mut usize, out: &mut String) {
    match space {
        Space::Cyclic(_) | Space::BoundedInt { .. } | Space::Real(1) => {
            write_scalar(&scalars[*cursor], out);
            *cursor += 1;
        }
        Space::Real(d) => {
            out.push('[');
            for i in 0..*d {
                if i > 0 {
                    out.push_str(", ");
                }
                write_scalar(&scalars[*cursor], out);
                *cursor += 1;
            }
            out.push(']');
        }
        Space::Stream { base, len } => {
            out.push('[');
            for i in 0..*len {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(base, scalars, cursor, out);
            }
            out.push(']');
        }
        Space::Product(a, b) => {
            out.push('(');
            write_value(a, scalars, cursor, out);
            out.push_str(", ");
            write_value(b, scalars, cursor, out);
            out.push(')');
        }
        Space::Terminal => out.push_str("()"),
        Space::Function { arg, res } => {
            out.push('{');
            for i in 0..arg.size().unwrap_or(0) {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(res, scalars, cursor, out);
            }
            out.push('}');
        }
    }
}

/// Parses a point written in the syntax produced by [`format`].
///
/// Integers in cyclic spaces are reduced modulo the group order.
pub fn parse(space: &Space, text: &str) -> Result<Element> {
    let mut parser = PointParser {
        src: text,
        pos: 0,
        out: Vec::new(),
    };
    parser.value(space)?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(parser.out.into_iter().collect())
}

struct PointParser<'a> {
    src: &'a str,
    pos: usize,
    out: Vec<Scalar>,
}

impl PointParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Result<&str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | 'e' | 'E')))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<i64> {
        let text = self.number()?;
        text.parse()
            .map_err(|_| Error::InvalidValue(format!("`{text}` is not an integer")))
    }

    fn real(&mut self) -> Result<f64> {
        let text = self.number()?;
        text.parse()
            .map_err(|_| Error::InvalidValue(format!("`{text}` is not a number")))
    }

    fn sequence(&mut self, open: char, close: char, len: usize, item: &Space) -> Result<()> {
        self.expect(open)?;
        for i in 0..len {
            if i > 0 {
                self.expect(',')?;
            }
            self.value(item)?;
        }
        self.expect(close)
    }

    fn value(&mut self, space: &Space) -> Result<()> {
        match space {
            Space::Cyclic(n) => {
                let v = self.int()?;
                self.out.push(Scalar::Int(v.rem_euclid(*n as i64)));
            }
            Space::BoundedInt { .. } => {
                let v = self.int()?;
                self.out.push(Scalar::Int(v));
            }
            Space::Real(1) => {
                let v = self.real()?;
                self.out.push(Scalar::Real(v.into()));
            }
            Space::Real(d) => self.sequence('[', ']', *d, &Space::Real(1))?,
            Space::Stream { base, len } => self.sequence('[', ']', *len, base)?,
            Space::Product(a, b) => {
                self.expect('(')?;
                self.value(a)?;
                self.expect(',')?;
                self.value(b)?;
                self.expect(')')?;
            }
            Space::Terminal => {
                self.expect('(')?;
                self.expect(')')?;
            }
            Space::Function { arg, res } => {
                let rows = arg.size().ok_or_else(|| Error::NotFinite(arg.to_string()))?;
                self.sequence('{', '}', rows as usize, res)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic_wraps() {
        let leaves = [Leaf::Cyclic(7)];
        assert_eq!(add(&leaves, &Element::int(5), &Element::int(4)), Element::int(2));
        assert_eq!(neg(&leaves, &Element::int(3)), Element::int(4));
        assert_eq!(scale(&leaves, 3, &Element::int(5)), Element::int(1));
    }

    #[test]
    fn point_syntax_round_trip() {
        let space: Space = "((Z5 x Stream(Z3,2)) x R^1)".parse().unwrap();
        let e = parse(&space, "((4, [1, 2]), 0.5)").unwrap();
        assert_eq!(format(&space, &e), "((4, [1, 2]), 0.5)");
        assert!(space.contains(&e));
    }

    #[test]
    #[should_panic(expected = "integer overflow")]
    fn overflow_is_detected() {
        let leaves = [Leaf::Int { lo: 0, hi: 1 }];
        add(&leaves, &Element::int(i64::MAX), &Element::int(1));
    }
}

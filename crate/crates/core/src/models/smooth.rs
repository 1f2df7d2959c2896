//! Smooth maps between real vector spaces, differentiated with nested dual numbers.
//!
//! Every smooth morphism evaluates on dual-valued coordinates, so the
//! directional derivative is read off the coefficient of a fresh generator and
//! higher derivatives come from nesting the same construction.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::dual::DualNumber;
use crate::element::{Element, Scalar};
use crate::kernel::ModelTag;
use crate::morphism::Morphism;
use crate::space::Space;

fn fresh_generator(e: &Element) -> u32 {
    let used = e.generators();
    let g = (!used).trailing_zeros();
    assert!(g < 64, "dual generators exhausted (derivative order above 64)");
    g
}

fn dual(s: &Scalar) -> &DualNumber {
    s.as_dual().expect("smooth maps act on real coordinates")
}

pub fn derivative(f: &Morphism) -> Morphism {
    let w = f.dom().width();
    let inner = f.clone();
    Morphism::new(f.dom().square(), f.cod().clone(), "d", move |p| {
        let g = fresh_generator(p);
        let (x, y) = p.scalars().split_at(w);
        let seeded: Element = x
            .iter()
            .zip(y)
            .map(|(a, b)| Scalar::Real(DualNumber::with_tangent(dual(a), dual(b), g)))
            .collect();
        inner
            .eval(&seeded)
            .scalars()
            .iter()
            .map(|s| Scalar::Real(dual(s).tangent(g)))
            .collect()
    })
}

/// Scalar expressions in the input coordinates, used for primitives and random subjects.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(usize),
    Const(f64),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn sin(a: Expr) -> Expr {
        Expr::Sin(Box::new(a))
    }

    pub fn cos(a: Expr) -> Expr {
        Expr::Cos(Box::new(a))
    }

    pub fn exp(a: Expr) -> Expr {
        Expr::Exp(Box::new(a))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn eval(&self, vars: &[DualNumber]) -> DualNumber {
        match self {
            Expr::Var(i) => vars[*i].clone(),
            Expr::Const(c) => DualNumber::constant(*c),
            Expr::Add(a, b) => &a.eval(vars) + &b.eval(vars),
            Expr::Mul(a, b) => &a.eval(vars) * &b.eval(vars),
            Expr::Neg(a) => -&a.eval(vars),
            Expr::Sin(a) => a.eval(vars).sin(),
            Expr::Cos(a) => a.eval(vars).cos(),
            Expr::Exp(a) => a.eval(vars).exp(),
        }
    }

    /// Plain floating-point evaluation.
    pub fn value(&self, vars: &[f64]) -> f64 {
        match self {
            Expr::Var(i) => vars[*i],
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.value(vars) + b.value(vars),
            Expr::Mul(a, b) => a.value(vars) * b.value(vars),
            Expr::Neg(a) => -a.value(vars),
            Expr::Sin(a) => a.value(vars).sin(),
            Expr::Cos(a) => a.value(vars).cos(),
            Expr::Exp(a) => a.value(vars).exp(),
        }
    }

    fn is_bounded(&self) -> bool {
        matches!(self, Expr::Sin(_) | Expr::Cos(_) | Expr::Const(_))
    }

    /// Draws a random expression over `vars` inputs with composition depth at most `depth`.
    ///
    /// Exponentials only ever receive bounded arguments so values stay finite.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, vars: usize, depth: usize) -> Expr {
        if depth == 0 || rng.gen_bool(0.25) {
            return if rng.gen_bool(0.75) {
                Expr::Var(rng.gen_range(0..vars))
            } else {
                Expr::Const((rng.gen_range(-20..=20) as f64) / 10.0)
            };
        }
        let sub = |rng: &mut R| Expr::random(rng, vars, depth - 1);
        match rng.gen_range(0..6) {
            0 => Expr::add(sub(rng), sub(rng)),
            1 => Expr::mul(sub(rng), sub(rng)),
            2 => Expr::sin(sub(rng)),
            3 => Expr::cos(sub(rng)),
            4 => {
                let arg = sub(rng);
                if arg.is_bounded() {
                    Expr::exp(arg)
                } else {
                    Expr::exp(Expr::sin(arg))
                }
            }
            _ => Expr::neg(sub(rng)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Sin(a) => write!(f, "sin {a}"),
            Expr::Cos(a) => write!(f, "cos {a}"),
            Expr::Exp(a) => write!(f, "exp {a}"),
        }
    }
}

/// The smooth map `R^n -> R^m` computing one expression per output coordinate.
pub fn from_exprs(inputs: usize, exprs: Vec<Expr>) -> Morphism {
    let label = if exprs.len() == 1 {
        exprs[0].to_string()
    } else {
        let parts: Vec<_> = exprs.iter().map(Expr::to_string).collect();
        format!("[{}]", parts.join(", "))
    };
    let dom = Space::Real(inputs);
    let cod = Space::Real(exprs.len());
    let exprs = Arc::new(exprs);
    Morphism::new(dom, cod, label, move |x| {
        let vars: Vec<DualNumber> = x.scalars().iter().map(|s| dual(s).clone()).collect();
        exprs.iter().map(|e| Scalar::Real(e.eval(&vars))).collect()
    })
    .in_model(ModelTag::Smooth)
}

/// The coordinatewise map applying `expr` (in the single variable `x0`) to every coordinate.
pub fn coordinatewise(dim: usize, expr: Expr, name: &str) -> Morphism {
    Morphism::new(Space::Real(dim), Space::Real(dim), name, move |x| {
        x.scalars()
            .iter()
            .map(|s| Scalar::Real(expr.eval(std::slice::from_ref(dual(s)))))
            .collect()
    })
    .in_model(ModelTag::Smooth)
}

/// Coordinatewise binary map `R^d x R^d -> R^d` applying `expr` in `x0, x1`.
pub fn coordinatewise2(dim: usize, expr: Expr, name: &str) -> Morphism {
    let r = Space::Real(dim);
    Morphism::new(r.square(), r, name, move |x| {
        let (a, b) = x.scalars().split_at(dim);
        a.iter()
            .zip(b)
            .map(|(u, v)| Scalar::Real(expr.eval(&[dual(u).clone(), dual(v).clone()])))
            .collect()
    })
    .in_model(ModelTag::Smooth)
}

/// Central finite difference of the first output coordinate along `direction`.
pub fn central_difference(f: &Morphism, x: &[f64], direction: &[f64], h: f64) -> Vec<f64> {
    let at = |t: f64| {
        let p: Vec<f64> = x.iter().zip(direction).map(|(a, d)| a + t * d).collect();
        f.eval(&Element::reals(&p)).to_reals().expect("real output")
    };
    let (hi, lo) = (at(h), at(-h));
    hi.iter().zip(&lo).map(|(a, b)| (a - b) / (2.0 * h)).collect()
}

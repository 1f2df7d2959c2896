//! Type inference for terms by first-order unification.

use std::fmt;

use crate::error::{Error, Result};
use crate::models::Registry;
use crate::space::Space;
use crate::term::syntax::Term;

#[derive(Clone, Debug, PartialEq)]
enum Ty {
    Var(usize),
    Atom(Space),
    Prod(Box<Ty>, Box<Ty>),
    Unit,
}

impl Ty {
    fn of(space: &Space) -> Ty {
        match space {
            Space::Product(a, b) => Ty::Prod(Box::new(Ty::of(a)), Box::new(Ty::of(b))),
            Space::Terminal => Ty::Unit,
            other => Ty::Atom(other.clone()),
        }
    }

    fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Var(i) => write!(f, "?{i}"),
            Ty::Atom(s) => write!(f, "{s}"),
            Ty::Prod(a, b) => write!(f, "({a} x {b})"),
            Ty::Unit => f.write_str("1"),
        }
    }
}

/// A term with the domain and codomain of every node resolved.
#[derive(Clone, Debug)]
pub struct TypedTerm {
    pub node: Term,
    pub dom: Space,
    pub cod: Space,
    pub children: Vec<TypedTerm>,
}

struct Inferred {
    node: Term,
    dom: Ty,
    cod: Ty,
    children: Vec<Inferred>,
}

struct Checker<'r> {
    registry: &'r Registry,
    subst: Vec<Option<Ty>>,
}

impl Checker<'_> {
    fn fresh(&mut self) -> Ty {
        self.subst.push(None);
        Ty::Var(self.subst.len() - 1)
    }

    fn walk(&self, ty: &Ty) -> Ty {
        match ty {
            Ty::Var(i) => match &self.subst[*i] {
                Some(t) => self.walk(t),
                None => ty.clone(),
            },
            other => other.clone(),
        }
    }

    fn resolve(&self, ty: &Ty) -> Ty {
        match self.walk(ty) {
            Ty::Prod(a, b) => Ty::prod(self.resolve(&a), self.resolve(&b)),
            other => other,
        }
    }

    fn occurs(&self, var: usize, ty: &Ty) -> bool {
        match self.walk(ty) {
            Ty::Var(i) => i == var,
            Ty::Prod(a, b) => self.occurs(var, &a) || self.occurs(var, &b),
            _ => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty, path: &str) -> Result<()> {
        let (a, b) = (self.walk(a), self.walk(b));
        match (&a, &b) {
            (Ty::Var(i), Ty::Var(j)) if i == j => Ok(()),
            (Ty::Var(i), other) | (other, Ty::Var(i)) => {
                if self.occurs(*i, other) {
                    return Err(self.mismatch(&a, &b, path));
                }
                self.subst[*i] = Some(other.clone());
                Ok(())
            }
            (Ty::Unit, Ty::Unit) => Ok(()),
            (Ty::Atom(x), Ty::Atom(y)) if x == y => Ok(()),
            (Ty::Prod(a0, a1), Ty::Prod(b0, b1)) => {
                self.unify(a0, b0, path)?;
                self.unify(a1, b1, path)
            }
            _ => Err(self.mismatch(&a, &b, path)),
        }
    }

    fn mismatch(&self, a: &Ty, b: &Ty, path: &str) -> Error {
        Error::Type {
            path: path.to_string(),
            message: format!("cannot match {} with {}", self.resolve(a), self.resolve(b)),
        }
    }

    fn infer(&mut self, term: &Term, path: &str) -> Result<Inferred> {
        let child = |i: usize| format!("{path}.{i}");
        let (dom, cod, children) = match term {
            Term::Id => {
                let a = self.fresh();
                (a.clone(), a, Vec::new())
            }
            Term::Pi0 | Term::Pi1 => {
                let (a, b) = (self.fresh(), self.fresh());
                let out = if term == &Term::Pi0 { a.clone() } else { b.clone() };
                (Ty::prod(a, b), out, Vec::new())
            }
            Term::Zero => (self.fresh(), self.fresh(), Vec::new()),
            Term::One => (self.fresh(), Ty::Unit, Vec::new()),
            Term::Prim(name) => {
                let f = self.registry.get(name)?;
                (Ty::of(f.dom()), Ty::of(f.cod()), Vec::new())
            }
            Term::Comp(g, f) => {
                let fi = self.infer(f, &child(1))?;
                let gi = self.infer(g, &child(0))?;
                self.unify(&gi.dom, &fi.cod, path)?;
                (fi.dom.clone(), gi.cod.clone(), vec![gi, fi])
            }
            Term::Pair(f, g) => {
                let fi = self.infer(f, &child(0))?;
                let gi = self.infer(g, &child(1))?;
                self.unify(&fi.dom, &gi.dom, path)?;
                (fi.dom.clone(), Ty::prod(fi.cod.clone(), gi.cod.clone()), vec![fi, gi])
            }
            Term::Add(f, g) => {
                let fi = self.infer(f, &child(0))?;
                let gi = self.infer(g, &child(1))?;
                self.unify(&fi.dom, &gi.dom, path)?;
                self.unify(&fi.cod, &gi.cod, path)?;
                (fi.dom.clone(), fi.cod.clone(), vec![fi, gi])
            }
            Term::Eps(f) => {
                let fi = self.infer(f, &child(0))?;
                (fi.dom.clone(), fi.cod.clone(), vec![fi])
            }
            Term::D(f) => {
                let fi = self.infer(f, &child(0))?;
                (Ty::prod(fi.dom.clone(), fi.dom.clone()), fi.cod.clone(), vec![fi])
            }
        };
        Ok(Inferred {
            node: term.clone(),
            dom,
            cod,
            children,
        })
    }

    fn space(&self, ty: &Ty, base: &Space) -> Space {
        match self.walk(ty) {
            Ty::Var(_) => base.clone(),
            Ty::Atom(s) => s,
            Ty::Unit => Space::Terminal,
            Ty::Prod(a, b) => Space::product(&self.space(&a, base), &self.space(&b, base)),
        }
    }

    /// Fixes every unresolved variable to the base space, outermost first.
    fn default_vars(&mut self, ty: &Ty, base: &Ty) {
        match self.walk(ty) {
            Ty::Var(i) => self.subst[i] = Some(base.clone()),
            Ty::Prod(a, b) => {
                self.default_vars(&a, base);
                self.default_vars(&b, base);
            }
            _ => {}
        }
    }

    fn finish(&mut self, inferred: &Inferred, base: &Space) -> TypedTerm {
        let base_ty = Ty::of(base);
        self.default_vars(&inferred.dom, &base_ty);
        self.default_vars(&inferred.cod, &base_ty);
        let children = inferred.children.iter().map(|c| self.finish(c, base)).collect();
        TypedTerm {
            node: inferred.node.clone(),
            dom: self.space(&inferred.dom, base),
            cod: self.space(&inferred.cod, base),
            children,
        }
    }
}

/// Infers types, optionally pinning the root's domain and codomain. Free type
/// variables default to the registry's base space.
pub fn annotate(
    term: &Term,
    registry: &Registry,
    dom: Option<&Space>,
    cod: Option<&Space>,
) -> Result<TypedTerm> {
    let mut checker = Checker {
        registry,
        subst: Vec::new(),
    };
    let root = "$";
    let inferred = checker.infer(term, root)?;
    if let Some(d) = dom {
        checker.unify(&inferred.dom, &Ty::of(d), root)?;
    }
    if let Some(c) = cod {
        checker.unify(&inferred.cod, &Ty::of(c), root)?;
    }
    Ok(checker.finish(&inferred, registry.base()))
}

/// The domain and codomain of `term`.
pub fn typecheck(term: &Term, registry: &Registry) -> Result<(Space, Space)> {
    let typed = annotate(term, registry, None, None)?;
    Ok((typed.dom, typed.cod))
}

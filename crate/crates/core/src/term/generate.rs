//! Random well-typed terms over the base space `B`, its square and the terminal space.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::models::Registry;
use crate::space::Space;
use crate::term::syntax::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Base,
    Square,
    Unit,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Base, Shape::Square, Shape::Unit];

    pub fn space(self, base: &Space) -> Space {
        match self {
            Shape::Base => base.clone(),
            Shape::Square => base.square(),
            Shape::Unit => Space::Terminal,
        }
    }

    fn of(space: &Space, base: &Space) -> Option<Shape> {
        Shape::ALL.into_iter().find(|s| &s.space(base) == space)
    }
}

/// A generator of random terms of a requested shape.
pub struct TermGenerator {
    prims: Vec<(String, Shape, Shape)>,
}

impl TermGenerator {
    pub fn new(registry: &Registry) -> TermGenerator {
        let base = registry.base();
        let prims = registry
            .iter()
            .filter_map(|(name, f)| Some((name.to_string(), Shape::of(f.dom(), base)?, Shape::of(f.cod(), base)?)))
            .collect();
        TermGenerator { prims }
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R, dom: Shape, cod: Shape) -> Term {
        let mut options = vec![Term::Zero];
        if dom == cod {
            options.push(Term::Id);
        }
        if dom == Shape::Square && cod == Shape::Base {
            options.extend([Term::Pi0, Term::Pi1]);
        }
        if cod == Shape::Unit {
            options.push(Term::One);
        }
        for (name, d, c) in &self.prims {
            if (*d, *c) == (dom, cod) {
                options.extend(std::iter::repeat_n(Term::prim(name), 3));
            }
        }
        options.choose(rng).cloned().expect("zero is always available")
    }

    /// A term with random endpoints.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> (Term, Shape, Shape) {
        let dom = *Shape::ALL.choose(rng).unwrap();
        let cod = *Shape::ALL.choose(rng).unwrap();
        (self.term(rng, dom, cod, depth), dom, cod)
    }

    /// A random term `dom -> cod` of depth at most `depth`.
    pub fn term<R: Rng + ?Sized>(&self, rng: &mut R, dom: Shape, cod: Shape, depth: usize) -> Term {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.leaf(rng, dom, cod);
        }
        let below = depth - 1;
        let mut kinds = vec![0, 1, 2];
        if cod == Shape::Square {
            kinds.push(3);
        }
        if dom == Shape::Square {
            kinds.push(4);
        }
        match *kinds.choose(rng).unwrap() {
            0 => {
                let mid = *Shape::ALL.choose(rng).unwrap();
                Term::comp(self.term(rng, mid, cod, below), self.term(rng, dom, mid, below))
            }
            1 => Term::add(self.term(rng, dom, cod, below), self.term(rng, dom, cod, below)),
            2 => Term::eps(self.term(rng, dom, cod, below)),
            3 => Term::pair(
                self.term(rng, dom, Shape::Base, below),
                self.term(rng, dom, Shape::Base, below),
            ),
            _ => Term::d(self.term(rng, Shape::Base, cod, below)),
        }
    }
}

/// A random term with random endpoints, of depth at most `depth`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, registry: &Registry, depth: usize) -> (Term, Shape, Shape) {
    TermGenerator::new(registry).random(rng, depth)
}

//! Additive maps with the infinitesimal extension `eps(f) = r * f`.
//!
//! The difference operator is `d[f](x, y) = f(y)`, which only satisfies the
//! axioms when `f` is additive, so every differentiated map is screened first.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::{self, Element};
use crate::error::{Error, Result};
use crate::morphism::{self, Morphism};
use crate::space::Space;

const SCREEN_POINTS: usize = 32;
const SCREEN_SEED: u64 = 0x5EED_ADD1;

/// Looks for a pair `(x, y)` with `f(x + y) != f(x) + f(y)`.
pub fn additivity_witness(f: &Morphism, points: usize, seed: u64) -> Option<(Element, Element)> {
    let dom = f.dom();
    let (dl, cl) = (dom.layout().leaves, f.cod().layout().leaves);
    let zero = dom.zero();
    if f.eval(&zero) != f.cod().zero() {
        return Some((zero.clone(), zero));
    }
    let pairs = Space::product(dom, dom);
    let check = |p: &Element| {
        let (x, y) = p.split(dom.width());
        let lhs = f.eval(&element::add(&dl, &x, &y));
        let rhs = element::add(&cl, &f.eval(&x), &f.eval(&y));
        (!element::close(&lhs, &rhs, 1e-9, 1e-6)).then_some((x, y))
    };
    match pairs.size() {
        Some(n) if n <= points as u128 => pairs.enumerate().ok()?.find_map(|p| check(&p)),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..points).find_map(|_| check(&pairs.sample(&mut rng, 10.0)))
        }
    }
}

pub fn check_additive(f: &Morphism) -> Result<()> {
    match additivity_witness(f, SCREEN_POINTS, SCREEN_SEED) {
        None => Ok(()),
        Some((x, y)) => Err(Error::NotAdditive {
            subject: f.label().to_string(),
            point: format!(
                "({}, {})",
                element::format(f.dom(), &x),
                element::format(f.dom(), &y)
            ),
        }),
    }
}

pub fn derivative(f: &Morphism) -> Result<Morphism> {
    check_additive(f).map_err(|e| Error::ModelRestriction(e.to_string()))?;
    let second = morphism::proj1(f.dom(), f.dom());
    morphism::compose(f, &second)
}

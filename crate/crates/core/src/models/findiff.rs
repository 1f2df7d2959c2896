//! Abelian groups with the finite-difference operator `d[f](x, y) = f(x + y) - f(x)`.

use std::sync::{Arc, OnceLock};

use crate::element::{self, Element};
use crate::morphism::{self, Morphism};
use crate::space::{self, Leaf};

/// Derivatives on finite groups with at most this many points are tabulated on first use.
pub const MEMO_LIMIT: u128 = 4096;

pub fn derivative(f: &Morphism) -> Morphism {
    let dom = f.dom().clone();
    let w = dom.width();
    let dom_leaves = dom.layout().leaves;
    let cod_leaves = f.cod().layout().leaves;
    let inner = f.clone();
    let d = Morphism::new(dom.square(), f.cod().clone(), "d", move |p| {
        let (x, y) = p.scalars().split_at(w);
        let moved = inner.eval(&element::add_scalars(&dom_leaves, x, y));
        element::sub(&cod_leaves, &moved, &inner.eval(&p.slice(0..w)))
    });
    let finite_group = dom.leaves().iter().all(|l| matches!(l, Leaf::Cyclic(_)));
    match d.dom().size() {
        Some(n) if finite_group && n <= MEMO_LIMIT => memoized(d),
        _ => d,
    }
}

/// The same map, evaluated once at every point on first use and looked up afterwards.
fn memoized(f: Morphism) -> Morphism {
    let leaves = f.dom().leaves();
    let cell: Arc<OnceLock<Vec<Element>>> = Arc::new(OnceLock::new());
    let inner = f.clone();
    Morphism::new(f.dom().clone(), f.cod().clone(), f.label().to_string(), move |x| {
        let values = cell.get_or_init(|| morphism::tabulate(&inner).expect("finite domain"));
        let i = space::index_in(&leaves, x.scalars()).expect("argument in the domain");
        values[i as usize].clone()
    })
}

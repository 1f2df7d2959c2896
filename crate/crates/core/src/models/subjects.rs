//! Seeded pools of random subject maps for law checking.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::equality::mix;
use crate::error::{Error, Result};
use crate::kernel::{Model, ModelTag};
use crate::models::primitives::reduce;
use crate::models::smooth::{self, Expr};
use crate::models::streams;
use crate::morphism::{self, Morphism};
use crate::space::{Leaf, Space};

/// Largest domain for which random lookup tables are drawn.
pub const TABLE_LIMIT: u128 = 100_000;
/// Random polynomials over integer leaves stay quadratic so nested checks fit in `i64`.
const INT_DEGREE: u32 = 2;
/// Composition depth of random smooth expressions.
pub const SMOOTH_DEPTH: usize = 3;

/// A uniformly random lookup table `dom -> cod`.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, dom: &Space, cod: &Space) -> Result<Morphism> {
    let size = dom.size().ok_or_else(|| Error::NotFinite(dom.to_string()))?;
    if !cod.is_finite() {
        return Err(Error::NotFinite(cod.to_string()));
    }
    let values = (0..size).map(|_| cod.sample(rng, 0.0)).collect();
    morphism::table(dom, cod, values)
}

/// A polynomial with integer coefficients in every output leaf.
#[derive(Clone, Debug)]
struct IntPoly {
    /// Per output leaf: list of (coefficient, exponent per input leaf).
    rows: Vec<Vec<(i64, Vec<u32>)>>,
}

impl IntPoly {
    fn random<R: Rng + ?Sized>(rng: &mut R, inputs: usize, outputs: usize, degree: u32) -> IntPoly {
        let rows = (0..outputs)
            .map(|_| {
                (0..rng.gen_range(1..=4))
                    .map(|_| {
                        let mut exps = vec![0u32; inputs];
                        for _ in 0..rng.gen_range(0..=degree) {
                            if inputs > 0 {
                                exps[rng.gen_range(0..inputs)] += 1;
                            }
                        }
                        (rng.gen_range(-3..=3), exps)
                    })
                    .collect()
            })
            .collect();
        IntPoly { rows }
    }

    fn eval(&self, xs: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(0i64, |acc, (c, exps)| {
                    let term = exps.iter().zip(xs).try_fold(*c, |t, (&e, &x)| {
                        t.checked_mul(x.checked_pow(e)?)
                    });
                    acc.checked_add(term.expect("integer overflow in polynomial subject"))
                        .expect("integer overflow in polynomial subject")
                })
            })
            .collect()
    }

    fn describe(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, exps)| {
                        let vars: String = exps
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                            .collect();
                        format!("{c}{vars}")
                    })
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        format!("poly[{}]", rows.join("; "))
    }
}

/// A random integer polynomial map, total on every integer input.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, dom: &Space, cod: &Space) -> Morphism {
    polynomial_of_degree(rng, dom, cod, INT_DEGREE)
}

fn polynomial_of_degree<R: Rng + ?Sized>(rng: &mut R, dom: &Space, cod: &Space, degree: u32) -> Morphism {
    let poly = IntPoly::random(rng, dom.width(), cod.width(), degree);
    let leaves: Arc<[Leaf]> = cod.layout().leaves;
    Morphism::new(dom.clone(), cod.clone(), poly.describe(), move |x| {
        let xs = x.to_ints().expect("integer inputs");
        poly.eval(&xs)
            .into_iter()
            .zip(leaves.iter())
            .map(|(v, leaf)| reduce(*leaf, Some(v)))
            .collect()
    })
}

fn only_cyclic(space: &Space) -> bool {
    space.leaves().iter().all(|l| matches!(l, Leaf::Cyclic(_)))
}

/// A random map suitable for the finite-difference model.
pub fn random_findiff<R: Rng + ?Sized>(rng: &mut R, dom: &Space, cod: &Space) -> Result<Morphism> {
    match dom.size() {
        Some(n) if n <= TABLE_LIMIT && only_cyclic(dom) && only_cyclic(cod) => random_table(rng, dom, cod),
        _ => Ok(random_polynomial(rng, dom, cod)),
    }
}

/// A random additive map: an integer matrix between compatible leaves.
pub fn random_additive<R: Rng + ?Sized>(rng: &mut R, dom: &Space, cod: &Space) -> Morphism {
    let (dl, cl) = (dom.leaves(), cod.leaves());
    let matrix: Vec<Vec<i64>> = cl
        .iter()
        .map(|out| {
            dl.iter()
                .map(|inp| match (out, inp) {
                    (Leaf::Cyclic(m), Leaf::Cyclic(n)) if m == n => rng.gen_range(-3..=3),
                    (Leaf::Int { .. }, Leaf::Int { .. }) => rng.gen_range(-3..=3),
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let label = format!("matrix{matrix:?}");
    let leaves: Arc<[Leaf]> = cl.into();
    Morphism::new(dom.clone(), cod.clone(), label, move |x| {
        let xs = x.to_ints().expect("integer inputs");
        matrix
            .iter()
            .zip(leaves.iter())
            .map(|(row, leaf)| {
                let v = row.iter().zip(&xs).try_fold(0i64, |acc, (a, b)| {
                    acc.checked_add(a.checked_mul(*b)?)
                });
                reduce(*leaf, v)
            })
            .collect()
    })
}

fn random_smooth<R: Rng + ?Sized>(rng: &mut R, dom: &Space, cod: &Space) -> Result<Morphism> {
    let inputs = dom.width();
    let exprs: Vec<Expr> = (0..cod.width())
        .map(|_| Expr::random(rng, inputs.max(1), SMOOTH_DEPTH))
        .collect();
    let f = smooth::from_exprs(inputs.max(1), exprs);
    if dom == &Space::Real(inputs) && cod == &Space::Real(cod.width()) && inputs > 0 {
        return Ok(f);
    }
    let reshape_in = Morphism::new(dom.clone(), Space::Real(inputs.max(1)), "flatten", move |x| {
        if x.is_empty() {
            Element::real(0.0)
        } else {
            x.clone()
        }
    });
    let reshape_out = Morphism::new(f.cod().clone(), cod.clone(), "reshape", |x| x.clone());
    let inner = morphism::compose(&f, &reshape_in)?;
    Ok(morphism::compose(&reshape_out, &inner)?.named(f.label().to_string()))
}

fn random_window<R: Rng + ?Sized>(rng: &mut R, base: &Space) -> Result<Morphism> {
    if only_cyclic(base) {
        random_findiff(rng, &base.square(), base)
    } else {
        Ok(random_polynomial(rng, &base.square(), base))
    }
}

fn random_causal<R: Rng + ?Sized>(rng: &mut R, space: &Space) -> Result<Morphism> {
    let Space::Stream { base, .. } = space else {
        return Err(Error::ModelRestriction(format!("{space} is not a stream space")));
    };
    let mut f = streams::windowed_table(space, random_window(rng, base)?)?;
    match rng.gen_range(0..4) {
        0 => f = morphism::compose(&streams::prefix_sum(space)?, &f)?,
        1 => f = morphism::compose(&f, &streams::delay(space)?)?,
        2 => {
            let g = streams::windowed_table(space, random_window(rng, base)?)?;
            f = morphism::add(&f, &g)?;
        }
        _ => {}
    }
    Ok(f)
}

/// Random causal stream endomaps whose first output entry is affine in the first input entry.
pub fn random_head_affine(space: &Space, count: usize, seed: u64) -> Result<Vec<Morphism>> {
    let Space::Stream { len, .. } = space else {
        return Err(Error::ModelRestriction(format!("{space} is not a stream space")));
    };
    let tag = ModelTag::Streams { k: *len };
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, 0xAFF1));
    (0..count)
        .map(|i| {
            let f = random_causal(&mut rng, space)?;
            let g = streams::with_affine_head(&f, rng.gen_range(-2..=2), rng.gen_range(-2..=2))?;
            let label = format!("h{i}:{}", g.label());
            Ok(g.named(label).in_model(tag.clone()))
        })
        .collect()
}

/// Draws `count` subjects `space -> space` for `model`, deterministically from `seed`.
pub fn random_subjects(model: &Model, space: &Space, count: usize, seed: u64) -> Result<Vec<Morphism>> {
    random_subjects_between(model, space, space, count, seed)
}

pub fn random_subjects_between(
    model: &Model,
    dom: &Space,
    cod: &Space,
    count: usize,
    seed: u64,
) -> Result<Vec<Morphism>> {
    model.check_space(dom)?;
    model.check_space(cod)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let f = match model.tag() {
                ModelTag::FinDiff => random_findiff(&mut rng, dom, cod)?,
                ModelTag::Smooth => random_smooth(&mut rng, dom, cod)?,
                ModelTag::ModuleMaps { .. } => random_additive(&mut rng, dom, cod),
                ModelTag::Streams { .. } if dom == cod => random_causal(&mut rng, dom)?,
                ModelTag::Streams { .. } => {
                    return Err(Error::ModelRestriction(
                        "random stream subjects are endomaps".into(),
                    ))
                }
            };
            let label = format!("s{i}:{}", f.label());
            Ok(f.named(label).in_model(model.tag().clone()))
        })
        .collect()
}

//! Exponentials of finite spaces in the finite-difference model.
//!
//! The exponential `B => C` is the group of lookup tables indexed by the
//! enumeration of `B`, with pointwise addition.

use crate::element::Element;
use crate::equality::{morphisms_equal, EqualityReport, EqualityStrategy, DEFAULT_BOUND};
use crate::error::{Error, Result};
use crate::kernel::{law_report, Model, ModelTag};
use crate::morphism::{self, Morphism};
use crate::report::LawReport;
use crate::space::{Leaf, Space};

/// `arg => res`, provided `arg` is a finite group of manageable size.
pub fn function_space(arg: &Space, res: &Space) -> Result<Space> {
    if arg.leaves().iter().any(|l| !matches!(l, Leaf::Cyclic(_))) {
        return Err(Error::NotFinite(format!("{arg} is not a finite group")));
    }
    let rows = arg.size().ok_or_else(|| Error::NotFinite(arg.to_string()))?;
    if rows > DEFAULT_BOUND {
        return Err(Error::SizeExceeded {
            size: rows,
            bound: DEFAULT_BOUND,
        });
    }
    let space = Space::function(arg, res);
    space.validate()?;
    Ok(space)
}

fn row_index(arg: &Space, x: &Element) -> usize {
    arg.index_of(x).expect("argument lies in a finite space") as usize
}

fn row(table: &Element, index: usize, width: usize) -> Element {
    table.slice(index * width..(index + 1) * width)
}

/// `ev: (B => C) x B -> C`
pub fn ev(arg: &Space, res: &Space) -> Result<Morphism> {
    let fs = function_space(arg, res)?;
    let (tw, rw) = (fs.width(), res.width());
    let dom = Space::product(&fs, arg);
    let arg = arg.clone();
    Ok(Morphism::new(dom, res.clone(), "ev", move |p| {
        let (table, x) = p.split(tw);
        row(&table, row_index(&arg, &x), rw)
    }))
}

/// `Lambda(f): A -> (B => C)` for `f: A x B -> C`.
pub fn curry(f: &Morphism) -> Result<Morphism> {
    let (a, b) = f
        .dom()
        .factors()
        .ok_or_else(|| Error::ShapeMismatch(format!("{} is not a product", f.dom())))?;
    let fs = function_space(b, f.cod())?;
    let points: Vec<Element> = b.enumerate()?.collect();
    let inner = f.clone();
    let label = format!("(curry {})", f.label());
    Ok(Morphism::new(a.clone(), fs, label, move |x| {
        points
            .iter()
            .flat_map(|y| inner.eval(&Element::pair(x, y)).scalars().to_vec())
            .collect()
    }))
}

/// `Lambda^-1(g) = ev . (g x 1): A x B -> C` for `g: A -> (B => C)`.
pub fn uncurry(g: &Morphism) -> Result<Morphism> {
    let Space::Function { arg, res } = g.cod() else {
        return Err(Error::ShapeMismatch(format!("{} is not a function space", g.cod())));
    };
    let evaluation = ev(arg, res)?;
    let lifted = morphism::product(g, &morphism::identity(arg));
    Ok(morphism::compose(&evaluation, &lifted)?.named(format!("(uncurry {})", g.label())))
}

/// `sw = <<pi00, pi1>, pi10>: (A x B) x C -> (A x C) x B`
pub fn sw(a: &Space, b: &Space, c: &Space) -> Morphism {
    let ab = Space::product(a, b);
    let dom = Space::product(&ab, c);
    let (wa, wb) = (a.width(), b.width());
    let cod = Space::product(&Space::product(a, c), b);
    Morphism::new(dom, cod, "sw", move |p| {
        let s = p.scalars();
        s[..wa]
            .iter()
            .chain(&s[wa + wb..])
            .chain(&s[wa..wa + wb])
            .cloned()
            .collect()
    })
}

/// Every map `dom -> cod` as a table, in enumeration order.
pub fn all_functions(dom: &Space, cod: &Space) -> Result<Vec<Morphism>> {
    let fs = function_space(dom, cod)?;
    let count = fs.size().ok_or_else(|| Error::NotFinite(fs.to_string()))?;
    if count > DEFAULT_BOUND {
        return Err(Error::SizeExceeded {
            size: count,
            bound: DEFAULT_BOUND,
        });
    }
    let w = cod.width();
    let rows = dom.size().unwrap_or(0) as usize;
    fs.enumerate()?
        .enumerate()
        .map(|(i, table)| {
            let values = (0..rows).map(|r| row(&table, r, w)).collect();
            Ok(morphism::table(dom, cod, values)?.named(format!("t{i}")))
        })
        .collect()
}

fn require_findiff(model: &Model) -> Result<()> {
    if model.tag() != &ModelTag::FinDiff {
        return Err(Error::ModelRestriction(
            "exponentials are only provided in the finite-difference model".into(),
        ));
    }
    Ok(())
}

/// `Lambda(f + g) = Lambda(f) + Lambda(g)` and `Lambda(0) = 0`.
pub fn check_closed_left_additive(
    model: &Model,
    f: &Morphism,
    g: &Morphism,
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    require_findiff(model)?;
    let sum = morphisms_equal(
        &curry(&morphism::add(f, g)?)?,
        &morphism::add(&curry(f)?, &curry(g)?)?,
        strategy,
    )?;
    let zero_map = morphism::zero(f.dom(), f.cod());
    let lambda_zero = curry(&zero_map)?;
    let zero = morphisms_equal(
        &lambda_zero,
        &morphism::zero(lambda_zero.dom(), lambda_zero.cod()),
        strategy,
    )?;
    let subject = format!("{} + {}", f.label(), g.label());
    let name = model.name();
    Ok(vec![
        law_report("Closed.sum", &name, subject, strategy, sum),
        law_report("Closed.zero", &name, f.dom().to_string(), strategy, zero),
    ])
}

/// Both sides of the curry-derivative axiom for `f: A x B -> C`:
/// `d[Lambda(f)]` and `Lambda(d[f] . <pi0 x 1, pi1 x 0>)`.
pub fn curry_derivative_sides(model: &Model, f: &Morphism) -> Result<(Morphism, Morphism)> {
    let (a, b) = f
        .dom()
        .factors()
        .ok_or_else(|| Error::ShapeMismatch(format!("{} is not a product", f.dom())))?;
    let lhs = model.derivative(&curry(f)?)?;
    let (wa, wb) = (a.width(), b.width());
    let aa = a.square();
    let dom = Space::product(&aa, b);
    let zero_b = b.zero();
    let spread = Morphism::new(dom.clone(), f.dom().square(), "<pi0 x 1, pi1 x 0>", move |p| {
        let s = p.scalars();
        let (x, u, y) = (&s[..wa], &s[wa..2 * wa], &s[2 * wa..2 * wa + wb]);
        x.iter()
            .chain(y)
            .chain(u)
            .chain(zero_b.scalars())
            .cloned()
            .collect()
    });
    let partial = morphism::compose(&model.derivative(f)?, &spread)?;
    let rhs = curry(&partial)?;
    Ok((lhs, rhs))
}

/// The two difference-lambda axioms for `f: A x B -> C`.
pub fn check_dlambda(model: &Model, f: &Morphism, strategy: &EqualityStrategy) -> Result<Vec<LawReport>> {
    require_findiff(model)?;
    let (lhs, rhs) = curry_derivative_sides(model, f)?;
    let first = morphisms_equal(&lhs, &rhs, strategy)?;
    let second = morphisms_equal(&curry(&model.epsilon(f))?, &model.epsilon(&curry(f)?), strategy)?;
    let name = model.name();
    Ok(vec![
        law_report("CdLC.1", &name, f.label().to_string(), strategy, first),
        law_report("CdLC.2", &name, f.label().to_string(), strategy, second),
    ])
}

/// The two expansions of `d[ev . <Lambda(g), f>]` for `g: A x B -> C` and `f: A -> B`.
pub fn check_ev_identities(
    model: &Model,
    g: &Morphism,
    f: &Morphism,
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    require_findiff(model)?;
    let (a, b) = g
        .dom()
        .factors()
        .ok_or_else(|| Error::ShapeMismatch(format!("{} is not a product", g.dom())))?;
    if f.dom() != a || f.cod() != b {
        return Err(Error::DomainMismatch {
            expected: format!("{a} -> {b}"),
            found: format!("{} -> {}", f.dom(), f.cod()),
        });
    }
    let evaluation = ev(b, g.cod())?;
    let lambda_g = curry(g)?;
    let d_lambda_g = model.derivative(&lambda_g)?;
    let lhs = model.derivative(&morphism::compose(&evaluation, &morphism::pair(&lambda_g, f)?)?)?;

    let first = morphism::proj0(a, a);
    let second = morphism::proj1(a, a);
    let f_first = morphism::compose(f, &first)?;
    let df = model.derivative(f)?;
    let dg = model.derivative(g)?;
    let zero_a = morphism::zero(&a.square(), a);
    let change = morphism::pair(&zero_a, &df)?;

    let moved = morphism::add(&first, &model.epsilon(&second))?;
    let identity_i = morphism::add(
        &morphism::compose(&evaluation, &morphism::pair(&d_lambda_g, &f_first)?)?,
        &morphism::compose(&dg, &morphism::pair(&morphism::pair(&moved, &f_first)?, &change)?)?,
    )?;

    let f_moved = morphism::add(&f_first, &model.epsilon(&df))?;
    let identity_ii = morphism::add(
        &morphism::compose(&evaluation, &morphism::pair(&d_lambda_g, &f_moved)?)?,
        &morphism::compose(&dg, &morphism::pair(&morphism::pair(&first, &f_first)?, &change)?)?,
    )?;

    let subject = format!("{} with {}", g.label(), f.label());
    let name = model.name();
    Ok(vec![
        law_report("Ev.1", &name, subject.clone(), strategy, morphisms_equal(&lhs, &identity_i, strategy)?),
        law_report("Ev.2", &name, subject, strategy, morphisms_equal(&lhs, &identity_ii, strategy)?),
    ])
}

/// `uncurry(curry(f)) = f` together with `curry(uncurry(curry(f))) = curry(f)`.
pub fn check_curry_round_trip(f: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
    let curried = curry(f)?;
    let back = uncurry(&curried)?;
    let again = curry(&back)?;
    Ok(EqualityReport::combine([
        morphisms_equal(&back, f, strategy)?,
        morphisms_equal(&again, &curried, strategy)?,
    ]))
}

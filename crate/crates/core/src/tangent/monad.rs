//! The tangent bundle functor `T(A) = A x A` and its monad structure.

use crate::equality::{morphisms_equal, EqualityReport, EqualityStrategy};
use crate::error::Result;
use crate::kernel::{is_linear, law_report, Model};
use crate::morphism::{self, Morphism};
use crate::report::LawReport;
use crate::space::Space;

pub fn tangent_space(space: &Space) -> Space {
    space.square()
}

/// `T(f) = <f . pi0, d[f]>`
pub fn tangent_map(model: &Model, f: &Morphism) -> Result<Morphism> {
    let first = morphism::compose(f, &morphism::proj0(f.dom(), f.dom()))?;
    let tm = morphism::pair(&first, &model.derivative(f)?)?;
    Ok(tm.named(format!("(T {})", f.label())))
}

/// `eta = <1, 0>: A -> T(A)`
pub fn unit(space: &Space) -> Morphism {
    morphism::pair(&morphism::identity(space), &morphism::zero(space, space))
        .expect("same domain")
        .named("eta")
}

/// `mu = <pi0 pi0, pi1 pi0 + pi0 pi1 + eps(pi1 pi1)>: T(T(A)) -> T(A)`
pub fn multiplication(model: &Model, space: &Space) -> Morphism {
    let ta = tangent_space(space);
    let outer0 = morphism::proj0(&ta, &ta);
    let outer1 = morphism::proj1(&ta, &ta);
    let inner0 = morphism::proj0(space, space);
    let inner1 = morphism::proj1(space, space);
    let at = |i: &Morphism, o: &Morphism| morphism::compose(i, o).expect("projection chain");
    let base = at(&inner0, &outer0);
    let change = morphism::add(
        &morphism::add(&at(&inner1, &outer0), &at(&inner0, &outer1)).expect("same shape"),
        &model.epsilon(&at(&inner1, &outer1)),
    )
    .expect("same shape");
    morphism::pair(&base, &change)
        .expect("same domain")
        .named("mu")
}

/// `phi: T(A x B) -> T(A) x T(B)`, exchanging the middle coordinates.
pub fn interchange(a: &Space, b: &Space) -> Morphism {
    morphism::middle_swap(a, b, a, b).named("phi")
}

/// `T(A) x T(B) -> T(A x B)`. The middle swap is self-inverse, so only the typing differs.
pub fn interchange_inverse(a: &Space, b: &Space) -> Morphism {
    morphism::middle_swap(a, a, b, b).named("phi^-1")
}

fn law(
    name: &str,
    model: &Model,
    subject: impl Into<String>,
    strategy: &EqualityStrategy,
    eq: EqualityReport,
) -> LawReport {
    law_report(name, &model.name(), subject.into(), strategy, eq)
}

/// Unit and associativity laws on `space`, naturality for every subject.
pub fn check_monad_laws(
    model: &Model,
    space: &Space,
    subjects: &[Morphism],
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    let ta = tangent_space(space);
    let tta = tangent_space(&ta);
    let mu = multiplication(model, space);
    let mu_t = multiplication(model, &ta);
    let id_ta = morphism::identity(&ta);
    let tag = format!("space {space}");
    let mut out = vec![
        law(
            "Monad.unit-left",
            model,
            &tag,
            strategy,
            morphisms_equal(&morphism::compose(&mu, &unit(&ta))?, &id_ta, strategy)?,
        ),
        law(
            "Monad.unit-right",
            model,
            &tag,
            strategy,
            morphisms_equal(
                &morphism::compose(&mu, &tangent_map(model, &unit(space))?)?,
                &id_ta,
                strategy,
            )?,
        ),
        law(
            "Monad.assoc",
            model,
            &tag,
            strategy,
            morphisms_equal(
                &morphism::compose(&mu, &tangent_map(model, &mu)?)?,
                &morphism::compose(&mu, &mu_t)?,
                strategy,
            )?,
        ),
    ];
    debug_assert_eq!(mu_t.dom(), &tangent_space(&tta));
    for f in subjects {
        let (a, b) = (f.dom(), f.cod());
        let tf = tangent_map(model, f)?;
        let eta_nat = morphisms_equal(
            &morphism::compose(&tf, &unit(a))?,
            &morphism::compose(&unit(b), f)?,
            strategy,
        )?;
        out.push(law("Natural.unit", model, f.label(), strategy, eta_nat));
        let ttf = tangent_map(model, &tf)?;
        let mu_nat = morphisms_equal(
            &morphism::compose(&multiplication(model, b), &ttf)?,
            &morphism::compose(&tf, &multiplication(model, a))?,
            strategy,
        )?;
        out.push(law("Natural.mult", model, f.label(), strategy, mu_nat));
    }
    Ok(out)
}

/// Structural identities relating `T` to sums, projections, pairing, `d` and `eps`.
pub fn check_tangent_identities(
    model: &Model,
    space: &Space,
    subjects: &[Morphism],
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    let a = space;
    let tag = format!("space {a}");
    let mut out = Vec::new();
    let t = |f: &Morphism| tangent_map(model, f);

    let phi = interchange(a, a);
    let round_trip = morphisms_equal(
        &morphism::compose(&phi, &interchange_inverse(a, a))?,
        &morphism::identity(&a.square().square()),
        strategy,
    )?;
    out.push(law("Phi.inverse", model, &tag, strategy, round_trip));

    let id_eq = morphisms_equal(
        &t(&morphism::identity(a))?,
        &morphism::identity(&tangent_space(a)),
        strategy,
    )?;
    out.push(law("T.identity", model, &tag, strategy, id_eq));

    let proj_eq = EqualityReport::combine([
        morphisms_equal(
            &t(&morphism::proj0(a, a))?,
            &morphism::compose(&morphism::proj0(&a.square(), &a.square()), &phi)?,
            strategy,
        )?,
        morphisms_equal(
            &t(&morphism::proj1(a, a))?,
            &morphism::compose(&morphism::proj1(&a.square(), &a.square()), &phi)?,
            strategy,
        )?,
    ]);
    out.push(law("T.proj", model, &tag, strategy, proj_eq));

    let zero_eq = morphisms_equal(
        &t(&morphism::zero(a, a))?,
        &morphism::zero(&a.square(), &a.square()),
        strategy,
    )?;
    out.push(law("T.zero", model, &tag, strategy, zero_eq));

    let ta2 = tangent_space(&tangent_space(a));
    let mu = multiplication(model, a);
    let eps_mu = morphisms_equal(
        &model.epsilon(&mu),
        &morphism::compose(&mu, &model.epsilon_space(&ta2))?,
        strategy,
    )?;
    out.push(law("Eps.mult", model, &tag, strategy, eps_mu));

    let mut linear = vec![morphism::identity(a), model.epsilon_space(a)];
    for (i, f) in subjects.iter().enumerate() {
        let g = &subjects[(i + 1) % subjects.len()];
        let (fa, fb) = (f.dom(), f.cod());

        let sum = if g.dom() == fa && g.cod() == fb {
            morphisms_equal(&t(&morphism::add(f, g)?)?, &morphism::add(&t(f)?, &t(g)?)?, strategy)?
        } else {
            morphisms_equal(&t(&morphism::add(f, f)?)?, &morphism::add(&t(f)?, &t(f)?)?, strategy)?
        };
        out.push(law("T.additive", model, f.label(), strategy, sum));

        if g.dom() == fb {
            let functor = morphisms_equal(
                &t(&morphism::compose(g, f)?)?,
                &morphism::compose(&t(g)?, &t(f)?)?,
                strategy,
            )?;
            out.push(law("T.compose", model, f.label(), strategy, functor));
        }

        let partner = if g.dom() == fa { g } else { f };
        let paired = morphism::pair(f, partner)?;
        let pair_eq = morphisms_equal(
            &morphism::compose(&interchange(fb, partner.cod()), &t(&paired)?)?,
            &morphism::pair(&t(f)?, &t(partner)?)?,
            strategy,
        )?;
        out.push(law("T.pair", model, f.label(), strategy, pair_eq));

        let df = model.derivative(f)?;
        let deriv_eq = morphisms_equal(
            &t(&df)?,
            &morphism::compose(&model.derivative(&t(f)?)?, &interchange(fa, fa))?,
            strategy,
        )?;
        out.push(law("T.derivative", model, f.label(), strategy, deriv_eq));

        let eps_eq = morphisms_equal(&t(&model.epsilon(f))?, &model.epsilon(&t(f)?), strategy)?;
        out.push(law("T.eps", model, f.label(), strategy, eps_eq));

        if is_linear(model, f, strategy)?.holds() {
            linear.push(f.clone());
        }
    }
    for f in &linear {
        let lin = morphisms_equal(&t(f)?, &morphism::product(f, f), strategy)?;
        out.push(law("T.linear", model, f.label(), strategy, lin));
    }
    Ok(out)
}

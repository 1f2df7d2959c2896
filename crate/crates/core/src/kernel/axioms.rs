//! The axioms of a Cartesian difference category as executable checks.
//!
//! Every law is written once against [`DifferenceCategory`], so the same code
//! checks a base model and its Kleisli category. Points inside a law are
//! projections out of a product of copies of the domain, which makes
//! extensional equality of the two sides range over every choice of points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::element;
use crate::equality::{morphisms_equal, Counterexample, EqualityReport, EqualityStrategy};
use crate::error::{Error, Result};
use crate::kernel::Model;
use crate::morphism::{self, Morphism};
use crate::report::LawReport;
use crate::space::Space;

/// Identifiers of the checkable laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// Changes form a monoid.
    CA1,
    /// The action respects the monoid.
    CA2,
    /// `f(x + eps y) = f(x) + eps(d f(x, y))` phrased with the action.
    CAD1,
    /// Regularity of the derivative along the action.
    CAD2,
    CdC0,
    CdC1,
    CdC2,
    CdC3,
    CdC4,
    CdC5,
    CdC6,
    CdC7,
    CdC6a,
    CdC7a,
    E1,
    E2,
    E3,
    /// `d f` additive in its second argument.
    Additivity,
    DEps1,
    DEps2,
    DEps3,
    /// `eps(d2 f)((x, y), (z, 0)) = eps^2(d2 f)((x, y), (z, 0))`.
    StrongEps,
    Linearity,
    EpsLinearity,
    EpsVanishing,
    F1,
    F2,
    F3,
    F4,
    OplusEps,
}

use AxiomId::*;

impl AxiomId {
    pub const ALL: [AxiomId; 30] = [
        CA1, CA2, CAD1, CAD2, CdC0, CdC1, CdC2, CdC3, CdC4, CdC5, CdC6, CdC7, CdC6a, CdC7a, E1,
        E2, E3, Additivity, DEps1, DEps2, DEps3, StrongEps, Linearity, EpsLinearity,
        EpsVanishing, F1, F2, F3, F4, OplusEps,
    ];

    /// The laws every Cartesian difference category satisfies, with their consequences.
    pub const CORE: [AxiomId; 22] = [
        CA1, CA2, CAD1, CAD2, CdC0, CdC1, CdC2, CdC3, CdC4, CdC5, CdC6, CdC7, CdC6a, CdC7a, E1,
        E2, E3, DEps1, DEps2, DEps3, StrongEps, OplusEps,
    ];

    /// The difference-combinator axioms proper.
    pub const CDC: [AxiomId; 10] = [CdC0, CdC1, CdC2, CdC3, CdC4, CdC5, CdC6, CdC7, CdC6a, CdC7a];

    pub const FLATNESS: [AxiomId; 4] = [F1, F2, F3, F4];

    pub fn name(self) -> &'static str {
        match self {
            CA1 => "CA.1",
            CA2 => "CA.2",
            CAD1 => "CAD.1",
            CAD2 => "CAD.2",
            CdC0 => "CdC.0",
            CdC1 => "CdC.1",
            CdC2 => "CdC.2",
            CdC3 => "CdC.3",
            CdC4 => "CdC.4",
            CdC5 => "CdC.5",
            CdC6 => "CdC.6",
            CdC7 => "CdC.7",
            CdC6a => "CdC.6a",
            CdC7a => "CdC.7a",
            E1 => "E.1",
            E2 => "E.2",
            E3 => "E.3",
            Additivity => "Additivity",
            DEps1 => "DEps.1",
            DEps2 => "DEps.2",
            DEps3 => "DEps.3",
            StrongEps => "StrongEps",
            Linearity => "Linearity",
            EpsLinearity => "EpsLinearity",
            EpsVanishing => "EpsVanishing",
            F1 => "F.1",
            F2 => "F.2",
            F3 => "F.3",
            F4 => "F.4",
            OplusEps => "OplusEps",
        }
    }

    /// Whether the law is about a subject map rather than only about its domain.
    pub fn uses_subject(self) -> bool {
        !matches!(self, CA1 | CA2 | CdC3 | E3 | EpsVanishing | F1 | F2 | F4)
    }

    /// Parses a comma-separated list, accepting `all`, `core`, `cdc` and `flatness`.
    pub fn parse_list(text: &str) -> Result<Vec<AxiomId>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "all" | "core" => out.extend(AxiomId::CORE),
                "cdc" => out.extend(AxiomId::CDC),
                "flatness" => out.extend(AxiomId::FLATNESS),
                "every" => out.extend(AxiomId::ALL),
                _ => out.push(part.parse()?),
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidValue("no axioms selected".into()));
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|a| seen.insert(*a));
        Ok(out)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxiomId> {
        if s.trim().eq_ignore_ascii_case("cdc2-additivity") {
            return Ok(Additivity);
        }
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidValue(format!("unknown axiom `{s}`")))
    }
}

impl Serialize for AxiomId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for AxiomId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The structure a law checker needs from a category.
pub trait DifferenceCategory {
    type Map: Clone;

    fn name(&self) -> String;
    fn label(&self, f: &Self::Map) -> String;
    fn dom(&self, f: &Self::Map) -> Space;
    fn cod(&self, f: &Self::Map) -> Space;

    fn identity(&self, a: &Space) -> Self::Map;
    fn proj0(&self, a: &Space, b: &Space) -> Self::Map;
    fn proj1(&self, a: &Space, b: &Space) -> Self::Map;
    fn zero(&self, dom: &Space, cod: &Space) -> Self::Map;
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map>;
    fn pair(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map>;
    fn add(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map>;
    fn epsilon(&self, f: &Self::Map) -> Self::Map;
    fn derivative(&self, f: &Self::Map) -> Result<Self::Map>;

    /// The object whose elements serve as generalized points of `a`.
    fn point_space(&self, a: &Space) -> Space;
    /// Turns a plain map `P -> point_space(A)` into a point `P -> A` of this category.
    fn point(&self, selector: Morphism) -> Self::Map;
    fn equal(&self, f: &Self::Map, g: &Self::Map, strategy: &EqualityStrategy) -> Result<EqualityReport>;

    /// The induced action `pi0 + eps(pi1)`.
    fn oplus(&self, a: &Space) -> Result<Self::Map> {
        self.add(&self.proj0(a, a), &self.epsilon(&self.proj1(a, a)))
    }
}

/// A model viewed as a category of plain morphisms.
#[derive(Clone, Debug)]
pub struct Base<'a> {
    pub model: &'a Model,
}

impl DifferenceCategory for Base<'_> {
    type Map = Morphism;

    fn name(&self) -> String {
        self.model.name()
    }

    fn label(&self, f: &Morphism) -> String {
        f.label().to_string()
    }

    fn dom(&self, f: &Morphism) -> Space {
        f.dom().clone()
    }

    fn cod(&self, f: &Morphism) -> Space {
        f.cod().clone()
    }

    fn identity(&self, a: &Space) -> Morphism {
        morphism::identity(a)
    }

    fn proj0(&self, a: &Space, b: &Space) -> Morphism {
        morphism::proj0(a, b)
    }

    fn proj1(&self, a: &Space, b: &Space) -> Morphism {
        morphism::proj1(a, b)
    }

    fn zero(&self, dom: &Space, cod: &Space) -> Morphism {
        morphism::zero(dom, cod)
    }

    fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        morphism::compose(g, f)
    }

    fn pair(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        morphism::pair(f, g)
    }

    fn add(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        morphism::add(f, g)
    }

    fn epsilon(&self, f: &Morphism) -> Morphism {
        self.model.epsilon(f)
    }

    fn derivative(&self, f: &Morphism) -> Result<Morphism> {
        self.model.derivative(f)
    }

    fn point_space(&self, a: &Space) -> Space {
        a.clone()
    }

    fn point(&self, selector: Morphism) -> Morphism {
        selector
    }

    fn equal(&self, f: &Morphism, g: &Morphism, strategy: &EqualityStrategy) -> Result<EqualityReport> {
        morphisms_equal(f, g, strategy)
    }

    fn oplus(&self, a: &Space) -> Result<Morphism> {
        Ok(self.model.oplus(a))
    }
}

/// Shorthands for building the two sides of a law.
struct Law<'c, C: DifferenceCategory> {
    cat: &'c C,
    strategy: &'c EqualityStrategy,
}

impl<C: DifferenceCategory> Law<'_, C> {
    /// `n` independent generalized points of `a`, all defined on one parameter space.
    fn points(&self, a: &Space, n: usize) -> (Space, Vec<C::Map>) {
        let s = self.cat.point_space(a);
        let params = (1..n).fold(s.clone(), |acc, _| Space::product(&s, &acc));
        let w = s.width();
        let pts = (0..n)
            .map(|i| {
                let sel = morphism::slice(&params, &s, i * w, &format!("p{i}"));
                self.cat.point(sel)
            })
            .collect();
        (params, pts)
    }

    fn comp(&self, g: &C::Map, f: &C::Map) -> Result<C::Map> {
        self.cat.compose(g, f)
    }

    fn pair(&self, f: &C::Map, g: &C::Map) -> Result<C::Map> {
        self.cat.pair(f, g)
    }

    fn add(&self, f: &C::Map, g: &C::Map) -> Result<C::Map> {
        self.cat.add(f, g)
    }

    fn eps(&self, f: &C::Map) -> C::Map {
        self.cat.epsilon(f)
    }

    fn eps_n(&self, f: &C::Map, n: usize) -> C::Map {
        (0..n).fold(f.clone(), |acc, _| self.eps(&acc))
    }

    fn d(&self, f: &C::Map) -> Result<C::Map> {
        self.cat.derivative(f)
    }

    /// `x + eps(y)`
    fn moved(&self, x: &C::Map, y: &C::Map) -> Result<C::Map> {
        self.add(x, &self.eps(y))
    }

    /// `g . <<a, b>, <c, e>>`
    fn at4(&self, g: &C::Map, a: &C::Map, b: &C::Map, c: &C::Map, e: &C::Map) -> Result<C::Map> {
        let inner = self.pair(&self.pair(a, b)?, &self.pair(c, e)?)?;
        self.comp(g, &inner)
    }

    fn at2(&self, g: &C::Map, a: &C::Map, b: &C::Map) -> Result<C::Map> {
        self.comp(g, &self.pair(a, b)?)
    }

    fn eq(&self, lhs: &C::Map, rhs: &C::Map) -> Result<EqualityReport> {
        self.cat.equal(lhs, rhs, self.strategy)
    }
}

fn companion<C: DifferenceCategory>(
    subjects: &[C::Map],
    keep: impl Fn(&C::Map) -> bool,
) -> Option<&C::Map> {
    subjects.iter().skip(1).find(|g| keep(g))
}

/// Checks one law in any category. `subjects[0]` is the subject under test; the
/// rest supply partners for laws involving two maps.
pub fn check_in<C: DifferenceCategory>(
    cat: &C,
    axiom: AxiomId,
    subjects: &[C::Map],
    strategy: &EqualityStrategy,
) -> Result<LawReport> {
    let f = subjects
        .first()
        .ok_or_else(|| Error::InvalidValue("at least one subject is required".into()))?;
    let eq = evaluate(cat, axiom, subjects, strategy)?;
    let subject = if axiom.uses_subject() {
        cat.label(f)
    } else {
        format!("space {}", cat.dom(f))
    };
    Ok(law_report(axiom, &cat.name(), subject, strategy, eq))
}

/// Wraps an equality outcome as the report of one law.
pub fn law_report(
    axiom: impl fmt::Display,
    model: &str,
    subject: String,
    strategy: &EqualityStrategy,
    eq: EqualityReport,
) -> LawReport {
    let mode = if eq.sampled {
        format!("sampled({})", strategy.samples)
    } else {
        "exhaustive".to_string()
    };
    LawReport::from_equality(axiom.to_string(), model, subject, mode, strategy.seed, eq)
}

fn evaluate<C: DifferenceCategory>(
    cat: &C,
    axiom: AxiomId,
    subjects: &[C::Map],
    strategy: &EqualityStrategy,
) -> Result<EqualityReport> {
    let l = Law { cat, strategy };
    let f = &subjects[0];
    let (a, b) = (cat.dom(f), cat.cod(f));
    let same_shape = |g: &C::Map| cat.dom(g) == a && cat.cod(g) == b;
    let partner = || companion::<C>(subjects, same_shape).unwrap_or(f).clone();
    let reports = match axiom {
        CA1 => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let zero = cat.zero(&cat.dom(x), &a);
            vec![
                l.eq(&l.add(&l.add(x, y)?, z)?, &l.add(x, &l.add(y, z)?)?)?,
                l.eq(&l.add(x, &zero)?, x)?,
                l.eq(&l.add(&zero, x)?, x)?,
                l.eq(&l.add(x, y)?, &l.add(y, x)?)?,
            ]
        }
        CA2 => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let op = cat.oplus(&a)?;
            let zero = cat.zero(&cat.dom(x), &a);
            vec![
                l.eq(&l.at2(&op, x, &zero)?, x)?,
                l.eq(
                    &l.at2(&op, x, &l.add(y, z)?)?,
                    &l.at2(&op, &l.at2(&op, x, y)?, z)?,
                )?,
            ]
        }
        CAD1 => {
            let (_, p) = l.points(&a, 2);
            let (x, y) = (&p[0], &p[1]);
            let (op_a, op_b) = (cat.oplus(&a)?, cat.oplus(&b)?);
            let df = l.d(f)?;
            let lhs = l.comp(f, &l.at2(&op_a, x, y)?)?;
            let rhs = l.at2(&op_b, &l.comp(f, x)?, &l.at2(&df, x, y)?)?;
            vec![l.eq(&lhs, &rhs)?]
        }
        CAD2 | CdC2 => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let df = l.d(f)?;
            let shifted = if axiom == CAD2 {
                l.at2(&cat.oplus(&a)?, x, y)?
            } else {
                l.moved(x, y)?
            };
            let zero = cat.zero(&cat.dom(x), &a);
            vec![
                l.eq(
                    &l.at2(&df, x, &l.add(y, z)?)?,
                    &l.add(&l.at2(&df, x, y)?, &l.at2(&df, &shifted, z)?)?,
                )?,
                l.eq(&l.at2(&df, x, &zero)?, &cat.zero(&cat.dom(x), &b))?,
            ]
        }
        CdC0 => {
            let (_, p) = l.points(&a, 2);
            let (x, y) = (&p[0], &p[1]);
            let lhs = l.comp(f, &l.moved(x, y)?)?;
            let rhs = l.add(&l.comp(f, x)?, &l.eps(&l.at2(&l.d(f)?, x, y)?))?;
            vec![l.eq(&lhs, &rhs)?]
        }
        CdC1 => {
            let g = partner();
            vec![
                l.eq(&l.d(&l.add(f, &g)?)?, &l.add(&l.d(f)?, &l.d(&g)?)?)?,
                l.eq(&l.d(&cat.zero(&a, &b))?, &cat.zero(&a.square(), &b))?,
                l.eq(&l.d(&l.eps(f))?, &l.eps(&l.d(f)?))?,
            ]
        }
        CdC3 => {
            let aa = a.square();
            let p1 = cat.proj1(&aa, &aa);
            vec![
                l.eq(&l.d(&cat.identity(&a))?, &cat.proj1(&a, &a))?,
                l.eq(&l.d(&cat.proj0(&a, &a))?, &l.comp(&cat.proj0(&a, &a), &p1)?)?,
                l.eq(&l.d(&cat.proj1(&a, &a))?, &l.comp(&cat.proj1(&a, &a), &p1)?)?,
            ]
        }
        CdC4 => {
            let g = companion::<C>(subjects, |g| cat.dom(g) == a).unwrap_or(f).clone();
            vec![l.eq(&l.d(&l.pair(f, &g)?)?, &l.pair(&l.d(f)?, &l.d(&g)?)?)?]
        }
        CdC5 => {
            let g = companion::<C>(subjects, |g| cat.dom(g) == b)
                .cloned()
                .unwrap_or_else(|| if a == b { f.clone() } else { cat.identity(&b) });
            let first = l.comp(f, &cat.proj0(&a, &a))?;
            let rhs = l.comp(&l.d(&g)?, &l.pair(&first, &l.d(f)?)?)?;
            vec![l.eq(&l.d(&l.comp(&g, f)?)?, &rhs)?]
        }
        CdC6 => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let zero = cat.zero(&cat.dom(x), &a);
            let ddf = l.d(&l.d(f)?)?;
            let lhs = l.at4(&ddf, x, y, &zero, z)?;
            let rhs = l.at2(&l.d(f)?, &l.moved(x, y)?, z)?;
            vec![l.eq(&lhs, &rhs)?]
        }
        CdC7 | DEps3 | StrongEps => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let zero = cat.zero(&cat.dom(x), &a);
            let ddf = l.d(&l.d(f)?)?;
            match axiom {
                CdC7 => vec![l.eq(
                    &l.at4(&ddf, x, y, z, &zero)?,
                    &l.at4(&ddf, x, z, y, &zero)?,
                )?],
                DEps3 => vec![l.eq(
                    &l.at4(&l.eps_n(&ddf, 2), x, y, z, &zero)?,
                    &l.at4(&l.eps_n(&ddf, 3), x, y, z, &zero)?,
                )?],
                _ => vec![l.eq(
                    &l.at4(&l.eps(&ddf), x, y, z, &zero)?,
                    &l.at4(&l.eps_n(&ddf, 2), x, y, z, &zero)?,
                )?],
            }
        }
        CdC6a => {
            let (_, p) = l.points(&a, 2);
            let (x, y) = (&p[0], &p[1]);
            let zero = cat.zero(&cat.dom(x), &a);
            let ddf = l.d(&l.d(f)?)?;
            vec![l.eq(
                &l.at4(&ddf, x, &zero, &zero, y)?,
                &l.at2(&l.d(f)?, x, y)?,
            )?]
        }
        CdC7a => {
            let (_, p) = l.points(&a, 4);
            let ddf = l.d(&l.d(f)?)?;
            vec![l.eq(
                &l.at4(&ddf, &p[0], &p[1], &p[2], &p[3])?,
                &l.at4(&ddf, &p[0], &p[2], &p[1], &p[3])?,
            )?]
        }
        E1 => {
            let g = partner();
            vec![
                l.eq(&l.eps(&l.add(f, &g)?), &l.add(&l.eps(f), &l.eps(&g))?)?,
                l.eq(&l.eps(&cat.zero(&a, &b)), &cat.zero(&a, &b))?,
            ]
        }
        E2 => {
            let g = companion::<C>(subjects, |g| cat.dom(g) == b)
                .cloned()
                .unwrap_or_else(|| if a == b { f.clone() } else { cat.identity(&b) });
            vec![l.eq(&l.eps(&l.comp(&g, f)?), &l.comp(&l.eps(&g), f)?)?]
        }
        E3 => {
            let aa = a.square();
            let eps_id = l.eps(&cat.identity(&aa));
            vec![
                l.eq(&l.eps(&cat.proj0(&a, &a)), &l.comp(&cat.proj0(&a, &a), &eps_id)?)?,
                l.eq(&l.eps(&cat.proj1(&a, &a)), &l.comp(&cat.proj1(&a, &a), &eps_id)?)?,
            ]
        }
        Additivity => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let df = l.d(f)?;
            let zero = cat.zero(&cat.dom(x), &a);
            vec![
                l.eq(
                    &l.at2(&df, x, &l.add(y, z)?)?,
                    &l.add(&l.at2(&df, x, y)?, &l.at2(&df, x, z)?)?,
                )?,
                l.eq(&l.at2(&df, x, &zero)?, &cat.zero(&cat.dom(x), &b))?,
            ]
        }
        DEps1 | F3 => {
            let (_, p) = l.points(&a, 2);
            let (x, y) = (&p[0], &p[1]);
            let df = l.d(f)?;
            vec![l.eq(&l.at2(&df, x, &l.eps(y))?, &l.eps(&l.at2(&df, x, y)?))?]
        }
        DEps2 => {
            let (_, p) = l.points(&a, 3);
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let edf = l.eps(&l.d(f)?);
            let twice = l.add(x, &l.eps_n(y, 2))?;
            vec![l.eq(&l.at2(&edf, &l.moved(x, y)?, z)?, &l.at2(&edf, &twice, z)?)?]
        }
        Linearity => vec![l.eq(&l.d(f)?, &l.comp(f, &cat.proj1(&a, &a))?)?],
        EpsLinearity => {
            let ef = l.eps(f);
            vec![l.eq(&l.d(&ef)?, &l.comp(&ef, &cat.proj1(&a, &a))?)?]
        }
        EpsVanishing => vec![l.eq(&l.eps(&cat.identity(&a)), &cat.zero(&a, &a))?],
        OplusEps => {
            let g = partner();
            let lhs = l.comp(&cat.oplus(&b)?, &l.pair(f, &g)?)?;
            vec![l.eq(&lhs, &l.moved(f, &g)?)?]
        }
        F1 => {
            vec![EqualityReport {
                checked: 1,
                ..Default::default()
            }]
        }
        F2 => {
            let op = cat.oplus(&a)?;
            let plus = l.add(&cat.proj0(&a, &a), &cat.proj1(&a, &a))?;
            let aa = a.square();
            let p1 = cat.proj1(&aa, &aa);
            vec![
                l.eq(&l.d(&op)?, &l.comp(&op, &p1)?)?,
                l.eq(&l.d(&plus)?, &l.comp(&plus, &p1)?)?,
            ]
        }
        F4 => {
            return Err(Error::ModelRestriction(
                "right-injectivity is only decided on enumerable base spaces".into(),
            ))
        }
    };
    Ok(EqualityReport::combine(reports))
}

/// Checks one law in a base model.
///
/// Right-injectivity of the action is decided by enumeration; on spaces that
/// cannot be enumerated within the bound its verdict is `Unknown`.
pub fn check_axiom(
    model: &Model,
    axiom: AxiomId,
    subjects: &[Morphism],
    strategy: &EqualityStrategy,
) -> Result<LawReport> {
    if axiom == F4 {
        let f = subjects
            .first()
            .ok_or_else(|| Error::InvalidValue("at least one subject is required".into()))?;
        return right_injectivity(model, f.dom(), strategy);
    }
    check_in(&Base { model }, axiom, subjects, strategy)
}

/// Runs `axioms` over a pool of subjects, ordered by axiom and then by subject.
///
/// Each subject takes its partners from the rest of the pool and gets its own
/// forked strategy. Laws that only concern a space run once per distinct domain.
pub fn run_suite(
    model: &Model,
    subjects: &[Morphism],
    axioms: &[AxiomId],
    strategy: &EqualityStrategy,
) -> Result<Vec<LawReport>> {
    let mut axioms = axioms.to_vec();
    axioms.sort();
    axioms.dedup();
    let mut out = Vec::new();
    for axiom in axioms {
        let mut domains: Vec<&Space> = Vec::new();
        for i in 0..subjects.len() {
            if !axiom.uses_subject() {
                if domains.contains(&subjects[i].dom()) {
                    continue;
                }
                domains.push(subjects[i].dom());
            }
            let rotated: Vec<Morphism> = subjects[i..].iter().chain(&subjects[..i]).cloned().collect();
            out.push(check_axiom(model, axiom, &rotated, &strategy.fork(i as u64))?);
        }
    }
    Ok(out)
}

/// Whether `x + eps(y) = x + eps(z)` forces `y = z` on `space`.
pub fn right_injectivity(model: &Model, space: &Space, strategy: &EqualityStrategy) -> Result<LawReport> {
    let subject = format!("space {space}");
    let size = match space.size() {
        Some(n) if n <= strategy.bound => n,
        _ => {
            return Ok(LawReport::unknown(
                F4.name(),
                model.name(),
                subject,
                "not enumerable within the bound",
                strategy.seed,
            ))
        }
    };
    let eps = model.epsilon_space(space);
    let mut seen: HashMap<u128, crate::element::Element> = HashMap::new();
    let mut eq = EqualityReport::default();
    for y in space.enumerate()? {
        eq.checked += 1;
        let image = eps.eval(&y);
        let key = match space.index_of(&image) {
            Some(k) => k,
            None => continue,
        };
        if let Some(prev) = seen.get(&key) {
            eq.violations += 1;
            if eq.counterexample.is_none() {
                let x = space.zero();
                let act = model.oplus(space);
                eq.counterexample = Some(Counterexample {
                    point: format!(
                        "x={}, y={}, z={}",
                        element::format(space, &x),
                        element::format(space, prev),
                        element::format(space, &y)
                    ),
                    lhs: element::format(space, &act.eval(&crate::element::Element::pair(&x, prev))),
                    rhs: element::format(space, &act.eval(&crate::element::Element::pair(&x, &y))),
                });
            }
        } else {
            seen.insert(key, y);
        }
    }
    debug_assert_eq!(eq.checked as u128, size);
    Ok(law_report(F4, &model.name(), subject, strategy, eq))
}

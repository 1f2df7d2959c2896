//! Extensional equality of morphisms by enumeration or seeded sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::element::{self, Element};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::space::{Space, DEFAULT_REAL_RANGE};

pub const DEFAULT_BOUND: u128 = 100_000;
pub const DEFAULT_SAMPLES: usize = 256;
pub const DEFAULT_ABS_TOL: f64 = 1e-9;
pub const DEFAULT_REL_TOL: f64 = 1e-6;
const BATCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every point; fails with `SizeExceeded` above the bound.
    Exhaustive,
    /// Seeded random points only.
    Sampled,
    /// Exhaustive when the domain fits under the bound, sampled otherwise.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualityStrategy {
    pub mode: Mode,
    pub samples: usize,
    pub seed: u64,
    pub bound: u128,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub real_range: f64,
}

impl Default for EqualityStrategy {
    fn default() -> Self {
        EqualityStrategy {
            mode: Mode::Auto,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            bound: DEFAULT_BOUND,
            abs_tol: DEFAULT_ABS_TOL,
            rel_tol: DEFAULT_REL_TOL,
            real_range: DEFAULT_REAL_RANGE,
        }
    }
}

/// How a particular domain will actually be covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plan {
    Exhaustive(u128),
    Sampled(usize),
}

impl EqualityStrategy {
    pub fn exhaustive() -> Self {
        EqualityStrategy {
            mode: Mode::Exhaustive,
            ..Default::default()
        }
    }

    pub fn sampled(samples: usize, seed: u64) -> Self {
        EqualityStrategy {
            mode: Mode::Sampled,
            samples,
            seed,
            ..Default::default()
        }
    }

    pub fn auto(seed: u64) -> Self {
        EqualityStrategy {
            seed,
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_bound(mut self, bound: u128) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_real_range(mut self, range: f64) -> Self {
        self.real_range = range;
        self
    }

    /// A derived strategy whose sampling stream is independent of this one.
    pub fn fork(&self, salt: u64) -> Self {
        EqualityStrategy {
            seed: mix(self.seed, salt),
            ..self.clone()
        }
    }

    pub fn plan(&self, dom: &Space) -> Result<Plan> {
        let size = dom.size();
        match self.mode {
            Mode::Exhaustive => {
                let size = size.ok_or_else(|| Error::NotEnumerable(dom.to_string()))?;
                if size > self.bound {
                    return Err(Error::SizeExceeded {
                        size,
                        bound: self.bound,
                    });
                }
                Ok(Plan::Exhaustive(size))
            }
            Mode::Sampled => Ok(Plan::Sampled(self.samples)),
            Mode::Auto => Ok(match size {
                Some(n) if n <= self.bound => Plan::Exhaustive(n),
                _ => Plan::Sampled(self.samples),
            }),
        }
    }

    /// Short description used in reports.
    pub fn describe(&self, dom: &Space) -> String {
        match self.plan(dom) {
            Ok(Plan::Exhaustive(n)) => format!("exhaustive({n})"),
            Ok(Plan::Sampled(n)) => format!("sampled({n})"),
            Err(_) => "unavailable".into(),
        }
    }

    /// Visits the points of `dom` dictated by the plan, in a fixed order.
    pub fn for_each_point(&self, dom: &Space, mut visit: impl FnMut(&Element)) -> Result<u64> {
        match self.plan(dom)? {
            Plan::Exhaustive(_) => {
                let mut n = 0;
                for x in dom.enumerate()? {
                    visit(&x);
                    n += 1;
                }
                Ok(n)
            }
            Plan::Sampled(count) => {
                for batch in 0..count.div_ceil(BATCH) {
                    let mut rng = ChaCha8Rng::seed_from_u64(mix(self.seed, batch as u64));
                    let len = BATCH.min(count - batch * BATCH);
                    for _ in 0..len {
                        visit(&dom.sample(&mut rng, self.real_range));
                    }
                }
                Ok(count as u64)
            }
        }
    }
}

/// SplitMix64 finaliser used to derive sub-seeds.
pub fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x632B_E59B_D9B4_E019);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityReport {
    pub checked: u64,
    pub violations: u64,
    pub counterexample: Option<Counterexample>,
    /// Whether any contributing check relied on sampling rather than enumeration.
    #[serde(default)]
    pub sampled: bool,
}

impl EqualityReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }

    /// Accumulates another check into this one, keeping the first counterexample.
    pub fn absorb(&mut self, other: EqualityReport) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.sampled |= other.sampled;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    pub fn combine(reports: impl IntoIterator<Item = EqualityReport>) -> EqualityReport {
        let mut out = EqualityReport::default();
        for r in reports {
            out.absorb(r);
        }
        out
    }
}

/// Compares `f` and `g` pointwise under `strategy`, counting every violation.
pub fn morphisms_equal(
    f: &Morphism,
    g: &Morphism,
    strategy: &EqualityStrategy,
) -> Result<EqualityReport> {
    for (a, b) in [(f.dom(), g.dom()), (f.cod(), g.cod())] {
        if a != b {
            return Err(Error::DomainMismatch {
                expected: a.to_string(),
                found: b.to_string(),
            });
        }
    }
    let (dom, cod) = (f.dom(), f.cod());
    let mut report = EqualityReport {
        sampled: matches!(strategy.plan(dom)?, Plan::Sampled(_)),
        ..Default::default()
    };
    report.checked = strategy.for_each_point(dom, |x| {
        let (lhs, rhs) = (f.eval(x), g.eval(x));
        if !element::close(&lhs, &rhs, strategy.abs_tol, strategy.rel_tol) {
            report.violations += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some(Counterexample {
                    point: element::format(dom, x),
                    lhs: element::format(cod, &lhs),
                    rhs: element::format(cod, &rhs),
                });
            }
        }
    })?;
    Ok(report)
}

/// Checks a pointwise predicate, reporting the first failing point.
pub fn holds_everywhere(
    dom: &Space,
    strategy: &EqualityStrategy,
    mut predicate: impl FnMut(&Element) -> Option<Counterexample>,
) -> Result<EqualityReport> {
    let mut report = EqualityReport {
        sampled: matches!(strategy.plan(dom)?, Plan::Sampled(_)),
        ..Default::default()
    };
    report.checked = strategy.for_each_point(dom, |x| {
        if let Some(c) = predicate(x) {
            report.violations += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some(c);
            }
        }
    })?;
    Ok(report)
}

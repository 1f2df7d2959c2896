//! Nested dual numbers.
//!
//! A value carries a real part plus one coefficient for every non-empty set of
//! infinitesimal generators, each generator squaring to zero. Nesting a dual
//! number inside another one is the same as introducing a fresh generator, so a
//! single concrete type covers derivatives of any order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A truncated multivariate Taylor value over nilpotent generators.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DualNumber {
    re: f64,
    /// Sorted by generator mask; every mask is non-zero.
    inf: Vec<(u64, f64)>,
}

impl DualNumber {
    pub const fn constant(re: f64) -> Self {
        DualNumber { re, inf: Vec::new() }
    }

    /// Builds `primal + tangent * e` for the generator `generator`.
    ///
    /// The generator must not already appear in either argument.
    pub fn with_tangent(primal: &DualNumber, tangent: &DualNumber, generator: u32) -> Self {
        let bit = 1u64 << generator;
        debug_assert_eq!((primal.generators() | tangent.generators()) & bit, 0);
        let mut shifted = Vec::with_capacity(tangent.inf.len() + 1);
        if tangent.re != 0.0 {
            shifted.push((bit, tangent.re));
        }
        shifted.extend(tangent.inf.iter().map(|&(m, c)| (m | bit, c)));
        let mut out = primal.clone();
        out.accumulate(shifted);
        out
    }

    pub fn primal(&self) -> f64 {
        self.re
    }

    /// Union of all generators with a non-zero coefficient.
    pub fn generators(&self) -> u64 {
        self.inf.iter().fold(0, |acc, &(m, _)| acc | m)
    }

    pub fn is_real(&self) -> bool {
        self.inf.is_empty()
    }

    /// Coefficient of `generator`, itself a dual number over the other generators.
    pub fn tangent(&self, generator: u32) -> DualNumber {
        let bit = 1u64 << generator;
        let mut out = DualNumber::constant(0.0);
        let mut terms = Vec::new();
        for &(m, c) in &self.inf {
            if m & bit != 0 {
                let rest = m & !bit;
                if rest == 0 {
                    out.re += c;
                } else {
                    terms.push((rest, c));
                }
            }
        }
        out.accumulate(terms);
        out
    }

    pub fn scale(&self, k: f64) -> DualNumber {
        DualNumber {
            re: self.re * k,
            inf: self.inf.iter().map(|&(m, c)| (m, c * k)).collect(),
        }
    }

    fn accumulate(&mut self, mut terms: Vec<(u64, f64)>) {
        if terms.is_empty() {
            return;
        }
        terms.append(&mut self.inf);
        terms.sort_unstable_by_key(|&(m, _)| m);
        let mut merged: Vec<(u64, f64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        self.inf = merged;
    }

    /// Applies a scalar function given the sequence of its derivatives at the real part.
    fn lift(&self, derivatives: impl Fn(usize) -> f64) -> DualNumber {
        if self.inf.is_empty() {
            return DualNumber::constant(derivatives(0));
        }
        let nilpotent = DualNumber {
            re: 0.0,
            inf: self.inf.clone(),
        };
        let order = self.generators().count_ones() as usize;
        let mut out = DualNumber::constant(derivatives(0));
        let mut power = DualNumber::constant(1.0);
        let mut factorial = 1.0;
        for k in 1..=order {
            power = &power * &nilpotent;
            if power.inf.is_empty() {
                break;
            }
            factorial *= k as f64;
            out = &out + &power.scale(derivatives(k) / factorial);
        }
        out
    }

    pub fn sin(&self) -> DualNumber {
        let (s, c) = self.re.sin_cos();
        self.lift(|k| match k % 4 {
            0 => s,
            1 => c,
            2 => -s,
            _ => -c,
        })
    }

    pub fn cos(&self) -> DualNumber {
        let (s, c) = self.re.sin_cos();
        self.lift(|k| match k % 4 {
            0 => c,
            1 => -s,
            2 => -c,
            _ => s,
        })
    }

    pub fn exp(&self) -> DualNumber {
        let e = self.re.exp();
        self.lift(|_| e)
    }

    pub fn powi(&self, n: u32) -> DualNumber {
        let mut out = DualNumber::constant(1.0);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl From<f64> for DualNumber {
    fn from(re: f64) -> Self {
        DualNumber::constant(re)
    }
}

impl Add for &DualNumber {
    type Output = DualNumber;

    fn add(self, rhs: &DualNumber) -> DualNumber {
        let mut out = DualNumber {
            re: self.re + rhs.re,
            inf: self.inf.clone(),
        };
        out.accumulate(rhs.inf.clone());
        out
    }
}

impl Sub for &DualNumber {
    type Output = DualNumber;

    fn sub(self, rhs: &DualNumber) -> DualNumber {
        self + &(-rhs)
    }
}

impl Neg for &DualNumber {
    type Output = DualNumber;

    fn neg(self) -> DualNumber {
        self.scale(-1.0)
    }
}

impl Mul for &DualNumber {
    type Output = DualNumber;

    fn mul(self, rhs: &DualNumber) -> DualNumber {
        if self.inf.is_empty() && rhs.inf.is_empty() {
            return DualNumber::constant(self.re * rhs.re);
        }
        let left = std::iter::once((0u64, self.re)).chain(self.inf.iter().copied());
        let mut terms = Vec::new();
        let mut re = 0.0;
        for (ma, ca) in left {
            let right = std::iter::once((0u64, rhs.re)).chain(rhs.inf.iter().copied());
            for (mb, cb) in right {
                if ma & mb != 0 {
                    continue;
                }
                if ma | mb == 0 {
                    re += ca * cb;
                } else {
                    terms.push((ma | mb, ca * cb));
                }
            }
        }
        let mut out = DualNumber::constant(re);
        out.accumulate(terms);
        out
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        for (m, c) in &self.inf {
            write!(f, " + {c}e{m:b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(x: f64, g: u32) -> DualNumber {
        DualNumber::with_tangent(&x.into(), &1.0.into(), g)
    }

    #[test]
    fn cube_first_derivative() {
        let x = seed(2.0, 0);
        let y = x.powi(3);
        assert_eq!(y.primal(), 8.0);
        assert_eq!(y.tangent(0).primal(), 12.0);
    }

    #[test]
    fn nested_second_derivative() {
        let x = DualNumber::with_tangent(&seed(2.0, 0), &1.0.into(), 1);
        let y = x.powi(3);
        assert_eq!(y.tangent(0).tangent(1).primal(), 12.0);
        let s = DualNumber::with_tangent(&seed(0.5, 0), &1.0.into(), 1).sin();
        assert!((s.tangent(0).tangent(1).primal() + 0.5f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn generator_squares_to_zero() {
        let x = seed(0.0, 3);
        let sq = &x * &x;
        assert!(sq.is_real());
        assert_eq!(sq.primal(), 0.0);
    }
}

//! Monomials as exponent vectors over a fixed variable context.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::context::VariableContext;
use crate::error::{Error, Result};

/// A monomial `x1^a1 * ... * xs^as`, stored as its exponent vector.
/// Exponents are arbitrary-precision non-negative integers, so no monomial
/// operation can overflow.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<BigUint>,
}

impl Monomial {
    /// The trivial monomial `1` in `s` variables.
    pub fn one(s: usize) -> Self {
        Monomial {
            exps: vec![BigUint::zero(); s],
        }
    }

    pub fn from_exps(exps: Vec<BigUint>) -> Self {
        Monomial { exps }
    }

    pub fn from_u64s(exps: &[u64]) -> Self {
        Monomial {
            exps: exps.iter().map(|&e| BigUint::from(e)).collect(),
        }
    }

    /// The i-th variable as a monomial.
    pub fn variable(s: usize, i: usize) -> Self {
        let mut m = Monomial::one(s);
        m.exps[i] = BigUint::from(1u32);
        m
    }

    pub fn exps(&self) -> &[BigUint] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> &BigUint {
        &self.exps[i]
    }

    /// Number of ambient variables (the vector length, not the support size).
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree: the sum of all exponents.
    pub fn degree(&self) -> BigUint {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len())
            .filter(|&i| !self.exps[i].is_zero())
            .collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps }
    }

    pub fn pow(&self, n: u64) -> Monomial {
        let n = BigUint::from(n);
        Monomial {
            exps: self.exps.iter().map(|a| a * &n).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.max(b).clone())
            .collect();
        Monomial { exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.min(b).clone())
            .collect();
        Monomial { exps }
    }

    /// Componentwise `max(a_i - b_i, 0)`: the generator of `(self) : (other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| if a > b { a - b } else { BigUint::zero() })
            .collect();
        Monomial { exps }
    }

    /// Keep only the exponents at `keep` (in order); used when passing to a
    /// subring on a subset of the variables.
    pub fn restrict(&self, keep: &[usize]) -> Monomial {
        Monomial {
            exps: keep.iter().map(|&i| self.exps[i].clone()).collect(),
        }
    }

    /// Order by total degree, ties broken lexicographically by exponents.
    /// This is the canonical generator order everywhere.
    pub fn degree_then_lex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }

    /// Parse `x^2*y`-style syntax against a context; `1` is the trivial
    /// monomial, repeated variables multiply.
    pub fn parse(ctx: &VariableContext, text: &str) -> Result<Monomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        if text == "1" {
            return Ok(Monomial::one(ctx.len()));
        }
        let mut exps = vec![BigUint::zero(); ctx.len()];
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((name, power)) => {
                    let power = power.trim();
                    let power = BigUint::from_str(power)
                        .map_err(|_| Error::Parse(format!("bad exponent {power:?} in {text:?}")))?;
                    (name.trim(), power)
                }
                None => (factor, BigUint::from(1u32)),
            };
            let idx = ctx
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?} in {text:?}")))?;
            exps[idx] += power;
        }
        Ok(Monomial { exps })
    }

    /// Render against a context: `x^2*y`, or `1` when trivial.
    pub fn display(&self, ctx: &VariableContext) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, e) in self.exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if *e == BigUint::from(1u32) {
                parts.push(ctx.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", ctx.name(i), e));
            }
        }
        parts.join("*")
    }
}

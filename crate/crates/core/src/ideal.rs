//! Monomial ideals with divisibility-minimal, canonically ordered generators.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A monomial ideal of the ambient ring. The generator list is always
/// divisibility-minimal and sorted by (degree, exponents), so equal ideals
/// compare equal structurally. The zero ideal has no generators; the unit
/// ideal is generated by `1`.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ctx: Ctx,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(ctx: Ctx) -> Self {
        MonomialIdeal {
            ctx,
            gens: Vec::new(),
        }
    }

    pub fn unit(ctx: Ctx) -> Self {
        let one = Monomial::one(ctx.len());
        MonomialIdeal {
            ctx,
            gens: vec![one],
        }
    }

    /// Build from arbitrary generators; the list is minimized and sorted.
    pub fn new(ctx: Ctx, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            if g.len() != ctx.len() {
                return Err(Error::InvalidInput(format!(
                    "generator has {} exponents but the context has {} variables",
                    g.len(),
                    ctx.len()
                )));
            }
        }
        Ok(MonomialIdeal {
            ctx,
            gens: minimalize(gens),
        })
    }

    /// Parse a generator list of `x^2*y`-style strings.
    pub fn parse(ctx: &Ctx, gens: &[&str]) -> Result<Self> {
        let parsed = gens
            .iter()
            .map(|t| Monomial::parse(ctx, t))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(ctx.clone(), parsed)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().map(Monomial::is_one).unwrap_or(false)
    }

    /// Largest total degree among the generators; `None` for the zero ideal.
    pub fn max_gen_degree(&self) -> Option<BigUint> {
        self.gens.iter().map(Monomial::degree).max()
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Ideal containment: every generator of `other` lies in `self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(g))
    }

    /// Sum of ideals (union of generating sets).
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal {
            ctx: self.ctx.clone(),
            gens: minimalize(gens),
        }
    }

    /// Product of ideals: pairwise generator products, then minimized.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        if self.is_zero() || other.is_zero() {
            return MonomialIdeal::zero(self.ctx.clone());
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        MonomialIdeal {
            ctx: self.ctx.clone(),
            gens: minimalize(gens),
        }
    }

    /// Multiply by a single monomial.
    pub fn scale(&self, m: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.mul(m)).collect();
        // scaling preserves minimality and order
        MonomialIdeal {
            ctx: self.ctx.clone(),
            gens,
        }
    }

    /// n-th power; `A^0` is the unit ideal.
    pub fn pow(&self, n: u64) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.ctx.clone());
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// Intersection: pairwise lcms, then minimized.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        if self.is_zero() || other.is_zero() {
            return MonomialIdeal::zero(self.ctx.clone());
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal {
            ctx: self.ctx.clone(),
            gens: minimalize(gens),
        }
    }

    /// Ideal quotient `self : other`. The quotient by the zero ideal is
    /// rejected rather than given the unit-ideal convention.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.is_zero() {
            return Err(Error::InvalidInput("colon by the zero ideal".into()));
        }
        let mut acc: Option<MonomialIdeal> = None;
        for b in &other.gens {
            let per: Vec<Monomial> = self.gens.iter().map(|g| g.colon(b)).collect();
            let per = MonomialIdeal {
                ctx: self.ctx.clone(),
                gens: minimalize(per),
            };
            acc = Some(match acc {
                None => per,
                Some(prev) => prev.intersect(&per),
            });
        }
        Ok(acc.expect("non-zero ideal has generators"))
    }

    /// Saturation `self : other^∞`: iterate the quotient to its fixed point.
    pub fn saturation(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut current = self.clone();
        loop {
            let next = current.colon(other)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Smallest `c` such that every variable's c-th power lies in the ideal;
    /// `None` when some variable has no pure power here (not primary to the
    /// maximal ideal).
    pub fn mprimary_exponent(&self) -> Option<BigUint> {
        let s = self.ctx.len();
        let mut worst = BigUint::ZERO;
        for i in 0..s {
            let mut best: Option<&BigUint> = None;
            for g in &self.gens {
                if g.support().iter().all(|&j| j == i) {
                    let e = g.exp(i);
                    if best.map(|b| e < b).unwrap_or(true) {
                        best = Some(e);
                    }
                }
            }
            worst = worst.max(best?.clone());
        }
        Some(worst)
    }

    /// Same, converted to `u64` for use in enumeration bounds.
    pub fn mprimary_exponent_u64(&self) -> Result<Option<u64>> {
        match self.mprimary_exponent() {
            None => Ok(None),
            Some(c) => c
                .to_u64()
                .map(Some)
                .ok_or_else(|| Error::TooLarge("pure-power exponent exceeds u64".into())),
        }
    }

    /// Image under setting all variables outside `keep` to 1; the result
    /// lives over the `keep.len()`-variable subring context.
    pub fn restrict(&self, keep: &[usize], sub_ctx: Ctx) -> Result<MonomialIdeal> {
        let gens = self.gens.iter().map(|g| g.restrict(keep)).collect();
        MonomialIdeal::new(sub_ctx, gens)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "(0)".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.display(&self.ctx)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.display(&self.ctx)).collect()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Reduce to the divisibility-minimal subset, sorted by (degree, exponents).
/// After the degree-ascending sort a single forward pass suffices: a proper
/// divisor always has strictly smaller degree.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree_then_lex(b));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

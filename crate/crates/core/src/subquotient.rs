//! Monomial subquotient modules `(U + L)/L`.
//!
//! The pair (U, L) of monomial ideals presents the module generated by U
//! inside R/L; when L ⊆ U this is the honest subquotient U/L. Lengths count
//! monomials in U outside L, and the annihilator is L : U either way.

use num_bigint::BigUint;

use crate::context::Ctx;
use crate::count::monomials_between;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSubquotient {
    numerator: MonomialIdeal,
    denominator: MonomialIdeal,
}

impl MonomialSubquotient {
    pub fn new(numerator: MonomialIdeal, denominator: MonomialIdeal) -> Result<Self> {
        if numerator.ctx() != denominator.ctx() {
            return Err(Error::InvalidInput(
                "module pieces over different contexts".into(),
            ));
        }
        Ok(MonomialSubquotient {
            numerator,
            denominator,
        })
    }

    /// The cyclic module R/L.
    pub fn quotient_ring(denominator: MonomialIdeal) -> Self {
        let unit = MonomialIdeal::unit(denominator.ctx().clone());
        MonomialSubquotient {
            numerator: unit,
            denominator,
        }
    }

    /// The ring itself, R/0.
    pub fn total_ring(ctx: Ctx) -> Self {
        MonomialSubquotient::quotient_ring(MonomialIdeal::zero(ctx))
    }

    pub fn ctx(&self) -> &Ctx {
        self.numerator.ctx()
    }

    pub fn numerator(&self) -> &MonomialIdeal {
        &self.numerator
    }

    pub fn denominator(&self) -> &MonomialIdeal {
        &self.denominator
    }

    /// The module is zero exactly when U lands inside L.
    pub fn is_zero(&self) -> bool {
        self.denominator.contains(&self.numerator)
    }

    /// Annihilator ideal L : U; the unit ideal for the zero module.
    pub fn annihilator(&self) -> MonomialIdeal {
        if self.numerator.is_zero() {
            return MonomialIdeal::unit(self.ctx().clone());
        }
        self.denominator
            .colon(&self.numerator)
            .expect("numerator checked nonzero")
    }

    /// Total length: the number of monomials in U outside L.
    pub fn length(&self) -> Result<BigUint> {
        let zero = MonomialIdeal::zero(self.ctx().clone());
        monomials_between(&self.numerator, &zero, &self.denominator).map_err(|e| match e {
            Error::NonArtinian(msg) => Error::InfiniteLength(msg),
            other => other,
        })
    }

    /// The largest submodule killed by a power of `ideal` is quotiented away:
    /// (U, (L : ideal^∞) ∩ U). Saturating by the unit ideal just renormalizes
    /// the pair.
    pub fn saturate_by(&self, ideal: &MonomialIdeal) -> Result<MonomialSubquotient> {
        let sat = self.denominator.saturation(ideal)?;
        Ok(MonomialSubquotient {
            numerator: self.numerator.clone(),
            denominator: sat.intersect(&self.numerator),
        })
    }

    /// Quotient by a single element: (U, L + x·U).
    pub fn quotient_by(&self, x: &Monomial) -> MonomialSubquotient {
        let shifted = self.numerator.scale(x);
        MonomialSubquotient {
            numerator: self.numerator.clone(),
            denominator: self.denominator.sum(&shifted),
        }
    }

    /// Quotient by an ideal: (U, L + A·U).
    pub fn quotient_by_ideal(&self, a: &MonomialIdeal) -> MonomialSubquotient {
        let scaled = a.product(&self.numerator);
        MonomialSubquotient {
            numerator: self.numerator.clone(),
            denominator: self.denominator.sum(&scaled),
        }
    }

    /// The submodule A·N presented as (A·U, L).
    pub fn multiplied_by_ideal(&self, a: &MonomialIdeal) -> MonomialSubquotient {
        MonomialSubquotient {
            numerator: a.product(&self.numerator),
            denominator: self.denominator.clone(),
        }
    }
}

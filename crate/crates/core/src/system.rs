//! A multigraded system: an ideal J primary to the maximal ideal, scaling
//! ideals I_1..I_d, and a finitely generated module N.
//!
//! The object of study is the bigraded family of quotients
//! `J^{n0} I_1^{n1} ... I_d^{nd} N / J^{n0+1} I_1^{n1} ... I_d^{nd} N`,
//! whose lengths eventually agree with a polynomial in (n0, .., nd).

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::subquotient::MonomialSubquotient;

#[derive(Debug, Clone)]
pub struct MultiIdealSystem {
    j: MonomialIdeal,
    ideals: Vec<MonomialIdeal>,
    module: MonomialSubquotient,
    mprimary_c: u64,
}

impl MultiIdealSystem {
    pub fn new(
        j: MonomialIdeal,
        ideals: Vec<MonomialIdeal>,
        module: MonomialSubquotient,
    ) -> Result<Self> {
        let ctx = j.ctx().clone();
        if ideals.iter().any(|i| i.ctx() != &ctx) || module.ctx() != &ctx {
            return Err(Error::InvalidInput(
                "system pieces over different contexts".into(),
            ));
        }
        if j.is_unit() {
            return Err(Error::InvalidInput("J must be a proper ideal".into()));
        }
        let mprimary_c = match j.mprimary_exponent_u64()? {
            Some(c) => c,
            None => {
                return Err(Error::InvalidInput(
                    "J must contain a power of every variable (primary to the maximal ideal)"
                        .into(),
                ))
            }
        };
        for (t, ideal) in ideals.iter().enumerate() {
            if ideal.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "scaling ideal {} is zero",
                    t + 1
                )));
            }
        }
        Ok(MultiIdealSystem {
            j,
            ideals,
            module,
            mprimary_c,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        self.j.ctx()
    }

    pub fn j(&self) -> &MonomialIdeal {
        &self.j
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn module(&self) -> &MonomialSubquotient {
        &self.module
    }

    /// Number of scaling ideals d (zero is the Samuel case).
    pub fn d(&self) -> usize {
        self.ideals.len()
    }

    /// Smallest c with every variable's c-th power inside J.
    pub fn mprimary_exponent(&self) -> u64 {
        self.mprimary_c
    }

    /// The product I_1 * ... * I_d; the unit ideal when d = 0.
    pub fn product_ideal(&self) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.ctx().clone());
        for ideal in &self.ideals {
            acc = acc.product(ideal);
        }
        acc
    }

    /// The module with its product-torsion removed; the multidegree data of
    /// the system only sees this quotient.
    pub fn saturated_module(&self) -> Result<MonomialSubquotient> {
        self.module.saturate_by(&self.product_ideal())
    }

    /// A system is degenerate when the scaling product kills the whole module
    /// up to saturation; none of the multiplicity theory applies then.
    pub fn is_degenerate(&self) -> Result<bool> {
        Ok(self.saturated_module()?.is_zero())
    }

    pub fn ensure_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate()? {
            Err(Error::Degenerate(
                "the product of the scaling ideals lies in the radical of the module's annihilator"
                    .into(),
            ))
        } else {
            Ok(())
        }
    }

    /// Same J and module, with each scaling ideal raised to the given power.
    pub fn scale_powers(&self, u: &[u64]) -> Result<MultiIdealSystem> {
        if u.len() != self.d() {
            return Err(Error::InvalidInput(format!(
                "expected {} exponents, got {}",
                self.d(),
                u.len()
            )));
        }
        if u.contains(&0) {
            return Err(Error::InvalidInput(
                "scaling exponents must be positive".into(),
            ));
        }
        let ideals = self
            .ideals
            .iter()
            .zip(u)
            .map(|(ideal, &e)| ideal.pow(e))
            .collect();
        MultiIdealSystem::new(self.j.clone(), ideals, self.module.clone())
    }

    /// Same ideals over a different module.
    pub fn with_module(&self, module: MonomialSubquotient) -> Result<MultiIdealSystem> {
        MultiIdealSystem::new(self.j.clone(), self.ideals.clone(), module)
    }

    /// Largest generator degree across J, the scaling ideals, and the module
    /// presentation, as a u64; feeds window start heuristics.
    pub fn max_generator_degree(&self) -> Result<u64> {
        let mut worst = BigUint::ZERO;
        let mut bump = |ideal: &MonomialIdeal| {
            if let Some(d) = ideal.max_gen_degree() {
                if d > worst {
                    worst = d;
                }
            }
        };
        bump(&self.j);
        for ideal in &self.ideals {
            bump(ideal);
        }
        bump(self.module.numerator());
        bump(self.module.denominator());
        worst
            .to_u64()
            .ok_or_else(|| Error::TooLarge("generator degree exceeds u64".into()))
    }
}

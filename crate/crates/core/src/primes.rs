//! Monomial primes: minimal primes, dimension, and localized lengths.
//!
//! Every associated prime of a monomial ideal is generated by a subset of the
//! variables, so minimal primes are the minimal vertex covers of the
//! hypergraph of generator supports, and localizing at such a prime just
//! deletes the other variables.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::context::{Ctx, VariableContext};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::subquotient::MonomialSubquotient;
use crate::system::MultiIdealSystem;

/// A prime generated by a subset of the variables; the empty subset is the
/// zero prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPrime {
    ctx: Ctx,
    vars: Vec<usize>, // sorted
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.vars.len(), &self.vars).cmp(&(other.vars.len(), &other.vars))
    }
}

impl MonomialPrime {
    pub fn new(ctx: Ctx, mut vars: Vec<usize>) -> Result<Self> {
        vars.sort_unstable();
        vars.dedup();
        if vars.last().map(|&v| v >= ctx.len()).unwrap_or(false) {
            return Err(Error::InvalidInput(
                "prime variable index out of range".into(),
            ));
        }
        Ok(MonomialPrime { ctx, vars })
    }

    pub fn zero_prime(ctx: Ctx) -> Self {
        MonomialPrime {
            ctx,
            vars: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn is_zero_prime(&self) -> bool {
        self.vars.is_empty()
    }

    /// Sorted names of the generating variables.
    pub fn names(&self) -> Vec<String> {
        self.vars
            .iter()
            .map(|&i| self.ctx.name(i).to_string())
            .collect()
    }

    /// dim R/𝔭 = s − (number of generating variables).
    pub fn coheight(&self) -> usize {
        self.ctx.len() - self.vars.len()
    }

    pub fn as_ideal(&self) -> MonomialIdeal {
        let s = self.ctx.len();
        let gens = self
            .vars
            .iter()
            .map(|&i| crate::monomial::Monomial::variable(s, i))
            .collect();
        MonomialIdeal::new(self.ctx.clone(), gens).expect("variable generators are well-formed")
    }

    /// Whether the prime contains the given ideal: every generator must
    /// involve one of the prime's variables.
    pub fn contains_ideal(&self, a: &MonomialIdeal) -> bool {
        a.gens().iter().all(|g| {
            g.support()
                .iter()
                .any(|i| self.vars.binary_search(i).is_ok())
        })
    }

    pub fn display(&self) -> String {
        if self.vars.is_empty() {
            return "(0)".into();
        }
        format!("({})", self.names().join(", "))
    }
}

/// Minimal primes over a monomial ideal. The zero ideal has the zero prime;
/// the unit ideal has none and errors.
pub fn minimal_primes(a: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    if a.is_unit() {
        return Err(Error::EmptySpectrum);
    }
    if a.is_zero() {
        return Ok(vec![MonomialPrime::zero_prime(a.ctx().clone())]);
    }
    let mut edges: Vec<Vec<usize>> = a.gens().iter().map(|g| g.support()).collect();
    edges.sort();
    edges.dedup();
    let covers = minimal_covers(&edges);
    let mut primes: Vec<MonomialPrime> = covers
        .into_iter()
        .map(|c| MonomialPrime {
            ctx: a.ctx().clone(),
            vars: c.into_iter().collect(),
        })
        .collect();
    primes.sort_by(|p, q| {
        p.vars
            .len()
            .cmp(&q.vars.len())
            .then_with(|| p.vars.cmp(&q.vars))
    });
    Ok(primes)
}

/// All inclusion-minimal vertex covers of a hypergraph, by branching on the
/// vertices of one uncovered edge at a time.
fn minimal_covers(edges: &[Vec<usize>]) -> Vec<BTreeSet<usize>> {
    fn rec(edges: &[Vec<usize>], chosen: &mut BTreeSet<usize>, out: &mut Vec<BTreeSet<usize>>) {
        match edges.iter().find(|e| !e.iter().any(|v| chosen.contains(v))) {
            None => out.push(chosen.clone()),
            Some(edge) => {
                for &v in edge {
                    chosen.insert(v);
                    rec(edges, chosen, out);
                    chosen.remove(&v);
                }
            }
        }
    }
    let mut raw = Vec::new();
    rec(edges, &mut BTreeSet::new(), &mut raw);
    // branching can emit supersets and duplicates; keep the antichain
    raw.sort();
    raw.dedup();
    let mut minimal = Vec::new();
    'outer: for c in &raw {
        for other in &raw {
            if other.len() < c.len() && other.is_subset(c) {
                continue 'outer;
            }
        }
        minimal.push(c.clone());
    }
    minimal
}

/// Krull dimension of a subquotient module: the maximal coheight among the
/// minimal primes of its annihilator. The zero module has dimension −1.
pub fn dimension(n: &MonomialSubquotient) -> Result<i64> {
    if n.is_zero() {
        return Ok(-1);
    }
    let ann = n.annihilator();
    let primes = minimal_primes(&ann)?;
    Ok(primes
        .iter()
        .map(|p| p.coheight() as i64)
        .max()
        .expect("spectrum nonempty"))
}

/// Length of the localization N_𝔭 over the local ring at 𝔭, computed by
/// deleting the variables outside 𝔭. Requires 𝔭 minimal over the
/// annihilator for finiteness; infinite lengths error.
pub fn localization_length(n: &MonomialSubquotient, p: &MonomialPrime) -> Result<BigUint> {
    if n.ctx() != p.ctx() {
        return Err(Error::InvalidInput(
            "prime and module over different contexts".into(),
        ));
    }
    let keep = p.vars();
    if keep.is_empty() {
        // residue field of the generic point: length is 1 for R-like pairs
        let numerator_alive = !n.numerator().is_zero();
        let denominator_dead = n.denominator().is_zero();
        return Ok(if numerator_alive && denominator_dead {
            BigUint::from(1u32)
        } else {
            BigUint::ZERO
        });
    }
    let sub_ctx = VariableContext::new(p.names())?;
    let u = n.numerator().restrict(keep, sub_ctx.clone())?;
    let l = n.denominator().restrict(keep, sub_ctx.clone())?;
    MonomialSubquotient::new(u, l)?.length()
}

/// One prime of the support with its localized multiplicity.
#[derive(Debug, Clone)]
pub struct PrimeComponent {
    pub prime: MonomialPrime,
    pub local_length: BigUint,
}

/// The support primes that carry the multidegree data: minimal primes of the
/// saturated module's annihilator whose coheight equals its dimension. Their
/// localized lengths agree between the module and its saturation.
pub fn build_pi(sys: &MultiIdealSystem) -> Result<Vec<PrimeComponent>> {
    let nbar = sys.saturated_module()?;
    if nbar.is_zero() {
        return Err(Error::Degenerate(
            "the scaling product annihilates the module up to saturation".into(),
        ));
    }
    let ann = nbar.annihilator();
    let primes = minimal_primes(&ann)?;
    let dim = primes
        .iter()
        .map(MonomialPrime::coheight)
        .max()
        .expect("spectrum nonempty");
    let product = sys.product_ideal();
    let mut out = Vec::new();
    for prime in primes {
        if prime.coheight() != dim {
            continue;
        }
        if prime.contains_ideal(&product) {
            // impossible for a maximal-coheight prime of a saturated module
            return Err(Error::InvalidInput(
                "internal invariant broken: a top-dimensional support prime contains the scaling product"
                    .into(),
            ));
        }
        let local_length = localization_length(&nbar, &prime)?;
        out.push(PrimeComponent {
            prime,
            local_length,
        });
    }
    Ok(out)
}

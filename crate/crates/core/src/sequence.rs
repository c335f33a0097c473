//! Filter-regular elements and the finite-window conditions under which the
//! reduction and recursion identities are provable for a concrete system.

use crate::count::{divides, insert_minimal, monomials_between, u64_gens};
use crate::error::{Error, Result};
use crate::hilbert::{BhattacharyaResult, PowerProductCache};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::primes::dimension;
use crate::system::MultiIdealSystem;

/// A variable drawn from one of the scaling ideals, proposed as a
/// filter-regular element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementCandidate {
    /// Index of the scaling ideal the variable is taken from.
    pub ideal_index: usize,
    /// Variable index within the ring.
    pub var: usize,
}

impl ElementCandidate {
    /// Validate that the variable really lies in the chosen scaling ideal.
    pub fn new(sys: &MultiIdealSystem, ideal_index: usize, var: usize) -> Result<Self> {
        if ideal_index >= sys.d() {
            return Err(Error::InvalidInput(format!(
                "scaling-ideal index {ideal_index} out of range (d = {})",
                sys.d()
            )));
        }
        if var >= sys.ctx().len() {
            return Err(Error::InvalidInput(format!(
                "variable index {var} out of range"
            )));
        }
        let m = Monomial::variable(sys.ctx().len(), var);
        if !sys.ideals()[ideal_index].contains_monomial(&m) {
            return Err(Error::InvalidInput(format!(
                "variable {} does not lie in scaling ideal {}",
                sys.ctx().name(var),
                ideal_index
            )));
        }
        Ok(ElementCandidate { ideal_index, var })
    }

    pub fn monomial(&self, s: usize) -> Monomial {
        Monomial::variable(s, self.var)
    }

    /// Axis of this candidate's ideal in exponent tuples (axis 0 is the
    /// finite-colength ideal).
    pub fn axis(&self) -> usize {
        self.ideal_index + 1
    }
}

/// Outcome of a condition that is only sampled on a finite window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeValued {
    Holds,
    Fails,
    Unsettled,
}

/// How much of the filter-regular package a candidate satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcClass {
    /// The torsion condition fails outright; the candidate is unusable.
    None,
    /// Window evidence is negative or mixed; nothing can be concluded.
    Inconclusive,
    /// Torsion and intersection conditions hold, but the dimension does not
    /// drop by exactly one.
    WeakFc,
    /// All three conditions hold.
    Fc,
}

/// Full record of the three condition checks for one candidate.
#[derive(Debug, Clone)]
pub struct FcReport {
    /// Whether the candidate's torsion in the module is inside the torsion of
    /// the scaling-ideal product.
    pub torsion_ok: bool,
    /// Window verdict for the intersection condition.
    pub intersection: ThreeValued,
    /// How many window points satisfied the intersection condition.
    pub intersection_true: usize,
    pub intersection_total: usize,
    /// Whether the saturated quotient by the candidate drops dimension by one.
    pub dimension_ok: bool,
    pub class: FcClass,
    /// First exponent of the sampled window.
    pub window_base: u64,
    pub window_len: u64,
}

fn lcm_exps(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn member(m: &[u64], gens: &[Vec<u64>]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Options shared by the window checks.
#[derive(Debug, Clone, Copy)]
pub struct WindowOptions {
    /// Side length of the sampled exponent window.
    pub window_len: u64,
    /// Explicit first exponent; `None` derives it from generator degrees.
    pub window_base: Option<u64>,
}

impl Default for WindowOptions {
    fn default() -> Self {
        WindowOptions {
            window_len: 3,
            window_base: None,
        }
    }
}

fn default_window_base(sys: &MultiIdealSystem) -> Result<u64> {
    Ok(sys.max_generator_degree()? + sys.mprimary_exponent())
}

fn window_points(axes: usize, base: u64, len: u64) -> Vec<Vec<u64>> {
    crate::poly::tensor_exponents(axes, len as u32)
        .into_iter()
        .map(|e| e.into_iter().map(|v| base + v as u64).collect())
        .collect()
}

/// Evaluate the three filter-regular conditions for a candidate.
pub fn check_weak_fc(
    sys: &MultiIdealSystem,
    cand: &ElementCandidate,
    opts: &WindowOptions,
) -> Result<FcReport> {
    sys.ensure_nondegenerate()?;
    let s = sys.ctx().len();
    let x = cand.monomial(s);
    let x_ideal = MonomialIdeal::new(sys.ctx().clone(), vec![x.clone()])?;
    let module = sys.module();
    let u = module.numerator();
    let l = module.denominator();
    let prod = sys.product_ideal();

    // (1) torsion of the candidate is contained in the scaling-ideal torsion
    let torsion = l.colon(&x_ideal)?.intersect(u);
    let saturated_l = l.saturation(&prod)?;
    let torsion_ok = saturated_l.contains(&torsion);

    // (2) intersection condition on a finite double window
    let base = match opts.window_base {
        Some(b) => b,
        None => default_window_base(sys)?,
    };
    let axes = sys.d() + 1;
    let mut points = window_points(axes, base, opts.window_len);
    points.extend(window_points(axes, base + 1, opts.window_len));
    points.sort();
    points.dedup();

    let mut cache = PowerProductCache::new(sys);
    let xu = u.scale(&x);
    let l_u64 = u64_gens(l)?;
    let xu_u64 = u64_gens(&xu)?;
    let mut true_count = 0usize;
    for n in &points {
        cache.ensure(n);
        let mut up = n.clone();
        up[cand.axis()] += 1;
        cache.ensure(&up);
        // left side: (xU + L) ∩ (P(n + e)·U + L), generated by pairwise lcms
        let bumped_u64 = u64_gens(cache.get(&up))?;
        let mut left: Vec<Vec<u64>> = Vec::new();
        for a in xu_u64.iter().chain(&l_u64) {
            for b in bumped_u64.iter().chain(&l_u64) {
                insert_minimal(&mut left, lcm_exps(a, b));
            }
        }
        // right side: x·P(n)·U + L
        let scaled = cache.get(n).scale(&x);
        let mut right = u64_gens(&scaled)?;
        right.extend(l_u64.iter().cloned());
        if left.iter().all(|m| member(m, &right)) {
            true_count += 1;
        }
    }
    let total = points.len();
    let intersection = if true_count == total {
        ThreeValued::Holds
    } else if true_count == 0 {
        ThreeValued::Fails
    } else {
        ThreeValued::Unsettled
    };

    // (3) the saturated quotient drops dimension by exactly one
    let q = dimension(&sys.saturated_module()?)?;
    let quotient_sat = module.quotient_by(&x).saturate_by(&prod)?;
    let dimension_ok = dimension(&quotient_sat)? == q - 1;

    let class = if !torsion_ok {
        FcClass::None
    } else if intersection != ThreeValued::Holds {
        FcClass::Inconclusive
    } else if dimension_ok {
        FcClass::Fc
    } else {
        FcClass::WeakFc
    };

    Ok(FcReport {
        torsion_ok,
        intersection,
        intersection_true: true_count,
        intersection_total: total,
        dimension_ok,
        class,
        window_base: base,
        window_len: opts.window_len,
    })
}

/// Search the variables of each scaling ideal for the first candidate whose
/// torsion and intersection conditions both hold.
pub fn find_weak_fc(
    sys: &MultiIdealSystem,
    opts: &WindowOptions,
) -> Result<Option<(ElementCandidate, FcReport)>> {
    for ideal_index in 0..sys.d() {
        for var in 0..sys.ctx().len() {
            let cand = match ElementCandidate::new(sys, ideal_index, var) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let report = check_weak_fc(sys, &cand, opts)?;
            if matches!(report.class, FcClass::WeakFc | FcClass::Fc) {
                return Ok(Some((cand, report)));
            }
        }
    }
    Ok(None)
}

/// The module quotient by the candidate, over the same ideals.
pub fn quotient_system(
    sys: &MultiIdealSystem,
    cand: &ElementCandidate,
) -> Result<MultiIdealSystem> {
    let x = cand.monomial(sys.ctx().len());
    sys.with_module(sys.module().quotient_by(&x))
}

/// Remove scaling ideal `index`, folding its `v`-th power into the module.
pub fn drop_index_system(sys: &MultiIdealSystem, index: usize, v: u64) -> Result<MultiIdealSystem> {
    if index >= sys.d() {
        return Err(Error::InvalidInput(format!(
            "scaling-ideal index {index} out of range (d = {})",
            sys.d()
        )));
    }
    let power = sys.ideals()[index].pow(v);
    let module = sys.module().multiplied_by_ideal(&power);
    let ideals: Vec<MonomialIdeal> = sys
        .ideals()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != index)
        .map(|(_, ideal)| ideal.clone())
        .collect();
    MultiIdealSystem::new(sys.j().clone(), ideals, module)
}

/// After a successful fit, confirm on the adjacent validation grid that the
/// candidate's quotients account exactly for the first differences of the
/// Hilbert samples along its axis.
pub fn filter_regular_identity(
    sys: &MultiIdealSystem,
    cand: &ElementCandidate,
    fit: &BhattacharyaResult,
) -> Result<bool> {
    let axes = sys.d() + 1;
    let side = (fit.q.max(1)) as u64;
    let base = fit.offset + side;
    let x = cand.monomial(sys.ctx().len());
    let mut cache = PowerProductCache::new(sys);
    for n in window_points(axes, base, side) {
        let mut prev = n.clone();
        prev[cand.axis()] -= 1;
        let here = crate::hilbert::graded_piece_length(sys, &mut cache, &n)?;
        let before = crate::hilbert::graded_piece_length(sys, &mut cache, &prev)?;
        let mut up = n.clone();
        up[0] += 1;
        cache.ensure(&up);
        let denominator = cache.get(&up).sum(&cache.get(&prev).scale(&x));
        let observed = monomials_between(cache.get(&n), &denominator, sys.module().denominator())?;
        if here < before {
            return Ok(false);
        }
        if observed != here - before {
            return Ok(false);
        }
    }
    Ok(true)
}

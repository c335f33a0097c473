//! Sampling of graded-piece lengths and exact interpolation of their
//! stabilized polynomial, from which mixed multiplicities are read off.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::count::monomials_between;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::poly::{factorial, fit_tensor, tensor_exponents, to_nonneg_integer, ExactPolynomial};
use crate::primes::dimension;
use crate::system::MultiIdealSystem;

/// Controls for the stabilization search: first sampling offset and the
/// largest offset tried before giving up.
#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub offset: u64,
    pub cap: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { offset: 1, cap: 64 }
    }
}

/// Memoized products J^{n0}·I1^{n1}⋯Id^{nd}·U, keyed by the exponent tuple.
/// Each entry is derived from a predecessor along the first nonzero axis,
/// so filling a grid reuses every intermediate product.
pub struct PowerProductCache {
    bases: Vec<MonomialIdeal>,
    seed: MonomialIdeal,
    map: HashMap<Vec<u64>, MonomialIdeal>,
}

impl PowerProductCache {
    pub fn new(sys: &MultiIdealSystem) -> Self {
        let mut bases = vec![sys.j().clone()];
        bases.extend(sys.ideals().iter().cloned());
        PowerProductCache {
            bases,
            seed: sys.module().numerator().clone(),
            map: HashMap::new(),
        }
    }

    /// Make sure the entry for `key` (and all intermediates below it) exists.
    pub fn ensure(&mut self, key: &[u64]) {
        debug_assert_eq!(key.len(), self.bases.len());
        let mut stack: Vec<Vec<u64>> = vec![key.to_vec()];
        while let Some(top) = stack.last().cloned() {
            if self.map.contains_key(&top) {
                stack.pop();
                continue;
            }
            match top.iter().position(|&n| n > 0) {
                None => {
                    self.map.insert(top.clone(), self.seed.clone());
                    stack.pop();
                }
                Some(axis) => {
                    let mut pred = top.clone();
                    pred[axis] -= 1;
                    if let Some(prev) = self.map.get(&pred) {
                        let product = prev.product(&self.bases[axis]);
                        self.map.insert(top.clone(), product);
                        stack.pop();
                    } else {
                        stack.push(pred);
                    }
                }
            }
        }
    }

    pub fn get(&self, key: &[u64]) -> &MonomialIdeal {
        self.map
            .get(key)
            .expect("cache entry must be ensured before use")
    }
}

fn bump(point: &[u64], axis: usize) -> Vec<u64> {
    let mut next = point.to_vec();
    next[axis] += 1;
    next
}

/// Length of the graded piece at `point`: the quotient of consecutive
/// power-products of the module along the first axis.
pub fn graded_piece_length(
    sys: &MultiIdealSystem,
    cache: &mut PowerProductCache,
    point: &[u64],
) -> Result<BigUint> {
    let up = bump(point, 0);
    cache.ensure(&up);
    cache.ensure(point);
    monomials_between(cache.get(point), cache.get(&up), sys.module().denominator())
}

/// Graded-piece lengths at many points; products are filled serially so they
/// are shared, the counts themselves run in parallel.
pub fn sample_lengths(
    sys: &MultiIdealSystem,
    cache: &mut PowerProductCache,
    points: &[Vec<u64>],
) -> Result<Vec<BigUint>> {
    for p in points {
        cache.ensure(p);
        cache.ensure(&bump(p, 0));
    }
    let denom = sys.module().denominator();
    points
        .par_iter()
        .map(|p| monomials_between(cache.get(p), cache.get(&bump(p, 0)), denom))
        .collect()
}

/// The stabilized data of a multi-graded Hilbert function: the interpolated
/// polynomial, its top-degree form, and the normalized coefficients.
#[derive(Debug, Clone)]
pub struct BhattacharyaResult {
    /// Dimension of the module after saturating away the scaling-ideal torsion.
    pub q: u32,
    /// Offset at which the samples matched a stable polynomial.
    pub offset: u64,
    pub polynomial: ExactPolynomial,
    pub leading_form: ExactPolynomial,
    /// Normalized top coefficients, keyed by exponent tuple (k0, …, kd);
    /// every tuple of total degree q−1 is present, including zero values.
    pub mixed: BTreeMap<Vec<u64>, BigUint>,
    /// Sum of all mixed values; equals the multiplicity of the fiber module.
    pub tilde_e: BigUint,
}

impl BhattacharyaResult {
    /// Mixed value at `k`, with absent keys reading as zero.
    pub fn mixed_at(&self, k: &[u64]) -> BigUint {
        self.mixed.get(k).cloned().unwrap_or_else(BigUint::zero)
    }
}

/// All tuples of the given length with entries summing to `total`.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = vec![0u64; parts];
    fn rec(i: usize, remaining: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i + 1 == current.len() {
            current[i] = remaining;
            out.push(current.clone());
            return;
        }
        for v in 0..=remaining {
            current[i] = v;
            rec(i + 1, remaining - v, current, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut current, &mut out);
    out
}

fn grid_points(axes: usize, side: u64, base: u64) -> Vec<Vec<u64>> {
    tensor_exponents(axes, side as u32)
        .into_iter()
        .map(|e| e.into_iter().map(|v| base + v as u64).collect())
        .collect()
}

/// Interpolate the Hilbert samples of the system at one offset and run all
/// stabilization checks. `Ok(None)` means "not stable here, retry farther out".
fn try_fit_at(
    sys: &MultiIdealSystem,
    cache: &mut PowerProductCache,
    q: u32,
    base: u64,
) -> Result<Option<BhattacharyaResult>> {
    let axes = sys.d() + 1;
    let side = (q.max(1)) as u64;
    let fit_points = grid_points(axes, side, base);
    let check_points = grid_points(axes, side, base + side);
    let fit_values = sample_lengths(sys, cache, &fit_points)?;
    let check_values = sample_lengths(sys, cache, &check_points)?;

    if q == 0 {
        let all_zero = fit_values.iter().chain(&check_values).all(|v| v.is_zero());
        if !all_zero {
            return Ok(None);
        }
        return Ok(Some(BhattacharyaResult {
            q,
            offset: base,
            polynomial: ExactPolynomial::zero(axes),
            leading_form: ExactPolynomial::zero(axes),
            mixed: BTreeMap::new(),
            tilde_e: BigUint::zero(),
        }));
    }

    let ints: Vec<BigInt> = fit_values.iter().map(|v| BigInt::from(v.clone())).collect();
    let poly = match fit_tensor(&fit_points, &ints, axes, side as u32) {
        Some(p) => p,
        None => return Ok(None),
    };
    if poly.has_terms_above(q - 1) {
        return Ok(None);
    }
    for (p, v) in check_points.iter().zip(&check_values) {
        if poly.eval_u64(p) != BigRational::from_integer(BigInt::from(v.clone())) {
            return Ok(None);
        }
    }
    let leading_form = poly.homogeneous_part(q - 1);
    let mut mixed = BTreeMap::new();
    let mut tilde_e = BigUint::zero();
    let zero = BigRational::zero();
    for k in compositions((q - 1) as u64, axes) {
        let alpha: Vec<u32> = k.iter().map(|&v| v as u32).collect();
        let coeff = leading_form.coeffs().get(&alpha).unwrap_or(&zero);
        let scale = alpha.iter().map(|&a| factorial(a)).product::<BigRational>();
        let value = match to_nonneg_integer(&(coeff * scale)) {
            Some(v) => v,
            None => return Ok(None),
        };
        tilde_e += &value;
        mixed.insert(k, value);
    }
    if tilde_e.is_zero() {
        return Ok(None);
    }
    Ok(Some(BhattacharyaResult {
        q,
        offset: base,
        polynomial: poly,
        leading_form,
        mixed,
        tilde_e,
    }))
}

/// Find the stable polynomial behind the system's graded-piece lengths,
/// doubling the sampling offset until interpolation, an adjacent validation
/// grid, and coefficient normalization all agree.
pub fn fit_bhattacharya(sys: &MultiIdealSystem, opts: &FitOptions) -> Result<BhattacharyaResult> {
    let nbar = sys.saturated_module()?;
    if nbar.is_zero() {
        return Err(Error::Degenerate(
            "the product of the scaling ideals lies in the radical of the module's annihilator"
                .into(),
        ));
    }
    let qdim = dimension(&nbar)?;
    let q = qdim as u32;
    let mut cache = PowerProductCache::new(sys);
    let mut base = opts.offset.max(1);
    loop {
        if let Some(result) = try_fit_at(sys, &mut cache, q, base)? {
            return Ok(result);
        }
        base = base.saturating_mul(2);
        if base > opts.cap {
            return Err(Error::NonStabilized { cap: opts.cap });
        }
    }
}

/// Multiplicity of the module with respect to one finite-colength ideal.
/// Zero-dimensional modules use the total-length convention.
pub fn samuel_multiplicity(
    j: &MonomialIdeal,
    module: &crate::subquotient::MonomialSubquotient,
    opts: &FitOptions,
) -> Result<BigUint> {
    if module.is_zero() {
        return Ok(BigUint::zero());
    }
    let dim = dimension(module)?;
    if dim <= 0 {
        return module.length();
    }
    let sys = MultiIdealSystem::new(j.clone(), Vec::new(), module.clone())?;
    let fit = fit_bhattacharya(&sys, opts)?;
    Ok(fit.tilde_e)
}

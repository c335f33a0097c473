//! Exact lattice-point counting: how many monomials lie in one ideal but
//! outside two others.
//!
//! The count `#{m : m ∈ P, m ∉ Q, m ∉ L}` is finite exactly when, for every
//! generator g of P and every variable x_i, some power x_i^e * g lands in
//! Q + L. That analysis also yields a degree bound D covering every counted
//! monomial, so the answer is a difference of two degree-bounded staircase
//! complements, evaluated by slicing one variable at a time instead of
//! scanning lattice points one by one.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Refuse enumeration bounds beyond this; exactness is preserved, compute
/// budgets are not.
const MAX_ENUM_BOUND: u128 = 1 << 24;

/// Exact number of monomials lying in `p` but in neither `q` nor `l`.
///
/// Errors with `NonArtinian` when that set is infinite (detected exactly,
/// not by exhausting a bound).
pub fn monomials_between(
    p: &MonomialIdeal,
    q: &MonomialIdeal,
    l: &MonomialIdeal,
) -> Result<BigUint> {
    if p.ctx() != q.ctx() || p.ctx() != l.ctx() {
        return Err(Error::InvalidInput(
            "mixed variable contexts in count".into(),
        ));
    }
    if p.is_zero() {
        return Ok(BigUint::zero());
    }
    let s = p.ctx().len();
    let b = q.sum(l);
    if b.is_zero() {
        return Err(Error::NonArtinian(
            "the excluded region is empty, so every monomial of a nonzero ideal counts".into(),
        ));
    }
    let pg = u64_gens(p)?;
    let bg = u64_gens(&b)?;

    // Finiteness analysis and degree bound: each counted monomial is g * m'
    // with g a generator of P and m' outside B : g, and the minimal landing
    // powers bound the degree of m'.
    let mut dmax: u128 = 0;
    for g in &pg {
        let mut dg: u128 = g.iter().map(|&e| e as u128).sum();
        for i in 0..s {
            match min_landing_power(g, i, &bg) {
                None => {
                    return Err(Error::NonArtinian(format!(
                        "no power of {} pushes a generator of degree {} into the excluded ideal",
                        p.ctx().name(i),
                        g.iter().map(|&e| e as u128).sum::<u128>(),
                    )));
                }
                Some(e) => dg += e.saturating_sub(1) as u128,
            }
        }
        dmax = dmax.max(dg);
    }
    if dmax > MAX_ENUM_BOUND {
        return Err(Error::TooLarge(format!(
            "counting window needs degree {dmax}, past the {MAX_ENUM_BOUND} guard"
        )));
    }
    let bound = dmax as u64;
    let bp = b.sum(p);
    let bpg = u64_gens(&bp)?;
    // outside(B) minus outside(B + P) = inside P, outside Q and L.
    Ok(count_outside_bounded(&bg, s, bound) - count_outside_bounded(&bpg, s, bound))
}

/// Generators as plain u64 exponent rows for the counting kernels.
pub(crate) fn u64_gens(ideal: &MonomialIdeal) -> Result<Vec<Vec<u64>>> {
    ideal
        .gens()
        .iter()
        .map(|g| {
            g.exps()
                .iter()
                .map(|e| {
                    e.to_u64().ok_or_else(|| {
                        Error::TooLarge("generator exponent exceeds u64 in counting".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// Smallest e with x_i^e * g inside the ideal generated by `bgens`;
/// `None` if no power lands.
fn min_landing_power(g: &[u64], axis: usize, bgens: &[Vec<u64>]) -> Option<u64> {
    let mut best: Option<u64> = None;
    'next: for h in bgens {
        for j in 0..g.len() {
            if j != axis && h[j] > g[j] {
                continue 'next;
            }
        }
        let need = h[axis].saturating_sub(g[axis]);
        best = Some(best.map_or(need, |b| b.min(need)));
        if best == Some(0) {
            break;
        }
    }
    best
}

/// Count monomials of total degree <= bound outside the ideal generated by
/// `gens` (a minimal generating set) in `s` variables.
fn count_outside_bounded(gens: &[Vec<u64>], s: usize, bound: u64) -> BigUint {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return BigUint::zero();
    }
    match s {
        0 => BigUint::from(1u32),
        1 => {
            let emin = gens.iter().map(|g| g[0]).min().unwrap_or(bound + 1);
            BigUint::from(emin.min(bound + 1))
        }
        2 => BigUint::from(staircase_outside_2d(gens, bound)),
        _ => {
            // Slice on the last variable; the slice ideal only grows with the
            // slice exponent, so maintain it incrementally.
            let mut order: Vec<&Vec<u64>> = gens.iter().collect();
            order.sort_by_key(|g| g[s - 1]);
            let mut running: Vec<Vec<u64>> = Vec::new();
            let mut idx = 0;
            let mut total = BigUint::zero();
            for a in 0..=bound {
                while idx < order.len() && order[idx][s - 1] <= a {
                    insert_minimal(&mut running, order[idx][..s - 1].to_vec());
                    idx += 1;
                }
                if running.iter().any(|g| g.iter().all(|&e| e == 0)) {
                    break; // slice ideal is the unit ideal from here on
                }
                total += count_outside_bounded(&running, s - 1, bound - a);
            }
            total
        }
    }
}

/// 2-variable case: simplex size minus the staircase region, strip by strip.
fn staircase_outside_2d(gens: &[Vec<u64>], bound: u64) -> u128 {
    let simplex = (bound as u128 + 1) * (bound as u128 + 2) / 2;
    if gens.is_empty() {
        return simplex;
    }
    let mut sorted: Vec<(u64, u64)> = gens.iter().map(|g| (g[0], g[1])).collect();
    sorted.sort();
    let mut inside: u128 = 0;
    for (i, &(a, b)) in sorted.iter().enumerate() {
        if a > bound {
            break;
        }
        // u in this strip needs v >= b (minimal among gens with first <= u)
        let hi = if i + 1 < sorted.len() {
            sorted[i + 1].0.saturating_sub(1)
        } else {
            bound
        };
        inside += strip_points(a, hi.min(bound), b, bound);
    }
    simplex - inside
}

/// Points (u, v) with lo <= u <= hi, v >= c, u + v <= bound.
fn strip_points(lo: u64, hi: u64, c: u64, bound: u64) -> u128 {
    if c > bound || lo > hi {
        return 0;
    }
    let t = bound - c; // largest u with any room
    if lo > t {
        return 0;
    }
    let hi = hi.min(t);
    let first = (t - lo + 1) as u128; // count at u = lo
    let last = (t - hi + 1) as u128; // count at u = hi
    (first + last) * (first - last + 1) / 2
}

/// Keep `running` a minimal generating set while inserting `g`.
pub(crate) fn insert_minimal(running: &mut Vec<Vec<u64>>, g: Vec<u64>) {
    if running.iter().any(|r| divides(r, &g)) {
        return;
    }
    running.retain(|r| !divides(&g, r));
    running.push(g);
}

pub(crate) fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

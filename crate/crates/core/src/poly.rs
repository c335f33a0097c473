//! Exact multivariate polynomials over the rationals, and the fraction-free
//! linear algebra used to interpolate them on tensor grids.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// A polynomial in a fixed number of axes with rational coefficients; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    axes: usize,
    coeffs: BTreeMap<Vec<u32>, BigRational>,
}

impl ExactPolynomial {
    pub fn zero(axes: usize) -> Self {
        ExactPolynomial {
            axes,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(axes: usize, coeffs: BTreeMap<Vec<u32>, BigRational>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ExactPolynomial { axes, coeffs }
    }

    pub fn axes(&self) -> usize {
        self.axes
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest total degree among the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|a| a.iter().sum()).max()
    }

    /// Whether any term has total degree strictly above `d`.
    pub fn has_terms_above(&self, d: u32) -> bool {
        self.coeffs.keys().any(|a| a.iter().sum::<u32>() > d)
    }

    /// The homogeneous part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> ExactPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(a, _)| a.iter().sum::<u32>() == d)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        ExactPolynomial {
            axes: self.axes,
            coeffs,
        }
    }

    pub fn eval_u64(&self, point: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (alpha, c) in &self.coeffs {
            let mut term = BigInt::one();
            for (a, &n) in alpha.iter().zip(point) {
                term *= BigInt::from(n).pow(*a);
            }
            acc += c * BigRational::from_integer(term);
        }
        acc
    }
}

/// Keys as comma-joined exponents, values rendered exactly ("5", "3/2").
impl Serialize for ExactPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (alpha, c) in &self.coeffs {
            let key: Vec<String> = alpha.iter().map(u32::to_string).collect();
            map.serialize_entry(&key.join(","), &c.to_string())?;
        }
        map.end()
    }
}

/// All exponent tuples in `[0, side)^axes`, lexicographically.
pub fn tensor_exponents(axes: usize, side: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; axes];
    fn rec(i: usize, side: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..side {
            current[i] = e;
            rec(i + 1, side, current, out);
        }
        current[i] = 0;
    }
    rec(0, side, &mut current, &mut out);
    out
}

/// Interpolate the unique polynomial with per-axis degree < `side` through
/// the given points. The grid must be unisolvent for that basis (a tensor
/// grid is); returns `None` when the system is singular.
pub fn fit_tensor(
    points: &[Vec<u64>],
    values: &[BigInt],
    axes: usize,
    side: u32,
) -> Option<ExactPolynomial> {
    let basis = tensor_exponents(axes, side);
    if points.len() != basis.len() || values.len() != basis.len() {
        return None;
    }
    let matrix: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|alpha| {
                    let mut entry = BigInt::one();
                    for (a, &n) in alpha.iter().zip(p) {
                        entry *= BigInt::from(n).pow(*a);
                    }
                    entry
                })
                .collect()
        })
        .collect();
    let solution = solve_integer_system(matrix, values.to_vec())?;
    let coeffs = basis.into_iter().zip(solution).collect();
    Some(ExactPolynomial::from_coeffs(axes, coeffs))
}

/// Solve A·x = b exactly over the rationals, with A square and integral,
/// by fraction-free (Bareiss) elimination. `None` when A is singular.
pub fn solve_integer_system(a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Option<Vec<BigRational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = a
        .into_iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut row = row;
            row.push(rhs);
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                // exact integer division by the previous pivot (Bareiss)
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        if m[i][i].is_zero() {
            return None;
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Some(x)
}

/// n! as a rational, for turning leading coefficients into multiplicities.
pub fn factorial(n: u32) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// A rational that must be a non-negative integer; `None` otherwise.
pub fn to_nonneg_integer(r: &BigRational) -> Option<num_bigint::BigUint> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().to_biguint()
}

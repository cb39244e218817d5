//! Dense polynomials with arbitrary-precision integer coefficients.

use crate::sparse::IntPoly;
use crate::text;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficient vector indexed by exponent; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `X^k`, dropping the low coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_some_and(Signed::is_negative) {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeffs.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in `Z[X]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.deg();
        if n < dd {
            return None;
        }
        let lc = divisor.lc().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let base = i - dd;
            for (j, c) in divisor.coeffs[..dd].iter().enumerate() {
                if !c.is_zero() {
                    rem[base + j] -= &q * c;
                }
            }
            rem[i] = BigInt::zero();
            quot[base] = q;
        }
        if rem[..dd].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// True when `divisor` divides `self` over the rationals (Gauss: for a
    /// primitive divisor this is the same as over the integers).
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        self.div_exact(&divisor.primitive_part()).is_some()
    }

    pub fn l2_norm_squared(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude() * c.magnitude())
            .sum()
    }

    pub fn max_norm(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default()
    }

    pub fn to_sparse(&self) -> IntPoly {
        IntPoly::from_sorted_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (BigUint::from(i), c.clone()))
                .collect(),
        )
    }
}

/// Canonical factor order: degree first, then the ascending coefficient sequence.
impl Ord for DensePoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for DensePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (BigUint::from(i), c.is_negative(), c.magnitude().to_string()));
        text::write_terms(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly {
        DensePoly::from_i64s(c)
    }

    #[test]
    fn trimming_and_degree() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0, 3]).valuation(), 2);
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
        // 2X + 2 does not divide X^2 - 1 over Z, but does over Q
        assert_eq!(a.div_exact(&p(&[2, 2])), None);
        assert!(a.divisible_by(&p(&[2, 2])));
    }

    #[test]
    fn primitive_part_sign() {
        assert_eq!(p(&[4, -6]).primitive_part(), p(&[-2, 3]));
        assert_eq!(p(&[2, 4]).content(), BigInt::from(2));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(p(&[-1, 0, 0, 2]).to_string(), "2*x^3 - 1");
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![p(&[1, 1, 1]), p(&[1, 1]), p(&[-1, 1])];
        v.sort();
        assert_eq!(v, vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 1, 1])]);
    }
}

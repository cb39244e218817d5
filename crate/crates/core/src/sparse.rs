//! Lacunary polynomials: sorted lists of monomials whose exponents may be
//! astronomically larger than the number of terms.
//!
//! Everything here runs in time polynomial in the number of terms and the bit
//! length of the exponents. The only operation whose cost depends on the
//! degree itself is densification, which is guarded by an explicit span limit.

use crate::dense::DensePoly;
use crate::error::{Error, Result};
use crate::modpoly::{self, ModPoly};
use crate::text;
use crate::zp::Zp;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul};

/// Default limit on the number of coefficients a densified polynomial may hold.
pub const DEFAULT_MAX_SPAN: usize = 1 << 20;

/// Coefficient rings supported by [`SparsePoly`].
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + PartialEq + Zero + One + Signed + Send + Sync
{
    fn from_bigint(n: BigInt) -> Self;

    /// Bits of the numerator plus bits of the denominator.
    fn height_bits(&self) -> u64;
}

impl Coefficient for BigInt {
    fn from_bigint(n: BigInt) -> Self {
        n
    }

    fn height_bits(&self) -> u64 {
        self.bits() + 1
    }
}

impl Coefficient for BigRational {
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn height_bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

pub type Term<C> = (BigUint, C);

/// A polynomial as a list of `(exponent, coefficient)` pairs with strictly
/// increasing exponents and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly<C = BigInt> {
    terms: Vec<Term<C>>,
}

pub type IntPoly = SparsePoly<BigInt>;
pub type RationalPoly = SparsePoly<BigRational>;

impl<C: Coefficient> Default for SparsePoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> SparsePoly<C> {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, BigUint::zero())
    }

    pub fn monomial(c: C, e: BigUint) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparsePoly {
                terms: vec![(e, c)],
            }
        }
    }

    /// Normalizes a raw term list: sorts, merges equal exponents and drops
    /// zero coefficients. Negative exponents are rejected.
    pub fn from_terms<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, C)>,
    {
        let mut terms = Vec::new();
        for (e, c) in raw {
            let e = e
                .to_biguint()
                .ok_or_else(|| Error::Input(format!("negative exponent {e}")))?;
            terms.push((e, c));
        }
        Ok(Self::from_unsorted(terms))
    }

    pub fn from_unsorted(mut terms: Vec<Term<C>>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<Term<C>> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.clone() + c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparsePoly { terms: out }
    }

    /// Caller guarantees strictly increasing exponents and nonzero coefficients.
    pub fn from_sorted_terms(terms: Vec<Term<C>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { terms }
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_zero())
    }

    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.last().map(|t| &t.0)
    }

    pub fn valuation(&self) -> Option<&BigUint> {
        self.terms.first().map(|t| &t.0)
    }

    /// `(degree, valuation)`.
    pub fn bounds(&self) -> Result<(BigUint, BigUint)> {
        match (self.degree(), self.valuation()) {
            (Some(d), Some(v)) => Ok((d.clone(), v.clone())),
            _ => Err(Error::UndefinedBounds),
        }
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn constant_term(&self) -> C {
        match self.terms.first() {
            Some((e, c)) if e.is_zero() => c.clone(),
            _ => C::zero(),
        }
    }

    /// Multiplies by `X^k`.
    pub fn shift_up(&self, k: &BigUint) -> Self {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divides by `X^val`.
    pub fn strip_valuation(&self) -> Self {
        match self.valuation() {
            Some(v) if !v.is_zero() => SparsePoly {
                terms: self.terms.iter().map(|(e, c)| (e - v, c.clone())).collect(),
            },
            _ => self.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// `(f / X^val(f))'`, computed term by term.
    pub fn sparse_derivative(&self) -> Self {
        let Some(v) = self.valuation() else {
            return Self::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let k = e - v;
                if k.is_zero() {
                    return None;
                }
                let factor = C::from_bigint(BigInt::from(k.clone()));
                Some((k - 1u32, c.clone() * factor))
            })
            .collect();
        SparsePoly { terms }
    }

    /// Bit size of the monomial list: for each term, the bits of the
    /// coefficient's numerator and denominator plus the bits of the exponent.
    pub fn sparse_size(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, c)| c.height_bits() + e.bits())
            .sum()
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        SparsePoly::from_unsorted(self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect())
    }
}

impl<C: Coefficient> Add for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn add(self, rhs: Self) -> SparsePoly<C> {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let take_left =
                j == rhs.terms.len() || (i < self.terms.len() && self.terms[i].0 < rhs.terms[j].0);
            let take_right =
                i == self.terms.len() || (j < rhs.terms.len() && rhs.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(rhs.terms[j].clone());
                j += 1;
            } else {
                let c = self.terms[i].1.clone() + rhs.terms[j].1.clone();
                if !c.is_zero() {
                    out.push((self.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        SparsePoly { terms: out }
    }
}

impl<C: Coefficient> Mul for &SparsePoly<C> {
    type Output = SparsePoly<C>;

    fn mul(self, rhs: Self) -> SparsePoly<C> {
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                raw.push((e1 + e2, c1.clone() * c2.clone()));
            }
        }
        SparsePoly::from_unsorted(raw)
    }
}

impl<C: Coefficient> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(e, c)| {
            let mag = c.abs();
            (e.clone(), c.is_negative(), mag.to_string())
        });
        text::write_terms(f, terms)
    }
}

/// `X^shift * core` with `core(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedCore {
    pub shift: BigUint,
    pub core: DensePoly,
}

impl ShiftedCore {
    pub fn to_sparse(&self) -> IntPoly {
        self.core.to_sparse().shift_up(&self.shift)
    }
}

/// Densifies a sorted, nonempty run of integer terms relative to its lowest exponent.
pub(crate) fn dense_core_of(terms: &[Term<BigInt>], max_span: usize) -> Result<ShiftedCore> {
    let (Some(first), Some(last)) = (terms.first(), terms.last()) else {
        return Err(Error::UndefinedBounds);
    };
    let span = &last.0 - &first.0;
    let width = span
        .to_usize()
        .filter(|&s| s < max_span)
        .ok_or_else(|| Error::SpanLimit {
            span: span.clone(),
            limit: max_span,
        })?;
    let mut coeffs = vec![BigInt::zero(); width + 1];
    for (e, c) in terms {
        let i = (e - &first.0).to_usize().expect("within span");
        coeffs[i] = c.clone();
    }
    Ok(ShiftedCore {
        shift: first.0.clone(),
        core: DensePoly::new(coeffs),
    })
}

impl IntPoly {
    pub fn from_i64_terms(raw: &[(u64, i64)]) -> Self {
        Self::from_unsorted(
            raw.iter()
                .map(|&(e, c)| (BigUint::from(e), BigInt::from(c)))
                .collect(),
        )
    }

    /// `X^val * core`; fails rather than truncating when the span
    /// `deg - val` does not fit below `max_span`.
    pub fn to_dense_core(&self, max_span: usize) -> Result<ShiftedCore> {
        dense_core_of(&self.terms, max_span)
    }

    /// Dense form including the `X^val` factor.
    pub fn to_dense(&self, max_span: usize) -> Result<DensePoly> {
        if self.is_zero() {
            return Ok(DensePoly::zero());
        }
        let sc = self.to_dense_core(max_span)?;
        let shift = sc
            .shift
            .to_usize()
            .filter(|s| s.saturating_add(sc.core.deg()) < max_span)
            .ok_or_else(|| Error::SpanLimit {
                span: self.degree().unwrap().clone(),
                limit: max_span,
            })?;
        Ok(sc.core.shift_up(shift))
    }

    pub fn to_rational(&self) -> RationalPoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }

    /// Sum of the absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigUint {
        self.terms.iter().map(|(_, c)| c.magnitude()).sum()
    }

    /// `sum c_j X^(alpha_j mod r)` as a dense polynomial of degree `< r`.
    pub fn reduce_exponents_mod(&self, r: usize) -> Result<DensePoly> {
        if r == 0 {
            return Err(Error::Input("exponent reduction modulo 0".into()));
        }
        let mut coeffs = vec![BigInt::zero(); r];
        for (e, c) in &self.terms {
            let i = (e % r).to_usize().expect("residue below r");
            coeffs[i] += c;
        }
        Ok(DensePoly::new(coeffs))
    }

    /// Remainder of `self` modulo `m` over the rationals, scaled by a positive
    /// integer so that it has integer coefficients. For monic `m` no scaling
    /// happens. Zero exactly when `m` divides `self` over the rationals.
    pub fn sparse_mod(&self, m: &DensePoly) -> Result<DensePoly> {
        let dm = match m.degree() {
            Some(d) if d > 0 => d,
            _ => {
                return Err(Error::Input(
                    "sparse_mod needs a modulus of degree >= 1".into(),
                ))
            }
        };
        let mq: Vec<BigRational> = m
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let rem = horner_mod(
            &self.terms,
            dm,
            |a: &[BigRational], b: &[BigRational]| rat_rem(&rat_mul(a, b), &mq),
            |a: &[BigRational], k: usize| rat_rem(&rat_shift(a, k), &mq),
            |c: &BigInt| vec![BigRational::from_integer(c.clone())],
            rat_add,
            |e: &BigUint| rat_x_pow_mod(e, &mq),
        );
        let denom = rem.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Ok(DensePoly::new(
            rem.iter()
                .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                .collect(),
        ))
    }

    /// Remainder modulo `m` in `F_p[X]` by square-and-multiply on the exponent gaps.
    pub fn sparse_mod_p(&self, m: &[u64], zp: Zp) -> ModPoly {
        assert!(!m.is_empty(), "modulus must be nonzero");
        let dm = m.len() - 1;
        if dm == 0 {
            return Vec::new();
        }
        horner_mod(
            &self.terms,
            dm,
            |a: &[u64], b: &[u64]| modpoly::mulmod(a, b, m, zp),
            |a: &[u64], k: usize| modpoly::shift_mod(a, k, m, zp),
            |c: &BigInt| {
                let mut v = vec![zp.reduce(c)];
                modpoly::trim(&mut v);
                v
            },
            |a: &[u64], b: &[u64]| modpoly::add(a, b, zp),
            |e: &BigUint| modpoly::x_pow_mod(e, m, zp),
        )
    }

    /// `f(a) mod p` by square-and-multiply on every monomial.
    pub fn eval_mod(&self, a: u64, p: u64) -> u64 {
        let zp = Zp::new(p);
        let a = a % p;
        let order = BigUint::from(p - 1);
        let mut acc = 0;
        for (e, c) in &self.terms {
            let c = zp.reduce(c);
            let x = if e.is_zero() {
                1
            } else if a == 0 {
                0
            } else {
                zp.pow_big(a, &(e % &order))
            };
            acc = zp.add(acc, zp.mul(c, x));
        }
        acc
    }
}

/// Evaluates `sum c_j X^e_j` modulo some polynomial of degree `dm` by a
/// Horner scheme over the exponent gaps, from the top term down.
fn horner_mod<T, Mul, Shift, Lift, Add, Pow>(
    terms: &[Term<BigInt>],
    dm: usize,
    mul: Mul,
    shift: Shift,
    lift: Lift,
    add: Add,
    x_pow: Pow,
) -> Vec<T>
where
    T: Clone,
    Mul: Fn(&[T], &[T]) -> Vec<T>,
    Shift: Fn(&[T], usize) -> Vec<T>,
    Lift: Fn(&BigInt) -> Vec<T>,
    Add: Fn(&[T], &[T]) -> Vec<T>,
    Pow: Fn(&BigUint) -> Vec<T>,
{
    let small = BigUint::from(2 * dm.max(16));
    let times_x_pow = |acc: Vec<T>, gap: &BigUint| -> Vec<T> {
        if gap.is_zero() || acc.is_empty() {
            acc
        } else if *gap <= small {
            shift(&acc, gap.to_usize().unwrap())
        } else {
            mul(&acc, &x_pow(gap))
        }
    };
    let mut acc: Vec<T> = Vec::new();
    let mut prev: Option<&BigUint> = None;
    for (e, c) in terms.iter().rev() {
        if let Some(p) = prev {
            acc = times_x_pow(acc, &(p - e));
        }
        acc = add(&acc, &lift(c));
        prev = Some(e);
    }
    if let Some(p) = prev {
        acc = times_x_pow(acc, p);
    }
    // bring a short accumulator into reduced form
    shift(&acc, 0)
}

fn rat_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rat_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(BigRational::zero)
                + b.get(i).cloned().unwrap_or_else(BigRational::zero)
        })
        .collect();
    rat_trim(&mut out);
    out
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trim(&mut out);
    out
}

fn rat_shift(a: &[BigRational], k: usize) -> Vec<BigRational> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); k];
    out.extend(a.iter().cloned());
    out
}

fn rat_rem(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    rat_trim(&mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let q = &r[top] / &m[dm];
        for j in 0..dm {
            let t = &q * &m[j];
            r[top - dm + j] -= t;
        }
        r.pop();
        rat_trim(&mut r);
    }
    r
}

fn rat_x_pow_mod(e: &BigUint, m: &[BigRational]) -> Vec<BigRational> {
    let mut acc = rat_rem(&[BigRational::one()], m);
    let x = rat_rem(&[BigRational::zero(), BigRational::one()], m);
    for i in (0..e.bits()).rev() {
        acc = rat_rem(&rat_mul(&acc, &acc), m);
        if e.bit(i) {
            acc = rat_rem(&rat_mul(&acc, &x), m);
        }
    }
    acc
}

/// `f = sign * content * X^shift * primitive`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveSplit {
    pub sign: Sign,
    pub content: BigRational,
    pub shift: BigUint,
    pub primitive: IntPoly,
}

/// Splits off the sign, the positive rational content and the power of `X`,
/// leaving a primitive integer polynomial with nonzero constant term and
/// positive leading coefficient.
pub fn content_primitive(f: &RationalPoly) -> Result<PrimitiveSplit> {
    let (_, val) = f.bounds()?;
    let denom_lcm = f
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .terms()
        .iter()
        .map(|(_, c)| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let negative = f.leading_coefficient().unwrap().is_negative();
    let unit = if negative { -g.clone() } else { g.clone() };
    let terms = f
        .terms()
        .iter()
        .zip(&ints)
        .map(|((e, _), c)| (e - &val, c / &unit))
        .collect();
    Ok(PrimitiveSplit {
        sign: if negative { Sign::Minus } else { Sign::Plus },
        content: BigRational::new(g, denom_lcm),
        shift: val,
        primitive: IntPoly::from_sorted_terms(terms),
    })
}

impl PrimitiveSplit {
    /// Re-expands `sign * content * X^shift * primitive`.
    pub fn expand(&self) -> RationalPoly {
        let mut unit = self.content.clone();
        if self.sign == Sign::Minus {
            unit = -unit;
        }
        self.primitive
            .to_rational()
            .scale(&unit)
            .shift_up(&self.shift)
    }
}

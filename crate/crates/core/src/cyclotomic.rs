//! Cyclotomic factors of lacunary polynomials.
//!
//! `phi_r` divides `h` exactly when it divides `h` with exponents reduced
//! modulo `r`, so divisibility costs `O(r)` regardless of the degree of `h`.

use crate::dense::DensePoly;
use crate::error::{Error, Result};
use crate::gcd::gcd_dense;
use crate::par;
use crate::sparse::IntPoly;
use crate::zp::{self, Zp};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Euler's totient by trial division.
pub fn euler_phi(r: u64) -> u64 {
    assert!(r >= 1, "totient of zero");
    let mut n = r;
    let mut phi = r;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            while n.is_multiple_of(q) {
                n /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// All `r <= 2 d^2` with `phi(r) <= d`, ascending.
pub fn support_set(d: usize) -> Vec<usize> {
    (1..=2 * d * d)
        .filter(|&r| euler_phi(r as u64) <= d as u64)
        .collect()
}

/// `phi_r = (X^r - 1) / gcd(X^r - 1, prod_{s < r} phi_s)` where the product
/// runs over the polynomials already in `table`, which must include every
/// proper divisor of `r`.
pub fn cyclotomic_poly(r: usize, table: &BTreeMap<usize, DensePoly>) -> Result<DensePoly> {
    let xr = DensePoly::x_pow_minus_one(r);
    // folding exponents modulo r is one Euclidean step against X^r - 1
    let mut folded = vec![BigInt::zero(); r];
    folded[0] = BigInt::from(1);
    let mut acc = DensePoly::new(folded);
    for (_, phi) in table.range(..r) {
        let prod = acc.mul(phi);
        let mut folded = vec![BigInt::zero(); r];
        for (i, c) in prod.coeffs().iter().enumerate() {
            folded[i % r] += c;
        }
        acc = DensePoly::new(folded);
    }
    let g = if acc.is_zero() {
        xr.clone()
    } else {
        gcd_dense(&xr, &acc)
    };
    let phi = xr
        .div_exact(&g)
        .ok_or_else(|| Error::Internal(format!("cyclotomic construction failed at r = {r}")))?;
    if phi.deg() as u64 != euler_phi(r as u64) {
        return Err(Error::Internal(format!("wrong degree for phi_{r}")));
    }
    Ok(phi)
}

/// Cyclotomic polynomials `phi_r` for every `r` in the support set of `d`.
#[derive(Clone, Debug)]
pub struct CycloTable {
    d: usize,
    support: Vec<usize>,
    polys: BTreeMap<usize, DensePoly>,
}

impl CycloTable {
    pub fn build(d: usize) -> Result<Self> {
        let support = support_set(d);
        let mut polys = BTreeMap::new();
        for &r in &support {
            let phi = cyclotomic_poly(r, &polys)?;
            polys.insert(r, phi);
        }
        Ok(CycloTable { d, support, polys })
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn get(&self, r: usize) -> Option<&DensePoly> {
        self.polys.get(&r)
    }

    /// The index `r` with `phi_r == l`, if `l` is one of the tabulated polynomials.
    pub fn identify(&self, l: &DensePoly) -> Option<usize> {
        self.polys.iter().find(|(_, p)| *p == l).map(|(&r, _)| r)
    }
}

/// Shared table for degree bound `d`, built on first use.
pub fn table(d: usize) -> Result<Arc<CycloTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycloTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&d) {
        return Ok(t.clone());
    }
    let t = Arc::new(CycloTable::build(d)?);
    cache.lock().unwrap().insert(d, t.clone());
    Ok(t)
}

/// True iff `phi_r` divides `h`.
pub fn divides_cyclotomic(h: &IntPoly, r: usize, phi_r: &DensePoly) -> bool {
    if h.is_zero() {
        return true;
    }
    let reduced = h.reduce_exponents_mod(r).expect("r >= 1");
    reduced.is_zero() || reduced.div_exact(phi_r).is_some()
}

/// Multiplicity of `phi_r` in `h != 0`, following the chain of sparse derivatives.
pub fn multiplicity_chain(h: &IntPoly, r: usize, phi_r: &DensePoly) -> u32 {
    let mut w = h.strip_valuation();
    let mut m = 0;
    while !w.is_zero() && divides_cyclotomic(&w, r, phi_r) {
        m += 1;
        w = w.sparse_derivative();
    }
    m
}

/// Every `(phi_r, m)` with `phi(r) <= d` and `m > 0` the multiplicity in `h`.
pub fn cyclotomic_factors(h: &IntPoly, d: usize) -> Result<Vec<(DensePoly, u32)>> {
    if h.is_constant() {
        return Ok(Vec::new());
    }
    let t = table(d)?;
    let mults = par::map(t.support(), |&r| {
        multiplicity_chain(h, r, t.get(r).unwrap())
    });
    let mut out: Vec<(DensePoly, u32)> = t
        .support()
        .iter()
        .zip(mults)
        .filter(|(_, m)| *m > 0)
        .map(|(&r, m)| (t.get(r).unwrap().clone(), m))
        .collect();
    out.sort();
    Ok(out)
}

/// Totients of `0..=n` by sieving.
fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// Some `R` with `phi(r) > n` for every `r >= R`, from
/// `phi(r) > r / (e^gamma ln ln r + 3 / ln ln r)`.
fn order_bound(n: usize) -> usize {
    let mut r = 64usize.max(2 * n);
    loop {
        let ll = (r as f64).ln().ln();
        if r as f64 / (1.7811 * ll + 3.0 / ll) > n as f64 + 1.0 {
            return r;
        }
        r += r / 8 + 1;
    }
}

fn prime_divisors(mut r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= r {
        if r.is_multiple_of(q) {
            out.push(q);
            while r.is_multiple_of(q) {
                r /= q;
            }
        }
        q += 1;
    }
    if r > 1 {
        out.push(r);
    }
    out
}

/// A prime `q = 1 mod r` in `[2^61, 2^62)` and an element of order exactly `r` modulo `q`.
fn root_of_unity(r: u64) -> (Zp, u64) {
    let q = (((1u64 << 61) / r) + 1..)
        .map(|k| k * r + 1)
        .find(|&q| zp::is_prime(q))
        .expect("Dirichlet");
    let f = Zp::new(q);
    let ls = prime_divisors(r);
    let w = (2..)
        .map(|a| f.pow(a, (q - 1) / r))
        .find(|&w| ls.iter().all(|l| f.pow(w, r / l) != 1))
        .unwrap();
    (f, w)
}

/// `prod_{k | r} (X^k - 1)^{mu(r/k)}`, multiplying and dividing by binomials directly.
pub fn cyclotomic_by_mobius(r: usize) -> DensePoly {
    let ls = prime_divisors(r as u64);
    let mut num: Vec<usize> = Vec::new();
    let mut den: Vec<usize> = Vec::new();
    for mask in 0u32..1 << ls.len() {
        let k = ls
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(r as u64, |k, (_, l)| k / l) as usize;
        if mask.count_ones() % 2 == 0 {
            num.push(k);
        } else {
            den.push(k);
        }
    }
    // X^k - 1 multiplied in, then divided out by the recurrence q_i = q_{i-k} - c_i
    let mut c = vec![BigInt::from(1)];
    for k in num {
        let mut out = vec![BigInt::zero(); c.len() + k];
        for (i, v) in c.iter().enumerate() {
            out[i + k] += v;
            out[i] -= v;
        }
        c = out;
    }
    for k in den {
        let n = c.len() - 1 - k;
        let mut q = vec![BigInt::zero(); n + 1];
        for i in 0..=n {
            q[i] = if i >= k { &q[i - k] - &c[i] } else { -&c[i] };
        }
        c = q;
    }
    let p = DensePoly::new(c);
    if p.lc().is_some_and(|l| l.sign() == num_bigint::Sign::Minus) {
        p.neg()
    } else {
        p
    }
}

/// Splits a squarefree `f` with `f(0) != 0` into its cyclotomic factors and
/// the cofactor. Candidates are screened by evaluating `f` at a primitive
/// `r`-th root of unity modulo a large prime, then confirmed by exact division.
pub fn cyclotomic_part(f: &DensePoly) -> (Vec<DensePoly>, DensePoly) {
    let n = f.deg();
    if n == 0 {
        return (Vec::new(), f.clone());
    }
    let phi = totients(order_bound(n));
    let candidates: Vec<usize> = (1..phi.len()).filter(|&r| phi[r] <= n as u64).collect();
    let small: Option<Vec<i64>> = f
        .coeffs()
        .iter()
        .map(|c| c.to_i64().filter(|v| v.unsigned_abs() < 1 << 60))
        .collect();
    let hits = par::map(&candidates, |&r| {
        let (zp, w) = root_of_unity(r as u64);
        let q = zp.modulus();
        let w = zp.shoup(w);
        // Horner with lazy reduction: every intermediate stays below 2q
        let mut acc = 0;
        match &small {
            Some(v) => {
                for &c in v.iter().rev() {
                    let c = if c < 0 {
                        q - c.unsigned_abs()
                    } else {
                        c as u64
                    };
                    acc = w.mul(acc, q) + c;
                }
            }
            None => {
                for c in f.coeffs().iter().rev() {
                    acc = w.mul(acc, q) + zp.reduce(c);
                }
            }
        }
        acc % q == 0
    });
    let mut rest = f.clone();
    let mut found = Vec::new();
    for (&r, hit) in candidates.iter().zip(hits) {
        if hit && phi[r] as usize <= rest.deg() {
            let c = cyclotomic_by_mobius(r);
            if let Some(q) = rest.div_exact(&c) {
                rest = q;
                found.push(c);
            }
        }
    }
    (found, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly {
        DensePoly::from_i64s(c)
    }

    #[test]
    fn mobius_construction_matches_table() {
        let t = table(12).unwrap();
        for &r in t.support() {
            assert_eq!(&cyclotomic_by_mobius(r), t.get(r).unwrap(), "r = {r}");
        }
        assert_eq!(cyclotomic_by_mobius(105).coeff(7), BigInt::from(-2));
    }

    #[test]
    fn cyclotomic_part_of_binomial_product() {
        // (X^12 - 1)(X^2 + X + 2)
        let f = DensePoly::x_pow_minus_one(12).mul(&p(&[2, 1, 1]));
        let (found, rest) = cyclotomic_part(&f);
        assert_eq!(found.len(), 6);
        assert_eq!(rest, p(&[2, 1, 1]));
        let (found, rest) = cyclotomic_part(&p(&[3, 0, 1]));
        assert!(found.is_empty());
        assert_eq!(rest, p(&[3, 0, 1]));
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(100), 40);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_set(1), vec![1, 2]);
        assert_eq!(support_set(2), vec![1, 2, 3, 4, 6]);
        assert_eq!(support_set(5), vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
    }

    #[test]
    fn polynomial_examples() {
        let t = CycloTable::build(4).unwrap();
        assert_eq!(t.get(1).unwrap(), &p(&[-1, 1]));
        assert_eq!(t.get(6).unwrap(), &p(&[1, -1, 1]));
        assert_eq!(t.get(12).unwrap(), &p(&[1, 0, -1, 0, 1]));
        assert_eq!(t.identify(&p(&[1, 1, 1])), Some(3));
        assert_eq!(t.identify(&p(&[1, 0, 1, 1])), None);
    }

    #[test]
    fn divisibility_examples() {
        let t = table(4).unwrap();
        let h = IntPoly::from_i64_terms(&[(999, 1), (0, 1)]);
        assert!(divides_cyclotomic(&h, 2, t.get(2).unwrap()));
        assert!(!divides_cyclotomic(&h, 1, t.get(1).unwrap()));
        let h = IntPoly::from_i64_terms(&[(10, 1), (2, 1), (0, 2)]);
        assert!(divides_cyclotomic(&h, 4, t.get(4).unwrap()));
    }

    #[test]
    fn multiplicity_examples() {
        let t = table(4).unwrap();
        let h = IntPoly::from_i64_terms(&[(1000, 1), (500, 2), (0, 1)]);
        assert_eq!(multiplicity_chain(&h, 8, t.get(8).unwrap()), 2);
        let h = IntPoly::from_i64_terms(&[(1, 1), (0, 1)]);
        assert_eq!(multiplicity_chain(&h, 2, t.get(2).unwrap()), 1);
        let h = IntPoly::from_i64_terms(&[(1, 1), (0, 2)]);
        assert_eq!(multiplicity_chain(&h, 2, t.get(2).unwrap()), 0);
    }

    #[test]
    fn factor_examples() {
        let h = IntPoly::from_i64_terms(&[(999, 1), (0, 1)]);
        assert_eq!(cyclotomic_factors(&h, 1).unwrap(), vec![(p(&[1, 1]), 1)]);
        let h = IntPoly::from_i64_terms(&[(100, 1), (0, -1)]);
        let got: Vec<usize> = cyclotomic_factors(&h, 4)
            .unwrap()
            .iter()
            .map(|(f, m)| {
                assert_eq!(*m, 1);
                table(4).unwrap().identify(f).unwrap()
            })
            .collect();
        let mut got = got;
        got.sort();
        assert_eq!(got, vec![1, 2, 4, 5, 10]);
        assert!(cyclotomic_factors(&IntPoly::from_i64_terms(&[(0, 2)]), 3)
            .unwrap()
            .is_empty());
    }
}

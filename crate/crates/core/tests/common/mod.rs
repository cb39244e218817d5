//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's gcd, cyclotomic or factoring code.
#![allow(dead_code)]

use lacunary::{DensePoly, IntPoly};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dense(c: &[i64]) -> DensePoly {
    DensePoly::from_i64s(c)
}

/// Coefficient vector of a lacunary polynomial of small degree.
pub fn expand(f: &IntPoly) -> DensePoly {
    let n = f.degree().map_or(0, |d| d.to_usize().unwrap() + 1);
    let mut c = vec![BigInt::zero(); n];
    for (e, v) in f.terms() {
        c[e.to_usize().unwrap()] += v;
    }
    DensePoly::new(c)
}

pub fn from_dense(f: &DensePoly) -> IntPoly {
    IntPoly::from_unsorted(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (BigUint::from(i), c.clone()))
            .collect(),
    )
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let c = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// Random polynomial with at most `max_terms` terms and exponents up to `max_exp`.
pub fn random_sparse(rng: &mut ChaCha8Rng, max_terms: usize, max_exp: u64, bound: i64) -> IntPoly {
    let k = rng.gen_range(2..=max_terms);
    let terms: Vec<(u64, i64)> = (0..k)
        .map(|_| (rng.gen_range(0..=max_exp), nonzero(rng, bound)))
        .collect();
    IntPoly::from_i64_terms(&terms)
}

fn small_factor(rng: &mut ChaCha8Rng) -> IntPoly {
    match rng.gen_range(0..4) {
        0 => IntPoly::from_i64_terms(&[(1, nonzero(rng, 3)), (0, nonzero(rng, 3))]),
        1 => IntPoly::from_i64_terms(&[
            (rng.gen_range(1..=40), 1),
            (0, [1, -1][rng.gen_range(0..2)]),
        ]),
        2 => {
            let e = rng.gen_range(2..=4);
            IntPoly::from_i64_terms(&[
                (e, 1),
                (rng.gen_range(1..e), nonzero(rng, 2)),
                (0, nonzero(rng, 2)),
            ])
        }
        _ => IntPoly::from_i64_terms(&[
            (rng.gen_range(1..=30), nonzero(rng, 2)),
            (0, nonzero(rng, 2)),
        ]),
    }
}

/// Seeded instances with at most 12 terms, exponents at most 200 and
/// coefficients at most 100 in absolute value. Odd seeds are plain random
/// polynomials; even seeds multiply a random cofactor by a few planted
/// factors, retrying until the size limits hold.
pub fn instance(seed: u64) -> IntPoly {
    let mut r = rng(seed);
    if seed % 2 == 1 {
        return random_sparse(&mut r, 12, 200, 100);
    }
    loop {
        let mut f = random_sparse(&mut r, 4, 120, 9);
        for _ in 0..r.gen_range(1..=3) {
            f = &f * &small_factor(&mut r);
        }
        let ok = !f.is_zero()
            && f.len() <= 12
            && f.degree().unwrap() <= &BigUint::from(200u32)
            && f.terms().iter().all(|(_, c)| c.abs() <= BigInt::from(100));
        if ok && f.len() >= 2 {
            return f;
        }
    }
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

pub fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            m /= q;
            if m.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `phi_r = prod_{k | r} (X^k - 1)^{mu(r/k)}`.
pub fn cyclotomic(r: u64) -> DensePoly {
    let mut num = DensePoly::one();
    let mut den = DensePoly::one();
    for k in (1..=r).filter(|k| r.is_multiple_of(*k)) {
        let b = DensePoly::x_pow_minus_one(k as usize);
        match mobius(r / k) {
            1 => num = num.mul(&b),
            -1 => den = den.mul(&b),
            _ => {}
        }
    }
    num.div_exact(&den).expect("Moebius product is exact")
}

/// `{r : r | n, totient(r) <= d}`, using `totient(r) >= sqrt(r / 2)` to stop at `2 d^2`.
pub fn cyclotomic_divisors(n: u64, d: u64) -> Vec<u64> {
    (1..=(2 * d * d).min(n))
        .filter(|r| n.is_multiple_of(*r) && totient(*r) <= d)
        .collect()
}

/// Gcd over the rationals by the schoolbook Euclidean algorithm, made
/// primitive with positive leading coefficient.
pub fn rational_gcd(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let to_q = |p: &DensePoly| -> Vec<BigRational> {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    let mut r0 = to_q(a);
    let mut r1 = to_q(b);
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let mut r = r0.clone();
        while r.len() >= r1.len() && !r.is_empty() {
            let q = r.last().unwrap() / r1.last().unwrap();
            let shift = r.len() - r1.len();
            for (j, c) in r1.iter().enumerate() {
                r[shift + j] -= &q * c;
            }
            r.pop();
            trim(&mut r);
        }
        r0 = std::mem::replace(&mut r1, r);
    }
    let den = r0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = r0
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    DensePoly::new(ints).primitive_part()
}

/// Multiplicity of `g` in `f` by repeated exact division.
pub fn dense_multiplicity(f: &DensePoly, g: &DensePoly) -> u32 {
    let mut m = 0;
    let mut rest = f.clone();
    while let Some(q) = rest.div_exact(g) {
        rest = q;
        m += 1;
    }
    m
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, e: &BigUint, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
    }
    acc
}

/// `f(a) mod p` without reducing exponents.
pub fn eval_mod(f: &IntPoly, a: u64, p: u64) -> u64 {
    let pb = BigInt::from(p);
    f.terms().iter().fold(0, |acc, (e, c)| {
        let c = c.mod_floor(&pb).to_u64().unwrap();
        (acc + mul_mod(c, pow_mod(a, e, p), p)) % p
    })
}

fn is_probable_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, &BigUint::from(d), n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^61, 2^62)`.
pub fn random_prime_62(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let n = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_probable_prime(n) {
            return n;
        }
    }
}

/// True when the degree-`k` polynomial `l` (k <= d) equals some `phi_r`.
pub fn is_cyclotomic(l: &DensePoly) -> bool {
    let k = l.deg() as u64;
    (1..=2 * k * k.max(1) + 2)
        .filter(|&r| totient(r) == k)
        .any(|r| cyclotomic(r) == *l)
}

/// Reduced-exponent check: no irreducible factor of degree <= 3 is
/// reducible, tested by rational roots (small inputs only).
pub fn has_rational_root(l: &DensePoly) -> bool {
    let c0 = l.coeff(0).abs().to_i64().unwrap_or(i64::MAX);
    let lc = l.lc().unwrap().abs().to_i64().unwrap_or(i64::MAX);
    if c0 == 0 {
        return true;
    }
    if c0 > 1_000_000 || lc > 1_000_000 {
        return false;
    }
    let divisors = |n: i64| (1..=n).filter(move |k| n % k == 0);
    for p in divisors(c0) {
        for q in divisors(lc) {
            for s in [p, -p] {
                // q^deg * l(s/q) = sum c_i s^i q^(deg - i)
                let n = l.deg();
                let v = l
                    .coeffs()
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, c)| {
                        acc + c
                            * BigInt::from(s).pow(i as u32)
                            * BigInt::from(q).pow((n - i) as u32)
                    });
                if v.is_zero() && l.deg() > 1 {
                    return true;
                }
            }
        }
    }
    false
}

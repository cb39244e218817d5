//! Quadratic Hensel lifting of modular factors, one factor at a time.
//!
//! For a monic factor `u` of `F = lc(f)^-1 f` modulo `p^k`, the lift to
//! `p^2k` is `u + (r t mod u)` where `r = F mod u` and `t` inverts the
//! cofactor `F / u` modulo `u`. The inverse is itself lifted by Newton's
//! iteration, reading the cofactor off `F mod u^2`.

use crate::dense::DensePoly;
use crate::error::{Error, Result};
use crate::modpoly::{self, ModPoly};
use crate::par;
use crate::zp::Zp;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Monic factors modulo `modulus = p^k`, coefficients in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifted {
    pub p: u64,
    pub k: u32,
    pub modulus: BigInt,
    pub factors: Vec<Vec<BigInt>>,
}

fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Quotient and remainder by a monic `u` modulo `m`.
fn divrem_monic(a: &[BigInt], u: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let du = u.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= du {
        return (Vec::new(), reduce(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - du];
    for i in (du..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if !c.is_zero() {
            for j in 0..du {
                let t = &c * &u[j];
                r[i - du + j] -= t;
            }
        }
        q[i - du] = c;
    }
    r.truncate(du);
    let mut q = reduce(&q, m);
    trim(&mut q);
    (q, reduce(&r, m))
}

fn rem_monic(a: &[BigInt], u: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    divrem_monic(a, u, m).1
}

fn to_big(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_small(a: &[BigInt], zp: Zp) -> ModPoly {
    modpoly::from_ints(a, zp)
}

fn lift_one(f: &[BigInt], seed: &[u64], p: u64, k_target: u32) -> Result<Vec<BigInt>> {
    let zp = Zp::new(p);
    let fp = to_small(f, zp);
    let (w, r) = modpoly::divrem(
        &modpoly::rem(&fp, &modpoly::mul(seed, seed, zp), zp),
        seed,
        zp,
    );
    if !r.is_empty() {
        return Err(Error::Internal(
            "Hensel seed does not divide f mod p".into(),
        ));
    }
    let t0 = modpoly::inv_mod(&w, seed, zp)
        .ok_or_else(|| Error::Internal("Hensel seeds are not coprime".into()))?;
    let pb = BigInt::from(p);
    let mut u = to_big(seed);
    let mut t = to_big(&t0);
    let mut k = 1;
    while k < k_target {
        let k2 = (2 * k).min(k_target);
        let m = pb.pow(k2);
        let fm = reduce(f, &m);
        let r = rem_monic(&fm, &u, &m);
        let delta = rem_monic(&mul_mod(&r, &t, &m), &u, &m);
        let mut big_u = u.clone();
        for (c, d) in big_u.iter_mut().zip(&delta) {
            *c = (&*c + d).mod_floor(&m);
        }
        let (w, r0) = divrem_monic(
            &rem_monic(&fm, &mul_mod(&big_u, &big_u, &m), &m),
            &big_u,
            &m,
        );
        if !r0.is_empty() {
            return Err(Error::Internal("Hensel step lost divisibility".into()));
        }
        let tw = rem_monic(&mul_mod(&t, &w, &m), &big_u, &m);
        let mut two_minus = tw.iter().map(|c| -c).collect::<Vec<_>>();
        if two_minus.is_empty() {
            two_minus.push(BigInt::zero());
        }
        two_minus[0] += 2;
        t = rem_monic(&mul_mod(&t, &reduce(&two_minus, &m), &m), &big_u, &m);
        u = big_u;
        k = k2;
    }
    Ok(u)
}

/// Smallest `k` with `p^k > 2 * bound`.
pub fn lifting_exponent(p: u64, bound: &BigUint) -> u32 {
    let target = bound * 2u32;
    let pb = BigUint::from(p);
    let mut k = 1;
    let mut pk = pb.clone();
    while pk <= target {
        pk *= &pb;
        k += 1;
    }
    k
}

/// `lc(f)^-1 f mod m`.
pub(crate) fn monic_image(f: &DensePoly, m: &BigInt) -> Result<Vec<BigInt>> {
    let lc = f
        .lc()
        .ok_or_else(|| Error::Input("zero polynomial".into()))?;
    let eg = lc.extended_gcd(m);
    if !eg.gcd.is_one() {
        return Err(Error::Internal("leading coefficient not invertible".into()));
    }
    let inv = eg.x.mod_floor(m);
    Ok(reduce(
        &f.coeffs().iter().map(|c| c * &inv).collect::<Vec<_>>(),
        m,
    ))
}

/// Lifts pairwise coprime monic `seeds` dividing `f mod p` until `p^k > 2 * bound`.
pub fn hensel_lift(f: &DensePoly, seeds: &[ModPoly], p: u64, bound: &BigUint) -> Result<Lifted> {
    let k = lifting_exponent(p, bound);
    let modulus = BigInt::from(p).pow(k);
    let big_f = monic_image(f, &modulus)?;
    let factors = if seeds.len() == 1 && seeds[0].len() == big_f.len() {
        vec![big_f]
    } else {
        par::map(seeds, |s| lift_one(&big_f, s, p, k))
            .into_iter()
            .collect::<Result<Vec<_>>>()?
    };
    Ok(Lifted {
        p,
        k,
        modulus,
        factors,
    })
}

//! Dense univariate polynomials over a word-sized prime field.
//!
//! Coefficients are stored in ascending degree order and kept trimmed, so the
//! zero polynomial is the empty vector. Primes below [`SMALL_PRIME`] take a
//! lazy-accumulation path that skips modular reductions inside inner loops.

use crate::par;
use crate::zp::Zp;
use num_bigint::{BigInt, BigUint};

/// Products of two residues below this bound fit in 40 bits.
pub const SMALL_PRIME: u64 = 1 << 20;

const PAR_MUL_THRESHOLD: usize = 2048;

pub type ModPoly = Vec<u64>;

pub fn trim(a: &mut ModPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn from_ints(coeffs: &[BigInt], zp: Zp) -> ModPoly {
    let mut out: ModPoly = coeffs.iter().map(|c| zp.reduce(c)).collect();
    trim(&mut out);
    out
}

pub fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub fn make_monic(a: &mut ModPoly, zp: Zp) {
    if let Some(&lc) = a.last() {
        if lc != 1 {
            let s = zp.shoup(zp.inv(lc));
            let p = zp.modulus();
            for c in a.iter_mut() {
                *c = s.mul(*c, p);
            }
        }
    }
}

pub fn add(a: &[u64], b: &[u64], zp: Zp) -> ModPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = zp.add(*o, s);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], zp: Zp) -> ModPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = zp.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[u64], c: u64, zp: Zp) -> ModPoly {
    let s = zp.shoup(c % zp.modulus());
    let mut out: ModPoly = a.iter().map(|&x| s.mul(x, zp.modulus())).collect();
    trim(&mut out);
    out
}

pub fn derivative(a: &[u64], zp: Zp) -> ModPoly {
    let p = zp.modulus();
    let mut out: ModPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| zp.mul(c, i as u64 % p))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(a: &[u64], x: u64, zp: Zp) -> u64 {
    a.iter().rev().fold(0, |acc, &c| zp.add(zp.mul(acc, x), c))
}

/// Schoolbook product, evaluated output-coefficient-wise so chunks of the
/// result can be computed independently.
pub fn mul(a: &[u64], b: &[u64], zp: Zp) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = zp.modulus();
    let n = a.len() + b.len() - 1;
    let mut out = vec![0u64; n];
    let blen = b.len();
    let chunk = if n >= PAR_MUL_THRESHOLD {
        (n / (4 * par::threads())).max(256)
    } else {
        n
    };
    if p < SMALL_PRIME && a.len().min(b.len()) < (1 << 23) {
        let a32: Vec<u32> = a.iter().map(|&x| x as u32).collect();
        let brev: Vec<u32> = b.iter().rev().map(|&x| x as u32).collect();
        par::for_each_chunk(&mut out, chunk, |start, dst| {
            for (off, slot) in dst.iter_mut().enumerate() {
                let k = start + off;
                let lo = k.saturating_sub(blen - 1);
                let hi = k.min(a.len() - 1);
                let bstart = blen - 1 - (k - lo);
                let s: u64 = a32[lo..=hi]
                    .iter()
                    .zip(&brev[bstart..bstart + (hi - lo + 1)])
                    .map(|(&x, &y)| x as u64 * y as u64)
                    .sum();
                *slot = s % p;
            }
        });
    } else {
        let brev: Vec<u64> = b.iter().rev().copied().collect();
        par::for_each_chunk(&mut out, chunk, |start, dst| {
            for (off, slot) in dst.iter_mut().enumerate() {
                let k = start + off;
                let lo = k.saturating_sub(blen - 1);
                let hi = k.min(a.len() - 1);
                let bstart = blen - 1 - (k - lo);
                let s: u128 = a[lo..=hi]
                    .iter()
                    .zip(&brev[bstart..bstart + (hi - lo + 1)])
                    .map(|(&x, &y)| x as u128 * y as u128)
                    .sum();
                *slot = (s % p as u128) as u64;
            }
        });
    }
    trim(&mut out);
    out
}

/// Replaces `a` by `a mod m` and returns the quotient when `want_quotient`.
fn divrem_impl(a: &mut ModPoly, m: &[u64], zp: Zp, want_quotient: bool) -> ModPoly {
    assert!(!m.is_empty(), "division by the zero polynomial");
    let dm = m.len() - 1;
    if a.len() <= dm {
        return Vec::new();
    }
    let p = zp.modulus();
    let inv = zp.inv(m[dm]);
    let qlen = a.len() - dm;
    let mut quot = if want_quotient {
        vec![0u64; qlen]
    } else {
        Vec::new()
    };
    if dm == 0 {
        let s = zp.shoup(inv);
        if want_quotient {
            for (q, &c) in quot.iter_mut().zip(a.iter()) {
                *q = s.mul(c, p);
            }
        }
        a.clear();
        trim(&mut quot);
        return quot;
    }
    if p < SMALL_PRIME && dm < (1 << 22) {
        let mneg: Vec<u32> = m[..dm]
            .iter()
            .map(|&c| if c == 0 { 0 } else { (p - c) as u32 })
            .collect();
        for i in (dm..a.len()).rev() {
            let lead = a[i] % p;
            if lead == 0 {
                continue;
            }
            let q = (lead * inv % p) as u32;
            if want_quotient {
                quot[i - dm] = q as u64;
            }
            let base = i - dm;
            for (x, &mc) in a[base..i].iter_mut().zip(&mneg) {
                *x += q as u64 * mc as u64;
            }
        }
        a.truncate(dm);
        for x in a.iter_mut() {
            *x %= p;
        }
    } else {
        let inv_s = zp.shoup(inv);
        for i in (dm..a.len()).rev() {
            let lead = a[i];
            if lead == 0 {
                continue;
            }
            let q = inv_s.mul(lead, p);
            if want_quotient {
                quot[i - dm] = q;
            }
            let qs = zp.shoup(q);
            let base = i - dm;
            for (x, &mc) in a[base..i].iter_mut().zip(&m[..dm]) {
                let t = qs.mul(mc, p);
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
        a.truncate(dm);
    }
    trim(a);
    trim(&mut quot);
    quot
}

pub fn rem_assign(a: &mut ModPoly, m: &[u64], zp: Zp) {
    divrem_impl(a, m, zp, false);
}

pub fn rem(a: &[u64], m: &[u64], zp: Zp) -> ModPoly {
    let mut r = a.to_vec();
    rem_assign(&mut r, m, zp);
    r
}

pub fn divrem(a: &[u64], m: &[u64], zp: Zp) -> (ModPoly, ModPoly) {
    let mut r = a.to_vec();
    let q = divrem_impl(&mut r, m, zp, true);
    (q, r)
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &[u64], b: &[u64], zp: Zp) -> ModPoly {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        rem_assign(&mut r0, &r1, zp);
        std::mem::swap(&mut r0, &mut r1);
    }
    make_monic(&mut r0, zp);
    r0
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: &[u64], m: &[u64], zp: Zp) -> Option<ModPoly> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, zp);
    let mut s0: ModPoly = Vec::new();
    let mut s1: ModPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, zp);
        let s2 = sub(&s0, &mul(&q, &s1, zp), zp);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = zp.inv(r0[0]);
    Some(rem(&scale(&s0, c, zp), m, zp))
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], zp: Zp) -> ModPoly {
    let mut prod = mul(a, b, zp);
    rem_assign(&mut prod, m, zp);
    prod
}

pub fn powmod(base: &[u64], exp: &BigUint, m: &[u64], zp: Zp) -> ModPoly {
    let base = rem(base, m, zp);
    let mut acc = rem(&[1], m, zp);
    for i in (0..exp.bits()).rev() {
        acc = mulmod(&acc, &acc, m, zp);
        if exp.bit(i) {
            acc = mulmod(&acc, &base, m, zp);
        }
    }
    acc
}

pub fn powmod_u64(base: &[u64], exp: u64, m: &[u64], zp: Zp) -> ModPoly {
    powmod(base, &BigUint::from(exp), m, zp)
}

/// `X^e mod m`.
pub fn x_pow_mod(e: &BigUint, m: &[u64], zp: Zp) -> ModPoly {
    let dm = m.len() - 1;
    if e.bits() < 32 && (*e < BigUint::from(dm)) {
        let k = e.iter_u32_digits().next().unwrap_or(0) as usize;
        let mut out = vec![0; k + 1];
        out[k] = 1;
        return out;
    }
    powmod(&[0, 1], e, m, zp)
}

/// `a * X^k mod m`; cheap when `k` is at most a small multiple of `deg m`.
pub fn shift_mod(a: &[u64], k: usize, m: &[u64], zp: Zp) -> ModPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; k];
    out.extend_from_slice(a);
    rem_assign(&mut out, m, zp);
    out
}

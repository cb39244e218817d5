//! Word-sized prime fields and prime generation.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::ToPrimitive;

/// Largest modulus supported by [`Zp`]; sums of two residues never overflow.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Arithmetic modulo a prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!((2..MAX_MODULUS).contains(&p), "modulus out of range");
        Zp { p }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(self, base: u64, exp: &BigUint) -> u64 {
        let mut acc = 1 % self.p;
        let base = base % self.p;
        for i in (0..exp.bits()).rev() {
            acc = self.mul(acc, acc);
            if exp.bit(i) {
                acc = self.mul(acc, base);
            }
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        let a = a % self.p;
        assert!(a != 0, "inverse of zero");
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i128) as u64
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_uint(self, a: &BigUint) -> u64 {
        (a % self.p).to_u64().expect("residue fits in u64")
    }

    pub fn reduce(self, a: &BigInt) -> u64 {
        let r = self.reduce_uint(a.magnitude());
        if a.sign() == Sign::Minus {
            self.neg(r)
        } else {
            r
        }
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(self, a: u64) -> BigInt {
        if a > self.p / 2 {
            BigInt::from(a) - BigInt::from(self.p)
        } else {
            BigInt::from(a)
        }
    }

    pub fn shoup(self, w: u64) -> Shoup {
        Shoup::new(w, self.p)
    }
}

/// Precomputed multiplier for repeated products by the same residue.
#[derive(Clone, Copy, Debug)]
pub struct Shoup {
    w: u64,
    w_pre: u64,
}

impl Shoup {
    pub fn new(w: u64, p: u64) -> Self {
        Shoup {
            w,
            w_pre: (((w as u128) << 64) / p as u128) as u64,
        }
    }

    /// `w * a mod p` for any `a < 2^64`.
    #[inline(always)]
    pub fn mul(&self, a: u64, p: u64) -> u64 {
        let q = ((self.w_pre as u128 * a as u128) >> 64) as u64;
        let r = self.w.wrapping_mul(a).wrapping_sub(q.wrapping_mul(p));
        if r >= p {
            r - p
        } else {
            r
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
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

/// Primes strictly below `bound`, largest first.
pub fn primes_below(bound: u64) -> impl Iterator<Item = u64> {
    (2..bound).rev().filter(|&n| is_prime(n))
}

/// Odd primes in increasing order.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime(n))
}

/// The fixed descending sequence of 62-bit primes used for modular images and probes.
pub fn large_primes() -> impl Iterator<Item = u64> {
    primes_below(MAX_MODULUS)
}

//! Factorization modulo a small prime: distinct-degree splitting followed by
//! Cantor–Zassenhaus equal-degree splitting.

use crate::dense::DensePoly;
use crate::modpoly::{self, ModPoly};
use crate::zp::{self, Zp};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EDF_SEED: u64 = 0x5eed_fac7;

pub(crate) fn reduce_monic(f: &DensePoly, p: u64) -> ModPoly {
    let zp = Zp::new(p);
    let mut fp = modpoly::from_ints(f.coeffs(), zp);
    modpoly::make_monic(&mut fp, zp);
    fp
}

/// True when `f` (of degree at least 1) has no repeated factor in `F_p[X]`.
pub fn is_squarefree_mod(f: &[u64], zp: Zp) -> bool {
    let df = modpoly::derivative(f, zp);
    !df.is_empty() && modpoly::gcd(f, &df, zp).len() == 1
}

/// Smallest odd prime not dividing the leading coefficient of `f` for which
/// `f mod p` stays squarefree. `f` must be squarefree over the integers.
pub fn choose_prime(f: &DensePoly) -> u64 {
    suitable_primes(f).next().expect("a suitable prime exists")
}

/// The odd primes accepted by [`choose_prime`], in increasing order.
pub fn suitable_primes(f: &DensePoly) -> impl Iterator<Item = u64> + '_ {
    let lc = f.lc().expect("nonzero polynomial");
    zp::odd_primes().filter(move |&p| {
        if (lc % BigInt::from(p)).is_zero() {
            return false;
        }
        let fp = reduce_monic(f, p);
        is_squarefree_mod(&fp, Zp::new(p))
    })
}

/// Number of irreducible factors in a distinct-degree split.
pub fn factor_count(dd: &[(usize, ModPoly)]) -> usize {
    dd.iter().map(|(j, g)| (g.len() - 1) / j).sum()
}

/// `sums[k]` is true when some product of the factors in `dd` has degree `k`.
pub fn degree_sums(dd: &[(usize, ModPoly)], n: usize) -> Vec<bool> {
    let mut sums = vec![false; n + 1];
    sums[0] = true;
    for (j, g) in dd {
        for _ in 0..(g.len() - 1) / j {
            for k in (*j..=n).rev() {
                sums[k] |= sums[k - j];
            }
        }
    }
    sums
}

/// Splits every part of a distinct-degree factorization into irreducibles.
pub fn split_distinct_degree(dd: &[(usize, ModPoly)], zp: Zp) -> Vec<ModPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    for (j, g) in dd {
        out.extend(equal_degree(g, *j, zp, &mut rng));
    }
    sorted(out)
}

/// Splits a monic squarefree `f` into `(j, g_j)` where `g_j` is the product
/// of all irreducible factors of degree `j`. With `max_deg` set, only the
/// degrees up to it are extracted.
pub fn distinct_degree(f: &[u64], zp: Zp, max_deg: Option<usize>) -> Vec<(usize, ModPoly)> {
    let p = BigUint::from(zp.modulus());
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut h = modpoly::rem(&[0, 1], &rest, zp);
    let mut j = 0;
    loop {
        j += 1;
        let n = rest.len() - 1;
        if n == 0 || max_deg.is_some_and(|d| j > d) {
            break;
        }
        if 2 * j > n {
            if max_deg.is_none_or(|d| n <= d) {
                out.push((n, rest));
            }
            break;
        }
        h = modpoly::powmod(&h, &p, &rest, zp);
        let g = modpoly::gcd(&modpoly::sub(&h, &[0, 1], zp), &rest, zp);
        if g.len() > 1 {
            rest = modpoly::divrem(&rest, &g, zp).0;
            h = modpoly::rem(&h, &rest, zp);
            out.push((j, g));
        }
    }
    out
}

/// Splits a monic product of distinct irreducibles of degree `j` into its factors.
pub fn equal_degree(g: &[u64], j: usize, zp: Zp, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = g.len() - 1;
    if n == j {
        return vec![g.to_vec()];
    }
    let p = zp.modulus();
    let e = (BigUint::from(p).pow(j as u32) - 1u32) >> 1u32;
    loop {
        let a: ModPoly = {
            let mut a: ModPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
            modpoly::trim(&mut a);
            a
        };
        if a.len() < 2 {
            continue;
        }
        let b = modpoly::powmod(&a, &e, g, zp);
        let h = modpoly::gcd(&modpoly::sub(&b, &[1], zp), g, zp);
        if h.len() > 1 && h.len() < g.len() {
            let q = modpoly::divrem(g, &h, zp).0;
            let mut out = equal_degree(&h, j, zp, rng);
            out.extend(equal_degree(&q, j, zp, rng));
            return out;
        }
    }
}

fn sorted(mut factors: Vec<ModPoly>) -> Vec<ModPoly> {
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    factors
}

/// Complete monic factorization of a squarefree `f` modulo an odd prime `p`.
pub fn factor_mod_p(f: &[u64], p: u64) -> Vec<ModPoly> {
    small_factors_mod_p(f, p, None)
}

/// Monic irreducible factors of degree at most `max_deg` (all when `None`).
pub fn small_factors_mod_p(f: &[u64], p: u64, max_deg: Option<usize>) -> Vec<ModPoly> {
    let zp = Zp::new(p);
    let mut f = f.to_vec();
    modpoly::make_monic(&mut f, zp);
    if f.len() <= 1 {
        return Vec::new();
    }
    split_distinct_degree(&distinct_degree(&f, zp, max_deg), zp)
}

#[cfg(test)]
fn product(factors: &[ModPoly], zp: Zp) -> ModPoly {
    factors
        .iter()
        .fold(vec![1], |acc, f| modpoly::mul(&acc, f, zp))
}

//! Zassenhaus recombination of lifted modular factors.

use super::hensel::{mul_mod, Lifted};
use crate::dense::DensePoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Default number of candidate subsets tried before giving up.
pub const SUBSET_CAP: u64 = 1 << 24;

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c > half {
        c - m
    } else {
        c
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let s = combo.len();
    for i in (0..s).rev() {
        if combo[i] < n - s + i {
            combo[i] += 1;
            for j in i + 1..s {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn candidate(rest: &DensePoly, factors: &[&Vec<BigInt>], m: &BigInt) -> Option<DensePoly> {
    let half = m >> 1u32;
    let lc = rest.lc().unwrap();
    let c0 = factors
        .iter()
        .fold(lc.mod_floor(m), |acc, f| (acc * &f[0]).mod_floor(m));
    let c0 = symmetric(&c0, m, &half);
    if c0.is_zero() || !(lc * rest.coeff(0)).is_multiple_of(&c0) {
        return None;
    }
    let prod = factors
        .iter()
        .fold(vec![lc.mod_floor(m)], |acc, f| mul_mod(&acc, f, m));
    let g = DensePoly::new(prod.iter().map(|c| symmetric(c, m, &half)).collect()).primitive_part();
    rest.div_exact(&g).map(|_| g)
}

/// True factors of the primitive squarefree `f` assembled from subsets of
/// `lifted`. With `max_deg` set only subsets of total degree at most `max_deg`
/// are tried and the leftover cofactor is not reported; otherwise the result is
/// the complete factorization.
pub fn recombine(f: &DensePoly, lifted: &Lifted, max_deg: Option<usize>) -> Result<Vec<DensePoly>> {
    recombine_with_cap(f, lifted, max_deg, None, SUBSET_CAP)
}

/// As [`recombine`], skipping subsets whose degree `k` has `allowed[k]` false
/// and failing after `cap` candidate subsets.
pub fn recombine_with_cap(
    f: &DensePoly,
    lifted: &Lifted,
    max_deg: Option<usize>,
    allowed: Option<&[bool]>,
    cap: u64,
) -> Result<Vec<DensePoly>> {
    let m = &lifted.modulus;
    let mut rest = f.primitive_part();
    let mut pool: Vec<&Vec<BigInt>> = lifted.factors.iter().collect();
    let mut found = Vec::new();
    let mut tried = 0u64;
    let mut s = 1;
    let more = |s: usize, pool: usize| match max_deg {
        None => 2 * s <= pool,
        Some(_) => s <= pool,
    };
    'sizes: while more(s, pool.len()) {
        let mut combo: Vec<usize> = (0..s).collect();
        loop {
            let subset: Vec<&Vec<BigInt>> = combo.iter().map(|&i| pool[i]).collect();
            let deg: usize = subset.iter().map(|f| f.len() - 1).sum();
            if max_deg.is_none_or(|d| deg <= d) && allowed.is_none_or(|a| a[deg]) {
                tried += 1;
                if tried > cap {
                    return Err(Error::ResourceLimit(format!(
                        "factor recombination exceeded {cap} subsets"
                    )));
                }
                if let Some(g) = candidate(&rest, &subset, m) {
                    rest = rest.div_exact(&g).expect("checked divisor");
                    for &i in combo.iter().rev() {
                        pool.remove(i);
                    }
                    found.push(g);
                    continue 'sizes;
                }
            }
            if !next_combination(&mut combo, pool.len()) {
                break;
            }
        }
        s += 1;
    }
    if max_deg.is_none() && rest.deg() > 0 {
        found.push(rest);
    }
    Ok(found)
}

//! Synthetic benchmark inputs: a product of small dense factors, binomials
//! `x^r - 1` and a sparse sum of shifted dense blocks.

use crate::error::{Error, Result};
use crate::sparse::IntPoly;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENSE_FACTORS: usize = 5;
pub const DENSE_DEGREE: usize = 10;
pub const BINOMIALS: usize = 3;
pub const BINOMIAL_EXPONENT: u64 = 100_000;
pub const BLOCKS: usize = 40;
pub const BLOCK_DEGREE: usize = 20;
pub const BLOCK_SPREAD: u64 = 1_000_000;

/// The pieces of a generated input, before multiplication.
#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub dense: Vec<IntPoly>,
    pub binomial_exponents: Vec<u64>,
    pub sparse: IntPoly,
}

impl BenchInstance {
    pub fn product(&self) -> IntPoly {
        let mut f = IntPoly::constant(BigInt::one());
        for g in &self.dense {
            f = &f * g;
        }
        for &r in &self.binomial_exponents {
            f = &f * &IntPoly::from_i64_terms(&[(r, 1), (0, -1)]);
        }
        &f * &self.sparse
    }
}

fn coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=10);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

fn dense(rng: &mut ChaCha8Rng, degree: usize) -> IntPoly {
    let terms: Vec<(u64, i64)> = (0..=degree as u64).map(|i| (i, coefficient(rng))).collect();
    IntPoly::from_i64_terms(&terms)
}

fn scaled(scale: &BigRational, n: u64) -> u64 {
    (scale * BigRational::from_integer(BigInt::from(n)))
        .round()
        .to_integer()
        .to_u64()
        .unwrap_or(0)
}

/// Draws the pieces deterministically from `seed`. `scale` must lie in `(0, 1]`.
pub fn bench_instance(scale: &BigRational, seed: u64) -> Result<BenchInstance> {
    if !scale.is_positive() || *scale > BigRational::one() {
        return Err(Error::Input(format!("scale {scale} is not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dense_factors = (0..DENSE_FACTORS)
        .map(|_| dense(&mut rng, DENSE_DEGREE))
        .collect();
    let r0 = scaled(scale, BINOMIAL_EXPONENT).max(1);
    let jitter = scaled(scale, BINOMIAL_EXPONENT / 10);
    let binomial_exponents = (0..BINOMIALS)
        .map(|_| {
            let lo = r0.saturating_sub(jitter).max(1);
            rng.gen_range(lo..=r0 + jitter)
        })
        .collect();
    let spread = scaled(scale, BLOCK_SPREAD);
    let mut sparse = IntPoly::zero();
    for _ in 0..BLOCKS {
        let e = BigUint::from(rng.gen_range(0..=spread));
        let c = BigInt::from(coefficient(&mut rng));
        let block = dense(&mut rng, BLOCK_DEGREE).scale(&c).shift_up(&e);
        sparse = &sparse + &block;
    }
    if sparse.is_zero() {
        sparse = IntPoly::constant(BigInt::one());
    }
    Ok(BenchInstance {
        dense: dense_factors,
        binomial_exponents,
        sparse,
    })
}

/// The expanded benchmark polynomial.
pub fn bench_generate(scale: &BigRational, seed: u64) -> Result<IntPoly> {
    Ok(bench_instance(scale, seed)?.product())
}

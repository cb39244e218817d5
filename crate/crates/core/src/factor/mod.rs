//! Factorization of dense integer polynomials over the rationals:
//! squarefree decomposition, factorization modulo a small prime, Hensel
//! lifting and Zassenhaus recombination.

pub mod hensel;
pub mod modular;
pub mod recombine;
pub mod squarefree;

use crate::cyclotomic;
use crate::dense::DensePoly;
use crate::error::{Error, Result};
use crate::modpoly::ModPoly;
use crate::par;
use crate::zp::Zp;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

pub use hensel::{hensel_lift, Lifted};
pub use modular::{choose_prime, factor_mod_p};
pub use recombine::recombine;
pub use squarefree::squarefree_decomposition;

/// Above this degree a degree filter switches from "factor completely, then
/// filter" to searching only for the small factors.
pub const FULL_FACTOR_DEGREE: usize = 256;

/// From this degree on, cyclotomic factors are split off before modular factorization.
const CYCLOTOMIC_STRIP_DEGREE: usize = 24;

/// Primes whose modular factorizations are compared before lifting.
const TRIAL_PRIMES: usize = 5;
const BOUNDED_TRIAL_PRIMES: usize = 2;

/// `unit * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(DensePoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> DensePoly {
        self.factors
            .iter()
            .fold(DensePoly::constant(self.unit.clone()), |acc, (f, m)| {
                acc.mul(&f.pow(*m as usize))
            })
    }
}

/// `ceil(2^m * |lc(f)| * ||f||_2)`: bounds `|lc(f)| * ||g||_inf` for every
/// integer divisor `g` of `f` with `deg g <= m`.
pub fn mignotte_bound(f: &DensePoly, m: usize) -> BigUint {
    let lc = f.lc().map(|c| c.magnitude().clone()).unwrap_or_default();
    let scale = (BigUint::one() << m) * lc;
    let sq = &scale * &scale * f.l2_norm_squared();
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1u32
    }
}

/// Irreducible factors of a primitive squarefree `f` with `f(0) != 0` and
/// positive leading coefficient; only those of degree at most `max_deg` when set.
fn factor_squarefree(f: &DensePoly, max_deg: Option<usize>) -> Result<Vec<DensePoly>> {
    let n = f.deg();
    let max_deg = max_deg.filter(|&d| d < n);
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    if n >= CYCLOTOMIC_STRIP_DEGREE {
        let (cyclo, rest) = cyclotomic::cyclotomic_part(f);
        if !cyclo.is_empty() {
            let mut out: Vec<DensePoly> = cyclo
                .into_iter()
                .filter(|c| max_deg.is_none_or(|d| c.deg() <= d))
                .collect();
            if rest.deg() > 0 {
                out.extend(factor_noncyclotomic(
                    &rest,
                    max_deg.filter(|&d| d < rest.deg()),
                )?);
            }
            return Ok(out);
        }
    }
    factor_noncyclotomic(f, max_deg)
}

fn factor_noncyclotomic(f: &DensePoly, max_deg: Option<usize>) -> Result<Vec<DensePoly>> {
    let n = f.deg();
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let trials: Vec<(u64, Vec<(usize, ModPoly)>)> = modular::suitable_primes(f)
        .take(if max_deg.is_some() {
            BOUNDED_TRIAL_PRIMES
        } else {
            TRIAL_PRIMES
        })
        .map(|p| {
            let fp = modular::reduce_monic(f, p);
            (p, modular::distinct_degree(&fp, Zp::new(p), max_deg))
        })
        .collect();
    let mut allowed = vec![true; n + 1];
    for (_, dd) in &trials {
        for (a, b) in allowed.iter_mut().zip(modular::degree_sums(dd, n)) {
            *a &= b;
        }
    }
    let top = max_deg.unwrap_or(n - 1);
    if !allowed[1..=top].iter().any(|&a| a) {
        return Ok(match max_deg {
            None => vec![f.clone()],
            Some(_) => Vec::new(),
        });
    }
    let (p, dd) = trials
        .iter()
        .min_by_key(|(_, dd)| modular::factor_count(dd))
        .unwrap();
    let seeds = modular::split_distinct_degree(dd, Zp::new(*p));
    let bound = mignotte_bound(f, max_deg.unwrap_or(n));
    let lifted = hensel_lift(f, &seeds, *p, &bound)?;
    recombine::recombine_with_cap(f, &lifted, max_deg, Some(&allowed), recombine::SUBSET_CAP)
}

fn multiplicity(f: &DensePoly, g: &DensePoly) -> (u32, DensePoly) {
    let mut m = 0;
    let mut rest = f.clone();
    while let Some(q) = rest.div_exact(g) {
        m += 1;
        rest = q;
    }
    (m, rest)
}

/// Factors `g` over the rationals. With `d_filter` only the irreducible
/// factors of degree at most `d_filter` are returned (with exact
/// multiplicities); for degrees above [`FULL_FACTOR_DEGREE`] the large
/// factors are then never computed.
pub fn factor_over_q(g: &DensePoly, d_filter: Option<usize>) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    let mut unit = g.content();
    if g.lc().unwrap().is_negative() {
        unit = -unit;
    }
    let pp = g.primitive_part();
    let v = pp.valuation();
    let core = pp.shift_down(v);
    let mut factors = Vec::new();
    if v > 0 {
        factors.push((DensePoly::monomial(BigInt::one(), 1), v as u32));
    }
    if core.deg() > 0 {
        match d_filter {
            Some(d) if core.deg() > FULL_FACTOR_DEGREE => {
                let sqf = squarefree::squarefree_part(&core);
                let mut rest = core;
                for l in factor_squarefree(&sqf, Some(d))? {
                    let (m, q) = multiplicity(&rest, &l);
                    rest = q;
                    factors.push((l, m));
                }
            }
            _ => {
                let parts = squarefree_decomposition(&core);
                let done = par::map(&parts, |(s, m)| {
                    factor_squarefree(s, None)
                        .map(|fs| fs.into_iter().map(|f| (f, *m)).collect::<Vec<_>>())
                });
                for r in done {
                    factors.extend(r?);
                }
            }
        }
    }
    if let Some(d) = d_filter {
        factors.retain(|(f, _)| f.deg() <= d);
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

//! The full pipeline: normalize, partially factor, factor the `G` side
//! densely, scan the `H` side for cyclotomic factors, and add up
//! multiplicities.

use crate::cyclotomic::{self, CycloTable};
use crate::dense::DensePoly;
use crate::error::{Error, Result};
use crate::factor::factor_over_q;
use crate::gap::{gamma, GapConfig};
use crate::gcd::{gcd_clusters, GcdTimer};
use crate::modpoly;
use crate::par;
use crate::partial::{divide_out, partial_factorization, split_cuts, ClusterList};
use crate::sparse::{content_primitive, IntPoly, RationalPoly, DEFAULT_MAX_SPAN};
use crate::zp::{self, Zp};
use num_bigint::{BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

/// Primes used for modular divisibility tests.
const CHECK_PRIMES: usize = 3;
/// Evaluation points for the product identity in [`verify_report`].
const PROBES: usize = 20;
const PROBE_SEED: u64 = 0x0e91_0001;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Closest-first cluster merging with gcd extraction.
    #[default]
    Variant,
    /// A single split at every large gap.
    Lenstra,
    /// No gap is trusted; the whole polynomial is factored densely.
    Paranoid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    pub strategy: Strategy,
    pub gap: GapConfig,
    pub max_span: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            strategy: Strategy::Variant,
            gap: GapConfig::default(),
            max_span: DEFAULT_MAX_SPAN,
        }
    }
}

impl FactorConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        FactorConfig {
            strategy,
            ..Self::default()
        }
    }
}

/// `f = sign * content * x^x_power * (product of factors) * (cofactor)`, where
/// every irreducible factor of the cofactor has degree above the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub sign: Sign,
    pub content: BigRational,
    pub x_power: BigUint,
    pub factors: Vec<(DensePoly, u32)>,
    pub certified_complete_to_degree: usize,
    /// Pieces whose product is the primitive part of `f` without its power of `X`.
    pub decomposition: Vec<IntPoly>,
}

impl FactorReport {
    /// `sign * content` as a rational.
    pub fn unit(&self) -> BigRational {
        if self.sign == Sign::Minus {
            -self.content.clone()
        } else {
            self.content.clone()
        }
    }
}

/// Wall-clock time per phase, in milliseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseStats {
    pub total_ms: f64,
    pub noncyclotomic_ms: f64,
    pub cyclotomic_ms: f64,
    pub gcd_ms: f64,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Adds up multiplicities per factor. Entries coming from `H` must be cyclotomic.
pub fn merge_eq1(
    g_results: &[Vec<(DensePoly, u32)>],
    h_results: &[Vec<(DensePoly, u32)>],
    table: &CycloTable,
) -> Result<Vec<(DensePoly, u32)>> {
    let mut acc: BTreeMap<DensePoly, u32> = BTreeMap::new();
    for (f, m) in g_results.iter().flatten() {
        *acc.entry(f.clone()).or_default() += m;
    }
    for (f, m) in h_results.iter().flatten() {
        if table.identify(f).is_none() {
            return Err(Error::Internal(format!(
                "non-cyclotomic factor {f} reported for a certified residual"
            )));
        }
        *acc.entry(f.clone()).or_default() += m;
    }
    Ok(acc.into_iter().collect())
}

fn factor_dense_piece(g: &IntPoly, d: usize, max_span: usize) -> Result<Vec<(DensePoly, u32)>> {
    let core = g.to_dense_core(max_span)?;
    Ok(factor_over_q(&core.core, Some(d))?.factors)
}

/// True if `l` divides `w` modulo each of a few large primes.
fn divides_mod(w: &IntPoly, l: &DensePoly) -> bool {
    let lc = l.lc().unwrap();
    zp::large_primes()
        .filter(|&p| !(lc % num_bigint::BigInt::from(p)).is_zero())
        .take(CHECK_PRIMES)
        .all(|p| {
            let zp = Zp::new(p);
            let lm = modpoly::from_ints(l.coeffs(), zp);
            w.sparse_mod_p(&lm, zp).is_empty()
        })
}

/// Multiplicity of `l` (with `l(0) != 0`) in `w`, read off the chain of
/// sparse derivatives.
pub fn multiplicity_by_derivatives(w: &IntPoly, l: &DensePoly) -> u32 {
    let mut w = w.strip_valuation();
    let mut m = 0;
    while !w.is_zero() && divides_mod(&w, l) {
        m += 1;
        w = w.sparse_derivative();
    }
    m
}

struct Outcome {
    factors: Vec<(DensePoly, u32)>,
    decomposition: Vec<IntPoly>,
    noncyclotomic_ms: f64,
    cyclotomic_ms: f64,
}

fn run_variant(
    fhat: &IntPoly,
    d: usize,
    gap: &GapConfig,
    max_span: usize,
    timer: &GcdTimer,
) -> Result<Outcome> {
    let table = cyclotomic::table(d)?;
    let start = Instant::now();
    let split = partial_factorization(fhat, d, gap, max_span, timer)?;
    let g_results = par::map(&split.g, |g| factor_dense_piece(g, d, max_span))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let noncyclotomic_ms = millis(start);
    let start = Instant::now();
    let h_results = par::map(&split.h, |h| cyclotomic::cyclotomic_factors(&h.poly, d))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let cyclotomic_ms = millis(start);
    let factors = merge_eq1(&g_results, &h_results, &table)?;
    let mut decomposition = split.g;
    decomposition.extend(split.h.into_iter().map(|h| h.poly));
    Ok(Outcome {
        factors,
        decomposition,
        noncyclotomic_ms,
        cyclotomic_ms,
    })
}

fn run_lenstra(
    fhat: &IntPoly,
    d: usize,
    gap: &GapConfig,
    max_span: usize,
    timer: &GcdTimer,
) -> Result<Outcome> {
    let table = cyclotomic::table(d)?;
    let start = Instant::now();
    let cuts = split_cuts(fhat, gamma(fhat, d, gap));
    let (g, decomposition) = if cuts.is_empty() {
        (fhat.to_dense_core(max_span)?.core, vec![fhat.clone()])
    } else {
        let s = ClusterList::from_cuts(fhat, &cuts);
        let g = timer.time(|| gcd_clusters(&s, max_span))?;
        let rest = divide_out(&s, &g, max_span)?;
        (g.clone(), vec![g.to_sparse(), rest])
    };
    let candidates: Vec<DensePoly> = factor_over_q(&g, Some(d))?
        .factors
        .into_iter()
        .map(|(l, _)| l)
        .filter(|l| table.identify(l).is_none())
        .collect();
    let mut factors: Vec<(DensePoly, u32)> = par::map(&candidates, |l| {
        (l.clone(), multiplicity_by_derivatives(fhat, l))
    });
    let noncyclotomic_ms = millis(start);
    let start = Instant::now();
    factors.extend(cyclotomic::cyclotomic_factors(fhat, d)?);
    let cyclotomic_ms = millis(start);
    factors.sort();
    Ok(Outcome {
        factors,
        decomposition,
        noncyclotomic_ms,
        cyclotomic_ms,
    })
}

/// Every irreducible factor of `f` of degree at most `d`, with multiplicity.
pub fn bounded_degree_factors(
    f: &RationalPoly,
    d: usize,
    cfg: &FactorConfig,
) -> Result<(FactorReport, PhaseStats)> {
    if d == 0 {
        return Err(Error::Input("degree bound must be at least 1".into()));
    }
    if f.is_zero() {
        return Err(Error::UndefinedBounds);
    }
    let start = Instant::now();
    let timer = GcdTimer::new();
    let split = content_primitive(f)?;
    let fhat = split.primitive;
    let outcome = if fhat.is_constant() {
        Outcome {
            factors: Vec::new(),
            decomposition: Vec::new(),
            noncyclotomic_ms: 0.0,
            cyclotomic_ms: 0.0,
        }
    } else {
        match cfg.strategy {
            Strategy::Variant => run_variant(&fhat, d, &cfg.gap, cfg.max_span, &timer)?,
            Strategy::Paranoid => {
                run_variant(&fhat, d, &GapConfig::paranoid(), cfg.max_span, &timer)?
            }
            Strategy::Lenstra => run_lenstra(&fhat, d, &cfg.gap, cfg.max_span, &timer)?,
        }
    };
    let report = FactorReport {
        sign: split.sign,
        content: split.content,
        x_power: split.shift,
        factors: outcome.factors,
        certified_complete_to_degree: d,
        decomposition: outcome.decomposition,
    };
    let stats = PhaseStats {
        total_ms: millis(start),
        noncyclotomic_ms: outcome.noncyclotomic_ms,
        cyclotomic_ms: outcome.cyclotomic_ms,
        gcd_ms: timer.millis(),
    };
    Ok((report, stats))
}

/// Independent check of a report: unit and power of `X`, canonical factor
/// list, exact multiplicities by sparse-derivative chains, and the product
/// identity of the decomposition at random points modulo 62-bit primes.
pub fn verify_report(f: &RationalPoly, report: &FactorReport) -> bool {
    let Ok(split) = content_primitive(f) else {
        return false;
    };
    if split.sign != report.sign || split.content != report.content || split.shift != report.x_power
    {
        return false;
    }
    let fhat = &split.primitive;
    let d = report.certified_complete_to_degree;
    let canonical = report.factors.iter().all(|(l, m)| {
        *m > 0
            && l.deg() >= 1
            && l.deg() <= d
            && l.is_primitive()
            && l.lc().is_some_and(Signed::is_positive)
            && !l.coeff(0).is_zero()
    }) && report.factors.windows(2).all(|w| w[0].0 < w[1].0);
    if !canonical {
        return false;
    }
    let mults = par::map(&report.factors, |(l, _)| {
        multiplicity_by_derivatives(fhat, l)
    });
    if report
        .factors
        .iter()
        .zip(&mults)
        .any(|((_, m), got)| m != got)
    {
        return false;
    }
    if fhat.is_constant() {
        return report.decomposition.iter().all(|p| p.is_constant());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    zp::large_primes().take(PROBES).all(|p| {
        let a = rng.gen_range(2..p);
        let lhs = fhat.eval_mod(a, p);
        let zp = Zp::new(p);
        let rhs = report
            .decomposition
            .iter()
            .fold(1, |acc, q| zp.mul(acc, q.eval_mod(a, p)));
        lhs == rhs
    })
}

//! Acceptance gates. Run with `cargo test --test acceptance`; prints one
//! line per criterion and exits nonzero if any fails. Criterion numbers given
//! as arguments (`-- 3 6`) restrict the run.

mod common;

use common::*;
use lacunary::cyclotomic;
use lacunary::factor::factor_over_q;
use lacunary::gcd::GcdTimer;
use lacunary::output::format_stats;
use lacunary::partial::{partial_factorization, SplitResult};
use lacunary::sparse::DEFAULT_MAX_SPAN;
use lacunary::{
    bounded_degree_factors, verify_report, DensePoly, FactorConfig, FactorReport, GapConfig,
    IntPoly, Strategy,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

const INSTANCES: u64 = 200;
const DEGREES: std::ops::RangeInclusive<usize> = 1..=8;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn factor(f: &IntPoly, d: usize, strategy: Strategy) -> FactorReport {
    bounded_degree_factors(&f.to_rational(), d, &FactorConfig::with_strategy(strategy))
        .unwrap()
        .0
}

/// Degree <= d factors of `f`, with `x` folded in, from the dense kernel.
fn reference(f: &IntPoly, d: usize) -> Vec<(DensePoly, u32)> {
    factor_over_q(&expand(f), Some(d)).unwrap().factors
}

fn reported(r: &FactorReport) -> Vec<(DensePoly, u32)> {
    let mut v = r.factors.clone();
    if r.x_power > BigUint::from(0u32) {
        v.push((dense(&[0, 1]), r.x_power.to_u32().unwrap()));
    }
    v.sort();
    v
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..INSTANCES {
        let f = instance(seed);
        for d in DEGREES {
            if reported(&factor(&f, d, Strategy::Variant)) != reference(&f, d) {
                bad.push((seed, d));
            }
        }
    }
    let n = INSTANCES as usize * DEGREES.count();
    outcome(
        bad.is_empty(),
        format!("{} / {n} mismatches {bad:?}", bad.len()),
    )
}

fn strategy_invariance() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..INSTANCES {
        let f = instance(seed);
        for d in DEGREES {
            let v = factor(&f, d, Strategy::Variant).factors;
            let l = factor(&f, d, Strategy::Lenstra).factors;
            let p = factor(&f, d, Strategy::Paranoid).factors;
            if v != l || v != p {
                bad.push((seed, d));
            }
        }
    }
    let n = INSTANCES as usize * DEGREES.count();
    outcome(
        bad.is_empty(),
        format!("{} / {n} disagreements {bad:?}", bad.len()),
    )
}

fn cyclotomic_family() -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for n in [5040u64, 720_720, 1_000_000] {
        let f = IntPoly::from_i64_terms(&[(n, 1), (0, -1)]);
        for d in [2usize, 8, 16] {
            let start = Instant::now();
            let r = factor(&f, d, Strategy::Variant);
            let took = start.elapsed();
            slowest = slowest.max(took);
            let mut expected: Vec<(DensePoly, u32)> = cyclotomic_divisors(n, d as u64)
                .into_iter()
                .map(|r| (cyclotomic(r), 1))
                .collect();
            expected.sort();
            if r.factors != expected || took >= Duration::from_secs(10) {
                bad.push((n, d));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} / 9 failures {bad:?}, slowest case {:.2?}",
            bad.len(),
            slowest
        ),
    )
}

fn planted_cofactor(rng: &mut rand_chacha::ChaCha8Rng) -> IntPoly {
    let mut g = IntPoly::from_i64_terms(&[(0, 1)]);
    let target = rng.gen_range(1..=12);
    while g.degree().unwrap().to_u64().unwrap() < target {
        let room = target - g.degree().unwrap().to_u64().unwrap();
        let k = rng.gen_range(1..=room.min(4));
        let mut terms: Vec<(u64, i64)> = (0..k).map(|i| (i, rng.gen_range(-5..=5))).collect();
        terms.push((k, rng.gen_range(1..=3)));
        let h = IntPoly::from_i64_terms(&terms);
        if h.constant_term() != 0.into() {
            g = &g * &h;
        }
    }
    g
}

fn merge(a: Vec<(DensePoly, u32)>, b: Vec<(DensePoly, u32)>) -> Vec<(DensePoly, u32)> {
    let mut acc: BTreeMap<DensePoly, u32> = BTreeMap::new();
    for (f, m) in a.into_iter().chain(b) {
        *acc.entry(f).or_default() += m;
    }
    acc.into_iter().collect()
}

fn planted_gaps() -> Outcome {
    let start = Instant::now();
    let d = 6;
    let mut bad = Vec::new();
    for seed in 0..50u64 {
        let mut rng = rng(0x9a95_0000 + seed);
        let g = planted_cofactor(&mut rng);
        let n = rng.gen_range(10_000u64..=100_000);
        let c = [1i64, -1, 2][seed as usize % 3];
        let f = &g * &IntPoly::from_i64_terms(&[(n, 1), (0, c)]);
        let binomial: Vec<(DensePoly, u32)> = match c {
            -1 => cyclotomic_divisors(n, d)
                .into_iter()
                .map(|r| (cyclotomic(r), 1))
                .collect(),
            1 => cyclotomic_divisors(2 * n, d)
                .into_iter()
                .filter(|r| n % r != 0)
                .map(|r| (cyclotomic(r), 1))
                .collect(),
            _ => Vec::new(),
        };
        let expected = merge(reference(&g, d as usize), binomial);
        let r = factor(&f, d as usize, Strategy::Variant);
        if reported(&r) != expected || !verify_report(&f.to_rational(), &r) {
            bad.push(seed);
        }
    }
    let took = start.elapsed();
    outcome(
        bad.is_empty() && took < Duration::from_secs(120),
        format!("{} / 50 failures {bad:?} in {took:.2?}", bad.len()),
    )
}

fn split(f: &IntPoly, d: usize) -> SplitResult {
    partial_factorization(
        f,
        d,
        &GapConfig::default(),
        DEFAULT_MAX_SPAN,
        &GcdTimer::new(),
    )
    .unwrap()
}

/// Mixed instances for the product identity: small random polynomials,
/// products with far-apart binomials and sums of distant blocks.
fn identity_instance(seed: u64) -> IntPoly {
    let mut r = rng(0x1d_0000 + seed);
    let base = random_sparse(&mut r, 8, 60, 20);
    let f = match seed % 3 {
        0 => base,
        1 => {
            let n = r.gen_range(100..=1_000_000);
            &base * &IntPoly::from_i64_terms(&[(n, 1), (0, [1, -1, 3][r.gen_range(0..3)])])
        }
        _ => {
            let shift = BigUint::from(r.gen_range(1_000u64..=1u64 << 40));
            &base + &random_sparse(&mut r, 6, 60, 20).shift_up(&shift)
        }
    };
    match lacunary::sparse::content_primitive(&f.to_rational()) {
        Ok(split) => split.primitive,
        Err(_) => IntPoly::from_i64_terms(&[(0, 1)]),
    }
}

fn product_identity() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for seed in 0..1000u64 {
        let f = identity_instance(seed);
        if f.is_constant() {
            continue;
        }
        checked += 1;
        let d = 1 + seed as usize % 8;
        let s = split(&f, d);
        let pieces: Vec<&IntPoly> = s.g.iter().chain(s.h.iter().map(|h| &h.poly)).collect();
        let mut r = rng(0x1d_ffff + seed);
        let ok = (0..20).all(|_| {
            let p = random_prime_62(&mut r);
            let a = r.gen_range(2..p);
            let rhs = pieces
                .iter()
                .fold(1, |acc, q| mul_mod(acc, eval_mod(q, a, p), p));
            eval_mod(&f, a, p) == rhs
        });
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{failures} failures over {checked} instances x 20 probes"),
    )
}

fn h_soundness() -> Outcome {
    let mut audited = 0;
    let mut violations = Vec::new();
    for seed in 0..INSTANCES {
        let f = instance(seed);
        let fhat = lacunary::sparse::content_primitive(&f.to_rational())
            .unwrap()
            .primitive;
        if fhat.is_constant() {
            continue;
        }
        for d in DEGREES {
            for h in split(&fhat, d).h {
                let (hi, lo) = h.poly.bounds().unwrap();
                if hi - lo > BigUint::from(2000u32) {
                    continue;
                }
                audited += 1;
                let core = expand(&h.poly.strip_valuation());
                let fs = factor_over_q(&core, Some(d)).unwrap().factors;
                if fs.iter().any(|(l, _)| !is_cyclotomic(l)) {
                    violations.push((seed, d));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{} violations over {audited} audited residuals {violations:?}",
            violations.len()
        ),
    )
}

fn desk_bench() -> Outcome {
    let scale = BigRational::new(1.into(), 100.into());
    let f = lacunary::benchgen::bench_generate(&scale, 1)
        .unwrap()
        .to_rational();
    let mut pass = true;
    let mut detail = Vec::new();
    for d in [5usize, 10] {
        let start = Instant::now();
        let (report, stats) = bounded_degree_factors(&f, d, &FactorConfig::default()).unwrap();
        let took = start.elapsed();
        let table = format_stats(&stats);
        println!("bench d = {d}:\n{table}");
        let rows = table.lines().count() == 4;
        let verified = verify_report(&f, &report);
        let share = if stats.total_ms > 0.0 {
            stats.gcd_ms / stats.total_ms
        } else {
            0.0
        };
        pass &= took < Duration::from_secs(60) && rows && verified;
        detail.push(format!(
            "d={d}: {took:.2?}, verified={verified}, gcd share {:.1}%",
            100.0 * share
        ));
    }
    outcome(pass, detail.join("; "))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("strategy invariance", strategy_invariance),
        ("cyclotomic family", cyclotomic_family),
        ("planted huge gaps", planted_gaps),
        ("product identity", product_identity),
        ("H soundness", h_soundness),
        ("desk-scale bench", desk_bench),
    ];
    // cyclotomic tables are cached; warm the largest one outside the timed cases
    cyclotomic::table(16).unwrap();
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [PRIMARY] {name}: {verdict} ({}; {:.2?})",
            i + 1,
            o.detail,
            start.elapsed()
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

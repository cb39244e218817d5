//! The gap threshold: if two parts of `f` are separated by an exponent gap
//! larger than `gamma(f, d)`, every non-cyclotomic irreducible factor of degree
//! at most `d` divides both parts.

use crate::sparse::IntPoly;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// Relative slack applied to floating-point intermediates so that rounding
/// can only make the threshold larger.
const INFLATE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GapMode {
    #[default]
    Default,
    /// No gap ever counts as large.
    Paranoid,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GapConfig {
    pub mode: GapMode,
    /// Optional positive multiplier applied to the threshold.
    pub custom_scale: Option<BigRational>,
}

impl GapConfig {
    pub fn paranoid() -> Self {
        GapConfig {
            mode: GapMode::Paranoid,
            custom_scale: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gamma {
    Finite(u64),
    Infinite,
}

impl Gamma {
    /// True when `gap > self`.
    pub fn exceeded_by(self, gap: &BigUint) -> bool {
        match self {
            Gamma::Finite(g) => *gap > BigUint::from(g),
            Gamma::Infinite => false,
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma::Finite(g) => write!(f, "{g}"),
            Gamma::Infinite => f.write_str("inf"),
        }
    }
}

/// Lower bound on the absolute logarithmic height of an algebraic number of
/// degree at most `d` that is neither zero nor a root of unity, rounded down.
pub fn height_lower_bound(d: usize) -> f64 {
    assert!(d >= 1, "degree bound must be positive");
    let h = if d == 1 {
        std::f64::consts::LN_2
    } else {
        let l = (3.0 * d as f64).ln();
        2.0 / (d as f64 * l * l * l)
    };
    h * (1.0 - INFLATE)
}

/// Upper bound on `ln n` for `n >= 1`, from the top 53 bits of `n`.
fn ln_upper(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 53 {
        return (n.to_u64().unwrap() as f64).ln() * (1.0 + INFLATE);
    }
    let drop = bits - 53;
    let top = (n >> drop).to_u64().unwrap() + 1;
    ((top as f64).ln() + drop as f64 * std::f64::consts::LN_2) * (1.0 + INFLATE)
}

fn ceil_log2(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let b = n.bits();
    if n.count_ones() == 1 {
        b - 1
    } else {
        b
    }
}

/// `ceil((ln ||f||_1 + (d + 1) ln 2) / h_min(d)) + d`, or infinity in paranoid mode.
pub fn gamma(f: &IntPoly, d: usize, cfg: &GapConfig) -> Gamma {
    gamma_for_norm(&f.l1_norm(), d, cfg)
}

/// [`gamma`] for a polynomial whose coefficients have absolute sum `norm`.
pub fn gamma_for_norm(norm: &BigUint, d: usize, cfg: &GapConfig) -> Gamma {
    assert!(d >= 1, "degree bound must be positive");
    if cfg.mode == GapMode::Paranoid {
        return Gamma::Infinite;
    }
    let base = if d == 1 {
        // h_min(1) = ln 2 exactly, so the ratio is log2 ||f||_1 + 2
        ceil_log2(norm) + 2 + 1
    } else {
        let num = ln_upper(norm) + (d as f64 + 1.0) * std::f64::consts::LN_2;
        let q = num / height_lower_bound(d) * (1.0 + INFLATE);
        if q >= u64::MAX as f64 / 2.0 {
            return Gamma::Infinite;
        }
        q.ceil() as u64 + d as u64
    };
    match &cfg.custom_scale {
        None => Gamma::Finite(base),
        Some(s) => {
            let scaled = (s * BigRational::from_integer(base.into()))
                .ceil()
                .to_integer();
            match scaled.to_u64() {
                Some(v) => Gamma::Finite(v),
                None => Gamma::Infinite,
            }
        }
    }
}

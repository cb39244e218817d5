//! Bounded-degree factorization of lacunary polynomials over the rationals.
//!
//! A lacunary polynomial is stored as its list of nonzero monomials, so
//! `x^1000000000 - 1` costs two terms. [`bounded_degree_factors`] returns every
//! irreducible factor of degree at most `d` together with its multiplicity,
//! in time polynomial in the number of terms, the bit size of the exponents
//! and coefficients, and `d`.
//!
//! ```
//! use lacunary::{bounded_degree_factors, parse_poly, FactorConfig};
//!
//! let f = parse_poly("x^1001 + x^1000 + x^2 + x").unwrap();
//! let (report, _) = bounded_degree_factors(&f, 1, &FactorConfig::default()).unwrap();
//! assert_eq!(report.x_power, 1u32.into());
//! assert_eq!(report.factors.len(), 1);
//! assert_eq!(report.factors[0].0.to_string(), "x + 1");
//! assert_eq!(report.factors[0].1, 2);
//! ```

pub mod benchgen;
pub mod cyclotomic;
pub mod dense;
pub mod error;
pub mod factor;
pub mod gap;
pub mod gcd;
pub mod modpoly;
pub mod output;
pub mod par;
pub mod partial;
pub mod pipeline;
pub mod sparse;
pub mod text;
pub mod zp;

pub use dense::DensePoly;
pub use error::{Error, Result};
pub use gap::{GapConfig, GapMode};
pub use pipeline::{
    bounded_degree_factors, verify_report, FactorConfig, FactorReport, PhaseStats, Strategy,
};
pub use sparse::{IntPoly, RationalPoly, SparsePoly};
pub use text::parse_poly;

//! Greatest common divisors of integer polynomials from modular images.

use crate::dense::DensePoly;
use crate::error::Result;
use crate::modpoly::{self, ModPoly};
use crate::par;
use crate::partial::ClusterList;
use crate::zp::{self, Zp};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

/// Accumulates wall-clock time spent in gcd computations.
#[derive(Debug, Default)]
pub struct GcdTimer {
    nanos: AtomicU64,
}

impl GcdTimer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn time<T>(&self, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.nanos
            .fetch_add(start.elapsed().as_nanos() as u64, Ordering::Relaxed);
        out
    }

    pub fn millis(&self) -> f64 {
        self.nanos.load(Ordering::Relaxed) as f64 / 1e6
    }
}

/// Monic gcd in `F_p[X]`; `gcd(0, v)` is `v` made monic.
pub fn gcd_mod_p(u: &[u64], v: &[u64], p: u64) -> ModPoly {
    modpoly::gcd(u, v, Zp::new(p))
}

/// Chinese remaindering of coefficient vectors, one prime at a time.
struct Crt {
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl Crt {
    fn new(image: &[u64], p: u64) -> Self {
        Crt {
            modulus: BigInt::from(p),
            residues: image.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    fn absorb(&mut self, image: &[u64], p: u64) {
        let zp = Zp::new(p);
        let m_inv = zp.inv(zp.reduce(&self.modulus));
        for (r, &g) in self.residues.iter_mut().zip(image) {
            let t = zp.mul(zp.sub(g, zp.reduce(r)), m_inv);
            *r += &self.modulus * BigInt::from(t);
        }
        self.modulus *= p;
    }

    fn symmetric(&self) -> DensePoly {
        let half = &self.modulus >> 1u32;
        DensePoly::new(
            self.residues
                .iter()
                .map(|r| {
                    if *r > half {
                        r - &self.modulus
                    } else {
                        r.clone()
                    }
                })
                .collect(),
        )
    }
}

fn image(a: &DensePoly, b: &DensePoly, scale: &BigInt, p: u64) -> ModPoly {
    let zp = Zp::new(p);
    let g = modpoly::gcd(
        &modpoly::from_ints(a.coeffs(), zp),
        &modpoly::from_ints(b.coeffs(), zp),
        zp,
    );
    modpoly::scale(&g, zp.reduce(scale), zp)
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd_dense(u: &DensePoly, v: &DensePoly) -> DensePoly {
    if u.is_zero() {
        return v.primitive_part();
    }
    if v.is_zero() {
        return u.primitive_part();
    }
    let k = u.valuation().min(v.valuation());
    let a = u.shift_down(u.valuation()).primitive_part();
    let b = v.shift_down(v.valuation()).primitive_part();
    gcd_primitive(&a, &b).shift_up(k)
}

/// Gcd of primitive polynomials with nonzero constant terms.
fn gcd_primitive(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.deg() == 0 || b.deg() == 0 {
        return DensePoly::one();
    }
    if a == b {
        return a.clone();
    }
    let (la, lb) = (a.lc().unwrap(), b.lc().unwrap());
    let scale = la.gcd(lb);
    let batch = if a.deg().min(b.deg()) >= 256 {
        par::threads().clamp(2, 8)
    } else {
        2
    };
    let mut primes = zp::large_primes().filter(|&p| {
        let bp = BigInt::from(p);
        !(la % &bp).is_zero() && !(lb % &bp).is_zero()
    });
    let mut crt: Option<(usize, Crt)> = None;
    let mut last: Option<DensePoly> = None;
    loop {
        let ps: Vec<u64> = primes.by_ref().take(batch).collect();
        let images = par::map(&ps, |&p| image(a, b, &scale, p));
        for (&p, img) in ps.iter().zip(images) {
            let deg = img.len() - 1;
            if deg == 0 {
                // p does not divide either leading coefficient, so the true
                // gcd has degree at most that of this image
                return DensePoly::one();
            }
            match &mut crt {
                Some((e, _)) if deg > *e => continue,
                Some((e, c)) if deg == *e => c.absorb(&img, p),
                _ => {
                    let c = Crt::new(&img, p);
                    last = Some(c.symmetric());
                    crt = Some((deg, c));
                    continue;
                }
            }
            let candidate = crt.as_ref().unwrap().1.symmetric();
            if last.as_ref() == Some(&candidate) {
                let g = candidate.primitive_part();
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return g;
                }
            }
            last = Some(candidate);
        }
    }
}

/// Gcd of several polynomials, smallest degree first, stopping at 1.
pub fn gcd_many(polys: &[DensePoly]) -> DensePoly {
    let mut sorted: Vec<&DensePoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    sorted.sort_by_key(|p| p.deg());
    let mut iter = sorted.into_iter();
    let Some(first) = iter.next() else {
        return DensePoly::zero();
    };
    let mut g = first.primitive_part();
    for p in iter {
        if g.deg() == 0 {
            break;
        }
        g = gcd_dense(&g, p);
    }
    if g.deg() == 0 {
        DensePoly::one()
    } else {
        g
    }
}

/// Gcd of the dense cores of all clusters. The overall constant term is
/// nonzero, so the shifts contribute no power of `X`.
pub fn gcd_clusters(s: &ClusterList<'_>, max_span: usize) -> Result<DensePoly> {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by_key(|&i| s.span(i));
    let mut g: Option<DensePoly> = None;
    for i in order {
        let core = s.core(i, max_span)?.core;
        g = Some(match g {
            None => core.primitive_part(),
            Some(g) => gcd_dense(&g, &core),
        });
        if g.as_ref().is_some_and(|g| g.deg() == 0) {
            return Ok(DensePoly::one());
        }
    }
    Ok(g.unwrap_or_else(DensePoly::one))
}

//! Partial factorization: split a lacunary polynomial into pieces that are
//! either small enough to factor densely (`G`) or provably free of small
//! non-cyclotomic factors (`H`).
//!
//! Clusters of monomials are merged closest-first. Whenever a merged gap
//! exceeds the gap threshold of the merged cluster, the gcd of all current
//! clusters is extracted if it is nontrivial. Once everything is merged the
//! residual is split once more at every gap above its own threshold: a
//! trivial gcd of those parts certifies it for `H`.

use crate::dense::DensePoly;
use crate::error::{Error, Result};
use crate::gap::{gamma, gamma_for_norm, Gamma, GapConfig};
use crate::gcd::{gcd_clusters, GcdTimer};
use crate::sparse::{dense_core_of, IntPoly, ShiftedCore, Term};
use num_bigint::{BigInt, BigUint};

/// Consecutive runs of the terms of a polynomial.
#[derive(Clone, Debug)]
pub struct ClusterList<'a> {
    terms: &'a [Term<BigInt>],
    ranges: Vec<(usize, usize)>,
}

impl<'a> ClusterList<'a> {
    /// One cluster per monomial.
    pub fn monomials(f: &'a IntPoly) -> Self {
        let terms = f.terms();
        ClusterList {
            terms,
            ranges: (0..terms.len()).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Clusters starting at term index 0 and at each of `cuts` (ascending).
    pub fn from_cuts(f: &'a IntPoly, cuts: &[usize]) -> Self {
        let terms = f.terms();
        let mut starts = vec![0];
        starts.extend_from_slice(cuts);
        let mut ranges = Vec::with_capacity(starts.len());
        for (i, &s) in starts.iter().enumerate() {
            let e = starts.get(i + 1).copied().unwrap_or(terms.len());
            ranges.push((s, e));
        }
        ClusterList { terms, ranges }
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn terms_of(&self, i: usize) -> &'a [Term<BigInt>] {
        let (s, e) = self.ranges[i];
        &self.terms[s..e]
    }

    /// `val(S[i+1]) - deg(S[i])`.
    pub fn gap(&self, i: usize) -> BigUint {
        let (_, e) = self.ranges[i];
        let (s, _) = self.ranges[i + 1];
        &self.terms[s].0 - &self.terms[e - 1].0
    }

    pub fn span(&self, i: usize) -> BigUint {
        let t = self.terms_of(i);
        &t[t.len() - 1].0 - &t[0].0
    }

    pub fn core(&self, i: usize, max_span: usize) -> Result<ShiftedCore> {
        dense_core_of(self.terms_of(i), max_span)
    }

    /// Index of the smallest gap, lowest index on ties.
    pub fn find_min_gap(&self) -> Result<(usize, BigUint)> {
        if self.len() < 2 {
            return Err(Error::Input("need at least two clusters".into()));
        }
        let mut best = (0, self.gap(0));
        for i in 1..self.len() - 1 {
            let g = self.gap(i);
            if g < best.1 {
                best = (i, g);
            }
        }
        Ok(best)
    }

    /// Merges `S[t]` and `S[t+1]`.
    pub fn merge(&mut self, t: usize) {
        let (_, e) = self.ranges.remove(t + 1);
        self.ranges[t].1 = e;
    }

    /// Term indices at which clusters after the first begin.
    pub fn cuts(&self) -> Vec<usize> {
        self.ranges[1..].iter().map(|r| r.0).collect()
    }
}

/// A member of `H`: the polynomial, the term indices at which it splits into
/// parts separated by gaps larger than `threshold`, and the guarantee that the
/// gcd of those parts is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedResidual {
    pub poly: IntPoly,
    pub cuts: Vec<usize>,
    pub threshold: Gamma,
}

/// `G` and `H`: the product of all members is the input polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitResult {
    pub g: Vec<IntPoly>,
    pub h: Vec<CertifiedResidual>,
}

/// `sum X^shift_i (core_i / g)`.
pub fn divide_out(s: &ClusterList<'_>, g: &DensePoly, max_span: usize) -> Result<IntPoly> {
    let mut terms = Vec::new();
    for i in 0..s.len() {
        let c = s.core(i, max_span)?;
        let q = c.core.div_exact(g).ok_or(Error::InexactDivision)?;
        terms.extend(q.to_sparse().shift_up(&c.shift).into_terms());
    }
    Ok(IntPoly::from_unsorted(terms))
}

/// Indices at which `f` splits into parts separated by gaps above `threshold`.
pub fn split_cuts(f: &IntPoly, threshold: Gamma) -> Vec<usize> {
    let t = f.terms();
    (1..t.len())
        .filter(|&i| threshold.exceeded_by(&(&t[i].0 - &t[i - 1].0)))
        .collect()
}

/// Splits `f` at every gap larger than `gamma(f, d)`.
pub fn lenstra_split(f: &IntPoly, d: usize, cfg: &GapConfig) -> Vec<IntPoly> {
    let cuts = split_cuts(f, gamma(f, d, cfg));
    let s = ClusterList::from_cuts(f, &cuts);
    (0..s.len())
        .map(|i| IntPoly::from_sorted_terms(s.terms_of(i).to_vec()))
        .collect()
}

/// Disjoint-set forest over term indices tracking each cluster's 1-norm.
struct Clusters {
    parent: Vec<usize>,
    norm: Vec<BigUint>,
}

impl Clusters {
    fn new(f: &IntPoly) -> Self {
        Clusters {
            parent: (0..f.len()).collect(),
            norm: f
                .terms()
                .iter()
                .map(|(_, c)| c.magnitude().clone())
                .collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Joins the clusters of `i` and `i + 1`, returning the merged 1-norm.
    fn union(&mut self, i: usize) -> &BigUint {
        let (a, b) = (self.find(i), self.find(i + 1));
        let n = std::mem::take(&mut self.norm[b]);
        self.norm[a] += n;
        self.parent[b] = a;
        &self.norm[a]
    }
}

enum Step {
    Extracted(DensePoly, IntPoly),
    Done,
}

/// One pass of the merge loop over `f`; returns early on the first
/// nontrivial gcd.
fn merge_pass(
    f: &IntPoly,
    d: usize,
    cfg: &GapConfig,
    max_span: usize,
    timer: &GcdTimer,
) -> Result<Step> {
    let t = f.terms();
    let mut order: Vec<(BigUint, usize)> = (0..t.len().saturating_sub(1))
        .map(|i| (&t[i + 1].0 - &t[i].0, i))
        .collect();
    order.sort();
    let mut merged = vec![false; order.len()];
    let mut clusters = Clusters::new(f);
    for (delta, i) in order {
        merged[i] = true;
        let b = gamma_for_norm(clusters.union(i), d, cfg).exceeded_by(&delta);
        if !b || merged.iter().all(|&m| m) {
            continue;
        }
        let cuts: Vec<usize> = (0..merged.len())
            .filter(|&j| !merged[j])
            .map(|j| j + 1)
            .collect();
        let s = ClusterList::from_cuts(f, &cuts);
        let g = match timer.time(|| gcd_clusters(&s, max_span)) {
            Ok(g) => g,
            // the mid-loop gcd is only a shortcut
            Err(e) if e.is_resource_limit() => continue,
            Err(e) => return Err(e),
        };
        if g.deg() > 0 {
            let rest = divide_out(&s, &g, max_span)?;
            return Ok(Step::Extracted(g, rest));
        }
    }
    Ok(Step::Done)
}

/// Splits a primitive integer polynomial with nonzero constant term and
/// positive leading coefficient into `G` and `H`.
pub fn partial_factorization(
    fhat: &IntPoly,
    d: usize,
    cfg: &GapConfig,
    max_span: usize,
    timer: &GcdTimer,
) -> Result<SplitResult> {
    let mut out = SplitResult::default();
    let mut f = fhat.clone();
    while !f.is_constant() {
        if let Step::Extracted(g, rest) = merge_pass(&f, d, cfg, max_span, timer)? {
            out.g.push(g.to_sparse());
            f = rest;
            continue;
        }
        let threshold = gamma(&f, d, cfg);
        let cuts = split_cuts(&f, threshold);
        if cuts.is_empty() {
            out.g.push(f);
            break;
        }
        let s = ClusterList::from_cuts(&f, &cuts);
        let g = timer.time(|| gcd_clusters(&s, max_span))?;
        if g.deg() > 0 {
            let rest = divide_out(&s, &g, max_span)?;
            out.g.push(g.to_sparse());
            f = rest;
        } else {
            out.h.push(CertifiedResidual {
                poly: f,
                cuts,
                threshold,
            });
            break;
        }
    }
    Ok(out)
}

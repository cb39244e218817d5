//! Yun's squarefree decomposition over the integers.

use crate::dense::DensePoly;
use crate::gcd::gcd_dense;

fn quotient(a: &DensePoly, b: &DensePoly) -> DensePoly {
    a.div_exact(b).expect("gcd divides its arguments")
}

/// `f = prod p_i^{m_i}` with squarefree, pairwise coprime, primitive `p_i`.
/// `f` must be primitive of degree at least 1; the result is ordered by
/// increasing multiplicity.
pub fn squarefree_decomposition(f: &DensePoly) -> Vec<(DensePoly, u32)> {
    let f = f.primitive_part();
    let df = f.derivative();
    let a0 = gcd_dense(&f, &df);
    let mut b = quotient(&f, &a0);
    let mut c = quotient(&df, &a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = gcd_dense(&b, &d);
        b = quotient(&b, &a);
        c = quotient(&d, &a);
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// The product of the distinct irreducible factors of `f`.
pub fn squarefree_part(f: &DensePoly) -> DensePoly {
    let f = f.primitive_part();
    let g = gcd_dense(&f, &f.derivative());
    quotient(&f, &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly {
        DensePoly::from_i64s(c)
    }

    #[test]
    fn yun_examples() {
        assert_eq!(
            squarefree_decomposition(&p(&[0, 1, 2, 1])),
            vec![(p(&[0, 1]), 1), (p(&[1, 1]), 2)]
        );
        let f = p(&[3, 0, 1]);
        assert_eq!(squarefree_decomposition(&f), vec![(f.clone(), 1)]);
        assert_eq!(
            squarefree_decomposition(&p(&[-1, 3, -3, 1])),
            vec![(p(&[-1, 1]), 3)]
        );
    }

    #[test]
    fn yun_reassembles() {
        let a = p(&[1, 1]);
        let b = p(&[-2, 0, 3]);
        let c = p(&[5, -1, 0, 1]);
        let f = a.pow(4).mul(&b.pow(2)).mul(&c).scale(&(-6).into());
        let dec = squarefree_decomposition(&f);
        let back = dec
            .iter()
            .fold(DensePoly::one(), |acc, (q, m)| acc.mul(&q.pow(*m as usize)));
        assert_eq!(back, f.primitive_part());
        assert_eq!(squarefree_part(&f), a.mul(&b).mul(&c).primitive_part());
    }
}

//! Univariate polynomials over an exact field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::field::{Field, Q};
use crate::linalg::Matrix;

/// Polynomial with coefficients stored lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    pub fn one() -> Self {
        Poly::constant(F::one())
    }
    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }
    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }
    /// `x - a`
    pub fn linear_root(a: &F) -> Self {
        Poly::new(vec![a.negated(), F::one()])
    }
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect())
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }
    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.times(s)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.lead().unwrap().inverse().unwrap();
        let mut r = self.coeffs.clone();
        let mut qv = vec![F::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().times(&inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j].sub_mul_assign(&c, dc);
            }
            qv[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(qv), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(o);
        self.mul(o).div_rem(&g).0.monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&F::from_i64(k as i64)))
                .collect(),
        )
    }

    /// True iff the polynomial has no repeated factor (characteristic zero).
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = acc.get(i, i).plus(c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Scale a rational polynomial to a primitive integer polynomial.
pub fn primitive_integer_part(p: &Poly<Q>) -> Vec<BigInt> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::from(0), |acc, c| acc.gcd(c));
    if g == BigInt::from(0) {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    if let Some(m) = n.to_u64() {
        let mut d = 1u64;
        while d * d <= m {
            if m % d == 0 {
                out.push(BigInt::from(d));
                if d * d != m {
                    out.push(BigInt::from(m / d));
                }
            }
            d += 1;
        }
    } else {
        panic!("coefficient too large for rational-root search: {n}");
    }
    out
}

/// Distinct rational roots, sorted ascending, plus the monic cofactor that has no rational roots.
pub fn rational_roots(p: &Poly<Q>) -> (Vec<Q>, Poly<Q>) {
    let mut rest = p.squarefree_part();
    let mut roots = Vec::new();
    if rest.is_zero() {
        return (roots, rest);
    }
    if rest.coeff(0).is_zero() {
        roots.push(<Q as Field>::zero());
        rest = rest.div_rem(&Poly::x()).0;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let ints = primitive_integer_part(&rest);
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        let mut cands = Vec::new();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                let r = Q::new(num.clone(), den.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            if rest.eval(&r).is_zero() {
                rest = rest.div_rem(&Poly::linear_root(&r)).0;
                roots.push(r);
            }
        }
    }
    roots.sort();
    (roots, rest.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi};

    fn pq(v: &[i64]) -> Poly<Q> {
        Poly::new(v.iter().map(|&c| qi(c)).collect())
    }

    #[test]
    fn division_identity() {
        let a = pq(&[1, 0, -3, 2, 5]);
        let b = pq(&[2, 1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn squarefree_detection() {
        let p = pq(&[-1, 1]).mul(&pq(&[-1, 1])).mul(&pq(&[2, 1]));
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part(), pq(&[-1, 1]).mul(&pq(&[2, 1])).monic());
        assert!(pq(&[1, 0, 1]).is_squarefree());
    }

    #[test]
    fn roots_of_mixed_polynomial() {
        // (t - 1)(t + 1)(2t - 3)(t^2 + 1) t
        let p = pq(&[-1, 1])
            .mul(&pq(&[1, 1]))
            .mul(&pq(&[-3, 2]))
            .mul(&pq(&[1, 0, 1]))
            .mul(&pq(&[0, 1]));
        let (roots, rest) = rational_roots(&p);
        assert_eq!(roots, vec![qi(-1), qi(0), qi(1), q(3, 2)]);
        assert_eq!(rest, pq(&[1, 0, 1]));
    }
}

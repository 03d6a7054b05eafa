//! Univariate polynomials over Q: division, gcd, squarefree decomposition and
//! Sturm real-root counting.

use num_traits::{One, Signed, Zero};

use crate::scalar::{int, Rational};

/// Coefficients in ascending order, with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub c: Vec<Rational>,
}

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| int(n)).collect())
    }

    pub fn one() -> Self {
        Poly { c: vec![Rational::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 by convention here.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a * int(k as i64)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        Poly::new(self.c.iter().map(|a| a * &l).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.c.iter().map(|a| -a).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Poly::new(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - d.c.len() + 1];
        let dl = d.lead();
        for k in (0..q.len()).rev() {
            let coef = &r[k + d.c.len() - 1] / &dl;
            if !coef.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &coef * dj;
                }
            }
            q[k] = coef;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(|a| num_traits::ToPrimitive::to_f64(a).unwrap_or(f64::NAN)).collect()
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.divrem(&y).1;
        x = y;
        y = r;
    }
    x.monic()
}

/// Yun's algorithm: monic squarefree a_1, a_2, ... with p = lc * a_1 a_2^2 a_3^3 ...
pub fn squarefree_decomposition(p: &Poly) -> Vec<Poly> {
    if p.degree() == 0 {
        return vec![];
    }
    let dp = p.derivative();
    let a0 = gcd(p, &dp);
    let mut b = p.divrem(&a0).0;
    let mut c = dp.divrem(&a0).0;
    let mut d = sub(&c, &b.derivative());
    let mut out = Vec::new();
    loop {
        let a = gcd(&b, &d);
        out.push(a.clone());
        b = b.divrem(&a).0;
        if b.degree() == 0 {
            break;
        }
        c = d.divrem(&a).0;
        d = sub(&c, &b.derivative());
    }
    while out.last().is_some_and(|a| a.degree() == 0) {
        out.pop();
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    let get = |p: &Poly, k: usize| p.c.get(k).cloned().unwrap_or_else(Rational::zero);
    Poly::new((0..n).map(|k| get(a, k) - get(b, k)).collect())
}

/// Canonical Sturm sequence p, p', -rem(p, p'), ...
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().is_some_and(|s| s.is_zero()) {
        let n = seq.len();
        let r = seq[n - 2].divrem(&seq[n - 1]).1.neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|s| !s.is_zero());
    seq
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of p.
pub fn count_real_roots(p: &Poly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    let at_pos = sign_changes(seq.iter().map(|s| sign(&s.lead())));
    let at_neg = sign_changes(seq.iter().map(|s| {
        let l = sign(&s.lead());
        if s.degree() % 2 == 0 {
            l
        } else {
            -l
        }
    }));
    at_neg - at_pos
}

/// Number of distinct real roots in the half-open interval (a, b].
pub fn count_real_roots_in(p: &Poly, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(p);
    let at = |x: &Rational| sign_changes(seq.iter().map(|s| sign(&s.eval(x))));
    at(a) - at(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn yun_recovers_multiplicities() {
        // (t-1)^3 (t+2) (t^2+1)^2
        let l1 = Poly::from_ints(&[-1, 1]);
        let l2 = Poly::from_ints(&[2, 1]);
        let q = Poly::from_ints(&[1, 0, 1]);
        let mul = |a: &Poly, b: &Poly| {
            let mut c = vec![Rational::zero(); a.c.len() + b.c.len() - 1];
            for (i, x) in a.c.iter().enumerate() {
                for (j, y) in b.c.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            Poly::new(c)
        };
        let p = mul(&mul(&mul(&mul(&l1, &l1), &mul(&l1, &l2)), &q), &q);
        let d = squarefree_decomposition(&p);
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], l2);
        assert_eq!(d[1], q);
        assert_eq!(d[2], l1);
    }

    #[test]
    fn sturm_counts() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        assert_eq!(count_real_roots(&p), 2);
        assert_eq!(count_real_roots(&Poly::from_ints(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots_in(&p, &rat(0, 1), &rat(2, 1)), 1);
    }
}

//! Real binary forms, with the invariant pairings Q2 on Sym^2 and Q6 on Sym^6.
//!
//! Coefficient `c[k]` multiplies `X^(d-k) Y^k`.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{in_span, Mat, NullSpace};
use crate::octonion::{BasisTag, ImVector};
use crate::scalar::{int, rat, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Form<F> {
    pub c: Vec<F>,
}

/// A binary sextic in the monomial basis.
pub type Sextic<F> = Form<F>;
/// A binary quadratic in the basis (X^2, XY, Y^2).
pub type Quadratic<F> = Form<F>;

impl<F: Scalar> Form<F> {
    pub fn new(c: Vec<F>) -> Self {
        assert!(!c.is_empty());
        Form { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Form { c: c.iter().map(|&n| F::from_i64(n)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn zero(d: usize) -> Self {
        Form { c: vec![F::zero(); d + 1] }
    }

    /// X^(d-k) Y^k.
    pub fn monomial(d: usize, k: usize) -> Self {
        let mut f = Self::zero(d);
        f.c[k] = F::one();
        f
    }

    /// aX + bY.
    pub fn linear(a: F, b: F) -> Self {
        Form { c: vec![a, b] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &F) -> Self {
        Form { c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree() + other.degree());
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.c.iter().enumerate() {
                out.c[a + b] = out.c[a + b].clone() + x.clone() * y.clone();
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Form { c: vec![F::one()] };
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitution X -> aX + cY, Y -> bX + dY, the action of [[a,b],[c,d]].
    pub fn act(&self, a: &F, b: &F, c: &F, d: &F) -> Self {
        let gx = Form::linear(a.clone(), c.clone());
        let gy = Form::linear(b.clone(), d.clone());
        let deg = self.degree();
        let mut out = Self::zero(deg);
        for (k, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let term = gx.pow(deg - k).mul(&gy.pow(k)).scale(coef);
            out = out + term;
        }
        out
    }

    /// Evaluate at (X, Y).
    pub fn eval(&self, x: &F, y: &F) -> F {
        let d = self.degree();
        let mut acc = F::zero();
        for (k, coef) in self.c.iter().enumerate() {
            let mut t = coef.clone();
            for _ in 0..d - k {
                t = t * x.clone();
            }
            for _ in 0..k {
                t = t * y.clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Sextic as an ImVector in the monomial tag.
    pub fn to_im(&self) -> ImVector<F> {
        assert_eq!(self.degree(), 6);
        ImVector::from_slice(&self.c, BasisTag::MonomialSym6)
    }

    pub fn from_im(v: &ImVector<F>) -> Result<Self> {
        let v = v.to_basis(BasisTag::MonomialSym6)?;
        Ok(Form { c: v.coords.to_vec() })
    }

    /// Sextic coordinates in the M-imaginary basis (through B).
    pub fn to_m(&self) -> Result<ImVector<F>> {
        self.to_im().to_basis(BasisTag::MImaginary)
    }

    /// Largest coefficient modulus.
    pub fn max_modulus(&self) -> f64 {
        self.c.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Form<f64> {
        Form { c: self.c.iter().map(|x| x.to_c64().re).collect() }
    }
}

impl<F: Scalar> Add for Form<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.c.len(), o.c.len(), "degree mismatch");
        Form { c: self.c.into_iter().zip(o.c).map(|(a, b)| a + b).collect() }
    }
}

impl<F: Scalar> Sub for Form<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Scalar> Neg for Form<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Form { c: self.c.into_iter().map(|a| -a).collect() }
    }
}

/// Antidiagonal Gram matrix of Q6: (1, -1/6, 1/15, -1/20, 1/15, -1/6, 1).
pub fn q6_matrix() -> Mat<Rational> {
    let vals = [int(1), rat(-1, 6), rat(1, 15), rat(-1, 20), rat(1, 15), rat(-1, 6), int(1)];
    let mut g = Mat::zeros(7, 7);
    for (k, v) in vals.into_iter().enumerate() {
        g.set(k, 6 - k, v);
    }
    g
}

/// Gram matrix of Q2 in (X^2, XY, Y^2).
pub fn q2_matrix() -> Mat<Rational> {
    Mat::from_rows(&[vec![int(0), int(0), int(1)], vec![int(0), rat(-1, 2), int(0)], vec![int(1), int(0), int(0)]])
}

fn pair_with<F: Scalar>(g: &Mat<Rational>, p: &Form<F>, r: &Form<F>) -> F {
    let n = g.rows;
    let mut acc = F::zero();
    for a in 0..n {
        if p.c[a].is_zero() {
            continue;
        }
        for b in 0..n {
            let gab = g.get(a, b);
            if !gab.is_zero() {
                acc = acc + F::from_rational(gab) * p.c[a].clone() * r.c[b].clone();
            }
        }
    }
    acc
}

pub fn q6_pair<F: Scalar>(p: &Sextic<F>, r: &Sextic<F>) -> F {
    assert_eq!((p.degree(), r.degree()), (6, 6), "Q6 pairs sextics");
    pair_with(&q6_matrix(), p, r)
}

pub fn q6<F: Scalar>(p: &Sextic<F>) -> F {
    q6_pair(p, p)
}

pub fn q2_pair<F: Scalar>(p: &Quadratic<F>, r: &Quadratic<F>) -> F {
    assert_eq!((p.degree(), r.degree()), (2, 2), "Q2 pairs quadratics");
    pair_with(&q2_matrix(), p, r)
}

pub fn q2<F: Scalar>(p: &Quadratic<F>) -> F {
    q2_pair(p, p)
}

/// True when `q` divides `p` (exact for rationals, rank-based for floats).
pub fn divides<F: Scalar + NullSpace>(q: &Form<F>, p: &Form<F>) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroVector);
    }
    if q.degree() > p.degree() {
        return Ok(p.is_zero());
    }
    let e = p.degree() - q.degree();
    let basis: Vec<Vec<F>> = (0..=e).map(|k| q.mul(&Form::monomial(e, k)).c).collect();
    Ok(in_span(&basis, &p.c))
}

/// Basis of the multiples of `q` of degree `d`.
pub fn multiples<F: Scalar>(q: &Form<F>, d: usize) -> Vec<Form<F>> {
    let e = d - q.degree();
    (0..=e).map(|k| q.mul(&Form::monomial(e, k))).collect()
}

//! Rational Laurent polynomials in (x, y, 1/y), used as exact coefficients of
//! forms depending on a point of the upper half plane.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{int, Rational, Scalar};
use crate::sextic::Form;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Laurent {
    /// (power of x, power of y) -> coefficient; zero terms are never stored.
    terms: BTreeMap<(u32, i32), Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: Rational) -> Self {
        Laurent::term(c, 0, 0)
    }

    pub fn term(c: Rational, px: u32, py: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((px, py), c);
        }
        Laurent { terms }
    }

    pub fn x() -> Self {
        Laurent::term(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Laurent::term(Rational::one(), 0, 1)
    }

    pub fn inv_y() -> Self {
        Laurent::term(Rational::one(), 0, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, key: (u32, i32), c: Rational) {
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn dx(&self) -> Self {
        let mut out = Laurent::zero();
        for (&(px, py), c) in &self.terms {
            if px > 0 {
                out.push((px - 1, py), c * int(px as i64));
            }
        }
        out
    }

    pub fn dy(&self) -> Self {
        let mut out = Laurent::zero();
        for (&(px, py), c) in &self.terms {
            if py != 0 {
                out.push((px, py - 1), c * int(py as i64));
            }
        }
        out
    }

    /// Evaluation in any scalar model; y must be nonzero when negative powers occur.
    pub fn eval<F: Scalar>(&self, x: &F, y: &F) -> F {
        let yi = F::one() / y.clone();
        let mut out = F::zero();
        for (&(px, py), c) in &self.terms {
            let mut t = F::from_rational(c);
            for _ in 0..px {
                t = t * x.clone();
            }
            let (base, n) = if py >= 0 { (y, py) } else { (&yi, -py) };
            for _ in 0..n {
                t = t * base.clone();
            }
            out = out + t;
        }
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, o: Laurent) -> Laurent {
        for (k, c) in o.terms {
            self.push(k, c);
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self + (-o)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &o.terms {
                out.push((ax + bx, ay + by), a * b);
            }
        }
        out
    }
}

/// A binary form whose coefficients are Laurent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct LForm {
    pub c: Vec<Laurent>,
}

impl LForm {
    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn mul(&self, o: &LForm) -> LForm {
        let mut c = vec![Laurent::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = std::mem::take(&mut c[i + j]) + a * b;
            }
        }
        LForm { c }
    }

    pub fn pow(&self, n: usize) -> LForm {
        let mut out = LForm { c: vec![Laurent::constant(Rational::one())] };
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> LForm {
        LForm { c: self.c.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn dx(&self) -> LForm {
        LForm { c: self.c.iter().map(Laurent::dx).collect() }
    }

    pub fn dy(&self) -> LForm {
        LForm { c: self.c.iter().map(Laurent::dy).collect() }
    }

    pub fn add(&self, o: &LForm) -> LForm {
        LForm { c: self.c.iter().zip(&o.c).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn eval<F: Scalar>(&self, x: &F, y: &F) -> Form<F> {
        Form::new(self.c.iter().map(|a| a.eval(x, y)).collect())
    }
}

//! Scalar models: exact rationals, binary doubles, and complex doubles.
//!
//! Generic code is written against [`Scalar`]. Mixing models is a type
//! error, so there is no runtime model-mismatch path.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for the exact model; comparisons then ignore tolerances.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Lossless import of a complex double; `None` when the model cannot hold it.
    fn from_c64(z: Complex64) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Modulus as a double, used for pivoting and tolerances.
    fn modulus(&self) -> f64;
    fn conj(&self) -> Self;

    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.modulus() <= tol
        }
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&rat(n, d))
    }
}

/// Scalars with an order, so that signatures make sense.
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_c64(_z: Complex64) -> Option<Self> {
        None
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(ToPrimitive::to_f64(self).unwrap_or(f64::NAN), 0.0)
    }
    fn modulus(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl RealScalar for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        if z.im.abs() <= 1e-12 * (1.0 + z.re.abs()) {
            Some(z.re)
        } else {
            None
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn conj(&self) -> Self {
        *self
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(ToPrimitive::to_f64(r).unwrap_or(f64::NAN), 0.0)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// Exact rational from a double, via its binary expansion.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite double")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        assert_eq!(rat(2, 4) * rat(3, 9), rat(1, 6));
        assert_eq!(rat(6, -4), rat(-3, 2));
    }

    #[test]
    fn negligible_respects_model() {
        assert!(!rat(1, 1_000_000_000).is_negligible(1.0));
        assert!(1e-13_f64.is_negligible(1e-12));
        assert!(!1e-11_f64.is_negligible(1e-12));
    }

    #[test]
    fn complex_import() {
        assert_eq!(f64::from_c64(Complex64::new(2.0, 0.0)), Some(2.0));
        assert_eq!(f64::from_c64(Complex64::new(2.0, 1.0)), None);
        assert!(Rational::from_c64(Complex64::new(1.0, 0.0)).is_none());
    }
}

//! Split octonions O' and their imaginary part.
//!
//! Multiplication comes from the split Cayley-Dickson doubling of the
//! quaternions, `(a,b)(c,d) = (ac + d b*, a* d + c b)`, where the pair
//! `(a,b)` stands for `a + l b`. The stored table [`TABLE`] is checked
//! against that recursion in the tests.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{null_space, Mat, NullSpace};
use crate::scalar::{int, Rational, Scalar};

/// Names of the standard multiplication basis M.
pub const NAMES: [&str; 8] = ["1", "i", "j", "k", "l", "li", "lj", "lk"];

/// `TABLE[a][b] = (sign, c)` means `m_a m_b = sign * m_c`.
pub const TABLE: [[(i8, usize); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (-1, 5), (1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (-1, 6), (1, 7), (1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (-1, 7), (-1, 6), (1, 5), (1, 4)],
    [(1, 4), (1, 5), (1, 6), (1, 7), (1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (-1, 4), (-1, 7), (1, 6), (-1, 1), (1, 0), (1, 3), (-1, 2)],
    [(1, 6), (1, 7), (-1, 4), (-1, 5), (-1, 2), (-1, 3), (1, 0), (1, 1)],
    [(1, 7), (-1, 6), (1, 5), (-1, 4), (-1, 3), (1, 2), (-1, 1), (1, 0)],
];

fn quat_mul<F: Scalar>(a: &[F], b: &[F]) -> [F; 4] {
    let (a0, a1, a2, a3) = (&a[0], &a[1], &a[2], &a[3]);
    let (b0, b1, b2, b3) = (&b[0], &b[1], &b[2], &b[3]);
    let m = |x: &F, y: &F| x.clone() * y.clone();
    [
        m(a0, b0) - m(a1, b1) - m(a2, b2) - m(a3, b3),
        m(a0, b1) + m(a1, b0) + m(a2, b3) - m(a3, b2),
        m(a0, b2) - m(a1, b3) + m(a2, b0) + m(a3, b1),
        m(a0, b3) + m(a1, b2) - m(a2, b1) + m(a3, b0),
    ]
}

fn quat_conj<F: Scalar>(a: &[F]) -> [F; 4] {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

fn add4<F: Scalar>(a: [F; 4], b: [F; 4]) -> [F; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [a0 + b0, a1 + b1, a2 + b2, a3 + b3]
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitOct<F> {
    pub c: [F; 8],
}

impl<F: Scalar> SplitOct<F> {
    pub fn new(c: [F; 8]) -> Self {
        SplitOct { c }
    }

    pub fn zero() -> Self {
        SplitOct { c: std::array::from_fn(|_| F::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(n: usize) -> Self {
        let mut o = Self::zero();
        o.c[n] = F::one();
        o
    }

    pub fn from_ints(v: [i64; 8]) -> Self {
        SplitOct { c: v.map(F::from_i64) }
    }

    /// Product via the Cayley-Dickson recursion.
    pub fn mul_cd(&self, other: &Self) -> Self {
        let (a, b) = self.c.split_at(4);
        let (c, d) = other.c.split_at(4);
        let first = add4(quat_mul(a, c), quat_mul(d, &quat_conj(b)));
        let second = add4(quat_mul(&quat_conj(a), d), quat_mul(c, b));
        let [x0, x1, x2, x3] = first;
        let [y0, y1, y2, y3] = second;
        SplitOct { c: [x0, x1, x2, x3, y0, y1, y2, y3] }
    }

    /// Product via the stored table.
    pub fn mul_table(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in 0..8 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if other.c[b].is_zero() {
                    continue;
                }
                let (s, k) = TABLE[a][b];
                let p = self.c[a].clone() * other.c[b].clone();
                out.c[k] = if s > 0 { out.c[k].clone() + p } else { out.c[k].clone() - p };
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut c = self.c.clone();
        for x in c.iter_mut().skip(1) {
            *x = -x.clone();
        }
        SplitOct { c }
    }

    pub fn re(&self) -> F {
        self.c[0].clone()
    }

    pub fn im(&self) -> ImVector<F> {
        ImVector::m(std::array::from_fn(|n| self.c[n + 1].clone()))
    }

    /// q(x) = Re(x x*), of signature (4,4).
    pub fn quad(&self) -> F {
        self.quad_pair(self)
    }

    /// q(x,y) = Re(x y*).
    pub fn quad_pair(&self, other: &Self) -> F {
        let mut acc = F::zero();
        for n in 0..8 {
            let p = self.c[n].clone() * other.c[n].clone();
            acc = if n < 4 { acc + p } else { acc - p };
        }
        acc
    }

    pub fn scale(&self, s: &F) -> Self {
        SplitOct { c: self.c.clone().map(|x| x * s.clone()) }
    }
}

impl<F: Scalar> Add for SplitOct<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(o.c) {
            *x = x.clone() + y;
        }
        SplitOct { c }
    }
}

impl<F: Scalar> Sub for SplitOct<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Scalar> Neg for SplitOct<F> {
    type Output = Self;
    fn neg(self) -> Self {
        SplitOct { c: self.c.map(|x| -x) }
    }
}

impl<F: Scalar> Mul for &SplitOct<F> {
    type Output = SplitOct<F>;
    fn mul(self, o: Self) -> SplitOct<F> {
        self.mul_cd(o)
    }
}

/// Bases of Im(O') supported by [`ImVector`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BasisTag {
    /// (i, j, k, l, li, lj, lk)
    MImaginary,
    /// Baraglia's complex frame (u_3, ..., u_{-3}).
    BaragliaU,
    /// The cross-product basis (x_3, ..., x_{-3}).
    BPrime,
    /// Coefficients of X^6, X^5 Y, ..., Y^6 through the normalized basis B.
    MonomialSym6,
    /// The standard basis (e_3, ..., e_{-3}) of R^7, identified with the monomials.
    R7Standard,
}

const R2: f64 = std::f64::consts::SQRT_2;

/// Columns are the vectors of `tag` written in the M-imaginary basis.
pub fn basis_matrix(tag: BasisTag) -> Mat<Complex64> {
    let re = |x: f64| Complex64::new(x, 0.0);
    let e = |n: usize| -> Vec<Complex64> {
        let mut v = vec![re(0.0); 7];
        v[n] = re(1.0);
        v
    };
    let comb = |terms: &[(usize, Complex64)], s: Complex64| -> Vec<Complex64> {
        let mut v = vec![re(0.0); 7];
        for &(n, c) in terms {
            v[n] += c * s;
        }
        v
    };
    let (i, j, k, l, li, lj, lk) = (0, 1, 2, 3, 4, 5, 6);
    let one = re(1.0);
    let im = Complex64::new(0.0, 1.0);
    let h = re(1.0 / R2);
    let bprime = || {
        vec![
            comb(&[(i, one), (li, one)], h),
            comb(&[(lj, one), (j, -one)], h),
            comb(&[(k, one), (lk, -one)], h),
            e(l),
            comb(&[(k, one), (lk, one)], h),
            comb(&[(j, one), (lj, one)], h),
            comb(&[(i, one), (li, -one)], h),
        ]
    };
    let cols = match tag {
        BasisTag::MImaginary => (0..7).map(e).collect(),
        BasisTag::BPrime => bprime(),
        BasisTag::MonomialSym6 | BasisTag::R7Standard => {
            let d = b_rescaling();
            bprime().into_iter().zip(d).map(|(v, s)| v.into_iter().map(|x| x * re(s)).collect()).collect()
        }
        BasisTag::BaragliaU => vec![
            // jl = -lj, kl = -lk, il = -li
            comb(&[(lj, -one), (lk, -im)], h),
            comb(&[(j, one), (k, im)], h),
            comb(&[(l, one), (li, -im)], h),
            e(i),
            comb(&[(l, one), (li, im)], h),
            comb(&[(j, one), (k, -im)], h),
            comb(&[(lj, -one), (lk, im)], h),
        ],
    };
    Mat::from_cols(&cols)
}

/// Rational representatives of the B' lines: x_k = (this vector) / sqrt2, except x_0 = l.
pub fn bprime_lines<F: Scalar>() -> [ImVector<F>; 7] {
    [
        m_comb(&[(1, 0), (1, 4)]),
        m_comb(&[(1, 5), (-1, 1)]),
        m_comb(&[(1, 2), (-1, 6)]),
        m_comb(&[(1, 3)]),
        m_comb(&[(1, 2), (1, 6)]),
        m_comb(&[(1, 1), (1, 5)]),
        m_comb(&[(1, 0), (-1, 4)]),
    ]
}

/// Diagonal factors d_k with B_k = d_k x_k (B normalized, x in B').
pub fn b_rescaling() -> [f64; 7] {
    [1.0, 1.0 / 6f64.sqrt(), 1.0 / 15f64.sqrt(), -1.0 / 20f64.sqrt(), 1.0 / 15f64.sqrt(), 1.0 / 6f64.sqrt(), 1.0]
}

/// Gram matrix of q in each basis; all entries are rational.
pub fn gram_matrix(tag: BasisTag) -> Mat<Rational> {
    let mut g = Mat::zeros(7, 7);
    match tag {
        BasisTag::MImaginary => {
            for n in 0..7 {
                g.set(n, n, int(if n < 3 { 1 } else { -1 }));
            }
        }
        BasisTag::BPrime => {
            for n in 0..7 {
                g.set(n, 6 - n, int(if n % 2 == 0 { 1 } else { -1 }));
            }
        }
        BasisTag::BaragliaU => {
            for n in 0..7 {
                g.set(n, 6 - n, int(if n % 2 == 0 { -1 } else { 1 }));
            }
        }
        BasisTag::MonomialSym6 | BasisTag::R7Standard => return crate::sextic::q6_matrix(),
    }
    g
}

/// An element of Im(O') with coordinates in a declared basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ImVector<F> {
    pub coords: [F; 7],
    pub basis: BasisTag,
}

impl<F: Scalar> ImVector<F> {
    pub fn new(coords: [F; 7], basis: BasisTag) -> Self {
        ImVector { coords, basis }
    }

    /// Coordinates in the M-imaginary basis.
    pub fn m(coords: [F; 7]) -> Self {
        ImVector { coords, basis: BasisTag::MImaginary }
    }

    pub fn from_ints(v: [i64; 7]) -> Self {
        Self::m(v.map(F::from_i64))
    }

    pub fn zero(basis: BasisTag) -> Self {
        ImVector { coords: std::array::from_fn(|_| F::zero()), basis }
    }

    /// The n-th vector of the given basis.
    pub fn unit(n: usize, basis: BasisTag) -> Self {
        let mut v = Self::zero(basis);
        v.coords[n] = F::one();
        v
    }

    pub fn to_oct(&self) -> Result<SplitOct<F>> {
        let v = self.to_basis(BasisTag::MImaginary)?;
        let mut c: [F; 8] = std::array::from_fn(|_| F::zero());
        for n in 0..7 {
            c[n + 1] = v.coords[n].clone();
        }
        Ok(SplitOct { c })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &F) -> Self {
        ImVector { coords: self.coords.clone().map(|x| x * s.clone()), basis: self.basis }
    }

    pub fn to_vec(&self) -> Vec<F> {
        self.coords.to_vec()
    }

    pub fn from_slice(v: &[F], basis: BasisTag) -> Self {
        ImVector { coords: std::array::from_fn(|n| v[n].clone()), basis }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis, other.basis));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.clone() + other.clone())
    }

    /// Bilinear pairing through the exact Gram matrix of the basis.
    pub fn quad_pair(&self, other: &Self) -> Result<F> {
        self.check(other)?;
        if self.basis == BasisTag::MImaginary {
            let mut acc = F::zero();
            for n in 0..7 {
                let p = self.coords[n].clone() * other.coords[n].clone();
                acc = if n < 3 { acc + p } else { acc - p };
            }
            return Ok(acc);
        }
        let g = gram_matrix(self.basis);
        let mut acc = F::zero();
        for a in 0..7 {
            for b in 0..7 {
                let gab = g.get(a, b);
                if !gab.is_zero() {
                    acc = acc + F::from_rational(gab) * self.coords[a].clone() * other.coords[b].clone();
                }
            }
        }
        Ok(acc)
    }

    pub fn quad(&self) -> F {
        self.quad_pair(self).expect("same basis")
    }

    /// x × y = Im(xy), computed in M and mapped back to the common basis.
    pub fn cross(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let basis = self.basis;
        let (a, b) = if basis == BasisTag::MImaginary {
            (self.clone(), other.clone())
        } else {
            (self.to_basis(BasisTag::MImaginary)?, other.to_basis(BasisTag::MImaginary)?)
        };
        let p = a.to_oct()?.mul_table(&b.to_oct()?).im();
        if basis == BasisTag::MImaginary {
            Ok(p)
        } else {
            p.to_basis(basis)
        }
    }

    /// Ω(x,y,z) = q(x × y, z).
    pub fn triple_form(&self, y: &Self, z: &Self) -> Result<F> {
        self.check(z)?;
        self.cross(y)?.quad_pair(z)
    }

    /// Change of basis. Irrational bases are only reachable for float models.
    pub fn to_basis(&self, to: BasisTag) -> Result<Self> {
        let from = self.basis;
        let same_coords = |a: BasisTag, b: BasisTag| {
            a == b || matches!((a, b), (BasisTag::MonomialSym6, BasisTag::R7Standard) | (BasisTag::R7Standard, BasisTag::MonomialSym6))
        };
        if same_coords(from, to) {
            return Ok(ImVector { coords: self.coords.clone(), basis: to });
        }
        if F::EXACT {
            return Err(Error::UnsupportedConversion(from, to));
        }
        let p_from = basis_matrix(from);
        let p_to_inv = basis_matrix(to).inverse().expect("basis matrices are invertible");
        let m = p_to_inv.mul(&p_from);
        let x: Vec<Complex64> = self.coords.iter().map(|c| c.to_c64()).collect();
        let y = m.mul_vec(&x);
        let coords: Option<Vec<F>> = y.into_iter().map(F::from_c64).collect();
        let coords = coords.ok_or(Error::UnsupportedConversion(from, to))?;
        Ok(ImVector::from_slice(&coords, to))
    }

    /// Matrix of the cross-product endomorphism C_u (columns are u × e_n).
    pub fn cross_matrix(&self) -> Result<Mat<F>> {
        let cols: Result<Vec<Vec<F>>> = (0..7).map(|n| self.cross(&ImVector::unit(n, self.basis)).map(|v| v.to_vec())).collect();
        Ok(Mat::from_cols(&cols?))
    }
}

impl<F: Scalar + NullSpace> ImVector<F> {
    /// Basis of Ann(u) = ker C_u.
    pub fn annihilator(&self) -> Result<Vec<ImVector<F>>> {
        if self.coords.iter().all(|x| x.is_negligible(0.0)) {
            return Err(Error::ZeroVector);
        }
        let cu = self.cross_matrix()?;
        Ok(null_space(&cu).into_iter().map(|v| ImVector::from_slice(&v, self.basis)).collect())
    }
}

impl<F: Scalar> Add for ImVector<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.basis, o.basis);
        let mut c = self.coords;
        for (x, y) in c.iter_mut().zip(o.coords) {
            *x = x.clone() + y;
        }
        ImVector { coords: c, basis: self.basis }
    }
}

impl<F: Scalar> Sub for ImVector<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Scalar> Neg for ImVector<F> {
    type Output = Self;
    fn neg(self) -> Self {
        ImVector { coords: self.coords.map(|x| -x), basis: self.basis }
    }
}

/// Shorthands for the M-imaginary basis vectors.
pub mod m {
    use super::*;

    pub fn i<F: Scalar>() -> ImVector<F> {
        ImVector::unit(0, BasisTag::MImaginary)
    }
    pub fn j<F: Scalar>() -> ImVector<F> {
        ImVector::unit(1, BasisTag::MImaginary)
    }
    pub fn k<F: Scalar>() -> ImVector<F> {
        ImVector::unit(2, BasisTag::MImaginary)
    }
    pub fn l<F: Scalar>() -> ImVector<F> {
        ImVector::unit(3, BasisTag::MImaginary)
    }
    pub fn li<F: Scalar>() -> ImVector<F> {
        ImVector::unit(4, BasisTag::MImaginary)
    }
    pub fn lj<F: Scalar>() -> ImVector<F> {
        ImVector::unit(5, BasisTag::MImaginary)
    }
    pub fn lk<F: Scalar>() -> ImVector<F> {
        ImVector::unit(6, BasisTag::MImaginary)
    }
}

/// Sum of M-basis vectors with integer weights, e.g. `m_comb(&[(1, 0), (1, 4)])` = i + li.
pub fn m_comb<F: Scalar>(terms: &[(i64, usize)]) -> ImVector<F> {
    let mut v = ImVector::<F>::zero(BasisTag::MImaginary);
    for &(c, n) in terms {
        v.coords[n] = v.coords[n].clone() + F::from_i64(c);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    #[test]
    fn table_matches_recursion() {
        for a in 0..8 {
            for b in 0..8 {
                let x = SplitOct::<Q>::basis(a);
                let y = SplitOct::<Q>::basis(b);
                assert_eq!(x.mul_cd(&y), x.mul_table(&y), "{} * {}", NAMES[a], NAMES[b]);
            }
        }
    }

    #[test]
    fn basic_products() {
        let i = SplitOct::<Q>::basis(1);
        let j = SplitOct::<Q>::basis(2);
        let l = SplitOct::<Q>::basis(4);
        assert_eq!(&i * &j, SplitOct::basis(3));
        assert_eq!(&l * &l, SplitOct::one());
        // il = -li
        assert_eq!(&i * &l, -SplitOct::basis(5));
        assert_eq!(&l * &i, SplitOct::basis(5));
    }

    #[test]
    fn quad_examples() {
        assert_eq!(m::i::<Q>().quad(), int(1));
        assert_eq!(m::l::<Q>().quad(), int(-1));
        assert_eq!((m::i::<Q>() + m::lj()).quad(), int(0));
    }

    #[test]
    fn cross_and_triple() {
        assert_eq!(m::i::<Q>().cross(&m::j()).unwrap(), m::k());
        assert_eq!(m::i::<Q>().triple_form(&m::j(), &m::k()).unwrap(), int(1));
        assert_eq!(m::i::<Q>().triple_form(&m::j(), &m::l()).unwrap(), int(0));
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let a = ImVector::<f64>::unit(0, BasisTag::MImaginary);
        let b = ImVector::<f64>::unit(0, BasisTag::BPrime);
        assert!(matches!(a.quad_pair(&b), Err(Error::BasisMismatch(..))));
        assert!(matches!(a.cross(&b), Err(Error::BasisMismatch(..))));
    }

    #[test]
    fn exact_vectors_cannot_leave_rational_bases() {
        let a = m::i::<Q>();
        assert!(matches!(a.to_basis(BasisTag::BPrime), Err(Error::UnsupportedConversion(..))));
    }

    #[test]
    fn annihilator_of_unit_vector_is_its_line() {
        let ann = m::i::<Q>().annihilator().unwrap();
        assert_eq!(ann, vec![m::i()]);
        assert_eq!(ImVector::<Q>::zero(BasisTag::MImaginary).annihilator(), Err(Error::ZeroVector));
    }
}

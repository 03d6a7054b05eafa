//! G2' elements: construction from Stiefel triples, membership checks, and
//! the principal embedding of PSL2(R) acting on binary sextics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::octonion::{b_rescaling, basis_matrix, gram_matrix, BasisTag, ImVector};
use crate::scalar::Scalar;
use crate::sextic::Sextic;

/// A 7x7 matrix acting on Im(O') in a declared basis.
#[derive(Clone, Debug, PartialEq)]
pub struct G2Matrix<F> {
    pub m: Mat<F>,
    pub basis: BasisTag,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct G2Report {
    pub passed: bool,
    /// max |M(e_a × e_b) - M e_a × M e_b| over the 49 basis pairs
    pub cross_residual: f64,
    /// max |M^T G M - G|
    pub q_residual: f64,
}

impl<F: Scalar> G2Matrix<F> {
    pub fn identity(basis: BasisTag) -> Self {
        G2Matrix { m: Mat::identity(7), basis }
    }

    pub fn from_columns(cols: &[ImVector<F>]) -> Self {
        assert_eq!(cols.len(), 7);
        let basis = cols[0].basis;
        G2Matrix { m: Mat::from_cols(&cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>()), basis }
    }

    pub fn apply(&self, v: &ImVector<F>) -> Result<ImVector<F>> {
        if v.basis != self.basis {
            return Err(Error::BasisMismatch(self.basis, v.basis));
        }
        Ok(ImVector::from_slice(&self.m.mul_vec(&v.coords), self.basis))
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.basis != self.basis {
            return Err(Error::BasisMismatch(self.basis, other.basis));
        }
        Ok(G2Matrix { m: self.m.mul(&other.m), basis: self.basis })
    }

    pub fn column(&self, n: usize) -> ImVector<F> {
        ImVector::from_slice(&self.m.col(n), self.basis)
    }

    pub fn det(&self) -> F {
        self.m.det()
    }

    /// Re-express in another basis: P_to^{-1} P_from M P_from^{-1} P_to.
    pub fn to_basis(&self, to: BasisTag) -> Result<Self> {
        if to == self.basis {
            return Ok(self.clone());
        }
        if F::EXACT {
            return Err(Error::UnsupportedConversion(self.basis, to));
        }
        let p_from = basis_matrix(self.basis);
        let p_to = basis_matrix(to);
        let change = p_to.inverse().expect("invertible").mul(&p_from);
        let back = p_from.inverse().expect("invertible").mul(&p_to);
        let mc = change.mul(&self.m.to_c64()).mul(&back);
        let data: Option<Vec<F>> = mc.data.iter().map(|z| F::from_c64(*z)).collect();
        let data = data.ok_or(Error::UnsupportedConversion(self.basis, to))?;
        Ok(G2Matrix { m: Mat { rows: 7, cols: 7, data }, basis: to })
    }

    /// Cross-product preservation on all basis pairs; passes iff that residual is at most `tol`.
    pub fn is_g2(&self, tol: f64) -> Result<G2Report> {
        let mut cross_residual: f64 = 0.0;
        let cols: Vec<ImVector<F>> = (0..7).map(|n| self.column(n)).collect();
        for a in 0..7 {
            for b in 0..7 {
                let ea = ImVector::unit(a, self.basis);
                let eb = ImVector::unit(b, self.basis);
                let lhs = self.apply(&ea.cross(&eb)?)?;
                let rhs = cols[a].cross(&cols[b])?;
                let r = (lhs - rhs).coords.iter().map(|x| x.modulus()).fold(0.0, f64::max);
                cross_residual = cross_residual.max(r);
            }
        }
        let g = gram_matrix(self.basis).data.iter().map(F::from_rational).collect::<Vec<_>>();
        let g = Mat { rows: 7, cols: 7, data: g };
        let q_residual = self.m.transpose().mul(&g).mul(&self.m).sub(&g).max_abs();
        Ok(G2Report { passed: cross_residual <= tol, cross_residual, q_residual })
    }
}

/// The element sending (i, j, k, l, li, lj, lk) to (x, y, xy, z, zx, zy, z(xy)).
pub fn stiefel_to_g2<F: Scalar>(x: &ImVector<F>, y: &ImVector<F>, z: &ImVector<F>, tol: f64) -> Result<G2Matrix<F>> {
    let to_m = |v: &ImVector<F>| v.to_basis(BasisTag::MImaginary);
    let (x, y, z) = (to_m(x)?, to_m(y)?, to_m(z)?);
    let one = F::one();
    let checks = [
        ("q(x) = 1", x.quad() - one.clone()),
        ("q(y) = 1", y.quad() - one.clone()),
        ("q(z) = -1", z.quad() + one),
        ("x.y = 0", x.quad_pair(&y)?),
        ("x.z = 0", x.quad_pair(&z)?),
        ("y.z = 0", y.quad_pair(&z)?),
        ("z.(x×y) = 0", x.triple_form(&y, &z)?),
    ];
    for (name, v) in checks.iter() {
        if !v.is_negligible(tol) {
            return Err(Error::InvalidTriple(format!("{name} violated by {:e}", v.modulus())));
        }
    }
    let xy = x.cross(&y)?;
    let cols = vec![x.clone(), y.clone(), xy.clone(), z.clone(), z.cross(&x)?, z.cross(&y)?, z.cross(&xy)?];
    Ok(G2Matrix::from_columns(&cols))
}

/// An element of PSL2(R), canonicalized so the first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Moebius<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Scalar + PartialOrd> Moebius<F> {
    pub fn new(a: F, b: F, c: F, d: F, tol: f64) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !(det - F::one()).is_negligible(tol) {
            return Err(Error::Domain("Moebius determinant must be 1".into()));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: F, b: F, c: F, d: F) -> Self {
        let first = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(F::one);
        if first < F::zero() {
            Moebius { a: -a, b: -b, c: -c, d: -d }
        } else {
            Moebius { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Moebius { a: F::one(), b: F::zero(), c: F::zero(), d: F::one() }
    }

    pub fn diag(lambda: F) -> Self {
        Self::canonical(lambda.clone(), F::zero(), F::zero(), F::one() / lambda)
    }

    pub fn unipotent(s: F) -> Self {
        Moebius { a: F::one(), b: s, c: F::zero(), d: F::one() }
    }

    pub fn rotation90() -> Self {
        Moebius { a: F::zero(), b: F::one(), c: -F::one(), d: F::zero() }
    }

    pub fn compose(&self, o: &Self) -> Self {
        let m = |x: &F, y: &F| x.clone() * y.clone();
        Self::canonical(
            m(&self.a, &o.a) + m(&self.b, &o.c),
            m(&self.a, &o.b) + m(&self.b, &o.d),
            m(&self.c, &o.a) + m(&self.d, &o.c),
            m(&self.c, &o.b) + m(&self.d, &o.d),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    /// Action on the upper half plane, z -> (az + b)/(cz + d).
    pub fn act_point(&self, z: Complex64) -> Complex64 {
        let t = |x: &F| x.to_c64();
        (t(&self.a) * z + t(&self.b)) / (t(&self.c) * z + t(&self.d))
    }

    pub fn act_sextic(&self, p: &Sextic<F>) -> Sextic<F> {
        p.act(&self.a, &self.b, &self.c, &self.d)
    }
}

/// The principal embedding, as a matrix on monomial coordinates.
pub fn psl2_embed<F: Scalar + PartialOrd>(g: &Moebius<F>) -> G2Matrix<F> {
    let cols: Vec<Vec<F>> = (0..7).map(|k| g.act_sextic(&Sextic::monomial(6, k)).c).collect();
    G2Matrix { m: Mat::from_cols(&cols), basis: BasisTag::MonomialSym6 }
}

/// Monomial-basis matrix rewritten in B': D M D^{-1} with the diagonal B -> B' rescaling.
pub fn monomial_to_bprime(m: &G2Matrix<f64>) -> G2Matrix<f64> {
    assert_eq!(m.basis, BasisTag::MonomialSym6);
    let d = b_rescaling();
    let mut out = m.m.clone();
    for a in 0..7 {
        for b in 0..7 {
            out.set(a, b, m.m.get(a, b) * d[a] / d[b]);
        }
    }
    G2Matrix { m: out, basis: BasisTag::BPrime }
}

/// Generator images of the principal embedding written directly in B'.
pub mod generators {
    use super::*;

    pub fn diag(lambda: f64) -> Mat<f64> {
        Mat::diag(&[6, 4, 2, 0, -2, -4, -6].map(|e| lambda.powi(e)))
    }

    /// The nilpotent whose exponential is the unipotent image.
    pub fn nilpotent() -> Mat<f64> {
        let sup = [6f64.sqrt(), 10f64.sqrt(), -(12f64.sqrt()), -(12f64.sqrt()), 10f64.sqrt(), 6f64.sqrt()];
        let mut n = Mat::zeros(7, 7);
        for (k, v) in sup.into_iter().enumerate() {
            n.set(k, k + 1, v);
        }
        n
    }

    /// exp(sN) by its finite series (N^7 = 0).
    pub fn unipotent(s: f64) -> Mat<f64> {
        let n = nilpotent().scale(&s);
        let mut out = Mat::identity(7);
        let mut term = Mat::identity(7);
        for k in 1..7 {
            term = term.mul(&n).scale(&(1.0 / k as f64));
            out = out.add(&term);
        }
        out
    }

    pub fn rotation() -> Mat<f64> {
        let mut m = Mat::zeros(7, 7);
        for k in 0..7 {
            m.set(k, 6 - k, if k % 2 == 0 { 1.0 } else { -1.0 });
        }
        m
    }
}

/// Residual of a float matrix against the identity.
pub fn distance_to_identity(m: &Mat<f64>) -> f64 {
    m.sub(&Mat::identity(m.rows)).max_abs()
}

impl G2Matrix<f64> {
    pub fn max_diff(&self, other: &Mat<f64>) -> f64 {
        self.m.sub(other).max_abs()
    }
}

/// Complex-linear map sending m_n to the given vectors (all in the M basis).
pub fn complex_frame_matrix(cols: &[ImVector<Complex64>]) -> G2Matrix<Complex64> {
    G2Matrix::from_columns(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::m;
    use crate::scalar::{int, Rational};

    type Q = Rational;

    #[test]
    fn stiefel_identity_and_reflection() {
        let id = stiefel_to_g2(&m::i::<Q>(), &m::j(), &m::l(), 0.0).unwrap();
        assert_eq!(id.m, Mat::identity(7));
        let refl = stiefel_to_g2(&m::i::<Q>(), &m::j(), &-m::l(), 0.0).unwrap();
        let d: Vec<Q> = [1, 1, 1, -1, -1, -1, -1].iter().map(|&n| int(n)).collect();
        assert_eq!(refl.m, Mat::diag(&d));
    }

    #[test]
    fn invalid_triple_rejected() {
        let r = stiefel_to_g2(&m::i::<Q>(), &m::i(), &m::l(), 0.0);
        assert!(matches!(r, Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn non_member_fails() {
        let mut d = vec![1.0; 7];
        d[0] = 2.0;
        d[6] = 0.5;
        let g = G2Matrix { m: Mat::diag(&d), basis: BasisTag::MImaginary };
        let rep = g.is_g2(1e-10).unwrap();
        assert!(!rep.passed);
        let id = G2Matrix::<f64>::identity(BasisTag::MImaginary).is_g2(1e-10).unwrap();
        assert!(id.passed && id.cross_residual == 0.0);
    }

    #[test]
    fn moebius_sign_canonical() {
        let g = Moebius::<Q>::new(int(-1), int(0), int(0), int(-1), 0.0).unwrap();
        assert_eq!(g, Moebius::identity());
    }
}

//! Small dense linear algebra over any [`Scalar`].
//!
//! Kernels are exact (reduced row echelon form) for rationals and use
//! singular-value thresholding for doubles.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{Rational, RealScalar, Scalar};

/// Default relative threshold on singular values for float kernels.
pub const SVD_REL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Scalar> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diag(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_cols(cols: &[Vec<F>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    acc = acc + self.get(i, j).clone() * x.clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a * s.clone())
    }

    pub fn map(&self, f: impl Fn(F) -> F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().cloned().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(F, F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().cloned().zip(other.data.iter().cloned()).map(|(a, b)| f(a, b)).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> Mat<Complex64> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.to_c64()).collect() }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by Gaussian elimination (pivot on largest modulus).
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for k in 0..n {
            let Some(p) = pivot_row(&a, k, k) else { return F::zero() };
            if p != k {
                swap_rows(&mut a, p, k);
                det = -det;
            }
            let piv = a.get(k, k).clone();
            det = det * piv.clone();
            for i in k + 1..n {
                let f = a.get(i, k).clone() / piv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(k, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let rhs: Vec<Vec<F>> = (0..n).map(|j| (0..n).map(|i| if i == j { F::one() } else { F::zero() }).collect()).collect();
        let cols: Option<Vec<Vec<F>>> = rhs.iter().map(|b| solve(self, b)).collect();
        cols.map(|c| Self::from_cols(&c))
    }
}

fn pivot_row<F: Scalar>(a: &Mat<F>, col: usize, start: usize) -> Option<usize> {
    if F::EXACT {
        (start..a.rows).find(|&i| !a.get(i, col).is_zero())
    } else {
        let (best, val) = (start..a.rows).map(|i| (i, a.get(i, col).modulus())).fold((start, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val > 0.0 {
            Some(best)
        } else {
            None
        }
    }
}

fn swap_rows<F: Scalar>(a: &mut Mat<F>, i: usize, j: usize) {
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}

/// Solve a square system; `None` when singular.
pub fn solve<F: Scalar>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut m = a.hstack(&Mat::from_cols(&[b.to_vec()]));
    for k in 0..n {
        let p = pivot_row(&m, k, k)?;
        swap_rows(&mut m, p, k);
        let piv = m.get(k, k).clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m.get(i, k).clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..=n {
                let v = m.get(i, j).clone() - f.clone() * m.get(k, j).clone();
                m.set(i, j, v);
            }
        }
    }
    Some((0..n).map(|i| m.get(i, n).clone() / m.get(i, i).clone()).collect())
}

/// Reduced row echelon form with exact zero tests; returns the pivot columns.
pub fn rref(m: &Mat<Rational>) -> (Mat<Rational>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        swap_rows(&mut a, p, r);
        let inv = Rational::one() / a.get(r, c).clone();
        for j in c..a.cols {
            let v = a.get(r, j).clone() * inv.clone();
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn exact_null_space(m: &Mat<Rational>) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

fn svd_null_space_real(m: &Mat<f64>, rel_tol: f64) -> Vec<Vec<f64>> {
    let n = m.cols;
    let rows = m.rows.max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for i in 0..m.rows {
        for j in 0..n {
            a[(i, j)] = *m.get(i, j);
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    (0..n).filter(|&k| smax == 0.0 || svd.singular_values[k] <= rel_tol * smax).map(|k| (0..n).map(|j| vt[(k, j)]).collect()).collect()
}

fn svd_null_space_complex(m: &Mat<Complex64>, rel_tol: f64) -> Vec<Vec<Complex64>> {
    let n = m.cols;
    let rows = m.rows.max(n);
    let mut a = DMatrix::<Complex64>::zeros(rows, n);
    for i in 0..m.rows {
        for j in 0..n {
            a[(i, j)] = *m.get(i, j);
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    (0..n).filter(|&k| smax == 0.0 || svd.singular_values[k] <= rel_tol * smax).map(|k| (0..n).map(|j| vt[(k, j)].conj()).collect()).collect()
}

/// Singular values of a real matrix, descending.
pub fn singular_values(m: &Mat<f64>) -> Vec<f64> {
    let a = DMatrix::<f64>::from_row_slice(m.rows, m.cols, &m.data);
    let mut s: Vec<f64> = a.singular_values().iter().cloned().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

/// Kernel dispatch per scalar model.
pub trait NullSpace: Scalar {
    fn null_space(m: &Mat<Self>, rel_tol: f64) -> Vec<Vec<Self>>;
}

impl NullSpace for Rational {
    fn null_space(m: &Mat<Self>, _rel_tol: f64) -> Vec<Vec<Self>> {
        exact_null_space(m)
    }
}

impl NullSpace for f64 {
    fn null_space(m: &Mat<Self>, rel_tol: f64) -> Vec<Vec<Self>> {
        svd_null_space_real(m, rel_tol)
    }
}

impl NullSpace for Complex64 {
    fn null_space(m: &Mat<Self>, rel_tol: f64) -> Vec<Vec<Self>> {
        svd_null_space_complex(m, rel_tol)
    }
}

pub fn null_space<F: NullSpace>(m: &Mat<F>) -> Vec<Vec<F>> {
    F::null_space(m, SVD_REL_TOL)
}

pub fn rank<F: NullSpace>(m: &Mat<F>) -> usize {
    m.cols - null_space(m).len()
}

/// Rank of the span of a list of vectors.
pub fn span_rank<F: NullSpace>(vs: &[Vec<F>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&Mat::from_rows(vs))
}

/// True when span(a) == span(b).
pub fn same_span<F: NullSpace>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    ra == rb && span_rank(&both) == ra
}

/// True when v lies in span(basis).
pub fn in_span<F: NullSpace>(basis: &[Vec<F>], v: &[F]) -> bool {
    let mut both = basis.to_vec();
    both.push(v.to_vec());
    span_rank(&both) == span_rank(basis)
}

/// Inertia (positive, negative, zero) of a symmetric matrix.
pub trait Inertia: RealScalar {
    fn inertia(gram: &Mat<Self>, tol: f64) -> (usize, usize, usize);
}

impl Inertia for Rational {
    fn inertia(gram: &Mat<Self>, _tol: f64) -> (usize, usize, usize) {
        exact_inertia(gram)
    }
}

impl Inertia for f64 {
    fn inertia(gram: &Mat<Self>, tol: f64) -> (usize, usize, usize) {
        let n = gram.rows;
        let a = DMatrix::<f64>::from_fn(n, n, |i, j| 0.5 * (gram.get(i, j) + gram.get(j, i)));
        let ev = a.symmetric_eigenvalues();
        let scale = ev.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0);
        let (mut p, mut m, mut z) = (0, 0, 0);
        for &e in ev.iter() {
            if e.abs() <= tol * scale {
                z += 1;
            } else if e > 0.0 {
                p += 1;
            } else {
                m += 1;
            }
        }
        (p, m, z)
    }
}

/// Sylvester inertia by exact symmetric congruence.
fn exact_inertia(gram: &Mat<Rational>) -> (usize, usize, usize) {
    let n = gram.rows;
    let mut a = gram.clone();
    let (mut p, mut m) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a.get(i, i).is_zero()) {
            sym_swap(&mut a, i, k);
        } else if let Some((i, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero()) {
            // a_ii = a_jj = 0 and a_ij != 0: adding e_j to e_i gives a nonzero diagonal.
            sym_add(&mut a, i, j);
            sym_swap(&mut a, i, k);
        } else {
            break;
        }
        let piv = a.get(k, k).clone();
        if piv > Rational::zero() {
            p += 1;
        } else {
            m += 1;
        }
        for r in k + 1..n {
            let f = a.get(r, k).clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = a.get(r, c).clone() - f.clone() * a.get(k, c).clone();
                a.set(r, c, v);
            }
            for c in k..n {
                let v = a.get(c, r).clone() - f.clone() * a.get(c, k).clone();
                a.set(c, r, v);
            }
        }
        k += 1;
    }
    (p, m, n - p - m)
}

fn sym_swap(a: &mut Mat<Rational>, i: usize, j: usize) {
    if i == j {
        return;
    }
    swap_rows(a, i, j);
    for r in 0..a.rows {
        a.data.swap(r * a.cols + i, r * a.cols + j);
    }
}

fn sym_add(a: &mut Mat<Rational>, i: usize, j: usize) {
    for c in 0..a.cols {
        let v = a.get(i, c).clone() + a.get(j, c).clone();
        a.set(i, c, v);
    }
    for r in 0..a.rows {
        let v = a.get(r, i).clone() + a.get(r, j).clone();
        a.set(r, i, v);
    }
}

/// Gram matrix of vectors under a bilinear form given by `pair`.
pub fn gram<F: Scalar, V>(vs: &[V], pair: impl Fn(&V, &V) -> F) -> Mat<F> {
    let n = vs.len();
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, pair(&vs[i], &vs[j]));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn exact_kernel_in_rref_order() {
        let m = Mat::from_rows(&[vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]]);
        let k = null_space(&m);
        assert_eq!(k, vec![vec![int(-2), int(1), int(0)], vec![int(-3), int(0), int(1)]]);
    }

    #[test]
    fn float_kernel_threshold() {
        let m = Mat::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0 + 1e-14]]);
        assert_eq!(null_space(&m).len(), 1);
        let m = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-6]]);
        assert_eq!(null_space(&m).len(), 0);
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let g = Mat::from_rows(&[vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(Rational::inertia(&g, 0.0), (1, 1, 0));
        let g = Mat::from_rows(&[vec![rat(1, 2), int(0), int(0)], vec![int(0), int(0), int(0)], vec![int(0), int(0), int(-3)]]);
        assert_eq!(Rational::inertia(&g, 0.0), (1, 1, 1));
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_rows(&[vec![int(2), int(1)], vec![int(7), int(4)]]);
        assert_eq!(m.det(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }
}

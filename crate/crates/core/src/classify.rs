//! Root-pattern classification of real binary sextics: membership in the
//! set K of null sextics with a real root of multiplicity >= 4, its strata,
//! the sector of the complement and the predicted number of preimages under
//! the developing map of the Fuchsian curve.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fuchsian::{f_direction, HPoint};
use crate::g2::Moebius;
use crate::poly::{count_real_roots, squarefree_decomposition, Poly};
use crate::scalar::{Rational, RealScalar};
use crate::sextic::{q6, q6_pair, Sextic};

/// Default cluster tolerance for roots of float input.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Relative tolerance below which the projection onto the tangent line counts as zero.
pub const PROJ_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Classification {
    /// Q6(P) = 0. The preimage count is only meaningful for null P.
    pub null: bool,
    /// Multiplicities of the distinct real roots on RP^1, descending.
    pub real_multiplicities: Vec<usize>,
    /// Multiplicities of the distinct complex-conjugate pairs, descending.
    pub complex_multiplicities: Vec<usize>,
    pub gw_member: bool,
    pub k_stratum: Option<u8>,
    pub omega_sector: Option<usize>,
    pub predicted_preimages: usize,
    /// Base points z (Im z > 0) of the predicted preimages.
    #[serde(skip)]
    pub preimage_points: Vec<Complex64>,
}

fn k_stratum(real: &[usize], complex: &[usize]) -> Option<u8> {
    match (real, complex) {
        ([6], []) => Some(1),
        ([5, 1], []) => Some(2),
        ([4, 2], []) => Some(3),
        ([4, 1, 1], []) => Some(4),
        ([4], [1]) => Some(5),
        _ => None,
    }
}

/// The point z with ĝ(z) vanishing at t = X/Y = t0, i.e. z = -1/t0.
fn base_point(t0: Complex64) -> Complex64 {
    let z = -1.0 / t0;
    if z.im < 0.0 {
        z.conj()
    } else {
        z
    }
}

/// Whether the tangent-line projection of P at the base point z is nonzero.
///
/// P is first moved so that z goes to i; the pairing is then compared with
/// the SU(2)-invariant norms, which makes the test independent of the
/// Moebius representative.
fn projection_nonzero(p: &Sextic<f64>, z: Complex64) -> bool {
    let s = z.im.sqrt();
    let moved = Moebius { a: 1.0 / s, b: -z.re / s, c: 0.0, d: s }.act_sextic(p);
    let f = f_direction(&HPoint::<f64>::i());
    let norm = |v: &Sextic<f64>| v.c.iter().enumerate().map(|(k, c)| c * c / BINOM6[k]).sum::<f64>().sqrt();
    q6_pair(&moved, &f).abs() > PROJ_TOL * norm(&moved) * norm(&f)
}

const BINOM6: [f64; 7] = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];

fn assemble(null: bool, mut real: Vec<usize>, pairs: Vec<(usize, Complex64)>, p: &Sextic<f64>) -> Classification {
    real.sort_unstable_by(|a, b| b.cmp(a));
    let mut complex: Vec<usize> = pairs.iter().map(|(m, _)| *m).collect();
    complex.sort_unstable_by(|a, b| b.cmp(a));
    let gw_member = real.first().is_some_and(|&m| m >= 4);
    let k = if gw_member { k_stratum(&real, &complex) } else { None };
    let squarefree = real.iter().chain(&complex).all(|&m| m == 1);
    let omega_sector = (!gw_member && squarefree).then_some(complex.len());
    let preimage_points: Vec<Complex64> = pairs.iter().filter(|(m, _)| *m == 1).map(|(_, t0)| base_point(*t0)).filter(|z| projection_nonzero(p, *z)).collect();
    Classification {
        null,
        real_multiplicities: real,
        complex_multiplicities: complex,
        gw_member,
        k_stratum: k,
        omega_sector,
        predicted_preimages: preimage_points.len(),
        preimage_points,
    }
}

fn companion_roots(monic_desc: &[f64]) -> Vec<Complex64> {
    // monic_desc = [1, a_{n-1}, ..., a_0]
    let n = monic_desc.len() - 1;
    if n == 0 {
        return vec![];
    }
    // The unshifted Schur iteration can stall on symmetric root patterns; a
    // Taylor shift t -> t + s moves the roots without changing their structure.
    for s in [0.0, 0.3125, -0.6875, 1.1875] {
        let shifted = taylor_shift(monic_desc, s);
        let mut m = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            m[(0, k)] = -shifted[k + 1];
            if k + 1 < n {
                m[(k + 1, k)] = 1.0;
            }
        }
        if let Some(schur) = m.try_schur(f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().map(|z| z + s).collect();
        }
    }
    panic!("companion eigenvalues did not converge")
}

/// Coefficients (descending) of p(t + s).
fn taylor_shift(desc: &[f64], s: f64) -> Vec<f64> {
    let mut c = desc.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in 1..n - i {
            c[j] += s * c[j - 1];
        }
    }
    c
}

/// Roots of a squarefree rational polynomial with positive imaginary part.
fn upper_roots(a: &Poly) -> Vec<Complex64> {
    let c = a.monic().to_f64();
    let desc: Vec<f64> = c.iter().rev().copied().collect();
    companion_roots(&desc).into_iter().filter(|z| z.im > 0.0).collect()
}

/// Exact classification of a rational sextic.
pub fn sextic_classify(p: &Sextic<Rational>) -> Result<Classification> {
    if p.degree() != 6 {
        return Err(Error::Shape(format!("expected a sextic, got degree {}", p.degree())));
    }
    if p.is_zero() {
        return Err(Error::Degenerate("zero sextic".into()));
    }
    let null = q6(p).is_zero();
    // P(t, 1) = sum c_k t^(6-k); Y^m divides P for m = first nonzero index.
    let m_inf = p.c.iter().position(|c| !c.is_zero()).expect("nonzero");
    let dehom = Poly::new(p.c.iter().rev().cloned().collect());
    let mut real = Vec::new();
    let mut pairs = Vec::new();
    if m_inf > 0 {
        real.push(m_inf);
    }
    for (k, a) in squarefree_decomposition(&dehom).iter().enumerate() {
        let mult = k + 1;
        let nr = count_real_roots(a);
        real.extend(std::iter::repeat(mult).take(nr));
        let np = (a.degree() - nr) / 2;
        if np > 0 {
            let roots = if mult == 1 { upper_roots(a) } else { vec![Complex64::zero(); np] };
            pairs.extend(roots.into_iter().map(|z| (mult, z)));
        }
    }
    Ok(assemble(null, real, pairs, &p.to_f64()))
}

/// Classification of a float sextic through companion eigenvalues.
///
/// A group of k eigenvalues is merged into one root of multiplicity k when
/// its diameter is at most `cluster_tol^(1/k) (1 + |centroid|)`, which allows
/// for the natural eps^(1/k) splitting of a k-fold root.
pub fn sextic_classify_f64(p: &Sextic<f64>, cluster_tol: f64) -> Result<Classification> {
    if p.degree() != 6 {
        return Err(Error::Shape(format!("expected a sextic, got degree {}", p.degree())));
    }
    let scale = p.max_modulus();
    if scale == 0.0 {
        return Err(Error::Degenerate("zero sextic".into()));
    }
    let null = q6(p).abs() <= cluster_tol * scale * scale;
    let m_inf = p.c.iter().position(|c| c.abs() > cluster_tol * scale).expect("nonzero");
    let desc: Vec<f64> = p.c[m_inf..].to_vec();
    let lead = desc[0];
    let roots = companion_roots(&desc.iter().map(|c| c / lead).collect::<Vec<_>>());
    let clusters = cluster_roots(roots, cluster_tol);
    let mut real = Vec::new();
    let mut pairs = Vec::new();
    if m_inf > 0 {
        real.push(m_inf);
    }
    for c in &clusters {
        let z = c.iter().sum::<Complex64>() / c.len() as f64;
        let k = c.len();
        if z.im.abs() <= cluster_tol.powf(1.0 / k as f64) * (1.0 + z.norm()) {
            real.push(k);
        } else if z.im > 0.0 {
            pairs.push((k, z));
        }
    }
    Ok(assemble(null, real, pairs, p))
}

/// Groups eigenvalues into roots, largest groups first: a group of k is
/// accepted when its diameter is at most `tol^(1/k) (1 + |centroid|)`.
fn cluster_roots(mut roots: Vec<Complex64>, tol: f64) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    for k in (2..=roots.len()).rev() {
        loop {
            let mut found = None;
            for (i, r) in roots.iter().enumerate() {
                if roots.len() < k {
                    break;
                }
                let mut idx: Vec<usize> = (0..roots.len()).collect();
                idx.sort_by(|&a, &b| (roots[a] - r).norm().partial_cmp(&(roots[b] - r).norm()).expect("finite roots"));
                idx.truncate(k);
                let group: Vec<Complex64> = idx.iter().map(|&n| roots[n]).collect();
                let c = group.iter().sum::<Complex64>() / k as f64;
                let diam = group.iter().flat_map(|a| group.iter().map(move |b| (a - b).norm())).fold(0.0, f64::max);
                if diam <= tol.powf(1.0 / k as f64) * (1.0 + c.norm()) {
                    found = Some((i, idx));
                    break;
                }
            }
            match found {
                Some((_, mut idx)) => {
                    idx.sort_unstable_by(|a, b| b.cmp(a));
                    out.push(idx.iter().map(|&n| roots.remove(n)).collect());
                }
                None => break,
            }
        }
    }
    out.extend(roots.into_iter().map(|r| vec![r]));
    out
}

/// The five K-strata representatives X^6, X^5 Y, X^4 Y^2, X^4 Y (X - Y), X^4 (X^2 + Y^2).
pub fn k_representatives<F: RealScalar>() -> [Sextic<F>; 5] {
    [
        Sextic::from_ints(&[1, 0, 0, 0, 0, 0, 0]),
        Sextic::from_ints(&[0, 1, 0, 0, 0, 0, 0]),
        Sextic::from_ints(&[0, 0, 1, 0, 0, 0, 0]),
        Sextic::from_ints(&[0, 1, -1, 0, 0, 0, 0]),
        Sextic::from_ints(&[1, 0, 1, 0, 0, 0, 0]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sextic::Form;

    type Q = Rational;

    #[test]
    fn representatives_have_their_strata() {
        for (n, p) in k_representatives::<Q>().iter().enumerate() {
            let c = sextic_classify(p).unwrap();
            assert!(c.gw_member, "{n}");
            assert_eq!(c.k_stratum, Some(n as u8 + 1));
            assert_eq!(c.predicted_preimages, if n == 4 { 1 } else { 0 });
        }
    }

    #[test]
    fn three_quadratics() {
        let p = Form::<Q>::from_ints(&[1, 0, 1]).mul(&Form::from_ints(&[2, 0, 1])).mul(&Form::from_ints(&[1, 0, 3]));
        let c = sextic_classify(&p).unwrap();
        assert_eq!(c.complex_multiplicities, vec![1, 1, 1]);
        assert!(!c.gw_member);
        assert_eq!(c.predicted_preimages, 3);
        assert_eq!(c.omega_sector, Some(3));
        // Q6 = 24, so [P] is not itself a point of Ein.
        assert!(!c.null);
    }

    #[test]
    fn float_route_matches_exact_on_representatives() {
        for p in k_representatives::<f64>() {
            let e = sextic_classify(&Form::new(p.c.iter().map(|&x| crate::scalar::rational_from_f64(x)).collect())).unwrap();
            let f = sextic_classify_f64(&p, CLUSTER_TOL).unwrap();
            assert_eq!(e.k_stratum, f.k_stratum);
            assert_eq!(e.predicted_preimages, f.predicted_preimages);
        }
    }

    #[test]
    fn zero_is_rejected() {
        assert!(sextic_classify(&Form::<Q>::zero(6)).is_err());
    }
}

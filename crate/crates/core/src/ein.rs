//! Null geometry of Ein^{2,3}: null lines and rays, annihilator planes,
//! (S^1 x S^1 x R_+)-families and their splittings, and (3,2)-planes.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{null_space, span_rank, Inertia, Mat, NullSpace};
use crate::octonion::{BasisTag, ImVector};
use crate::scalar::{rat, Rational, RealScalar, Scalar};

/// Relative tolerance for float null checks: |q(v)| <= NULL_TOL * |v|^2.
pub const NULL_TOL: f64 = 1e-12;

fn norm2<F: Scalar>(v: &ImVector<F>) -> f64 {
    v.coords.iter().map(|c| c.modulus().powi(2)).sum()
}

fn largest_coord<F: Scalar>(v: &ImVector<F>) -> usize {
    let mut best = 0;
    for n in 1..7 {
        if v.coords[n].modulus() > v.coords[best].modulus() {
            best = n;
        }
    }
    best
}

/// True when q(v) vanishes, exactly or up to [`NULL_TOL`].
pub fn is_null<F: Scalar>(v: &ImVector<F>) -> bool {
    v.quad().is_negligible(NULL_TOL * norm2(v))
}

fn check_null<F: Scalar>(v: &ImVector<F>) -> Result<()> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !is_null(v) {
        return Err(Error::NotNull(v.quad().to_c64().re));
    }
    Ok(())
}

/// A point of Ein^{2,3}, stored with its largest coordinate scaled to +1.
#[derive(Clone, Debug, PartialEq)]
pub struct NullLine<F> {
    pub rep: ImVector<F>,
}

impl<F: Scalar> NullLine<F> {
    pub fn new(v: ImVector<F>) -> Result<Self> {
        check_null(&v)?;
        let p = largest_coord(&v);
        let s = F::one() / v.coords[p].clone();
        Ok(NullLine { rep: v.scale(&s) })
    }

    /// For a vector summed from terms of Euclidean size up to `scale`: the
    /// null check is |q(v)| <= NULL_TOL * scale^2, the rounding level of the sum.
    pub fn from_sum(v: ImVector<F>, scale: f64) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !v.quad().is_negligible(NULL_TOL * scale.max(norm2(&v).sqrt()).powi(2)) {
            return Err(Error::NotNull(v.quad().to_c64().re));
        }
        let p = largest_coord(&v);
        let s = F::one() / v.coords[p].clone();
        Ok(NullLine { rep: v.scale(&s) })
    }

    pub fn basis(&self) -> BasisTag {
        self.rep.basis
    }

    /// Equality of lines; exact for rationals.
    pub fn same(&self, other: &Self, tol: f64) -> bool {
        self.rep.basis == other.rep.basis && self.rep.coords.iter().zip(&other.rep.coords).all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol))
    }

    /// True when `v` spans this line.
    pub fn contains(&self, v: &ImVector<F>, tol: f64) -> bool {
        match NullLine::new(v.clone()) {
            Ok(l) => self.same(&l, tol),
            Err(_) => false,
        }
    }
}

/// A null ray: a null vector up to positive scaling, stored with unit sup-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct NullRay<F> {
    pub rep: ImVector<F>,
}

impl<F: RealScalar> NullRay<F> {
    pub fn new(v: ImVector<F>) -> Result<Self> {
        check_null(&v)?;
        let p = largest_coord(&v);
        let s = F::one() / v.coords[p].abs_val();
        Ok(NullRay { rep: v.scale(&s) })
    }

    pub fn line(&self) -> NullLine<F> {
        NullLine::new(self.rep.clone()).expect("rays are null")
    }
}

/// Whether l1 + l2 has signature (1,1), i.e. q(l1, l2) != 0.
pub fn transverse<F: Scalar>(l1: &NullLine<F>, l2: &NullLine<F>, tol: f64) -> Result<bool> {
    let p = l1.rep.quad_pair(&l2.rep)?;
    let scale = (norm2(&l1.rep) * norm2(&l2.rep)).sqrt();
    Ok(!p.is_negligible(tol * scale))
}

/// The annihilator plane of a null line together with the distribution Ann(l)/l.
#[derive(Clone, Debug)]
pub struct AnnPlane<F> {
    pub plane: Vec<ImVector<F>>,
    pub distribution: Vec<ImVector<F>>,
}

pub fn ann_plane<F: Scalar + NullSpace>(l: &NullLine<F>) -> Result<AnnPlane<F>> {
    check_null(&l.rep)?;
    let plane = l.rep.annihilator()?;
    if plane.len() != 3 {
        return Err(Error::Degenerate(format!("annihilator of a null line has dimension {}", plane.len())));
    }
    // Reduce modulo l at the coordinate where l is 1.
    let p = largest_coord(&l.rep);
    let mut distribution: Vec<ImVector<F>> = Vec::new();
    for w in &plane {
        let r = w.clone() - l.rep.scale(&w.coords[p]);
        if r.coords.iter().all(|c| c.is_negligible(1e-12)) {
            continue;
        }
        let mut cand = distribution.clone();
        cand.push(r.clone());
        if span_rank(&cand.iter().map(|v| v.to_vec()).collect::<Vec<_>>()) == cand.len() {
            distribution.push(r);
        }
        if distribution.len() == 2 {
            break;
        }
    }
    Ok(AnnPlane { plane, distribution })
}

/// An (S^1 x S^1 x R_+)-family record: a unit spacelike x̂, a negative definite
/// plane T and a positive definite plane N, each with an orthonormal basis.
#[derive(Clone, Debug)]
pub struct RTFamily<F> {
    pub xhat: ImVector<F>,
    pub t: [ImVector<F>; 2],
    pub n: [ImVector<F>; 2],
}

/// Components of a vector along x̂, T and N, plus what is left over.
#[derive(Clone, Debug)]
pub struct FamilyProjection<F> {
    pub ell: F,
    pub t: [F; 2],
    pub n: [F; 2],
    pub rest: ImVector<F>,
}

impl<F: Scalar> RTFamily<F> {
    /// Validates orthonormality and the closure x̂ × T = T, x̂ × N = N.
    pub fn new(xhat: ImVector<F>, t: [ImVector<F>; 2], n: [ImVector<F>; 2], tol: f64) -> Result<Self> {
        let fam = RTFamily { xhat, t, n };
        let all = fam.frame();
        let signs = [1, -1, -1, 1, 1];
        for a in 0..5 {
            for b in 0..5 {
                let want = if a == b { F::from_i64(signs[a]) } else { F::zero() };
                let got = all[a].quad_pair(&all[b])?;
                if !(got - want).is_negligible(tol) {
                    return Err(Error::Degenerate(format!("family frame is not orthonormal at ({a}, {b})")));
                }
            }
        }
        for plane in [&fam.t, &fam.n] {
            for v in plane.iter() {
                let w = fam.xhat.cross(v)?;
                let rest = w.clone() - fam.project_plane(plane, &w)?;
                if !rest.coords.iter().all(|c| c.is_negligible(tol)) {
                    return Err(Error::Degenerate("x̂ × plane leaves the plane".into()));
                }
            }
        }
        Ok(fam)
    }

    /// (x̂, t1, t2, n1, n2).
    pub fn frame(&self) -> [ImVector<F>; 5] {
        [self.xhat.clone(), self.t[0].clone(), self.t[1].clone(), self.n[0].clone(), self.n[1].clone()]
    }

    fn project_plane(&self, plane: &[ImVector<F>; 2], w: &ImVector<F>) -> Result<ImVector<F>> {
        let mut out = ImVector::zero(w.basis);
        for v in plane {
            let c = w.quad_pair(v)? / v.quad();
            out = out + v.scale(&c);
        }
        Ok(out)
    }

    pub fn project(&self, v: &ImVector<F>) -> Result<FamilyProjection<F>> {
        let ell = v.quad_pair(&self.xhat)?;
        let t = [-v.quad_pair(&self.t[0])?, -v.quad_pair(&self.t[1])?];
        let n = [v.quad_pair(&self.n[0])?, v.quad_pair(&self.n[1])?];
        let mut rest = v.clone() - self.xhat.scale(&ell);
        for k in 0..2 {
            rest = rest - self.t[k].scale(&t[k]) - self.n[k].scale(&n[k]);
        }
        Ok(FamilyProjection { ell, t, n, rest })
    }

    /// x̂ + rho (a t1 + b t2) + r (c n1 + d n2), with a^2 + b^2 = c^2 + d^2 = 1 and rho^2 = r^2 + 1.
    pub fn lift(&self, ut: (F, F), un: (F, F), r: F, rho: F, tol: f64) -> Result<ImVector<F>> {
        let unit = |(a, b): &(F, F)| (a.clone() * a.clone() + b.clone() * b.clone() - F::one()).is_negligible(tol);
        if !unit(&ut) || !unit(&un) {
            return Err(Error::Domain("family directions must be unit".into()));
        }
        if !(rho.clone() * rho.clone() - r.clone() * r.clone() - F::one()).is_negligible(tol) {
            return Err(Error::Domain("rho^2 must equal r^2 + 1".into()));
        }
        let u_t = self.t[0].scale(&ut.0) + self.t[1].scale(&ut.1);
        let u_n = self.n[0].scale(&un.0) + self.n[1].scale(&un.1);
        Ok(self.xhat.clone() + u_t.scale(&rho) + u_n.scale(&r))
    }

    /// Membership of a null line in the family: l lies in U = x̂ + T + N and all
    /// three projections are nonzero.
    pub fn contains(&self, l: &NullLine<F>, tol: f64) -> Result<bool> {
        let p = self.project(&l.rep)?;
        let scale = norm2(&l.rep).sqrt();
        let zero = |x: &F| x.is_negligible(tol * scale);
        let sq = |a: &[F; 2]| a[0].clone() * a[0].clone() + a[1].clone() * a[1].clone();
        let in_u = p.rest.coords.iter().all(zero);
        Ok(in_u && !zero(&p.ell) && !sq(&p.t).is_negligible((tol * scale).powi(2)) && !sq(&p.n).is_negligible((tol * scale).powi(2)))
    }
}

impl RTFamily<f64> {
    /// [x̂ + sqrt(r^2+1) u_T(theta) + r u_N(alpha)].
    pub fn point(&self, theta: f64, alpha: f64, r: f64) -> Result<NullRay<f64>> {
        if r <= 0.0 {
            return Err(Error::Domain(format!("family radius must be positive, got {r}")));
        }
        let v = self.lift((theta.cos(), theta.sin()), (alpha.cos(), alpha.sin()), r, (r * r + 1.0).sqrt(), 1e-12)?;
        NullRay::new(v)
    }

    /// Builds a family from arbitrary spanning pairs by Gram-Schmidt.
    pub fn orthonormalized(xhat: &ImVector<f64>, t: [&ImVector<f64>; 2], n: [&ImVector<f64>; 2], tol: f64) -> Result<Self> {
        let unit = |v: &ImVector<f64>, sign: f64| -> Result<ImVector<f64>> {
            let q = v.quad();
            if q * sign <= 0.0 {
                return Err(Error::Degenerate("plane has the wrong signature".into()));
            }
            Ok(v.scale(&(1.0 / (q * sign).sqrt())))
        };
        let gs = |pair: [&ImVector<f64>; 2], sign: f64| -> Result<[ImVector<f64>; 2]> {
            let a = unit(pair[0], sign)?;
            let b = pair[1].clone() - a.scale(&(pair[1].quad_pair(&a)? / a.quad()));
            Ok([a, unit(&b, sign)?])
        };
        RTFamily::new(unit(xhat, 1.0)?, gs(t, -1.0)?, gs(n, 1.0)?, tol)
    }
}

impl<F: Scalar> RTFamily<F> {
    /// The model family x̂ = i, T = span(l, li), N = span(j, k).
    pub fn model() -> Self {
        let e = |n| ImVector::unit(n, BasisTag::MImaginary);
        RTFamily { xhat: e(0), t: [e(3), e(4)], n: [e(1), e(2)] }
    }
}

/// A 5-dimensional subspace expected to have signature (3,2).
#[derive(Clone, Debug)]
pub struct OsculatingPlane<F> {
    pub basis: Vec<ImVector<F>>,
}

impl<F: Inertia + NullSpace> OsculatingPlane<F> {
    /// Checks that the five vectors span a (3,2)-plane.
    pub fn new(basis: Vec<ImVector<F>>, tol: f64) -> Result<Self> {
        let plane = OsculatingPlane { basis };
        let sig = plane.signature(tol)?;
        if sig != (3, 2, 0) {
            return Err(Error::Degenerate(format!("expected signature (3,2), got {sig:?}")));
        }
        Ok(plane)
    }

    /// No signature check; used to probe degenerate inputs.
    pub fn unchecked(basis: Vec<ImVector<F>>) -> Self {
        OsculatingPlane { basis }
    }

    pub fn signature(&self, tol: f64) -> Result<(usize, usize, usize)> {
        if self.basis.len() != 5 {
            return Err(Error::Shape(format!("osculating plane needs 5 vectors, got {}", self.basis.len())));
        }
        let g = gram_of(&self.basis)?;
        Ok(F::inertia(&g, tol))
    }
}

fn gram_of<F: Scalar>(vs: &[ImVector<F>]) -> Result<Mat<F>> {
    let n = vs.len();
    let mut g = Mat::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            g.set(a, b, vs[a].quad_pair(&vs[b])?);
        }
    }
    Ok(g)
}

/// q-orthogonal complement of a span, as a basis.
pub fn orthogonal_complement<F: NullSpace>(vs: &[ImVector<F>]) -> Result<Vec<ImVector<F>>> {
    let basis = vs.first().ok_or(Error::Shape("empty span".into()))?.basis;
    let e: Vec<ImVector<F>> = (0..7).map(|n| ImVector::unit(n, basis)).collect();
    let mut rows = Vec::with_capacity(vs.len());
    for v in vs {
        let row: Result<Vec<F>> = e.iter().map(|en| v.quad_pair(en)).collect();
        rows.push(row?);
    }
    Ok(null_space(&Mat::from_rows(&rows)).into_iter().map(|c| ImVector::from_slice(&c, basis)).collect())
}

/// The unique line [v] in U with v × U ⊂ U, normalized with largest coordinate +1.
pub fn recover_line<F: RealScalar + NullSpace>(u: &OsculatingPlane<F>) -> Result<ImVector<F>> {
    let perp = orthogonal_complement(&u.basis)?;
    // Row (i, k), column j: Ω(u_j, u_i, b_k).
    let mut rows = Vec::new();
    for ui in &u.basis {
        for b in &perp {
            let row: Result<Vec<F>> = u.basis.iter().map(|uj| uj.triple_form(ui, b)).collect();
            rows.push(row?);
        }
    }
    let ker = if rows.is_empty() {
        (0..u.basis.len()).map(|n| (0..u.basis.len()).map(|m| if m == n { F::one() } else { F::zero() }).collect()).collect()
    } else {
        null_space(&Mat::from_rows(&rows))
    };
    if ker.len() != 1 {
        return Err(Error::Degenerate(format!("closure kernel has dimension {}, expected 1", ker.len())));
    }
    let mut v = ImVector::zero(u.basis[0].basis);
    for (c, uj) in ker[0].iter().zip(&u.basis) {
        v = v + uj.scale(c);
    }
    let q = v.quad();
    if q <= F::zero() || q.is_negligible(NULL_TOL * norm2(&v)) {
        return Err(Error::Degenerate("recovered line is not spacelike".into()));
    }
    let p = largest_coord(&v);
    let s = F::one() / v.coords[p].clone();
    Ok(v.scale(&s))
}

/// A hyperbolic mix c2^2 - c1^2 = 1 together with unit directions in T and N.
#[derive(Clone, Debug)]
pub struct SplitMix<F> {
    pub c1: F,
    pub c2: F,
    pub v_t: (F, F),
    pub v_n: (F, F),
}

/// A point of S(l, T', N') that lies outside S(l, T, N).
#[derive(Clone, Debug)]
pub struct SplitWitness<F> {
    pub mix: SplitMix<F>,
    pub alt: RTFamily<F>,
    pub point: ImVector<F>,
}

#[derive(Clone, Debug)]
pub struct SplittingReport<F> {
    pub trials: usize,
    pub witnesses: Vec<SplitWitness<F>>,
}

impl<F> SplittingReport<F> {
    pub fn all_found(&self) -> bool {
        self.witnesses.len() == self.trials
    }
}

/// Alternative splitting N' = span(v, x̂ × v), T' = span(u, x̂ × u) with
/// v = c1 v_T + c2 v_N, u = c2 v_T + c1 v_N, and the witness
/// x̂ + c2 u - c1 v (whose N-component vanishes). `None` when c1 = 0.
pub fn splitting_witness<F: Scalar>(fam: &RTFamily<F>, mix: &SplitMix<F>, tol: f64) -> Result<Option<SplitWitness<F>>> {
    if mix.c1.is_negligible(tol) {
        return Ok(None);
    }
    let vt = fam.t[0].scale(&mix.v_t.0) + fam.t[1].scale(&mix.v_t.1);
    let vn = fam.n[0].scale(&mix.v_n.0) + fam.n[1].scale(&mix.v_n.1);
    let v = vt.scale(&mix.c1) + vn.scale(&mix.c2);
    let u = vt.scale(&mix.c2) + vn.scale(&mix.c1);
    let alt = RTFamily::new(fam.xhat.clone(), [u.clone(), fam.xhat.cross(&u)?], [v.clone(), fam.xhat.cross(&v)?], tol)?;
    let point = fam.xhat.clone() + u.scale(&mix.c2) - v.scale(&mix.c1);
    let line = NullLine::new(point.clone())?;
    if alt.contains(&line, tol)? && !fam.contains(&line, tol)? {
        Ok(Some(SplitWitness { mix: mix.clone(), alt, point }))
    } else {
        Ok(None)
    }
}

/// Rational point ((1 - m^2)/(1 + m^2), 2m/(1 + m^2)) on the unit circle.
pub fn rational_circle(m: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let d = one.clone() + m.clone() * m.clone();
    ((one - m.clone() * m.clone()) / d.clone(), (m.clone() + m.clone()) / d)
}

/// Rational (c1, c2) = ((s^2 - 1)/(2s), (s^2 + 1)/(2s)) with c2^2 - c1^2 = 1.
pub fn rational_mix(s: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let two_s = s.clone() + s.clone();
    ((s.clone() * s.clone() - one.clone()) / two_s.clone(), (s.clone() * s.clone() + one) / two_s)
}

fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// Exhibits, for random exact alternative splittings, a point of the
/// alternative family outside the original one.
pub fn verify_unique_splitting<R: Rng>(fam: &RTFamily<Rational>, trials: usize, rng: &mut R) -> Result<SplittingReport<Rational>> {
    let mut witnesses = Vec::new();
    for _ in 0..trials {
        let s = loop {
            let s = random_rational(rng, -4, 4, 7);
            if !s.is_zero() && s.clone() * s.clone() != Rational::one() {
                break s;
            }
        };
        let (c1, c2) = rational_mix(&s);
        let mix = SplitMix { c1, c2, v_t: rational_circle(&random_rational(rng, -3, 3, 5)), v_n: rational_circle(&random_rational(rng, -3, 3, 5)) };
        if let Some(w) = splitting_witness(fam, &mix, 0.0)? {
            witnesses.push(w);
        }
    }
    Ok(SplittingReport { trials, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::{bprime_lines, m};

    type Q = Rational;

    #[test]
    fn null_line_normalization() {
        let l = NullLine::new(ImVector::<Q>::from_ints([0, 0, -2, 0, 0, 0, 2])).unwrap();
        assert_eq!(l.rep, ImVector::from_ints([0, 0, 1, 0, 0, 0, -1]));
        assert!(matches!(NullLine::new(m::i::<Q>()), Err(Error::NotNull(_))));
    }

    #[test]
    fn ann_of_x3() {
        let x = bprime_lines::<Q>();
        let a = ann_plane(&NullLine::new(x[0].clone()).unwrap()).unwrap();
        let want: Vec<Vec<Q>> = x[..3].iter().map(|v| v.to_vec()).collect();
        let got: Vec<Vec<Q>> = a.plane.iter().map(|v| v.to_vec()).collect();
        assert!(crate::linalg::same_span(&want, &got));
        assert_eq!(a.distribution.len(), 2);
    }

    #[test]
    fn model_family_point() {
        let fam = RTFamily::<Q>::model();
        let two = Q::from_i64(2);
        // rho = sqrt 2 is irrational; use r = 3/4, rho = 5/4.
        let v = fam.lift((Q::one(), Q::zero()), (Q::one(), Q::zero()), rat(3, 4), rat(5, 4), 0.0).unwrap();
        assert!(v.quad().is_zero());
        assert!(fam.contains(&NullLine::new(v).unwrap(), 0.0).unwrap());
        let _ = two;
        let f = RTFamily::<f64>::model();
        let p = f.point(0.0, 0.0, 1.0).unwrap();
        assert!(p.rep.quad().abs() < 1e-14);
    }

    #[test]
    fn recover_model_line() {
        let u = OsculatingPlane::new((0..5).map(|n| ImVector::<Q>::unit(n, BasisTag::MImaginary)).collect(), 0.0).unwrap();
        assert_eq!(recover_line(&u).unwrap(), m::i());
    }

    #[test]
    fn splitting_witness_exact() {
        let fam = RTFamily::<Q>::model();
        let mix = SplitMix { c1: rat(3, 4), c2: rat(5, 4), v_t: (Q::one(), Q::zero()), v_n: (Q::one(), Q::zero()) };
        assert!(splitting_witness(&fam, &mix, 0.0).unwrap().is_some());
        let same = SplitMix { c1: Q::zero(), c2: Q::one(), ..mix };
        assert!(splitting_witness(&fam, &same, 0.0).unwrap().is_none());
    }
}

//! The Fuchsian almost-complex curve z -> [ĝ(z)^3] in Sym^6 R^2, its Frenet
//! data, developing map and the intersection analysis of osculating planes.
//!
//! Exact data is carried by G̃ = sqrt2 ĝ = ((x^2+y^2) X^2 + 2x XY + Y^2)/y and its
//! derivatives, whose coefficients are rational in (x, y). Square-root
//! normalizations are applied last, in floats.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::ein::{NullLine, RTFamily};
use crate::error::{Error, Result};
use crate::laurent::{LForm, Laurent};
use crate::linalg::{null_space, solve, Inertia, Mat, NullSpace};
use crate::octonion::ImVector;
use crate::scalar::{int, Rational, RealScalar, Scalar};
use crate::sextic::{q6, q6_pair, Form, Quadratic, Sextic};

/// Central-difference step of the chart Jacobian.
pub const FD_STEP: f64 = 1e-5;
/// Smallest singular value above which the chart Jacobian counts as full rank.
pub const RANK_THRESHOLD: f64 = 1e-6;

/// A point x + iy of the upper half plane.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoint<F> {
    pub x: F,
    pub y: F,
}

impl<F: RealScalar> HPoint<F> {
    pub fn new(x: F, y: F) -> Result<Self> {
        if y <= F::zero() {
            return Err(Error::Domain(format!("upper half plane needs y > 0, got {}", y.to_f64())));
        }
        Ok(HPoint { x, y })
    }

    pub fn i() -> Self {
        HPoint { x: F::zero(), y: F::one() }
    }

    pub fn to_f64(&self) -> HPoint<f64> {
        HPoint { x: self.x.to_f64(), y: self.y.to_f64() }
    }
}

struct Jets {
    g: LForm,
    gx: LForm,
    gy: LForm,
    f: LForm,
    fx: LForm,
    fy: LForm,
    fxx: LForm,
    fxy: LForm,
    fyy: LForm,
    bx: LForm,
    by: LForm,
}

fn jets() -> &'static Jets {
    static JETS: OnceLock<Jets> = OnceLock::new();
    JETS.get_or_init(|| {
        let x = Laurent::x();
        let iy = Laurent::inv_y();
        let xx = &x * &x;
        let g = LForm { c: vec![&xx * &iy + Laurent::y(), (&x * &iy).scale(&int(2)), iy.clone()] };
        let gx = g.dx();
        let gy = g.dy();
        let f = g.pow(3);
        let fx = f.dx();
        let fy = f.dy();
        Jets { fxx: fx.dx(), fxy: fx.dy(), fyy: fy.dy(), bx: gx.pow(2).mul(&gy), by: gy.pow(2).mul(&gx), g, gx, gy, f, fx, fy }
    })
}

/// G̃ = sqrt2 ĝ and its two partials, exactly.
pub fn g_tilde<F: RealScalar>(p: &HPoint<F>) -> [Quadratic<F>; 3] {
    let j = jets();
    [j.g.eval(&p.x, &p.y), j.gx.eval(&p.x, &p.y), j.gy.eval(&p.x, &p.y)]
}

/// ĝ, ĝ_x, ĝ_y.
pub fn g_hat(p: &HPoint<f64>) -> Result<[Quadratic<f64>; 3]> {
    HPoint::new(p.x, p.y)?;
    let s = 1.0 / std::f64::consts::SQRT_2;
    Ok(g_tilde(p).map(|q| q.scale(&s)))
}

/// f̂ = c ĝ^3 with c = sqrt10/2, so that f̂ = (sqrt5/4) G̃^3 and Q6(f̂) = 1.
pub fn f_hat(p: &HPoint<f64>) -> Result<Sextic<f64>> {
    HPoint::new(p.x, p.y)?;
    Ok(jets().f.eval(&p.x, &p.y).scale(&(5f64.sqrt() / 4.0)))
}

/// G̃^3, the exact direction of f̂; its Q6 is 16/5 everywhere.
pub fn f_direction<F: RealScalar>(p: &HPoint<F>) -> Sextic<F> {
    jets().f.eval(&p.x, &p.y)
}

/// Q6-orthogonal projection of v onto the complement of span(basis).
pub fn project_out<F: Scalar>(v: &Sextic<F>, basis: &[Sextic<F>]) -> Result<Sextic<F>> {
    let n = basis.len();
    let mut g = Mat::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            g.set(a, b, q6_pair(&basis[a], &basis[b]));
        }
    }
    let rhs: Vec<F> = basis.iter().map(|b| q6_pair(b, v)).collect();
    let c = solve(&g, &rhs).ok_or(Error::LinearSolve(n))?;
    let mut out = v.clone();
    for (ck, bk) in c.iter().zip(basis) {
        out = out - bk.scale(ck);
    }
    Ok(out)
}

/// Unnormalized Frenet data built from G̃^3: position, first derivatives,
/// second fundamental form values and two generators of the binormal plane.
#[derive(Clone, Debug)]
pub struct FrenetData<F> {
    pub f: Sextic<F>,
    pub fx: Sextic<F>,
    pub fy: Sextic<F>,
    pub ii_xx: Sextic<F>,
    pub ii_xy: Sextic<F>,
    pub ii_yy: Sextic<F>,
    pub b1: Sextic<F>,
    pub b2: Sextic<F>,
}

pub fn frenet_data<F: RealScalar>(p: &HPoint<F>) -> Result<FrenetData<F>> {
    HPoint::new(p.x.clone(), p.y.clone())?;
    let j = jets();
    let ev = |l: &LForm| l.eval(&p.x, &p.y);
    let (f, fx, fy) = (ev(&j.f), ev(&j.fx), ev(&j.fy));
    let first = [f.clone(), fx.clone(), fy.clone()];
    let ii_xx = project_out(&ev(&j.fxx), &first)?;
    let ii_xy = project_out(&ev(&j.fxy), &first)?;
    let ii_yy = project_out(&ev(&j.fyy), &first)?;
    let osc = [f.clone(), fx.clone(), fy.clone(), ii_xx.clone(), ii_xy.clone()];
    let b1 = project_out(&ev(&j.bx), &osc)?;
    let b2 = project_out(&ev(&j.by), &osc)?;
    Ok(FrenetData { f, fx, fy, ii_xx, ii_xy, ii_yy, b1, b2 })
}

impl<F: Scalar> FrenetData<F> {
    /// II(u, v) for tangent vectors u = u0 ∂x + u1 ∂y, v = v0 ∂x + v1 ∂y.
    pub fn second_form(&self, u: (&F, &F), v: (&F, &F)) -> Sextic<F> {
        let xx = u.0.clone() * v.0.clone();
        let xy = u.0.clone() * v.1.clone() + u.1.clone() * v.0.clone();
        let yy = u.1.clone() * v.1.clone();
        self.ii_xx.scale(&xx) + self.ii_xy.scale(&xy) + self.ii_yy.scale(&yy)
    }

    /// df(u) = u0 f_x + u1 f_y.
    pub fn tangent(&self, u: (&F, &F)) -> Sextic<F> {
        self.fx.scale(u.0) + self.fy.scale(u.1)
    }
}

fn unit(v: &Sextic<f64>) -> Sextic<f64> {
    v.scale(&(1.0 / q6(v).abs().sqrt()))
}

/// Orthonormal Frenet frame: q(f) = 1, T negative, N positive, B negative.
#[derive(Clone, Debug)]
pub struct FrenetFrame {
    pub f: Sextic<f64>,
    pub t: [Sextic<f64>; 2],
    pub n: [Sextic<f64>; 2],
    pub b: [Sextic<f64>; 2],
}

pub fn frenet(p: &HPoint<f64>) -> Result<FrenetFrame> {
    let d = frenet_data(p)?;
    Ok(FrenetFrame { f: unit(&d.f), t: [unit(&d.fx), unit(&d.fy)], n: [unit(&d.ii_xx), unit(&d.ii_xy)], b: [unit(&d.b1), unit(&d.b2)] })
}

impl FrenetFrame {
    /// All seven generators in order (f, t1, t2, n1, n2, b1, b2).
    pub fn all(&self) -> [&Sextic<f64>; 7] {
        [&self.f, &self.t[0], &self.t[1], &self.n[0], &self.n[1], &self.b[0], &self.b[1]]
    }

    /// The family (f̂, T, N) in M-imaginary coordinates.
    pub fn family(&self, tol: f64) -> Result<RTFamily<f64>> {
        let m = |s: &Sextic<f64>| s.to_m();
        RTFamily::new(m(&self.f)?, [m(&self.t[0])?, m(&self.t[1])?], [m(&self.n[0])?, m(&self.n[1])?], tol)
    }
}

/// A point of the unit-tangent fiber product: base point, two angles, radius.
#[derive(Clone, Debug, PartialEq)]
pub struct DevPoint {
    pub p: HPoint<f64>,
    pub theta: f64,
    pub alpha: f64,
    pub r: f64,
}

struct FiberFrame {
    f: Sextic<f64>,
    d: FrenetData<f64>,
    tnorm: f64,
}

impl FiberFrame {
    fn at(p: &HPoint<f64>) -> Result<Self> {
        let d = frenet_data(p)?;
        Ok(FiberFrame { f: unit(&d.f), tnorm: (-q6(&d.fx)).sqrt(), d })
    }

    fn t(&self, theta: f64) -> Sextic<f64> {
        self.d.tangent((&theta.cos(), &theta.sin())).scale(&(1.0 / self.tnorm))
    }

    fn n(&self, theta: f64, alpha: f64) -> Sextic<f64> {
        unit(&self.d.second_form((&theta.cos(), &theta.sin()), (&alpha.cos(), &alpha.sin())))
    }
}

/// ν̂ + sqrt(r^2+1) t(θ) + r II(u,v)/|II(u,v)| in monomial coordinates.
pub fn dev_lift(d: &DevPoint) -> Result<Sextic<f64>> {
    if d.r <= 0.0 {
        return Err(Error::Domain(format!("radius must be positive, got {}", d.r)));
    }
    let fr = FiberFrame::at(&d.p)?;
    Ok(fr.f.clone() + fr.t(d.theta).scale(&(d.r * d.r + 1.0).sqrt()) + fr.n(d.theta, d.alpha).scale(&d.r))
}

/// The null line through a sum of frame terms.
fn line_of_sum(terms: &[Sextic<f64>]) -> Result<NullLine<f64>> {
    let m: Vec<ImVector<f64>> = terms.iter().map(|t| t.to_m()).collect::<Result<_>>()?;
    let scale = m.iter().map(|v| v.coords.iter().map(|c| c * c).sum::<f64>().sqrt()).fold(0.0, f64::max);
    let sum = m.into_iter().reduce(|a, b| a + b).ok_or(Error::ZeroVector)?;
    NullLine::from_sum(sum, scale)
}

/// The developed null line, in M-imaginary coordinates.
pub fn dev(d: &DevPoint) -> Result<NullLine<f64>> {
    if d.r <= 0.0 {
        return Err(Error::Domain(format!("radius must be positive, got {}", d.r)));
    }
    let fr = FiberFrame::at(&d.p)?;
    line_of_sum(&[fr.f.clone(), fr.t(d.theta).scale(&(d.r * d.r + 1.0).sqrt()), fr.n(d.theta, d.alpha).scale(&d.r)])
}

/// σ0(p, u) = [ν̂ + u].
pub fn sigma0(p: &HPoint<f64>, theta: f64) -> Result<NullLine<f64>> {
    let fr = FiberFrame::at(p)?;
    line_of_sum(&[fr.f.clone(), fr.t(theta)])
}

/// σ∞(p, u, v) = [u + II(u,v)/|II(u,v)|] for unit u, v.
pub fn sigma_inf(p: &HPoint<f64>, theta: f64, alpha: f64) -> Result<NullLine<f64>> {
    let fr = FiberFrame::at(p)?;
    line_of_sum(&[fr.t(theta), fr.n(theta, alpha)])
}

/// Lift u + II(u,v)/q(II(u,v)) of σ∞ for tangent vectors given by exact
/// coefficients against (∂x, ∂y), with u taken as df(u).
pub fn sigma_inf_exact(p: &HPoint<Rational>, u: (&Rational, &Rational), v: (&Rational, &Rational)) -> Result<Sextic<Rational>> {
    let d = frenet_data(p)?;
    let ii = d.second_form(u, v);
    let qi = q6(&ii);
    if qi.is_zero() {
        return Err(Error::Degenerate("II(u, v) is null".into()));
    }
    Ok(d.tangent(u) + ii.scale(&qi.recip()))
}

/// Exact projective equality of two forms.
pub fn same_point(a: &Sextic<Rational>, b: &Sextic<Rational>) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let n = a.c.len();
    (0..n).all(|i| (0..n).all(|j| &a.c[i] * &b.c[j] == &a.c[j] * &b.c[i]))
}

/// Singular values (descending) of the derivative of [lift] at `params`,
/// read in a Euclidean-orthonormal chart of Ein^{2,3} at the image.
pub fn chart_singular_values(lift: impl Fn(&[f64]) -> Result<ImVector<f64>>, params: &[f64]) -> Result<Vec<f64>> {
    let base = lift(params)?;
    let norm = base.coords.iter().map(|c| c * c).sum::<f64>().sqrt();
    let w = base.scale(&(1.0 / norm));
    // w' null with q(w, w') = 1, from the split into the (+) and (-) coordinates.
    let a2: f64 = w.coords[..3].iter().map(|c| c * c).sum();
    let mut wp = w.clone();
    for n in 0..7 {
        wp.coords[n] = if n < 3 { w.coords[n] } else { -w.coords[n] } / (2.0 * a2);
    }
    // Orthonormal basis of the 5-space w⊥ ∩ w'⊥.
    let rows: Vec<Vec<f64>> =
        [&w, &wp].iter().map(|v| (0..7).map(|n| v.quad_pair(&ImVector::unit(n, v.basis))).collect::<Result<Vec<f64>>>()).collect::<Result<_>>()?;
    let ker = null_space(&Mat::from_rows(&rows));
    if ker.len() != 5 {
        return Err(Error::Degenerate(format!("tangent chart has dimension {}", ker.len())));
    }
    let kb = DMatrix::from_fn(7, 5, |i, j| ker[j][i]);
    let q = kb.qr().q();
    let mut jac = DMatrix::<f64>::zeros(5, params.len());
    for k in 0..params.len() {
        let mut plus = params.to_vec();
        let mut minus = params.to_vec();
        plus[k] += FD_STEP;
        minus[k] -= FD_STEP;
        let dv = (lift(&plus)? - lift(&minus)?).scale(&(1.0 / (2.0 * FD_STEP * norm)));
        let proj = dv.clone() - w.scale(&dv.quad_pair(&wp)?);
        for r in 0..5 {
            jac[(r, k)] = (0..7).map(|i| q[(i, r)] * proj.coords[i]).sum();
        }
    }
    let mut sv: Vec<f64> = jac.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok(sv)
}

/// Smallest singular value of the dev chart Jacobian in (x, y, θ, α, r).
pub fn dev_rank(d: &DevPoint) -> Result<f64> {
    let lift = |v: &[f64]| dev_lift(&DevPoint { p: HPoint { x: v[0], y: v[1] }, theta: v[2], alpha: v[3], r: v[4] })?.to_m();
    let sv = chart_singular_values(lift, &[d.p.x, d.p.y, d.theta, d.alpha, d.r])?;
    Ok(sv[4])
}

/// Singular values of the extended developing map near the r -> 0 locus, in
/// the chart (x, y, a, b, θ) -> [sqrt(1-a^2-b^2) ν̂ + a n1 + b n2 + t(θ)], at a = b = 0.
pub fn extended_singular_values(p: &HPoint<f64>, theta: f64) -> Result<Vec<f64>> {
    let lift = |v: &[f64]| {
        let fr = FiberFrame::at(&HPoint::new(v[0], v[1])?)?;
        let n1 = unit(&fr.d.ii_xx);
        let n2 = unit(&fr.d.ii_xy);
        let s = (1.0 - v[2] * v[2] - v[3] * v[3]).sqrt();
        (fr.f.scale(&s) + n1.scale(&v[2]) + n2.scale(&v[3]) + fr.t(v[4])).to_m()
    };
    chart_singular_values(lift, &[p.x, p.y, 0.0, 0.0, theta])
}

/// The osculating 5-plane U_p = {P : ĝ(p) | P}, spanned by G̃(p) times quartic monomials.
pub fn osculating_basis<F: RealScalar>(p: &HPoint<F>) -> Vec<Sextic<F>> {
    let g = &g_tilde(p)[0];
    (0..5).map(|k| g.mul(&Form::monomial(4, k))).collect()
}

#[derive(Clone, Debug)]
pub struct Intersection<F> {
    pub basis: Vec<Sextic<F>>,
    pub dim: usize,
    /// (positive, negative) index of Q6 on the intersection.
    pub signature: (usize, usize),
}

/// U_p ∩ U_q with the signature of Q6 on it.
pub fn osculating_intersect<F: Inertia + NullSpace>(p: &HPoint<F>, q: &HPoint<F>, tol: f64) -> Intersection<F> {
    let bp = osculating_basis(p);
    let bq = osculating_basis(q);
    let cols: Vec<Vec<F>> = bp.iter().map(|b| b.c.clone()).chain(bq.iter().map(|b| b.scale(&-F::one()).c)).collect();
    let ker = null_space(&Mat::from_cols(&cols));
    let basis: Vec<Sextic<F>> = ker.iter().map(|k| bp.iter().zip(k).fold(Form::zero(6), |acc, (b, c)| acc + b.scale(c))).collect();
    let n = basis.len();
    let mut g = Mat::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            g.set(a, b, q6_pair(&basis[a], &basis[b]));
        }
    }
    let (pos, neg, _) = F::inertia(&g, tol);
    Intersection { basis, dim: n, signature: (pos, neg) }
}

/// P_t = tX^2 + Y^2/t, the quadratic of the point ti up to scale.
pub fn p_t<F: RealScalar>(t: &F) -> Quadratic<F> {
    Form::new(vec![t.clone(), F::zero(), F::one() / t.clone()])
}

/// w = P_1 P_t ((3+t^2) X^2 - (1+3t^2) Y^2).
pub fn degenerate_w<F: RealScalar>(t: &F) -> Sextic<F> {
    let t2 = t.clone() * t.clone();
    let p1 = Form::new(vec![F::one(), F::zero(), F::one()]);
    let k = Form::new(vec![F::from_i64(3) + t2.clone(), F::zero(), -(F::one() + F::from_i64(3) * t2)]);
    p1.mul(&p_t(t)).mul(&k)
}

/// (4/15)(3 - 24t^2 - 86t^4 - 24t^6 + 3t^8).
pub fn degenerate_closed_form<F: RealScalar>(t: &F) -> F {
    let u = t.clone() * t.clone();
    let coeffs = [3, -24, -86, -24, 3];
    let mut acc = F::zero();
    for c in coeffs.iter().rev() {
        acc = acc * u.clone() + F::from_i64(*c);
    }
    acc * F::from_ratio(4, 15)
}

#[derive(Clone, Debug)]
pub struct DegenerateFiber<F> {
    pub t: F,
    /// Q6(w) from the Gram matrix.
    pub direct: F,
    /// The closed-form octic.
    pub closed_form: F,
    /// Predicted |PQ0(W_{1,t})|: 2, 1 or 0 as Q6(w) is positive, zero or negative.
    pub count: usize,
}

pub fn fiber_degenerate_set<F: RealScalar>(t: &F, tol: f64) -> Result<DegenerateFiber<F>> {
    if *t <= F::zero() {
        return Err(Error::Domain(format!("t must be positive, got {}", t.to_f64())));
    }
    if (t.clone() - F::one()).is_negligible(0.0) {
        return Err(Error::Domain("t = 1 gives the same osculating plane".into()));
    }
    let direct = q6(&degenerate_w(t));
    let count = if direct.is_negligible(tol) {
        1
    } else if direct > F::zero() {
        2
    } else {
        0
    };
    Ok(DegenerateFiber { t: t.clone(), closed_form: degenerate_closed_form(t), direct, count })
}

/// Predicted size of the degenerate set D for the pair (i, ti): both
/// orderings contribute the same count.
pub fn degenerate_set_size<F: RealScalar>(t: &F, tol: f64) -> Result<usize> {
    let a = fiber_degenerate_set(t, tol)?.count;
    let b = fiber_degenerate_set(&(F::one() / t.clone()), tol)?.count;
    Ok(a + b)
}

/// The boundary point [L^6] of the line [L] = [aX + bY].
pub fn boundary_point<F: Scalar>(a: F, b: F) -> Sextic<F> {
    Form::linear(a, b).pow(6)
}

/// Exact decomposition of (X^2+Y^2) Y^4 against the directions of f̂, f̂_y and
/// II(∂x,∂x) at z = i.
#[derive(Clone, Debug)]
pub struct K5Witness {
    pub target: Sextic<Rational>,
    pub directions: [Sextic<Rational>; 3],
    pub coefficients: [Rational; 3],
    pub residual: Sextic<Rational>,
}

pub fn k5_witness() -> Result<K5Witness> {
    let target = Form::from_ints(&[0, 0, 0, 0, 1, 0, 1]);
    let directions = [Form::from_ints(&[1, 0, 3, 0, 3, 0, 1]), Form::from_ints(&[1, 0, 1, 0, -1, 0, -1]), Form::from_ints(&[1, 0, -5, 0, -5, 0, 1])];
    let mut cols: Vec<Vec<Rational>> = directions.iter().map(|d| d.c.clone()).collect();
    cols.push(target.scale(&-Rational::one()).c);
    let ker = null_space(&Mat::from_cols(&cols));
    if ker.len() != 1 || ker[0][3].is_zero() {
        return Err(Error::Degenerate("target is not in the span of the three directions".into()));
    }
    let s = ker[0][3].recip();
    let coefficients = [&ker[0][0] * &s, &ker[0][1] * &s, &ker[0][2] * &s];
    let mut residual = target.clone();
    for (c, d) in coefficients.iter().zip(&directions) {
        residual = residual - d.scale(c);
    }
    Ok(K5Witness { target, directions, coefficients, residual })
}

/// The constant c with f̂ = c G̃^3: c^2 = 1/Q6((X^2+Y^2)^3) = 5/16.
pub fn f_hat_scale_squared() -> Rational {
    q6(&Form::<Rational>::from_ints(&[1, 0, 3, 0, 3, 0, 1])).recip()
}

/// A point on the geodesic through i and ti, for rational tests.
pub fn imaginary_axis(t: &Rational) -> HPoint<Rational> {
    HPoint { x: Rational::zero(), y: t.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::scalar::rat;

    type Q = Rational;

    #[test]
    fn g_hat_at_i() {
        let [g, gx, gy] = g_hat(&HPoint::i()).unwrap();
        let s = 1.0 / std::f64::consts::SQRT_2;
        assert_eq!(g.c, vec![s, 0.0, s]);
        assert!((gx.c[1] - 2.0 * s).abs() < 1e-15 && gx.c[0] == 0.0);
        assert_eq!(gy.c, vec![s, 0.0, -s]);
        assert!(g_hat(&HPoint { x: 0.0, y: -1.0 }).is_err());
    }

    #[test]
    fn f_hat_constant() {
        assert_eq!(f_hat_scale_squared(), rat(5, 16));
        let p = HPoint::new(rat(1, 3), rat(5, 2)).unwrap();
        assert_eq!(q6(&f_direction(&p)), rat(16, 5));
    }

    #[test]
    fn second_form_at_i() {
        let d = frenet_data(&HPoint::<Q>::i()).unwrap();
        let s5 = |v: &[i64], den: i64| Form::<Q>::new(v.iter().map(|&n| rat(n, den)).collect());
        assert_eq!(d.ii_xx, s5(&[-3, 0, 15, 0, 15, 0, -3], 1));
        assert_eq!(d.ii_yy, -d.ii_xx.clone());
        assert_eq!(d.ii_xy, s5(&[0, 12, 0, 0, 0, -12, 0], 1));
        assert_eq!(d.b1, s5(&[-1, 0, 15, 0, -15, 0, 1], 4));
        assert_eq!(d.b2, s5(&[0, 3, 0, -10, 0, 3, 0], 2));
    }

    #[test]
    fn degenerate_closed_form_at_one() {
        assert_eq!(q6(&degenerate_w(&Q::one())), degenerate_closed_form(&Q::one()));
        assert_eq!(degenerate_closed_form(&Q::one()), rat(-512, 15));
    }

    #[test]
    fn k5_coefficients() {
        let w = k5_witness().unwrap();
        assert_eq!(w.coefficients, [rat(3, 8), rat(-1, 2), rat(1, 8)]);
        assert!(w.residual.is_zero());
    }

    #[test]
    fn same_point_detects_scaling() {
        let a = Form::<Q>::from_ints(&[1, 2, 0, 0, 0, 0, 3]);
        assert!(same_point(&a, &a.scale(&rat(-2, 7))));
        assert!(!same_point(&a, &Form::from_ints(&[1, 2, 0, 0, 0, 0, 4])));
    }
}

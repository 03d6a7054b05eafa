//! The cyclic G2' Hitchin system: the Higgs field and diagonal harmonic
//! metric at a point, the real frame (w_i), and a damped Newton solver for
//! the global equations in (psi1, psi2) on a rectangular grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ein::RTFamily;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::octonion::{BasisTag, ImVector};

type C = Complex64;

/// Smallest damping factor tried by the line search.
pub const MIN_STEP: f64 = 1.0 / 1_048_576.0;
const ARMIJO: f64 = 1e-4;

/// Pointwise data of a cyclic Higgs bundle: the value of q and the metric entries r, s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HiggsPoint {
    pub q: C,
    pub r: f64,
    pub s: f64,
}

impl HiggsPoint {
    pub fn new(q: C, r: f64, s: f64) -> Result<Self> {
        if !(r > 0.0 && s > 0.0) {
            return Err(Error::Domain(format!("metric entries must be positive, got r = {r}, s = {s}")));
        }
        Ok(HiggsPoint { q, r, s })
    }
}

/// Diagonal of H = diag(1/(rs), 1/r, 1/s, 1, s, r, rs).
pub fn metric_diag(r: f64, s: f64) -> [f64; 7] {
    [1.0 / (r * s), 1.0 / r, 1.0 / s, 1.0, s, r, r * s]
}

/// Higgs field in the frame (dz^3, ..., dz^-3).
pub fn higgs_field(q: C) -> Mat<C> {
    let re = |x: f64| C::new(x, 0.0);
    let sub = [re(3f64.sqrt()), re(5f64.sqrt()), C::new(0.0, -6f64.sqrt()), C::new(0.0, -6f64.sqrt()), re(5f64.sqrt()), re(3f64.sqrt())];
    let mut phi = Mat::zeros(7, 7);
    for (k, d) in sub.iter().enumerate() {
        phi.set(k + 1, k, *d);
    }
    phi.set(0, 5, q);
    phi.set(1, 6, q);
    phi
}

/// The real structure on vectors, x -> H^{-1} Q x̄ with Q the anti-diagonal of ones.
pub fn tau_vec(h: &[f64; 7], x: &[C]) -> Vec<C> {
    (0..7).map(|k| x[6 - k].conj() / h[k]).collect()
}

/// The induced real structure on endomorphisms, A -> H^{-1} Q Ā Q H.
pub fn tau_end(h: &[f64; 7], a: &Mat<C>) -> Mat<C> {
    let mut out = Mat::zeros(7, 7);
    for i in 0..7 {
        for j in 0..7 {
            out.set(i, j, a.get(6 - i, 6 - j).conj() * (h[j] / h[i]));
        }
    }
    out
}

/// The h-adjoint H^{-1} Ā^T H.
pub fn h_adjoint(h: &[f64; 7], a: &Mat<C>) -> Mat<C> {
    let mut out = Mat::zeros(7, 7);
    for i in 0..7 {
        for j in 0..7 {
            out.set(i, j, a.get(j, i).conj() * (h[j] / h[i]));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauReport {
    /// max |τ̂(τ̂(x)) - x| over x = e_k and i e_k.
    pub vector_involution: f64,
    /// |τ̂(τ̂(Φ)) - Φ|.
    pub end_involution: f64,
    /// |τ̂(Φ + Φ*h) - (Φ + Φ*h)|.
    pub fixed_residual: f64,
}

impl TauReport {
    pub fn max(&self) -> f64 {
        self.vector_involution.max(self.end_involution).max(self.fixed_residual)
    }
}

#[derive(Clone, Debug)]
pub struct HiggsData {
    pub phi: Mat<C>,
    pub h: [f64; 7],
    pub tau: TauReport,
}

pub fn higgs_data(p: &HiggsPoint) -> Result<HiggsData> {
    let p = HiggsPoint::new(p.q, p.r, p.s)?;
    let h = metric_diag(p.r, p.s);
    let phi = higgs_field(p.q);
    let mut vector_involution: f64 = 0.0;
    for k in 0..7 {
        for unit in [C::new(1.0, 0.0), C::new(0.0, 1.0)] {
            let mut x = vec![C::new(0.0, 0.0); 7];
            x[k] = unit;
            let back = tau_vec(&h, &tau_vec(&h, &x));
            let d = back.iter().zip(&x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            vector_involution = vector_involution.max(d);
        }
    }
    let end_involution = tau_end(&h, &tau_end(&h, &phi)).sub(&phi).max_abs();
    let herm = phi.add(&h_adjoint(&h, &phi));
    let fixed_residual = tau_end(&h, &herm).sub(&herm).max_abs();
    Ok(HiggsData { phi, h, tau: TauReport { vector_involution, end_involution, fixed_residual } })
}

/// The h-unitary multiplication frame (w_1, ..., w_7) in u-basis coordinates.
pub fn frame_w(p: &HiggsPoint) -> Result<[ImVector<C>; 7]> {
    let p = HiggsPoint::new(p.q, p.r, p.s)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let i = C::new(0.0, 1.0);
    let one = C::new(1.0, 0.0);
    // u_k sits at coordinate 3 - k.
    let pair = |k: usize, a: f64, cp: C, cm: C| {
        let mut c = [C::new(0.0, 0.0); 7];
        c[3 - k] = cp * (h * a.sqrt());
        c[3 + k] = cm * (h / a.sqrt());
        ImVector::new(c, BasisTag::BaragliaU)
    };
    let (r, s) = (p.r, p.s);
    Ok([
        ImVector::unit(3, BasisTag::BaragliaU),
        pair(2, r, one, one),
        pair(2, r, -i, i),
        pair(1, s, one, one),
        pair(1, s, i, -i),
        pair(3, r * s, -one, -one),
        pair(3, r * s, i, -i),
    ])
}

/// max |τ̂(w_k) - w_k| over the frame.
pub fn frame_tau_residual(p: &HiggsPoint) -> Result<f64> {
    let h = metric_diag(p.r, p.s);
    let w = frame_w(p)?;
    Ok(w.iter().map(|v| tau_vec(&h, &v.coords).iter().zip(&v.coords).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)).fold(0.0, f64::max))
}

/// max |w_a × w_b - Σ c_k w_k| where m_a × m_b = Σ c_k m_k, computed in M coordinates.
pub fn frame_cross_residual(p: &HiggsPoint) -> Result<f64> {
    let w: Vec<ImVector<C>> = frame_w(p)?.iter().map(|v| v.to_basis(BasisTag::MImaginary)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for a in 0..7 {
        for b in 0..7 {
            let ma = ImVector::<C>::unit(a, BasisTag::MImaginary);
            let mb = ImVector::<C>::unit(b, BasisTag::MImaginary);
            let m = ma.cross(&mb)?;
            let mut image = ImVector::zero(BasisTag::MImaginary);
            for k in 0..7 {
                image = image + w[k].scale(&m.coords[k]);
            }
            let d = w[a].cross(&w[b])? - image;
            worst = worst.max(d.coords.iter().map(|c| c.norm()).fold(0.0, f64::max));
        }
    }
    Ok(worst)
}

/// The family x̂ = w_1, T = span(w_4, w_5), N = span(w_2, w_3) in M coordinates.
pub fn frame_family(p: &HiggsPoint, tol: f64) -> Result<RTFamily<C>> {
    let w: Vec<ImVector<C>> = frame_w(p)?.iter().map(|v| v.to_basis(BasisTag::MImaginary)).collect::<Result<_>>()?;
    RTFamily::new(w[0].clone(), [w[3].clone(), w[4].clone()], [w[1].clone(), w[2].clone()], tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    Periodic,
    Dirichlet,
}

/// Discretized fields on a uniform grid; node (i, j) is stored at j * nx + i.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitchinGrid {
    pub nx: usize,
    pub ny: usize,
    pub mode: BoundaryMode,
    pub x0: f64,
    pub y0: f64,
    pub hx: f64,
    pub hy: f64,
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
    pub sigma: Vec<f64>,
    /// |q|^2_σ = |q|^2 / σ^6.
    pub q2: Vec<f64>,
    pub kappa: Vec<f64>,
    pub label: String,
    /// Set when |q|^2_σ does not come from a holomorphic q.
    pub synthetic: bool,
}

impl HitchinGrid {
    /// A grid with ψ = 0, q = 0 and curvature from the stencil.
    pub fn new(nx: usize, ny: usize, mode: BoundaryMode, origin: (f64, f64), spacing: (f64, f64), sigma: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::Shape(format!("grid must be at least 3 x 3, got {nx} x {ny}")));
        }
        if !(spacing.0 > 0.0 && spacing.1 > 0.0) {
            return Err(Error::Domain("grid spacings must be positive".into()));
        }
        let n = nx * ny;
        let mut g = HitchinGrid {
            nx,
            ny,
            mode,
            x0: origin.0,
            y0: origin.1,
            hx: spacing.0,
            hy: spacing.1,
            psi1: vec![0.0; n],
            psi2: vec![0.0; n],
            sigma: vec![0.0; n],
            q2: vec![0.0; n],
            kappa: vec![0.0; n],
            label: String::new(),
            synthetic: false,
        };
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = g.point(i, j);
                g.sigma[j * nx + i] = sigma(x, y);
            }
        }
        g.validate()?;
        g.use_stencil_curvature();
        Ok(g)
    }

    /// The flat torus [0, 2π)^2 with σ = 1 and constant |q|^2_σ = c.
    pub fn flat_torus(n: usize, c: f64) -> Result<Self> {
        let h = std::f64::consts::TAU / n as f64;
        let mut g = HitchinGrid::new(n, n, BoundaryMode::Periodic, (0.0, 0.0), (h, h), |_, _| 1.0)?;
        g.set_q2(|_, _| c);
        g.label = format!("flat torus, |q|^2 = {c}");
        Ok(g)
    }

    /// The rectangle [x0, x1] x [y0, y1] in the upper half plane with σ = 1/(2y^2),
    /// analytic curvature -2, q = 0 and ψ = 0 on the boundary.
    pub fn hyperbolic_rect(n: usize, xs: (f64, f64), ys: (f64, f64)) -> Result<Self> {
        if ys.0 <= 0.0 || xs.1 <= xs.0 || ys.1 <= ys.0 {
            return Err(Error::Domain("rectangle must lie in the upper half plane".into()));
        }
        let spacing = ((xs.1 - xs.0) / (n - 1) as f64, (ys.1 - ys.0) / (n - 1) as f64);
        let mut g = HitchinGrid::new(n, n, BoundaryMode::Dirichlet, (xs.0, ys.0), spacing, |_, y| 0.5 / (y * y))?;
        g.kappa = vec![-2.0; n * n];
        g.label = "hyperbolic rectangle".into();
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x0 + i as f64 * self.hx, self.y0 + j as f64 * self.hy)
    }

    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        match self.mode {
            BoundaryMode::Periodic => true,
            BoundaryMode::Dirichlet => i > 0 && j > 0 && i + 1 < self.nx && j + 1 < self.ny,
        }
    }

    pub fn set_q2(&mut self, f: impl Fn(f64, f64) -> f64) {
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (x, y) = self.point(i, j);
                self.q2[j * self.nx + i] = f(x, y);
            }
        }
    }

    /// |q|^2_σ from a holomorphic q(z), z = x + iy.
    pub fn set_holomorphic_q(&mut self, q: impl Fn(C) -> C) {
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (x, y) = self.point(i, j);
                let n = j * self.nx + i;
                self.q2[n] = q(C::new(x, y)).norm_sqr() / self.sigma[n].powi(6);
            }
        }
    }

    /// κ = -(1/(2σ)) Lap(log σ) at interior nodes; boundary nodes of a
    /// Dirichlet grid keep their previous value.
    pub fn use_stencil_curvature(&mut self) {
        for j in 0..self.ny {
            for i in 0..self.nx {
                if let Some(k) = self.stencil_curvature(i, j) {
                    self.kappa[j * self.nx + i] = k;
                }
            }
        }
    }

    pub fn stencil_curvature(&self, i: usize, j: usize) -> Option<f64> {
        if !self.is_interior(i, j) {
            return None;
        }
        let ls = |n: usize| self.sigma[n].ln();
        let lap = self.laplacian_with(i, j, ls);
        Some(-lap / (2.0 * self.sigma[j * self.nx + i]))
    }

    /// max |κ - κ_stencil| over interior nodes.
    pub fn curvature_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.ny {
            for i in 0..self.nx {
                if let Some(k) = self.stencil_curvature(i, j) {
                    worst = worst.max((k - self.kappa[j * self.nx + i]).abs());
                }
            }
        }
        worst
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for (name, f) in [("psi1", &self.psi1), ("psi2", &self.psi2), ("sigma", &self.sigma), ("q2", &self.q2), ("kappa", &self.kappa)] {
            if f.len() != n {
                return Err(Error::Shape(format!("{name} has {} entries, expected {n}", f.len())));
            }
        }
        if let Some(s) = self.sigma.iter().find(|s| !(**s > 0.0)) {
            return Err(Error::Domain(format!("sigma must be positive, found {s}")));
        }
        Ok(())
    }

    fn neighbours(&self, i: usize, j: usize) -> [usize; 4] {
        let (nx, ny) = (self.nx, self.ny);
        [j * nx + (i + nx - 1) % nx, j * nx + (i + 1) % nx, ((j + ny - 1) % ny) * nx + i, ((j + 1) % ny) * nx + i]
    }

    fn laplacian_with(&self, i: usize, j: usize, f: impl Fn(usize) -> f64) -> f64 {
        let [w, e, s, n] = self.neighbours(i, j);
        let c = f(j * self.nx + i);
        (f(w) - 2.0 * c + f(e)) / (self.hx * self.hx) + (f(s) - 2.0 * c + f(n)) / (self.hy * self.hy)
    }
}

/// Residuals of 2Δσψ1 = 5E - 2|q|^2 e^{-2ψ1} + (5/2)κ and 2Δσψ2 = -5E + 6e^{2ψ2} + κ/2,
/// with E = e^{ψ1 - 3ψ2} and Δσ = Lap / (4σ). Dirichlet boundary nodes carry zero.
pub fn residual(g: &HitchinGrid) -> Result<(Vec<f64>, Vec<f64>)> {
    g.validate()?;
    let mut r1 = vec![0.0; g.len()];
    let mut r2 = vec![0.0; g.len()];
    for j in 0..g.ny {
        for i in 0..g.nx {
            if !g.is_interior(i, j) {
                continue;
            }
            let n = j * g.nx + i;
            let s4 = 4.0 * g.sigma[n];
            let d1 = g.laplacian_with(i, j, |m| g.psi1[m]) / s4;
            let d2 = g.laplacian_with(i, j, |m| g.psi2[m]) / s4;
            let (a, b) = (g.psi1[n], g.psi2[n]);
            let e = (a - 3.0 * b).exp();
            r1[n] = 2.0 * d1 - 5.0 * e + 2.0 * g.q2[n] * (-2.0 * a).exp() - 2.5 * g.kappa[n];
            r2[n] = 2.0 * d2 + 5.0 * e - 6.0 * (2.0 * b).exp() - 0.5 * g.kappa[n];
        }
    }
    Ok((r1, r2))
}

pub fn residual_sup(g: &HitchinGrid) -> Result<f64> {
    let (r1, r2) = residual(g)?;
    Ok(r1.iter().chain(&r2).map(|x| x.abs()).fold(0.0, f64::max))
}

/// Minimum margins in the global estimates at every node.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    /// max |q|^2_σ e^{-2ψ1-2ψ2}.
    pub alpha_max: f64,
    /// 3 - alpha_max.
    pub alpha_margin: f64,
    /// max e^{ψ1-5ψ2}.
    pub ratio_max: f64,
    /// 6/5 - ratio_max.
    pub ratio_margin: f64,
    /// min over nodes of -det III / s, computed from r, s.
    pub det_gap: f64,
    pub strict: bool,
    pub nodes: usize,
}

pub fn verify_bounds(g: &HitchinGrid) -> BoundReport {
    let mut alpha_max = f64::NEG_INFINITY;
    let mut ratio_max = f64::NEG_INFINITY;
    let mut det_gap = f64::INFINITY;
    for n in 0..g.len() {
        let (a, b, sg) = (g.psi1[n], g.psi2[n], g.sigma[n]);
        alpha_max = alpha_max.max(g.q2[n] * (-2.0 * a - 2.0 * b).exp());
        ratio_max = ratio_max.max((a - 5.0 * b).exp());
        let s = (2.0 * b).exp() * sg;
        let r = (a - b).exp() * sg * sg;
        let q_abs2 = g.q2[n] * sg.powi(6);
        let det = q_abs2 / (r * r * s) - 3.0 * s;
        det_gap = det_gap.min(-det / s);
    }
    let alpha_margin = 3.0 - alpha_max;
    let ratio_margin = 1.2 - ratio_max;
    BoundReport { alpha_max, alpha_margin, ratio_max, ratio_margin, det_gap, strict: alpha_margin > 0.0 && ratio_margin > 0.0 && det_gap > 0.0, nodes: g.len() }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    pub final_residual: f64,
    /// Residual sup-norm before each step and after the last one.
    pub history: Vec<f64>,
    pub step_lengths: Vec<f64>,
    pub margins: BoundReport,
}

/// Lower band of a symmetric matrix, row-major: entry (i, j) with i - w <= j <= i.
struct Band {
    n: usize,
    w: usize,
    a: Vec<f64>,
}

impl Band {
    fn new(n: usize, w: usize) -> Self {
        Band { n, w, a: vec![0.0; n * (w + 1)] }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * (self.w + 1) + (j + self.w - i)
    }

    fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let k = self.at(i, j);
        self.a[k] += v;
    }

    /// In-place Cholesky factorization.
    fn factor(&mut self) -> Result<()> {
        let w = self.w;
        for i in 0..self.n {
            let lo = i.saturating_sub(w);
            for j in lo..=i {
                let kl = lo.max(j.saturating_sub(w));
                let ri = self.at(i, kl);
                let rj = self.at(j, kl);
                let len = j - kl;
                let dot: f64 = self.a[ri..ri + len].iter().zip(&self.a[rj..rj + len]).map(|(x, y)| x * y).sum();
                let idx = self.at(i, j);
                let s = self.a[idx] - dot;
                if i == j {
                    if !(s > 0.0) {
                        return Err(Error::LinearSolve(i));
                    }
                    self.a[idx] = s.sqrt();
                } else {
                    self.a[idx] = s / self.a[self.at(j, j)];
                }
            }
        }
        Ok(())
    }

    fn solve(&self, b: &mut [f64]) {
        let w = self.w;
        for i in 0..self.n {
            let lo = i.saturating_sub(w);
            let mut s = b[i];
            for k in lo..i {
                s -= self.a[self.at(i, k)] * b[k];
            }
            b[i] = s / self.a[self.at(i, i)];
        }
        for i in (0..self.n).rev() {
            let hi = (i + w).min(self.n - 1);
            let mut s = b[i];
            for k in i + 1..=hi {
                s -= self.a[self.at(k, i)] * b[k];
            }
            b[i] = s / self.a[self.at(i, i)];
        }
    }
}

/// Unknown nodes in band order: rows folded as 0, ny-1, 1, ny-2, ... on
/// periodic grids so that wrap-around neighbours stay close.
fn unknown_order(g: &HitchinGrid) -> (Vec<usize>, Vec<Option<usize>>) {
    let rows: Vec<usize> = match g.mode {
        BoundaryMode::Dirichlet => (1..g.ny - 1).collect(),
        BoundaryMode::Periodic => (0..g.ny).map(|p| if p % 2 == 0 { p / 2 } else { g.ny - 1 - p / 2 }).collect(),
    };
    let mut order = Vec::new();
    for j in rows {
        for i in 0..g.nx {
            if g.is_interior(i, j) {
                order.push(j * g.nx + i);
            }
        }
    }
    let mut pos = vec![None; g.len()];
    for (p, &n) in order.iter().enumerate() {
        pos[n] = Some(p);
    }
    (order, pos)
}

/// One Newton correction: solves J δ = -R through the SPD system -σ diag(1,3) J.
fn newton_step(g: &HitchinGrid, r1: &[f64], r2: &[f64], order: &[usize], pos: &[Option<usize>]) -> Result<Vec<f64>> {
    let m = 2 * order.len();
    let mut w = 1;
    for &n in order {
        let p = pos[n].expect("unknown");
        for nb in g.neighbours(n % g.nx, n / g.nx) {
            if let Some(q) = pos[nb] {
                w = w.max(2 * p.abs_diff(q) + 1);
            }
        }
    }
    let mut band = Band::new(m, w);
    let mut rhs = vec![0.0; m];
    let (cx, cy) = (1.0 / (g.hx * g.hx), 1.0 / (g.hy * g.hy));
    for &n in order {
        let p = pos[n].expect("unknown");
        let (i, j) = (n % g.nx, n / g.nx);
        let [west, east, south, north] = g.neighbours(i, j);
        for (c, sc) in [(0usize, 1.0), (1, 3.0)] {
            let u = 2 * p + c;
            band.add(u, u, sc * (cx + cy));
            for (nb, coef) in [(west, cx), (east, cx), (south, cy), (north, cy)] {
                if let Some(q) = pos[nb] {
                    let v = 2 * q + c;
                    if v < u {
                        band.add(u, v, -0.5 * sc * coef);
                    }
                }
            }
        }
        let (a, b, sg) = (g.psi1[n], g.psi2[n], g.sigma[n]);
        let e = (a - 3.0 * b).exp();
        band.add(2 * p, 2 * p, sg * (5.0 * e + 4.0 * g.q2[n] * (-2.0 * a).exp()));
        band.add(2 * p + 1, 2 * p, -15.0 * sg * e);
        band.add(2 * p + 1, 2 * p + 1, sg * (45.0 * e + 36.0 * (2.0 * b).exp()));
        rhs[2 * p] = sg * r1[n];
        rhs[2 * p + 1] = 3.0 * sg * r2[n];
    }
    band.factor()?;
    band.solve(&mut rhs);
    Ok(rhs)
}

/// Damped Newton iteration with Armijo backtracking on the residual sup-norm.
pub fn newton_solve(g: &HitchinGrid, tol: f64, max_iter: usize) -> Result<(HitchinGrid, SolveReport)> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut cur = g.clone();
    let (order, pos) = unknown_order(&cur);
    let (mut r1, mut r2) = residual(&cur)?;
    let sup = |a: &[f64], b: &[f64]| a.iter().chain(b).map(|x| x.abs()).fold(0.0, f64::max);
    let mut norm = sup(&r1, &r2);
    let mut history = vec![norm];
    let mut step_lengths = Vec::new();
    let mut iterations = 0;
    while norm > tol {
        if iterations == max_iter {
            return Err(Error::NoConvergence { iterations, residual: norm, history });
        }
        let delta = newton_step(&cur, &r1, &r2, &order, &pos)?;
        let mut lambda = 1.0;
        let accepted = loop {
            let mut trial = cur.clone();
            for (p, &n) in order.iter().enumerate() {
                trial.psi1[n] += lambda * delta[2 * p];
                trial.psi2[n] += lambda * delta[2 * p + 1];
            }
            let (t1, t2) = residual(&trial)?;
            let tn = sup(&t1, &t2);
            if tn.is_finite() && tn <= (1.0 - ARMIJO * lambda) * norm {
                break Some((trial, t1, t2, tn));
            }
            lambda *= 0.5;
            if lambda < MIN_STEP {
                break None;
            }
        };
        iterations += 1;
        match accepted {
            Some((trial, t1, t2, tn)) => {
                cur = trial;
                r1 = t1;
                r2 = t2;
                norm = tn;
                history.push(norm);
                step_lengths.push(lambda);
            }
            None => return Err(Error::NoConvergence { iterations, residual: norm, history }),
        }
    }
    let margins = verify_bounds(&cur);
    Ok((cur, SolveReport { iterations, final_residual: norm, history, step_lengths, margins }))
}

/// Constant solution on a flat surface with constant |q|^2_σ = c: (ln a, ln b)
/// with b = (25c/108)^{1/12}, a = (6/5) b^5.
pub fn flat_constant_solution(c: f64) -> Result<(f64, f64)> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("|q|^2 must be positive, got {c}")));
    }
    let lb = (25.0 * c / 108.0).ln() / 12.0;
    Ok((1.2f64.ln() + 5.0 * lb, lb))
}

/// Estimated orders log(r_{k+1}/r_k) / log(r_k/r_{k-1}) over entries of the
/// history above `floor`.
pub fn convergence_orders(history: &[f64], floor: f64) -> Vec<f64> {
    let h: Vec<f64> = history.iter().copied().filter(|&r| r > floor).collect();
    h.windows(3).map(|w| (w[2] / w[1]).ln() / (w[1] / w[0]).ln()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SensitivityReport {
    pub eps: Vec<f64>,
    /// ‖ψ(ε) - ψ(0)‖_∞ / ε over both fields.
    pub ratios: Vec<f64>,
    pub ratios_psi1: Vec<f64>,
    pub ratios_psi2: Vec<f64>,
    /// Relative change of the ratio between the last two steps.
    pub stabilization: f64,
}

/// Re-solves with |q|^2_σ + ε δ for each ε, starting from the converged `base`.
pub fn sensitivity_probe(base: &HitchinGrid, delta: &[f64], eps_steps: &[f64], tol: f64, max_iter: usize) -> Result<SensitivityReport> {
    if delta.len() != base.len() {
        return Err(Error::Shape(format!("perturbation has {} entries, expected {}", delta.len(), base.len())));
    }
    let mut rep = SensitivityReport { eps: eps_steps.to_vec(), ratios: vec![], ratios_psi1: vec![], ratios_psi2: vec![], stabilization: 0.0 };
    for &eps in eps_steps {
        let mut g = base.clone();
        for (q, d) in g.q2.iter_mut().zip(delta) {
            *q += eps * d;
        }
        let (sol, _) = newton_solve(&g, tol, max_iter)?;
        let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / eps;
        let d1 = diff(&sol.psi1, &base.psi1);
        let d2 = diff(&sol.psi2, &base.psi2);
        rep.ratios_psi1.push(d1);
        rep.ratios_psi2.push(d2);
        rep.ratios.push(d1.max(d2));
    }
    if let [.., a, b] = rep.ratios[..] {
        rep.stabilization = if a == b { 0.0 } else { (a - b).abs() / a.abs().max(b.abs()) };
    }
    Ok(rep)
}

//! Property tests for the algebraic and analytic invariants.

use g2ein::classify::sextic_classify;
use g2ein::ein::{ann_plane, is_null, rational_circle, rational_mix, recover_line, transverse, NullLine, OsculatingPlane, RTFamily};
use g2ein::fuchsian::{boundary_point, degenerate_closed_form, degenerate_w, frenet, frenet_data, g_hat, g_tilde, imaginary_axis, same_point, sigma_inf_exact};
use g2ein::g2::{psl2_embed, stiefel_to_g2, G2Matrix, Moebius};
use g2ein::hitchin::{
    flat_constant_solution, frame_cross_residual, frame_family, frame_tau_residual, higgs_data, newton_solve, residual, BoundaryMode, HiggsPoint, HitchinGrid,
};
use g2ein::linalg::same_span;
use g2ein::octonion::{gram_matrix, m, BasisTag, ImVector, SplitOct};
use g2ein::sampling;
use g2ein::scalar::{int, rat, Rational};
use g2ein::sextic::{divides, q2, q6, q6_pair, Sextic};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_diff(a: &ImVector<f64>, b: &ImVector<f64>) -> f64 {
    a.coords.iter().zip(&b.coords).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn sup(v: &ImVector<f64>) -> f64 {
    v.coords.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// |a/|a| -+ b/|b|| minimized over the sign.
fn projective_gap(a: &ImVector<f64>, b: &ImVector<f64>) -> f64 {
    let (a, b) = (a.scale(&(1.0 / sup(a))), b.scale(&(1.0 / sup(b))));
    max_diff(&a, &b).min(max_diff(&a, &-b))
}

fn rational_moebius<R: Rng>(rng: &mut R) -> Moebius<Rational> {
    loop {
        let a = sampling::rational(rng, -3, 3, 2);
        if a.is_zero() {
            continue;
        }
        let b = sampling::rational(rng, -3, 3, 2);
        let c = sampling::rational(rng, -3, 3, 2);
        let d = (Rational::one() + b.clone() * c.clone()) / a.clone();
        return Moebius::new(a, b, c, d, 0.0).unwrap();
    }
}

fn f64_moebius<R: Rng>(rng: &mut R) -> Moebius<f64> {
    let a = rng.gen_range(0.7..1.4);
    let (b, c) = (rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
    Moebius::new(a, b, c, (1.0 + b * c) / a, 1e-12).unwrap()
}

/// Exact Stiefel triple x = c2 i + c1 l, y = c j + s k, z = c1 i + c2 l.
fn rational_stiefel<R: Rng>(rng: &mut R) -> (ImVector<Rational>, ImVector<Rational>, ImVector<Rational>) {
    let s = loop {
        let s = sampling::rational(rng, 1, 4, 3);
        if !s.is_zero() {
            break s;
        }
    };
    let (c1, c2) = rational_mix(&s);
    let (c, sn) = rational_circle(&sampling::rational(rng, -3, 3, 4));
    let x = m::i::<Rational>().scale(&c2) + m::l().scale(&c1);
    let y = m::j::<Rational>().scale(&c) + m::k().scale(&sn);
    let z = m::i::<Rational>().scale(&c1) + m::l().scale(&c2);
    (x, y, z)
}

fn apply_exact(g: &G2Matrix<Rational>, v: &ImVector<Rational>) -> ImVector<Rational> {
    g.apply(v).unwrap()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

// Octonions.

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn norm_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (sampling::rational_oct(&mut r), sampling::rational_oct(&mut r));
        prop_assert_eq!((&x * &y).quad(), x.quad() * y.quad());
    }

    #[test]
    fn multiplication_is_alternative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (sampling::rational_oct(&mut r), sampling::rational_oct(&mut r));
        prop_assert_eq!(&(&x * &x) * &y, &x * &(&x * &y));
        prop_assert_eq!(&(&y * &x) * &x, &y * &(&x * &x));
    }

    #[test]
    fn table_matches_recursion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y): (SplitOct<Rational>, SplitOct<Rational>) = (sampling::rational_oct(&mut r), sampling::rational_oct(&mut r));
        prop_assert_eq!(x.mul_table(&y), x.mul_cd(&y));
    }

    #[test]
    fn double_cross_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (sampling::rational_im(&mut r), sampling::rational_im(&mut r));
        let lhs = x.cross(&x.cross(&y).unwrap()).unwrap();
        let rhs = x.scale(&x.quad_pair(&y).unwrap()) - y.scale(&x.quad());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_of_null_is_nilpotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = sampling::rational_null(&mut r);
        let c = u.cross_matrix().unwrap();
        let c2 = c.mul(&c);
        prop_assert!(!c2.data.iter().all(|x| x.is_zero()));
        prop_assert!(c2.mul(&c).data.iter().all(|x| x.is_zero()));
        prop_assert_eq!(u.annihilator().unwrap().len(), 3);
    }

    #[test]
    fn triple_form_is_alternating(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (sampling::rational_im(&mut r), sampling::rational_im(&mut r), sampling::rational_im(&mut r));
        let w = x.triple_form(&y, &z).unwrap();
        prop_assert_eq!(y.triple_form(&x, &z).unwrap(), -w.clone());
        prop_assert_eq!(x.triple_form(&z, &y).unwrap(), -w.clone());
        prop_assert_eq!(y.triple_form(&z, &x).unwrap(), w);
        prop_assert!(x.triple_form(&x, &z).unwrap().is_zero());
    }

    #[test]
    fn triple_form_is_g2_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = sampling::stiefel_triple(&mut r);
        let g = stiefel_to_g2(&a, &b, &c, 1e-9).unwrap();
        let (x, y, z) = (sampling::f64_im(&mut r), sampling::f64_im(&mut r), sampling::f64_im(&mut r));
        let before = x.triple_form(&y, &z).unwrap();
        let after = g.apply(&x).unwrap().triple_form(&g.apply(&y).unwrap(), &g.apply(&z).unwrap()).unwrap();
        let scale = g.m.max_abs().powi(3).max(1.0);
        prop_assert!((before - after).abs() <= 1e-10 * scale, "{before} vs {after}");
    }
}

#[test]
fn triple_form_examples() {
    assert_eq!(m::i::<Rational>().triple_form(&m::j(), &m::k()).unwrap(), int(1));
    assert_eq!(m::i::<Rational>().triple_form(&m::j(), &m::l()).unwrap(), int(0));
}

// G2 and the principal embedding.

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn exact_stiefel_element_is_orthogonal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = rational_stiefel(&mut r);
        let g = stiefel_to_g2(&x, &y, &z, 0.0).unwrap();
        let gram = gram_matrix(BasisTag::MImaginary);
        prop_assert_eq!(g.m.transpose().mul(&gram).mul(&g.m), gram);
        prop_assert_eq!(g.det(), Rational::one());
        prop_assert_eq!(g.apply(&m::i()).unwrap(), x);
        prop_assert_eq!(g.apply(&m::j()).unwrap(), y);
        prop_assert_eq!(g.apply(&m::l()).unwrap(), z);
        prop_assert!(g.is_g2(0.0).unwrap().passed);
    }

    #[test]
    fn embedding_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, h) = (f64_moebius(&mut r), f64_moebius(&mut r));
        let (eg, eh, egh) = (psl2_embed(&g), psl2_embed(&h), psl2_embed(&g.compose(&h)));
        let prod = eg.compose(&eh).unwrap();
        prop_assert!(prod.m.sub(&egh.m).max_abs() <= 1e-9 * egh.m.max_abs().max(1.0));
        prop_assert!(egh.to_basis(BasisTag::MImaginary).unwrap().is_g2(1e-9).unwrap().passed);
    }

    #[test]
    fn q6_is_psl2_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = rational_moebius(&mut r);
        let p = Sextic::new((0..7).map(|_| sampling::rational(&mut r, -4, 4, 3)).collect());
        let s = Sextic::new((0..7).map(|_| sampling::rational(&mut r, -4, 4, 3)).collect());
        prop_assert_eq!(q6(&g.act_sextic(&p)), q6(&p));
        prop_assert_eq!(q6_pair(&g.act_sextic(&p), &g.act_sextic(&s)), q6_pair(&p, &s));
    }

    #[test]
    fn moebius_action_on_sextics_is_a_left_action(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, h) = (rational_moebius(&mut r), rational_moebius(&mut r));
        let p = Sextic::new((0..7).map(|_| sampling::rational(&mut r, -4, 4, 3)).collect());
        prop_assert_eq!(g.act_sextic(&h.act_sextic(&p)), g.compose(&h).act_sextic(&p));
    }
}

// Einstein universe.

fn random_family<R: Rng>(r: &mut R) -> RTFamily<f64> {
    frenet(&sampling::hpoint(r)).unwrap().family(1e-9).unwrap()
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn family_points_are_null_members(seed in any::<u64>(), theta in 0.0..TAU, alpha in 0.0..TAU, rad in 0.05..20.0f64) {
        let mut r = rng(seed);
        let fam = random_family(&mut r);
        let ray = fam.point(theta, alpha, rad).unwrap();
        prop_assert!(is_null(&ray.rep));
        prop_assert!(fam.contains(&ray.line(), 1e-9).unwrap());
        let p = fam.project(&ray.rep).unwrap();
        prop_assert!(p.ell > 0.0);
        let t = p.t[0] * p.t[0] + p.t[1] * p.t[1];
        let n = p.n[0] * p.n[0] + p.n[1] * p.n[1];
        // rho^2 = r^2 + 1 up to the common scale ell^2.
        prop_assert!((t - n - p.ell * p.ell).abs() <= 1e-9 * t.max(1.0));
    }

    #[test]
    fn recover_line_returns_the_family_axis(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fam = random_family(&mut r);
        let pts: Vec<ImVector<f64>> = (0..5)
            .map(|_| fam.point(r.gen_range(0.0..TAU), r.gen_range(0.0..TAU), r.gen_range(0.2..3.0)).unwrap().rep)
            .collect();
        let plane = OsculatingPlane::new(pts, 1e-9).unwrap();
        let x = recover_line(&plane).unwrap();
        prop_assert!(projective_gap(&x, &fam.xhat) <= 1e-7);
    }

    #[test]
    fn transversality_is_symmetric_and_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l1 = NullLine::new(sampling::rational_null(&mut r)).unwrap();
        let l2 = NullLine::new(sampling::rational_null(&mut r)).unwrap();
        let (x, y, z) = rational_stiefel(&mut r);
        let g = stiefel_to_g2(&x, &y, &z, 0.0).unwrap();
        let t = transverse(&l1, &l2, 0.0).unwrap();
        prop_assert_eq!(t, transverse(&l2, &l1, 0.0).unwrap());
        let g1 = NullLine::new(apply_exact(&g, &l1.rep)).unwrap();
        let g2 = NullLine::new(apply_exact(&g, &l2.rep)).unwrap();
        prop_assert_eq!(t, transverse(&g1, &g2, 0.0).unwrap());
        prop_assert!(!transverse(&l1, &l1, 0.0).unwrap());
    }

    #[test]
    fn annihilator_plane_is_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = NullLine::new(sampling::rational_null(&mut r)).unwrap();
        let (x, y, z) = rational_stiefel(&mut r);
        let g = stiefel_to_g2(&x, &y, &z, 0.0).unwrap();
        let moved: Vec<Vec<Rational>> = ann_plane(&l).unwrap().plane.iter().map(|v| apply_exact(&g, v).to_vec()).collect();
        let gl = NullLine::new(apply_exact(&g, &l.rep)).unwrap();
        let direct: Vec<Vec<Rational>> = ann_plane(&gl).unwrap().plane.iter().map(|v| v.to_vec()).collect();
        prop_assert!(same_span(&moved, &direct));
        let plane = ann_plane(&l).unwrap();
        prop_assert_eq!(plane.distribution.len(), 2);
        for v in &plane.plane {
            prop_assert!(l.rep.cross(v).unwrap().is_zero());
        }
    }
}

// The Fuchsian curve.

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn second_form_is_complex_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = sampling::hpoint(&mut r);
        let d = frenet_data(&p).unwrap();
        let nu = g2ein::fuchsian::f_hat(&p).unwrap().to_m().unwrap();
        let (u, v): ((f64, f64), (f64, f64)) = ((r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let ju = (-u.1, u.0);
        let lhs = d.second_form((&ju.0, &ju.1), (&v.0, &v.1)).to_m().unwrap();
        let rhs = nu.cross(&d.second_form((&u.0, &u.1), (&v.0, &v.1)).to_m().unwrap()).unwrap();
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-9 * sup(&rhs).max(1.0));
        // The same J acts on the tangent plane.
        let jt = nu.cross(&d.tangent((&u.0, &u.1)).to_m().unwrap()).unwrap();
        let t = d.tangent((&ju.0, &ju.1)).to_m().unwrap();
        prop_assert!(max_diff(&jt, &t) <= 1e-9 * sup(&t).max(1.0));
    }

    #[test]
    fn frenet_frame_is_orthonormal_with_signs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fr = frenet(&sampling::hpoint(&mut r)).unwrap();
        let all = fr.all();
        let signs = [1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0];
        for a in 0..7 {
            for b in 0..7 {
                let want = if a == b { signs[a] } else { 0.0 };
                let got = q6_pair(all[a], all[b]);
                prop_assert!((got - want).abs() <= 1e-9, "({a}, {b}): {got}");
            }
        }
    }

    #[test]
    fn jets_are_divisible_by_g(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = sampling::rational_hpoint(&mut r);
        let g = g_tilde(&p)[0].clone();
        let g2 = g.mul(&g);
        let d = frenet_data(&p).unwrap();
        for v in [&d.f, &d.fx, &d.fy] {
            prop_assert!(divides(&g2, v).unwrap());
        }
        for v in [&d.ii_xx, &d.ii_xy, &d.ii_yy] {
            prop_assert!(divides(&g, v).unwrap());
            prop_assert!(!divides(&g2, v).unwrap());
        }
        for v in [&d.b1, &d.b2] {
            prop_assert!(!divides(&g, v).unwrap());
        }
        prop_assert_eq!(q2(&g), int(2));
    }

    #[test]
    fn g_hat_has_unit_norm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = g_hat(&sampling::hpoint(&mut r)).unwrap();
        prop_assert!((q2(&g[0]) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn distinct_boundary_points_are_transverse(a in -20i64..20, b in 1i64..20, c in -20i64..20, d in 1i64..20) {
        prop_assume!(a * d != b * c);
        let p = boundary_point(int(a), int(b));
        let q = boundary_point(int(c), int(d));
        prop_assert!(q6(&p).is_zero());
        prop_assert!(!q6_pair(&p, &q).is_zero());
    }

    #[test]
    fn sigma_inf_is_two_to_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = sampling::rational_hpoint(&mut r);
        let u = (sampling::rational(&mut r, -2, 2, 3), sampling::rational(&mut r, -2, 2, 3));
        let v = (sampling::rational(&mut r, -2, 2, 3), sampling::rational(&mut r, -2, 2, 3));
        prop_assume!(!(u.0.is_zero() && u.1.is_zero()) && !(v.0.is_zero() && v.1.is_zero()));
        let a = sigma_inf_exact(&p, (&u.0, &u.1), (&v.0, &v.1)).unwrap();
        let b = sigma_inf_exact(&p, (&-u.0.clone(), &-u.1.clone()), (&v.0, &v.1)).unwrap();
        prop_assert!(same_point(&a, &b));
    }

    #[test]
    fn collinear_triples_have_positive_product(t1 in 1i64..40, t2 in 1i64..40, t3 in 1i64..40, den in 1i64..9) {
        prop_assume!(t1 != t2 && t2 != t3 && t1 != t3);
        let g = |t: i64| g_tilde(&imaginary_axis(&rat(t, den)))[0].clone();
        let w = g(t1).mul(&g(t2)).mul(&g(t3));
        prop_assert!(q6(&w).is_positive());
    }

    #[test]
    fn degenerate_octic_has_the_gram_sign(num in 1i64..200, den in 1i64..60) {
        prop_assume!(num != den);
        let t = rat(num, den);
        let direct = q6(&degenerate_w(&t));
        let closed = degenerate_closed_form(&t);
        prop_assert_eq!(direct.signum(), closed.signum());
        prop_assert_eq!(direct * t.clone() * t, closed);
    }
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn classification_is_psl2_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = sampling::rational_null_sextic(&mut r);
        let g = rational_moebius(&mut r);
        let gp = g.act_sextic(&p);
        prop_assume!(gp.c[0] != Rational::zero());
        let (a, b) = (sextic_classify(&p).unwrap(), sextic_classify(&gp).unwrap());
        prop_assert_eq!(a.null, b.null);
        prop_assert_eq!(&a.real_multiplicities, &b.real_multiplicities);
        prop_assert_eq!(&a.complex_multiplicities, &b.complex_multiplicities);
        prop_assert_eq!(a.k_stratum, b.k_stratum);
        prop_assert_eq!(a.predicted_preimages, b.predicted_preimages);
    }
}

// Hitchin system.

/// The two residuals written out directly from the equations, with
/// neighbours taken modulo the grid size.
fn oracle_residual(g: &HitchinGrid) -> (Vec<f64>, Vec<f64>) {
    let (nx, ny) = (g.nx, g.ny);
    let at = |f: &Vec<f64>, i: isize, j: isize| f[(j.rem_euclid(ny as isize) as usize) * nx + i.rem_euclid(nx as isize) as usize];
    let mut out = (vec![0.0; nx * ny], vec![0.0; nx * ny]);
    for j in 0..ny as isize {
        for i in 0..nx as isize {
            let edge = i == 0 || j == 0 || i == nx as isize - 1 || j == ny as isize - 1;
            if g.mode == BoundaryMode::Dirichlet && edge {
                continue;
            }
            let lap = |f: &Vec<f64>| {
                (at(f, i - 1, j) + at(f, i + 1, j) - 2.0 * at(f, i, j)) / (g.hx * g.hx)
                    + (at(f, i, j - 1) + at(f, i, j + 1) - 2.0 * at(f, i, j)) / (g.hy * g.hy)
            };
            let n = j as usize * nx + i as usize;
            let ds = 4.0 * g.sigma[n];
            let (a, b) = (g.psi1[n], g.psi2[n]);
            let e = (a - 3.0 * b).exp();
            out.0[n] = 2.0 * lap(&g.psi1) / ds - 5.0 * e + 2.0 * g.q2[n] * (-2.0 * a).exp() - 2.5 * g.kappa[n];
            out.1[n] = 2.0 * lap(&g.psi2) / ds + 5.0 * e - 6.0 * (2.0 * b).exp() - 0.5 * g.kappa[n];
        }
    }
    out
}

fn random_grid<R: Rng>(r: &mut R) -> HitchinGrid {
    let (nx, ny) = (r.gen_range(3..10), r.gen_range(3..10));
    let mode = if r.gen_bool(0.5) { BoundaryMode::Periodic } else { BoundaryMode::Dirichlet };
    let (hx, hy) = (r.gen_range(0.05..0.5), r.gen_range(0.05..0.5));
    let mut g = HitchinGrid::new(nx, ny, mode, (0.0, 1.0), (hx, hy), |x, y| 0.5 + 0.1 * (x * y).sin().abs() + y * 0.01).unwrap();
    for k in 0..g.len() {
        g.psi1[k] = r.gen_range(-1.0..1.0);
        g.psi2[k] = r.gen_range(-1.0..1.0);
        g.q2[k] = r.gen_range(0.0..2.0);
        g.kappa[k] = r.gen_range(-3.0..1.0);
    }
    g
}

proptest! {
    #![proptest_config(cfg(100))]

    #[test]
    fn residual_matches_direct_stencil(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_grid(&mut r);
        let (r1, r2) = residual(&g).unwrap();
        let (o1, o2) = oracle_residual(&g);
        let scale = o1.iter().chain(&o2).map(|x| x.abs()).fold(1.0, f64::max);
        for (a, b) in r1.iter().chain(&r2).zip(o1.iter().chain(&o2)) {
            prop_assert!((a - b).abs() <= 1e-13 * scale, "{a} vs {b}");
        }
    }
}

fn higgs_point<R: Rng>(r: &mut R) -> HiggsPoint {
    let q = Complex64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
    HiggsPoint::new(q, r.gen_range(0.2..5.0), r.gen_range(0.2..5.0)).unwrap()
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn frame_w_is_a_real_g2_frame(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = higgs_point(&mut r);
        prop_assert!(frame_tau_residual(&p).unwrap() <= 1e-12);
        prop_assert!(frame_cross_residual(&p).unwrap() <= 1e-10);
        prop_assert!(frame_family(&p, 1e-10).is_ok());
    }

    #[test]
    fn real_structure_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = higgs_point(&mut r);
        let d = higgs_data(&p).unwrap();
        let scale = d.phi.max_abs() * d.h.iter().fold(1.0, |a: f64, b| a.max(*b).max(1.0 / b));
        prop_assert!(d.tau.max() <= 1e-12 * scale.powi(2));
    }

    #[test]
    fn flat_constant_solution_is_exact(c in 0.01..50.0f64, n in 3usize..12) {
        let mut g = HitchinGrid::flat_torus(n, c).unwrap();
        let (a, b) = flat_constant_solution(c).unwrap();
        g.psi1.iter_mut().for_each(|x| *x = a);
        g.psi2.iter_mut().for_each(|x| *x = b);
        let (r1, r2) = residual(&g).unwrap();
        let scale = 6.0 * (2.0 * b).exp() + 2.0 * c * (-2.0 * a).exp();
        prop_assert!(r1.iter().chain(&r2).all(|x| x.abs() <= 1e-13 * scale));
    }
}

fn small_flat<R: Rng>(r: &mut R) -> HitchinGrid {
    let mut g = HitchinGrid::flat_torus(8, r.gen_range(0.5..3.0)).unwrap();
    for k in 0..g.len() {
        g.psi1[k] = r.gen_range(-0.3..0.3);
        g.psi2[k] = r.gen_range(-0.3..0.3);
    }
    g
}

proptest! {
    #![proptest_config(cfg(16))]

    #[test]
    fn newton_is_deterministic_and_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = small_flat(&mut r);
        let (a, ra) = newton_solve(&g, 1e-11, 40).unwrap();
        let (b, rb) = newton_solve(&g, 1e-11, 40).unwrap();
        let bits = |v: &Vec<f64>| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&a.psi1), bits(&b.psi1));
        prop_assert_eq!(bits(&a.psi2), bits(&b.psi2));
        prop_assert_eq!(&ra.history, &rb.history);
        prop_assert!(ra.history.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(ra.final_residual <= 1e-11);
    }
}

#[test]
fn model_family_is_valid_exactly() {
    let fam: RTFamily<Rational> = RTFamily::model();
    assert!(RTFamily::new(fam.xhat.clone(), fam.t.clone(), fam.n.clone(), 0.0).is_ok());
}

//! The three subcommands: invariant suites, PDE solves and Fuchsian sampling.

use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::classify::{k_representatives, sextic_classify, Classification};
use crate::config::{Instance, RunConfig};
use crate::ein::{is_null, verify_unique_splitting, RTFamily};
use crate::error::Result;
use crate::fuchsian::{dev, dev_lift, dev_rank, f_hat, fiber_degenerate_set, frenet, k5_witness, osculating_intersect, DevPoint, HPoint, RANK_THRESHOLD};
use crate::g2::{generators, monomial_to_bprime, psl2_embed, stiefel_to_g2, Moebius};
use crate::hitchin::{flat_constant_solution, newton_solve, verify_bounds, HitchinGrid};
use crate::octonion::{ImVector, SplitOct};
use crate::report::{num, write_csv, Check, Report};
use crate::sampling;
use crate::sextic::q6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rel_null(v: &ImVector<f64>) -> f64 {
    let n2: f64 = v.coords.iter().map(|c| c * c).sum();
    v.quad().abs() / n2
}

pub fn run_verify(cfg: &RunConfig, hash: String) -> Result<Report> {
    let mut rep = Report::new("verify", hash, cfg.seed);
    let mut rng = rng(cfg.seed);
    let (n, tol) = (cfg.verify.samples, cfg.verify.tol);
    for suite in &cfg.verify.suites {
        match suite.as_str() {
            "algebra" => algebra_suite(&mut rep, &mut rng, n, tol),
            "ein" => ein_suite(&mut rep, &mut rng, n)?,
            "g2" => g2_suite(&mut rep, &mut rng, n, tol)?,
            _ => fuchsian_suite(&mut rep, &mut rng, n, tol)?,
        }
    }
    Ok(rep)
}

fn algebra_suite(rep: &mut Report, rng: &mut ChaCha8Rng, n: usize, tol: f64) {
    let table_ok = (0..8).all(|a| {
        (0..8).all(|b| {
            let (x, y) = (SplitOct::<crate::scalar::Rational>::basis(a), SplitOct::basis(b));
            x.mul_cd(&y) == x.mul_table(&y)
        })
    });
    rep.push(Check::flag("algebra.table_matches_recursion", table_ok, "64 basis products"));
    let (mut comp, mut alt) = (true, true);
    for _ in 0..n {
        let (x, y) = (sampling::rational_oct(rng), sampling::rational_oct(rng));
        comp &= x.mul_table(&y).quad() == x.quad() * y.quad();
        alt &= x.mul_table(&x.mul_table(&y)) == x.mul_table(&x).mul_table(&y);
        alt &= y.mul_table(&x).mul_table(&x) == y.mul_table(&x.mul_table(&x));
    }
    rep.push(Check::flag("algebra.composition_exact", comp, format!("{n} rational pairs")));
    rep.push(Check::flag("algebra.alternativity_exact", alt, format!("{n} rational pairs")));
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (x, y) = (sampling::f64_oct(rng), sampling::f64_oct(rng));
        worst = worst.max((x.mul_table(&y).quad() - x.quad() * y.quad()).abs());
    }
    rep.push(Check::residual("algebra.composition_float", worst, tol));
}

fn ein_suite(rep: &mut Report, rng: &mut ChaCha8Rng, n: usize) -> Result<()> {
    let (mut null_ok, mut generic_ok) = (true, true);
    for _ in 0..n {
        let u = sampling::rational_null(rng);
        let ann = u.annihilator()?;
        null_ok &= ann.len() == 3 && ann.iter().all(is_null);
        let v = sampling::rational_im(rng);
        if !is_null(&v) {
            generic_ok &= v.annihilator()?.len() == 1;
        }
    }
    rep.push(Check::flag("ein.annihilator_null_dim3", null_ok, format!("{n} null vectors")));
    rep.push(Check::flag("ein.annihilator_generic_dim1", generic_ok, format!("{n} vectors")));
    let split = verify_unique_splitting(&RTFamily::model(), n, rng)?;
    rep.push(Check::flag("ein.unique_splitting", split.all_found(), format!("{} trials", split.trials)));
    Ok(())
}

fn g2_suite(rep: &mut Report, rng: &mut ChaCha8Rng, n: usize, tol: f64) -> Result<()> {
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (x, y, z) = sampling::stiefel_triple(rng);
        let g = stiefel_to_g2(&x, &y, &z, 1e-9)?;
        worst = worst.max(g.is_g2(tol)?.cross_residual);
    }
    rep.push(Check::residual("g2.stiefel_preserves_cross", worst, tol));
    let (l, s) = (rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
    let pairs =
        [(Moebius::<f64>::diag(l), generators::diag(l)), (Moebius::unipotent(s), generators::unipotent(s)), (Moebius::rotation90(), generators::rotation())];
    let (mut entry, mut cross): (f64, f64) = (0.0, 0.0);
    for (g, want) in &pairs {
        let m = psl2_embed(g);
        entry = entry.max(monomial_to_bprime(&m).max_diff(want));
        cross = cross.max(m.is_g2(tol)?.cross_residual);
    }
    rep.push(Check::residual("g2.psl2_generator_matrices", entry, tol));
    rep.push(Check::residual("g2.psl2_preserves_cross", cross, tol));
    Ok(())
}

fn fuchsian_suite(rep: &mut Report, rng: &mut ChaCha8Rng, n: usize, tol: f64) -> Result<()> {
    let (mut unit, mut frame): (f64, f64) = (0.0, 0.0);
    let mut null: f64 = 0.0;
    let mut rank = f64::INFINITY;
    for _ in 0..n {
        let p = sampling::hpoint(rng);
        unit = unit.max((q6(&f_hat(&p)?) - 1.0).abs());
        let fr = frenet(&p)?;
        let signs = [1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0];
        for (v, s) in fr.all().iter().zip(signs) {
            frame = frame.max((q6(v) - s).abs());
        }
        let d = DevPoint { p, theta: rng.gen_range(0.0..std::f64::consts::TAU), alpha: rng.gen_range(0.0..std::f64::consts::TAU), r: rng.gen_range(0.1..5.0) };
        null = null.max(rel_null(&dev_lift(&d)?.to_m()?));
        rank = rank.min(dev_rank(&d)?);
    }
    rep.push(Check::residual("fuchsian.f_hat_unit", unit, tol));
    rep.push(Check::residual("fuchsian.frame_norms", frame, tol));
    rep.push(Check::residual("fuchsian.dev_null", null, tol));
    rep.push(Check {
        name: "fuchsian.dev_immersion".into(),
        passed: rank > RANK_THRESHOLD,
        value: rank,
        tolerance: RANK_THRESHOLD,
        detail: "smallest chart singular value".into(),
    });
    let mut sig_ok = true;
    for _ in 0..n.min(20) {
        let (p, q) = (sampling::rational_hpoint(rng), sampling::rational_hpoint(rng));
        if p == q {
            continue;
        }
        let i = osculating_intersect(&p, &q, 0.0);
        sig_ok &= i.dim == 3 && i.signature == (1, 2);
    }
    rep.push(Check::flag("fuchsian.osculating_intersection", sig_ok, "dim 3, signature (1,2)"));
    let w = k5_witness()?;
    rep.push(Check::flag("fuchsian.k5_decomposition", w.residual.is_zero(), format!("{:?}", w.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>())));
    Ok(())
}

/// Builds the configured instance with its initial guess.
pub fn build_instance(cfg: &RunConfig) -> Result<HitchinGrid> {
    let s = &cfg.solve;
    let rect = || HitchinGrid::hyperbolic_rect(s.n, (s.x_range[0], s.x_range[1]), (s.y_range[0], s.y_range[1]));
    let mut g = match s.instance {
        Instance::Hyperbolic => rect()?,
        Instance::Holomorphic => {
            let mut g = rect()?;
            let (eps, z0) = (s.eps, Complex64::new(s.z0[0], s.z0[1]));
            g.set_holomorphic_q(|z| (z - z0) * eps);
            g.label = format!("hyperbolic rectangle, q = {eps} (z - {z0})");
            g
        }
        Instance::Flat => HitchinGrid::flat_torus(s.n, s.c)?,
        Instance::Synthetic => {
            let mut g = HitchinGrid::flat_torus(s.n, s.c)?;
            let (c, a) = (s.c, s.amplitude);
            g.set_q2(|x, y| c * (1.0 + a * x.sin() * y.cos()));
            g.label = format!("synthetic (non-holomorphic) torus, |q|^2 = {c} (1 + {a} sin x cos y)");
            g.synthetic = true;
            g
        }
    };
    let mut rng = rng(cfg.seed);
    for j in 0..g.ny {
        for i in 0..g.nx {
            if g.is_interior(i, j) && s.init > 0.0 {
                let n = j * g.nx + i;
                g.psi1[n] = rng.gen_range(-s.init..=s.init);
                g.psi2[n] = rng.gen_range(-s.init..=s.init);
            }
        }
    }
    Ok(g)
}

pub fn run_solve(cfg: &RunConfig, hash: String, out: &Path) -> Result<Report> {
    let s = &cfg.solve;
    let mut rep = Report::new("solve", hash, cfg.seed);
    let g = build_instance(cfg)?;
    let (sol, sr) = match newton_solve(&g, s.tol, s.max_iter) {
        Ok(x) => x,
        Err(e) => {
            let history = match &e {
                crate::Error::NoConvergence { history, .. } => history.clone(),
                _ => vec![],
            };
            rep.push(Check::flag("solve.converged", false, e.to_string()));
            rep.data = json!({ "instance": g.label, "history": history });
            return Ok(rep);
        }
    };
    rep.push(Check::residual("solve.converged", sr.final_residual, s.tol).with_detail(format!("{} iterations", sr.iterations)));
    let m = &sr.margins;
    match s.instance {
        Instance::Hyperbolic => {
            let sup = sol.psi1.iter().chain(&sol.psi2).map(|x| x.abs()).fold(0.0, f64::max);
            rep.push(Check::residual("solve.psi_vanishes", sup, 1e-10));
        }
        Instance::Flat => {
            let (a, b) = flat_constant_solution(s.c)?;
            let err = sol.psi1.iter().map(|x| (x - a).abs()).chain(sol.psi2.iter().map(|x| (x - b).abs())).fold(0.0, f64::max);
            rep.push(Check::residual("solve.closed_form", err, 1e-10));
            rep.push(Check::residual("solve.bounds_saturated", m.alpha_margin.abs().max(m.ratio_margin.abs()), 1e-10));
        }
        _ => {}
    }
    if matches!(s.instance, Instance::Hyperbolic | Instance::Holomorphic) {
        rep.push(Check::flag("solve.bounds_strict", m.strict, format!("margins {:e}, {:e}, det gap {:e}", m.alpha_margin, m.ratio_margin, m.det_gap)));
    }
    rep.data = json!({
        "instance": sol.label,
        "synthetic": sol.synthetic,
        "grid": { "nx": sol.nx, "ny": sol.ny, "mode": sol.mode, "hx": sol.hx, "hy": sol.hy },
        "solve": sr,
        "bounds": verify_bounds(&sol),
    });
    let rows: Vec<Vec<String>> = (0..sol.len())
        .map(|n| {
            let (i, j) = (n % sol.nx, n / sol.nx);
            let (x, y) = sol.point(i, j);
            vec![i.to_string(), j.to_string(), num(x), num(y), num(sol.psi1[n]), num(sol.psi2[n])]
        })
        .collect();
    write_csv(&out.join("fields.csv"), &["ix", "iy", "x", "y", "psi1", "psi2"], &rows)?;
    Ok(rep)
}

fn class_row(label: &str, c: &Classification) -> Vec<String> {
    vec![
        label.into(),
        c.null.to_string(),
        c.gw_member.to_string(),
        c.k_stratum.map(|k| k.to_string()).unwrap_or_default(),
        c.omega_sector.map(|k| k.to_string()).unwrap_or_default(),
        c.predicted_preimages.to_string(),
    ]
}

pub fn run_fuchsian(cfg: &RunConfig, hash: String, out: &Path) -> Result<Report> {
    let f = &cfg.fuchsian;
    let mut rep = Report::new("fuchsian", hash, cfg.seed);
    let mut rng = rng(cfg.seed);
    let p = HPoint::new(f.x, f.y)?;
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for a in 0..f.n_theta {
        for b in 0..f.n_alpha {
            let theta = std::f64::consts::TAU * a as f64 / f.n_theta as f64;
            let alpha = std::f64::consts::TAU * b as f64 / f.n_alpha as f64;
            let d = DevPoint { p: p.clone(), theta, alpha, r: f.r };
            let line = dev(&d)?;
            worst = worst.max(rel_null(&line.rep));
            let mut row = vec![num(f.x), num(f.y), num(theta), num(alpha), num(f.r)];
            row.extend(line.rep.coords.iter().map(|c| num(*c)));
            rows.push(row);
        }
    }
    write_csv(&out.join("fiber.csv"), &["x", "y", "theta", "alpha", "r", "l1", "l2", "l3", "l4", "l5", "l6", "l7"], &rows)?;
    rep.push(Check::residual("fuchsian.fiber_null", worst, f.null_tol));

    let mut rows = Vec::new();
    let mut strata_ok = true;
    for (k, s) in k_representatives().iter().enumerate() {
        let c = sextic_classify(s)?;
        if k < 4 {
            strata_ok &= c.predicted_preimages == 0;
        }
        rows.push(class_row(&format!("K{}", k + 1), &c));
    }
    for n in 0..f.sextic_samples {
        let s = sampling::rational_null_sextic(&mut rng);
        let c = sextic_classify(&s)?;
        if matches!(c.k_stratum, Some(1..=4)) {
            strata_ok &= c.predicted_preimages == 0;
        }
        rows.push(class_row(&format!("sample{n}"), &c));
    }
    write_csv(&out.join("classification.csv"), &["label", "null", "gw_member", "k_stratum", "omega_sector", "predicted_preimages"], &rows)?;
    rep.push(Check::flag("fuchsian.k_strata_not_in_image", strata_ok, "strata 1-4 have no predicted preimages"));

    let mut rows = Vec::new();
    let mut signs_ok = true;
    let ratio = (f.t_max / f.t_min).ln();
    for k in 0..f.t_steps {
        let t = f.t_min * (ratio * k as f64 / (f.t_steps - 1) as f64).exp();
        if (t - 1.0).abs() < 1e-12 {
            continue;
        }
        let d = fiber_degenerate_set(&t, 1e-12)?;
        signs_ok &= d.direct.signum() == d.closed_form.signum();
        rows.push(vec![num(t), num(d.direct), num(d.closed_form), num(d.closed_form.signum()), d.count.to_string()]);
    }
    write_csv(&out.join("degenerate.csv"), &["t", "q6_direct", "closed_form", "sign", "count"], &rows)?;
    rep.push(Check::flag("fuchsian.degenerate_signs", signs_ok, "sign of Q6(w) matches the octic"));
    Ok(rep)
}

use rand::Rng;
use slpot::asymptotic::asymptotic_interior;
use slpot::garding::{
    complex_sl_instance, curvature_fiber_inverse, curvature_fiber_matrix, curvature_membership,
    curvature_radial_slope, det_instance, g_asymptotic_interior, gsl_value, radial_first_integral,
    CurvatureJet,
};
use slpot::mat::SymMatrix;
use slpot::phase::sl_value;
use slpot::spectrum::{critical_points_from_roots, elementary_symmetric, roots_from_eigenvalues};
use slpot::tol::Tol;

mod common;

fn matmul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

/// `(C + JCJ)/2`, which satisfies `B = JBJ` and so drops out of the
/// `J`-commuting part; `J` in the same `(x, y)` ordering as the instance.
fn anti_invariant_part(c: &SymMatrix) -> SymMatrix {
    let n = c.n();
    let m = n / 2;
    let mut j = vec![0.0; n * n];
    for i in 0..m {
        j[i * n + (m + i)] = -1.0;
        j[(m + i) * n + i] = 1.0;
    }
    let jcj = matmul(n, &j, &matmul(n, c.data(), &j));
    SymMatrix::from_fn(n, |r, s| 0.5 * (c.get(r, s) + jcj[r * n + s]))
}

#[test]
fn determinant_instance_reproduces_the_base_pipeline() {
    let tol = Tol::default();
    let mut rng = common::rng(501);
    for trial in 0..500 {
        let n = 2 + trial % 4;
        let g = det_instance(n, &tol).unwrap();
        let a = common::random_sym(&mut rng, n, 5.0);
        let lam = g.eigenvalues(&a, &tol).unwrap();
        let spec = slpot::spectrum::eigenvalues(&a, &tol).unwrap();
        for (l, s) in lam.iter().zip(&spec.eigenvalues) {
            assert_eq!(l.to_bits(), s.to_bits(), "eigenvalue routes diverge");
        }
        let fg = gsl_value(&g, &a, &tol).unwrap();
        let f = sl_value(&a, &tol).unwrap();
        assert_eq!(fg.to_bits(), f.to_bits(), "operator values diverge");
        for theta in common::theta_samples(n) {
            let lhs = g_asymptotic_interior(&g, &a, theta, &tol).unwrap();
            let rhs = asymptotic_interior(&a, theta, &tol).unwrap();
            assert_eq!(lhs.member_interior, rhs.member_interior);
            assert_eq!(lhs.branch_case, rhs.branch_case);
        }
    }
}

#[test]
fn complex_instance_expansion_decays_at_cubic_order() {
    let tol = Tol::default();
    let mut rng = common::rng(502);
    for m in [2usize, 3] {
        let g = complex_sl_instance(m, &tol).unwrap();
        let mut accepted = 0;
        while accepted < 30 {
            let a = common::random_sym(&mut rng, 2 * m, 5.0);
            let lam = g.eigenvalues(&a, &tol).unwrap();
            if lam.iter().any(|l| l.abs() < 0.1) {
                continue;
            }
            let cubic: f64 = lam.iter().map(|l| 1.0 / (l * l * l)).sum();
            let sigma = elementary_symmetric(&lam);
            if sigma[m].abs() < 1e-3 || cubic.abs() < 1e-2 {
                continue;
            }
            accepted += 1;
            let q = lam.iter().filter(|&&l| l < 0.0).count();
            let limit = (m as f64 - 2.0 * q as f64) * core::f64::consts::FRAC_PI_2;
            let coeff = sigma[m - 1] / sigma[m];
            let errs: Vec<f64> = [1e2, 1e3, 1e4]
                .iter()
                .map(|&t| {
                    let fg = gsl_value(&g, &a.scaled(t), &tol).unwrap();
                    (fg - (limit - coeff / t)).abs().max(1e-16)
                })
                .collect();
            let slope = (errs[2].log10() - errs[0].log10()) / 2.0;
            assert!(slope <= -2.7, "slope {slope} too shallow for m = {m}");
        }
    }
}

#[test]
fn complex_instance_ignores_the_anti_invariant_part() {
    let tol = Tol::default();
    let mut rng = common::rng(503);
    for m in [1usize, 2, 3] {
        let g = complex_sl_instance(m, &tol).unwrap();
        for _ in 0..200 {
            let a = common::random_sym(&mut rng, 2 * m, 5.0);
            let b = anti_invariant_part(&common::random_sym(&mut rng, 2 * m, 5.0));
            let lam = g.eigenvalues(&a, &tol).unwrap();
            let lam_shifted = g.eigenvalues(&a.add(&b).unwrap(), &tol).unwrap();
            for (x, y) in lam.iter().zip(&lam_shifted) {
                assert!(
                    (x - y).abs() <= 1e-8 * (1.0 + x.abs()),
                    "anti-invariant part leaked into the eigenvalues"
                );
            }
        }
    }
}

#[test]
fn fiber_transforms_invert_and_carry_membership() {
    let tol = Tol::default();
    let mut rng = common::rng(504);
    for trial in 0..2000 {
        let n = 2 + trial % 2;
        let a = common::random_sym(&mut rng, n, 3.0);
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0f64)).collect();
        let jet = CurvatureJet { p: p.clone(), a: a.clone() };
        let ii = curvature_fiber_matrix(&jet).unwrap();
        let back = curvature_fiber_inverse(&p, &ii).unwrap();
        let scale = a.frob_norm().max(1.0);
        for i in 0..n {
            for j in 0..n {
                assert!(
                    (back.get(i, j) - a.get(i, j)).abs() <= 1e-10 * scale,
                    "round trip drifted at ({i}, {j})"
                );
            }
        }
        let hessian = curvature_fiber_inverse(&p, &a).unwrap();
        let theta = rng.gen_range(-1.0..1.0f64);
        let f = sl_value(&a, &tol).unwrap();
        if (f - theta).abs() < 1e-6 {
            continue;
        }
        let member = curvature_membership(&CurvatureJet { p, a: hessian }, theta, &tol).unwrap();
        assert_eq!(member, f >= theta, "fiber image membership disagrees");
    }
}

#[test]
fn graph_curvature_sum_is_monotone_in_the_hessian() {
    let tol = Tol::default();
    let mut rng = common::rng(505);
    for trial in 0..2000 {
        let n = 2 + trial % 2;
        let a = common::random_sym(&mut rng, n, 3.0);
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0f64)).collect();
        let bump = common::random_psd(&mut rng, n, 1.5);
        let lo = curvature_fiber_matrix(&CurvatureJet { p: p.clone(), a: a.clone() }).unwrap();
        let hi = curvature_fiber_matrix(&CurvatureJet {
            p,
            a: a.add(&bump).unwrap(),
        })
        .unwrap();
        let f_lo = sl_value(&lo, &tol).unwrap();
        let f_hi = sl_value(&hi, &tol).unwrap();
        assert!(f_hi >= f_lo - 1e-12, "curvature sum dropped under a bump");
    }
}

#[test]
fn generalized_cones_nest_like_the_base_ones() {
    let tol = Tol::default();
    let mut rng = common::rng(506);
    for m in [2usize, 3] {
        let g = complex_sl_instance(m, &tol).unwrap();
        for _ in 0..1000 {
            let a = common::random_sym(&mut rng, 2 * m, 5.0);
            let lam = g.eigenvalues(&a, &tol).unwrap();
            let scale = lam.iter().map(|l| l * l).sum::<f64>().sqrt();
            let zero = tol.zero_for(scale);
            let roots = roots_from_eigenvalues(&lam);
            let crit = critical_points_from_roots(&roots, &tol).unwrap();
            for k in 1..m {
                let in_cone = lam[k - 1] >= -zero;
                let in_enlargement = crit[m - k - 1] <= zero;
                let in_next = lam[k] >= -zero;
                assert!(!in_cone || in_enlargement);
                assert!(!in_enlargement || in_next);
            }
        }
    }
}

#[test]
fn radial_curvature_profiles_conserve_the_first_integral() {
    for (n, theta, r0, y0) in [(2usize, 0.3, 0.6, 0.4), (3, 0.3, 0.6, 0.4), (2, -0.5, 0.8, -0.2)] {
        let h = 1e-3;
        let mut r = r0;
        let mut y = y0;
        let reference = radial_first_integral(theta, n, r0, y0);
        let mut worst: f64 = 0.0;
        while r < r0 + 1.0 {
            let k1 = curvature_radial_slope(theta, n, r, y);
            let k2 = curvature_radial_slope(theta, n, r + 0.5 * h, y + 0.5 * h * k1);
            let k3 = curvature_radial_slope(theta, n, r + 0.5 * h, y + 0.5 * h * k2);
            let k4 = curvature_radial_slope(theta, n, r + h, y + h * k3);
            y += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            r += h;
            worst = worst.max((radial_first_integral(theta, n, r, y) - reference).abs());
        }
        assert!(
            worst <= 1e-8,
            "first integral drifted by {worst} for n = {n}, theta = {theta}"
        );
    }
}

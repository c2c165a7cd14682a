use slpot::solver::{discrete_sl_operator, solve, NodeKind, SolveProblem};

mod common;

fn fill(problem: &SolveProblem, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let grid = &problem.grid;
    let mut u = vec![0.0; grid.len()];
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let (x, y) = grid.pos(i, j);
            u[grid.index(i, j)] = f(x, y);
        }
    }
    u
}

fn sup_interior_error(problem: &SolveProblem, u: &[f64], exact: impl Fn(f64, f64) -> f64) -> f64 {
    let grid = &problem.grid;
    let mut sup = 0.0f64;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let id = grid.index(i, j);
            if problem.kind[id] == NodeKind::Interior {
                let (x, y) = grid.pos(i, j);
                sup = sup.max((u[id] - exact(x, y)).abs());
            }
        }
    }
    sup
}

#[test]
fn scheme_is_monotone_at_moderate_curvature_states() {
    let h = 0.1;
    let problem = SolveProblem::on_rect(-0.5, 0.5, -0.5, 0.5, h, |_, _| 0.0, |_, _| 0.0, 1e-8, 10)
        .unwrap();
    let grid = &problem.grid;
    let (ci, cj) = (grid.nx / 2, grid.ny / 2);
    assert_eq!(problem.kind[grid.index(ci, cj)], NodeKind::Interior);
    let delta = 1e-4;
    for (l1, l2) in [(1.0, 1.0), (-4.0, 4.0), (0.5, 1.2), (-1.0, -1.0), (0.0, 0.8)] {
        let u = fill(&problem, |x, y| 0.5 * (l1 * x * x + l2 * y * y) + 0.3 * x - 0.1 * y);
        let base = discrete_sl_operator(&u, ci, cj, &problem);
        for dj in -2i64..=2 {
            for di in -2i64..=2 {
                let id = grid.index((ci as i64 + di) as usize, (cj as i64 + dj) as usize);
                let mut bumped = u.clone();
                bumped[id] += delta;
                let val = discrete_sl_operator(&bumped, ci, cj, &problem);
                if di == 0 && dj == 0 {
                    assert!(
                        val <= base + 1e-12,
                        "raising the center raised the operator at state ({l1}, {l2})"
                    );
                } else {
                    assert!(
                        val >= base - 1e-12,
                        "raising neighbor ({di}, {dj}) lowered the operator at state ({l1}, {l2})"
                    );
                }
            }
        }
    }
}

#[test]
fn quadratic_data_is_reproduced_to_roundoff() {
    let quad = |x: f64, y: f64| 0.25 * x * x + 0.6 * y * y + 0.2 * x * y + 0.1 * x - 0.3;
    let trace_phase = {
        let (a, b, c) = (0.25f64, 0.2f64 / 2.0, 0.6f64);
        let mean = (a + c) / 2.0;
        let rad = (((a - c) / 2.0).powi(2) + b * b).sqrt();
        (2.0 * (mean - rad)).atan() + (2.0 * (mean + rad)).atan()
    };
    let problem =
        SolveProblem::on_rect(-1.0, 1.0, -1.0, 1.0, 0.125, |_, _| trace_phase, quad, 1e-10, 20000)
            .unwrap();
    let result = solve(&problem).unwrap();
    assert!(result.converged);
    let err = sup_interior_error(&problem, &result.u, quad);
    assert!(err <= 1e-8, "quadratic not reproduced: sup error {err:.3e}");
}

#[test]
fn raising_the_boundary_data_raises_the_solution() {
    let psi = |_: f64, _: f64| 0.3;
    let lo = |x: f64, y: f64| 0.2 * x + 0.1 * y * y;
    let hi = |x: f64, y: f64| lo(x, y) + 0.05 * (1.0 + x);
    let p_lo = SolveProblem::on_disk(1.0, 0.125, psi, lo, 1e-8, 20000).unwrap();
    let p_hi = SolveProblem::on_disk(1.0, 0.125, psi, hi, 1e-8, 20000).unwrap();
    let u_lo = solve(&p_lo).unwrap();
    let u_hi = solve(&p_hi).unwrap();
    assert!(u_lo.converged && u_hi.converged);
    for (id, kind) in p_lo.kind.iter().enumerate() {
        if *kind == NodeKind::Interior {
            assert!(
                u_lo.u[id] <= u_hi.u[id] + 1e-6,
                "comparison failed at node {id}: {} vs {}",
                u_lo.u[id],
                u_hi.u[id]
            );
        }
    }
}

#[test]
fn negating_the_data_negates_the_solution() {
    let psi = |_: f64, _: f64| 0.3;
    let phi = |x: f64, y: f64| 0.2 * x + 0.1 * y * y - 0.15 * x * y;
    let direct = SolveProblem::on_disk(1.0, 0.125, psi, phi, 1e-8, 20000).unwrap();
    let mirrored =
        SolveProblem::on_disk(1.0, 0.125, |x, y| -psi(x, y), |x, y| -phi(x, y), 1e-8, 20000)
            .unwrap();
    let u = solve(&direct).unwrap();
    let v = solve(&mirrored).unwrap();
    assert!(u.converged && v.converged);
    let mut sup = 0.0f64;
    for (id, kind) in direct.kind.iter().enumerate() {
        if *kind == NodeKind::Interior {
            sup = sup.max((u.u[id] + v.u[id]).abs());
        }
    }
    assert!(sup <= 1e-6, "duality broke: sup |u + v| = {sup:.3e}");
}

#[test]
fn halving_the_mesh_shrinks_the_error() {
    let exact = |x: f64, y: f64| 0.5 * (x * x + y * y).ln();
    let mut errs = Vec::new();
    for h in [0.1, 0.05] {
        let problem =
            SolveProblem::on_rect(0.3, 1.1, 0.3, 1.1, h, |_, _| 0.0, exact, 1e-8, 40000).unwrap();
        let result = solve(&problem).unwrap();
        assert!(result.converged, "h = {h} did not converge");
        errs.push(sup_interior_error(&problem, &result.u, exact));
    }
    assert!(
        errs[0] >= 1.5 * errs[1],
        "refinement gained too little: {:.3e} -> {:.3e}",
        errs[0],
        errs[1]
    );
}

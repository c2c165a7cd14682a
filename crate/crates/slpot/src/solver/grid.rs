//! Uniform-grid Dirichlet problems and the damped relaxation loop.
//!
//! Interior nodes carry the right-hand side `psi`, boundary nodes are
//! pinned to `phi`. The update is the monotone fixed-point form
//! `u <- u + omega h^2 (S[u] - psi)` with the per-node step chosen from the
//! operator's center derivative, swept in row-major order. The damping
//! factor adapts: it grows toward 1.7 while the residual falls and halves
//! on divergence, restarting from the best iterate seen.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::math;
use crate::solver::scheme::{self, SchemeWeights};
use crate::solver::SolverError;
use crate::tol::Tol;

/// Node lattice with spacing `h` anchored at `(x_min, y_min)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub y_min: f64,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl Grid {
    /// Covers the box with spacing `h`, rounding the far edges outward.
    pub fn from_box(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        h: f64,
    ) -> Result<Grid, SolverError> {
        if !(h > 0.0) || !h.is_finite() || !(x_max > x_min) || !(y_max > y_min) {
            return Err(SolverError::InvalidProblem(
                "grid box needs positive extents and spacing".into(),
            ));
        }
        let count = |lo: f64, hi: f64| -> usize {
            let cells = math::ceil((hi - lo) / h - 1e-9);
            cells as usize + 1
        };
        Ok(Grid {
            x_min,
            y_min,
            nx: count(x_min, x_max),
            ny: count(y_min, y_max),
            h,
        })
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn pos(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x_min + i as f64 * self.h,
            self.y_min + j as f64 * self.h,
        )
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Interior,
    Boundary,
    Exterior,
}

/// A discretized Dirichlet problem. Build through [`SolveProblem::from_region`]
/// or the shape helpers so the mask invariants hold.
#[derive(Debug, Clone)]
pub struct SolveProblem {
    pub grid: Grid,
    pub kind: Vec<NodeKind>,
    pub psi: Vec<f64>,
    pub phi: Vec<f64>,
    pub weights: SchemeWeights,
    pub residual_tol: f64,
    pub max_iters: usize,
    pub relax: f64,
}

/// Solver output; `u` covers the whole lattice (exterior nodes stay zero).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub u: Vec<f64>,
    pub residual_sup: f64,
    /// Number of full relaxation sweeps executed.
    pub iterations: usize,
    pub converged: bool,
    /// Set when some `psi` entry is within `1e-3` of the special value 0,
    /// where uniqueness theory thins out; the solve still runs.
    pub best_effort: bool,
}

impl SolveProblem {
    /// Masks the lattice against `inside`: interior nodes are those inside,
    /// and every node an interior stencil arm lands on becomes a boundary
    /// node carrying `phi` evaluated at its own position. Arms must stay
    /// inside the lattice.
    pub fn from_region(
        grid: Grid,
        inside: impl Fn(f64, f64) -> bool,
        psi: impl Fn(f64, f64) -> f64,
        phi: impl Fn(f64, f64) -> f64,
        stencil: &[(i32, i32)],
        residual_tol: f64,
        max_iters: usize,
        relax: f64,
    ) -> Result<SolveProblem, SolverError> {
        let weights = SchemeWeights::new(stencil)?;
        if !(residual_tol > 0.0) || !residual_tol.is_finite() {
            return Err(SolverError::InvalidProblem(
                "residual_tol must be positive".into(),
            ));
        }
        if max_iters == 0 {
            return Err(SolverError::InvalidProblem("max_iters must be positive".into()));
        }
        if !(relax > 0.0 && relax < 2.0) {
            return Err(SolverError::InvalidProblem(
                "relax must lie in (0, 2)".into(),
            ));
        }
        let (nx, ny) = (grid.nx, grid.ny);
        let mut kind = alloc::vec![NodeKind::Exterior; grid.len()];
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = grid.pos(i, j);
                if inside(x, y) {
                    kind[grid.index(i, j)] = NodeKind::Interior;
                }
            }
        }
        for j in 0..ny {
            for i in 0..nx {
                if kind[grid.index(i, j)] != NodeKind::Interior {
                    continue;
                }
                for &(c1, c2) in stencil {
                    for sgn in [1i64, -1] {
                        let ii = i as i64 + sgn * c1 as i64;
                        let jj = j as i64 + sgn * c2 as i64;
                        if ii < 0 || jj < 0 || ii >= nx as i64 || jj >= ny as i64 {
                            return Err(SolverError::InvalidProblem(format!(
                                "stencil arm from interior node ({i}, {j}) leaves the box; \
                                 enlarge the box"
                            )));
                        }
                        let nid = grid.index(ii as usize, jj as usize);
                        if kind[nid] == NodeKind::Exterior {
                            kind[nid] = NodeKind::Boundary;
                        }
                    }
                }
            }
        }
        let phase_margin = Tol::default().phase;
        let mut psi_v = alloc::vec![0.0; grid.len()];
        let mut phi_v = alloc::vec![0.0; grid.len()];
        let mut interior_count = 0usize;
        for j in 0..ny {
            for i in 0..nx {
                let id = grid.index(i, j);
                let (x, y) = grid.pos(i, j);
                match kind[id] {
                    NodeKind::Interior => {
                        let v = psi(x, y);
                        if !v.is_finite() || math::abs(v) >= core::f64::consts::PI - phase_margin
                        {
                            return Err(SolverError::InvalidProblem(format!(
                                "psi({x}, {y}) = {v} outside the admissible phase range"
                            )));
                        }
                        psi_v[id] = v;
                        interior_count += 1;
                    }
                    NodeKind::Boundary => {
                        let v = phi(x, y);
                        if !v.is_finite() {
                            return Err(SolverError::InvalidProblem(format!(
                                "phi({x}, {y}) is not finite"
                            )));
                        }
                        phi_v[id] = v;
                    }
                    NodeKind::Exterior => {}
                }
            }
        }
        if interior_count == 0 {
            return Err(SolverError::InvalidProblem(
                "the region contains no lattice nodes".into(),
            ));
        }
        Ok(SolveProblem {
            grid,
            kind,
            psi: psi_v,
            phi: phi_v,
            weights,
            residual_tol,
            max_iters,
            relax,
        })
    }

    /// Disk of the given radius centered at the origin.
    pub fn on_disk(
        radius: f64,
        h: f64,
        psi: impl Fn(f64, f64) -> f64,
        phi: impl Fn(f64, f64) -> f64,
        residual_tol: f64,
        max_iters: usize,
    ) -> Result<SolveProblem, SolverError> {
        let pad = radius + 4.0 * h;
        let grid = Grid::from_box(-pad, pad, -pad, pad, h)?;
        SolveProblem::from_region(
            grid,
            |x, y| x * x + y * y < radius * radius,
            psi,
            phi,
            &scheme::WIDE_STENCIL,
            residual_tol,
            max_iters,
            1.0,
        )
    }

    /// Annulus `r_in < |x| < r_out` centered at the origin.
    pub fn on_annulus(
        r_in: f64,
        r_out: f64,
        h: f64,
        psi: impl Fn(f64, f64) -> f64,
        phi: impl Fn(f64, f64) -> f64,
        residual_tol: f64,
        max_iters: usize,
    ) -> Result<SolveProblem, SolverError> {
        let pad = r_out + 4.0 * h;
        let grid = Grid::from_box(-pad, pad, -pad, pad, h)?;
        SolveProblem::from_region(
            grid,
            |x, y| {
                let r2 = x * x + y * y;
                r2 > r_in * r_in && r2 < r_out * r_out
            },
            psi,
            phi,
            &scheme::WIDE_STENCIL,
            residual_tol,
            max_iters,
            1.0,
        )
    }

    /// Open axis-aligned rectangle.
    pub fn on_rect(
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        h: f64,
        psi: impl Fn(f64, f64) -> f64,
        phi: impl Fn(f64, f64) -> f64,
        residual_tol: f64,
        max_iters: usize,
    ) -> Result<SolveProblem, SolverError> {
        let pad = 4.0 * h;
        let grid = Grid::from_box(x0 - pad, x1 + pad, y0 - pad, y1 + pad, h)?;
        SolveProblem::from_region(
            grid,
            |x, y| x > x0 && x < x1 && y > y0 && y < y1,
            psi,
            phi,
            &scheme::WIDE_STENCIL,
            residual_tol,
            max_iters,
            1.0,
        )
    }
}

struct Dir {
    off: isize,
    g11: f64,
    g12: f64,
    g22: f64,
}

fn scaled_dirs(problem: &SolveProblem) -> Vec<Dir> {
    let nx = problem.grid.nx as isize;
    let inv_h2 = 1.0 / (problem.grid.h * problem.grid.h);
    problem
        .weights
        .directions()
        .iter()
        .zip(problem.weights.coeffs())
        .zip(problem.weights.inv_len2())
        .map(|((&(c1, c2), g), &il2)| {
            let s = il2 * inv_h2;
            Dir {
                off: c2 as isize * nx + c1 as isize,
                g11: g[0] * s,
                g12: g[1] * s,
                g22: g[2] * s,
            }
        })
        .collect()
}

fn node_hessian(u: &[f64], id: usize, dirs: &[Dir]) -> [f64; 3] {
    let uc = u[id];
    let mut h = [0.0; 3];
    for d in dirs {
        let raw = u[(id as isize + d.off) as usize] + u[(id as isize - d.off) as usize]
            - 2.0 * uc;
        h[0] += d.g11 * raw;
        h[1] += d.g12 * raw;
        h[2] += d.g22 * raw;
    }
    h
}

fn node_value_and_slope(u: &[f64], id: usize, dirs: &[Dir]) -> (f64, f64) {
    let h = node_hessian(u, id, dirs);
    let value = scheme::sym2_sl_value(h);
    let fp = scheme::sym2_arctan_derivative(h);
    let mut slope = 0.0;
    for d in dirs {
        slope += fp[0] * d.g11 + 2.0 * fp[1] * d.g12 + fp[2] * d.g22;
    }
    (value, -2.0 * slope)
}

/// Discrete operator value `arctan lambda_1 + arctan lambda_2` of the
/// least-squares Hessian at one interior node.
pub fn discrete_sl_operator(u: &[f64], i: usize, j: usize, problem: &SolveProblem) -> f64 {
    let dirs = scaled_dirs(problem);
    scheme::sym2_sl_value(node_hessian(u, problem.grid.index(i, j), &dirs))
}

fn residual_sup(u: &[f64], interior: &[usize], dirs: &[Dir], psi: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for &id in interior {
        let v = scheme::sym2_sl_value(node_hessian(u, id, dirs));
        let r = math::abs(v - psi[id]);
        if !r.is_finite() {
            return f64::INFINITY;
        }
        worst = worst.max(r);
    }
    worst
}

/// Graph-harmonic smoothing over the stencil arms: a cheap linear warm
/// start that interpolates the boundary data before the nonlinear sweeps.
fn presmooth(u: &mut [f64], interior: &[usize], dirs: &[Dir], sweeps: usize) {
    let weight = 1.0 / (2 * dirs.len()) as f64;
    for _ in 0..sweeps {
        for &id in interior {
            let mut acc = 0.0;
            for d in dirs {
                acc += u[(id as isize + d.off) as usize] + u[(id as isize - d.off) as usize];
            }
            u[id] = acc * weight;
        }
    }
}

fn run(problem: &SolveProblem, tame: bool) -> Result<SolveResult, SolverError> {
    let dirs = scaled_dirs(problem);
    let interior: Vec<usize> = (0..problem.grid.len())
        .filter(|&id| problem.kind[id] == NodeKind::Interior)
        .collect();
    let mut u = alloc::vec![0.0; problem.grid.len()];
    let mut boundary_sum = 0.0;
    let mut boundary_count = 0usize;
    for id in 0..u.len() {
        if problem.kind[id] == NodeKind::Boundary {
            u[id] = problem.phi[id];
            boundary_sum += problem.phi[id];
            boundary_count += 1;
        }
    }
    let guess = boundary_sum / boundary_count.max(1) as f64;
    for &id in &interior {
        u[id] = guess;
    }
    presmooth(&mut u, &interior, &dirs, 200);
    let best_effort = interior.iter().any(|&id| math::abs(problem.psi[id]) <= 1e-3);

    // The arctan slope dies off quadratically in the eigenvalues, so a raw
    // Newton step from a saturated state overshoots wildly; displacements
    // are capped at the curvature scale one grid cell can represent.
    let step_cap = 4.0 * problem.grid.h * problem.grid.h;
    let mut relax = problem.relax;
    let mut best_u = u.clone();
    let mut best_res = f64::INFINITY;
    let mut streak = 0usize;
    let mut stall = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;
    while iterations < problem.max_iters {
        for &id in &interior {
            let (value, slope) = node_value_and_slope(&u, id, &dirs);
            let step = if tame {
                let vt = math::tan(0.5 * value);
                let pt = math::tan(0.5 * problem.psi[id]);
                let st = 0.5 * (1.0 + vt * vt) * slope;
                relax * (vt - pt) / math::abs(st).max(1e-12)
            } else {
                relax * (value - problem.psi[id]) / math::abs(slope).max(1e-12)
            };
            u[id] += step.clamp(-step_cap, step_cap);
        }
        iterations += 1;
        if iterations % 8 == 0 || iterations == problem.max_iters {
            let res = residual_sup(&u, &interior, &dirs, &problem.psi);
            if res <= problem.residual_tol {
                best_res = res;
                best_u.copy_from_slice(&u);
                converged = true;
                break;
            }
            if !res.is_finite() {
                u.copy_from_slice(&best_u);
                relax = (relax * 0.5).max(0.05);
                streak = 0;
                stall = 0;
            } else if res < best_res {
                best_res = res;
                best_u.copy_from_slice(&u);
                stall = 0;
                streak += 1;
                if streak >= 3 {
                    relax = (relax * 1.2).min(1.7);
                    streak = 0;
                }
            } else {
                streak = 0;
                stall += 1;
                if stall >= 6 {
                    relax = (relax * 0.7).max(0.2);
                    stall = 0;
                }
            }
        }
    }
    let result = SolveResult {
        u: best_u,
        residual_sup: best_res,
        iterations,
        converged,
        best_effort,
    };
    if converged {
        Ok(result)
    } else {
        Err(SolverError::NotConverged(Box::new(result)))
    }
}

/// Damped relaxation until `sup |S[u] - psi| <= residual_tol`.
pub fn solve(problem: &SolveProblem) -> Result<SolveResult, SolverError> {
    run(problem, false)
}

/// Same iteration driven through `tan(S/2) = tan(psi/2)`, valid when the
/// whole `psi` range sits in the top interval `(0, pi)` where the rescaled
/// operator has a uniform derivative floor. Convergence is still measured
/// in original units, so results agree with [`solve`] to solver tolerance.
pub fn tame_solve(problem: &SolveProblem) -> Result<SolveResult, SolverError> {
    let phase_margin = Tol::default().phase;
    for id in 0..problem.grid.len() {
        if problem.kind[id] == NodeKind::Interior && problem.psi[id] <= phase_margin {
            return Err(SolverError::PhaseOutOfRange {
                psi: problem.psi[id],
            });
        }
    }
    run(problem, true)
}

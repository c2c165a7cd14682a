//! Mean-curvature verification on potential graphs. For a scalar `u` on a
//! plane domain, `L = {(x, grad u(x))}` in R^4 carries the phase
//! `theta(x) = tr arctan D^2 u`, and its tangential gradient balances the
//! mean curvature vector through the ambient rotation `J(x, y) = (-y, x)`:
//! `grad theta + J H = 0`. The check below evaluates both sides from the
//! 2-jet and finite-differenced 3-jet of `u` and reports the worst
//! imbalance, which vanishes exactly when the supplied jet really is the
//! jet of one potential.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::math;

type Scalar2d = dyn Fn(f64, f64) -> f64 + Send + Sync;
type Grad2d = dyn Fn(f64, f64) -> [f64; 2] + Send + Sync;
type Hess2d = dyn Fn(f64, f64) -> [f64; 3] + Send + Sync;

/// A potential with sample points and optional analytic derivative
/// callbacks. Missing derivatives fall back to centered differences with
/// step `fd_step`; the worst-case deviation then scales like the third
/// derivative truncation of that step.
pub struct LagrangianSample {
    u: Box<Scalar2d>,
    grad: Option<Box<Grad2d>>,
    hess: Option<Box<Hess2d>>,
    pub points: Vec<[f64; 2]>,
    pub fd_step: f64,
}

impl LagrangianSample {
    pub fn new(u: Box<Scalar2d>, points: Vec<[f64; 2]>) -> Self {
        LagrangianSample {
            u,
            grad: None,
            hess: None,
            points,
            fd_step: 1e-4,
        }
    }

    pub fn with_grad(mut self, grad: Box<Grad2d>) -> Self {
        self.grad = Some(grad);
        self
    }

    pub fn with_hess(mut self, hess: Box<Hess2d>) -> Self {
        self.hess = Some(hess);
        self
    }

    pub fn with_fd_step(mut self, fd_step: f64) -> Self {
        self.fd_step = fd_step;
        self
    }

    fn hessian(&self, x: f64, y: f64) -> [f64; 3] {
        if let Some(hf) = &self.hess {
            return hf(x, y);
        }
        let h = self.fd_step;
        if let Some(gf) = &self.grad {
            let gxp = gf(x + h, y);
            let gxm = gf(x - h, y);
            let gyp = gf(x, y + h);
            let gym = gf(x, y - h);
            let a11 = (gxp[0] - gxm[0]) / (2.0 * h);
            let a22 = (gyp[1] - gym[1]) / (2.0 * h);
            let a12 = 0.5 * ((gxp[1] - gxm[1]) + (gyp[0] - gym[0])) / (2.0 * h);
            return [a11, a12, a22];
        }
        let u = &self.u;
        let center = u(x, y);
        let a11 = (u(x + h, y) - 2.0 * center + u(x - h, y)) / (h * h);
        let a22 = (u(x, y + h) - 2.0 * center + u(x, y - h)) / (h * h);
        let a12 = (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) + u(x - h, y - h))
            / (4.0 * h * h);
        [a11, a12, a22]
    }

    fn third(&self, x: f64, y: f64) -> [[f64; 3]; 2] {
        let h = self.fd_step;
        let dx_p = self.hessian(x + h, y);
        let dx_m = self.hessian(x - h, y);
        let dy_p = self.hessian(x, y + h);
        let dy_m = self.hessian(x, y - h);
        let mut t = [[0.0; 3]; 2];
        for k in 0..3 {
            t[0][k] = (dx_p[k] - dx_m[k]) / (2.0 * h);
            t[1][k] = (dy_p[k] - dy_m[k]) / (2.0 * h);
        }
        t
    }
}

fn j_rotate(v: [f64; 4]) -> [f64; 4] {
    [-v[2], -v[3], v[0], v[1]]
}

/// Max over the sample points of `|grad~ theta + J H|`, the defect in the
/// phase / mean-curvature identity on the potential graph.
pub fn lagrangian_graph_check(sample: &LagrangianSample) -> f64 {
    let mut worst = 0.0f64;
    for &[x, y] in &sample.points {
        let a = sample.hessian(x, y);
        let t = sample.third(x, y);
        let tangent = [[1.0, 0.0, a[0], a[1]], [0.0, 1.0, a[1], a[2]]];
        let g = [
            1.0 + a[0] * a[0] + a[1] * a[1],
            a[1] * (a[0] + a[2]),
            1.0 + a[1] * a[1] + a[2] * a[2],
        ];
        let det = g[0] * g[2] - g[1] * g[1];
        let ginv = [g[2] / det, -g[1] / det, g[0] / det];
        let dtheta = [
            ginv[0] * t[0][0] + 2.0 * ginv[1] * t[0][1] + ginv[2] * t[0][2],
            ginv[0] * t[1][0] + 2.0 * ginv[1] * t[1][1] + ginv[2] * t[1][2],
        ];
        let coeff = [
            ginv[0] * dtheta[0] + ginv[1] * dtheta[1],
            ginv[1] * dtheta[0] + ginv[2] * dtheta[1],
        ];
        let mut grad_theta = [0.0f64; 4];
        for c in 0..4 {
            grad_theta[c] = coeff[0] * tangent[0][c] + coeff[1] * tangent[1][c];
        }
        let mut trace = [0.0f64; 4];
        trace[2] = ginv[0] * t[0][0] + ginv[1] * (t[1][0] + t[0][1]) + ginv[2] * t[1][1];
        trace[3] = ginv[0] * t[0][1] + ginv[1] * (t[1][1] + t[0][2]) + ginv[2] * t[1][2];
        let dot = [
            tangent[0][2] * trace[2] + tangent[0][3] * trace[3],
            tangent[1][2] * trace[2] + tangent[1][3] * trace[3],
        ];
        let proj = [
            ginv[0] * dot[0] + ginv[1] * dot[1],
            ginv[1] * dot[0] + ginv[2] * dot[1],
        ];
        let mut h_vec = trace;
        for c in 0..4 {
            h_vec[c] -= proj[0] * tangent[0][c] + proj[1] * tangent[1][c];
        }
        let jh = j_rotate(h_vec);
        let mut norm2 = 0.0;
        for c in 0..4 {
            let d = grad_theta[c] + jh[c];
            norm2 += d * d;
        }
        worst = worst.max(math::sqrt(norm2));
    }
    worst
}

//! Wide-stencil discretization: directional second differences are fitted
//! to a 2x2 symmetric matrix by least squares, and the operator value is
//! the arctan-eigenvalue sum of that matrix.
//!
//! With the default eight directions the fit is overdetermined (8 equations
//! for 3 Hessian entries) but consistent on quadratics, so pure quadratics
//! are reproduced exactly. The per-direction weight matrices `G_e` satisfy
//! `sum_e G_e = I`; they are not all positive semidefinite, so the scheme
//! is monotone only where the arctan derivative of the assembled matrix is
//! sufficiently isotropic (see the band test in the property suite).

use alloc::format;
use alloc::vec::Vec;

use crate::math;
use crate::solver::SolverError;

/// Default direction set: axis, diagonal, and knight-move pairs.
pub const WIDE_STENCIL: [(i32, i32); 8] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (2, 1),
    (1, 2),
    (2, -1),
    (1, -2),
];

/// Least-squares assembly weights for a fixed direction set.
///
/// For direction `e` the feature row is `(c1^2, 2 c1 c2, c2^2) / |e|^2`, so
/// a directional second difference estimates `e^T H e / |e|^2`. The normal
/// equations give one symmetric weight matrix per direction; the assembled
/// Hessian estimate is `sum_e G_e * delta_e`.
#[derive(Debug, Clone)]
pub struct SchemeWeights {
    directions: Vec<(i32, i32)>,
    coeffs: Vec<[f64; 3]>,
    inv_len2: Vec<f64>,
}

impl SchemeWeights {
    pub fn new(directions: &[(i32, i32)]) -> Result<SchemeWeights, SolverError> {
        if directions.len() < 3 {
            return Err(SolverError::InvalidProblem(format!(
                "stencil needs at least 3 direction pairs, got {}",
                directions.len()
            )));
        }
        let mut seen: Vec<(i32, i32)> = Vec::new();
        for &(c1, c2) in directions {
            if c1 == 0 && c2 == 0 {
                return Err(SolverError::InvalidProblem(
                    "stencil contains the zero direction".into(),
                ));
            }
            let canon = if (c1, c2) < (-c1, -c2) {
                (c1, c2)
            } else {
                (-c1, -c2)
            };
            if seen.contains(&canon) {
                return Err(SolverError::InvalidProblem(format!(
                    "stencil direction ({c1}, {c2}) repeats an earlier pair"
                )));
            }
            seen.push(canon);
        }
        let features: Vec<[f64; 3]> = directions
            .iter()
            .map(|&(c1, c2)| {
                let (a, b) = (c1 as f64, c2 as f64);
                let inv = 1.0 / (a * a + b * b);
                [a * a * inv, 2.0 * a * b * inv, b * b * inv]
            })
            .collect();
        let mut m = [[0.0f64; 3]; 3];
        for f in &features {
            for r in 0..3 {
                for c in 0..3 {
                    m[r][c] += f[r] * f[c];
                }
            }
        }
        let inv = invert3(&m).ok_or_else(|| {
            SolverError::InvalidProblem("stencil directions do not span all Hessian modes".into())
        })?;
        let coeffs = features
            .iter()
            .map(|f| {
                let mut v = [0.0; 3];
                for r in 0..3 {
                    v[r] = inv[r][0] * f[0] + inv[r][1] * f[1] + inv[r][2] * f[2];
                }
                v
            })
            .collect();
        Ok(SchemeWeights {
            directions: directions.to_vec(),
            coeffs,
            inv_len2: directions
                .iter()
                .map(|&(c1, c2)| 1.0 / ((c1 * c1 + c2 * c2) as f64))
                .collect(),
        })
    }

    pub fn directions(&self) -> &[(i32, i32)] {
        &self.directions
    }

    /// Weight matrix for each direction as `(g11, g12, g22)`.
    pub fn coeffs(&self) -> &[[f64; 3]] {
        &self.coeffs
    }

    pub fn inv_len2(&self) -> &[f64] {
        &self.inv_len2
    }

    /// Assembles the Hessian estimate from already-normalized directional
    /// second differences (one per direction, `delta_e ~ e^T H e / |e|^2`).
    pub fn hessian_from_differences(&self, deltas: &[f64]) -> [f64; 3] {
        let mut h = [0.0; 3];
        for (g, d) in self.coeffs.iter().zip(deltas) {
            h[0] += g[0] * d;
            h[1] += g[1] * d;
            h[2] += g[2] * d;
        }
        h
    }
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if math::abs(det) < 1e-12 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
            let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
            inv[c][r] = (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) / det;
        }
    }
    Some(inv)
}

/// Eigenvalues of the symmetric matrix `(m11, m12, m22)`, ascending.
pub fn sym2_eigenvalues(m: [f64; 3]) -> (f64, f64) {
    let mid = 0.5 * (m[0] + m[2]);
    let half = math::hypot(0.5 * (m[0] - m[2]), m[1]);
    (mid - half, mid + half)
}

/// `arctan lambda_1 + arctan lambda_2` of a symmetric 2x2 matrix.
pub fn sym2_sl_value(m: [f64; 3]) -> f64 {
    let (lo, hi) = sym2_eigenvalues(m);
    math::atan(lo) + math::atan(hi)
}

/// `(I + M^2)^{-1}` of a symmetric 2x2 matrix, through its spectral
/// decomposition; this is the gradient of `sym2_sl_value`.
pub fn sym2_arctan_derivative(m: [f64; 3]) -> [f64; 3] {
    let mid = 0.5 * (m[0] + m[2]);
    let half = math::hypot(0.5 * (m[0] - m[2]), m[1]);
    let (lo, hi) = (mid - half, mid + half);
    let phi_lo = 1.0 / (1.0 + lo * lo);
    let phi_hi = 1.0 / (1.0 + hi * hi);
    let avg = 0.5 * (phi_lo + phi_hi);
    let diff = 0.5 * (phi_hi - phi_lo);
    if half < 1e-300 {
        return [avg, 0.0, avg];
    }
    let k11 = (m[0] - mid) / half;
    let k12 = m[1] / half;
    let k22 = (m[2] - mid) / half;
    [avg + diff * k11, diff * k12, avg + diff * k22]
}

//! Exact radial reference profiles. A radial potential `u(|x|)` with slope
//! `y = u'` solves `(n-1) arctan(y/r) + arctan(y') = theta`, and along any
//! such profile `Im(e^(-i theta)(r + i y)^n)` is constant. Profiles are
//! therefore recovered by per-radius root finding on that first integral,
//! with the slope read off its differential and `u` integrated by
//! Hermite quadrature.

use alloc::vec::Vec;

use crate::garding;
use crate::math;
use crate::solver::SolverError;

/// Tabulated radial profile on an even radius grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub r: Vec<f64>,
    pub y: Vec<f64>,
    pub y_prime: Vec<f64>,
    pub u: Vec<f64>,
    /// Worst `|(n-1) arctan(y/r) + arctan(y') - theta|` over the grid.
    pub max_phase_residual: f64,
}

fn rotated_power(theta: f64, k: usize, r: f64, y: f64) -> (f64, f64) {
    let mut re = math::cos(theta);
    let mut im = -math::sin(theta);
    for _ in 0..k {
        let nr = re * r - im * y;
        let ni = re * y + im * r;
        re = nr;
        im = ni;
    }
    (re, im)
}

/// Slope `y'` implied by constancy of the first integral:
/// differentiating gives `y' = -Im(w)/Re(w)` with
/// `w = e^(-i theta)(r + i y)^(n-1)`.
fn profile_slope(theta: f64, n: usize, r: f64, y: f64) -> f64 {
    let (re, im) = rotated_power(theta, n - 1, r, y);
    -im / re
}

fn phase_residual(theta: f64, n: usize, r: f64, y: f64, y_prime: f64) -> f64 {
    (n as f64 - 1.0) * math::atan(y / r) + math::atan(y_prime) - theta
}

/// All admissible profile roots at one radius: zeros of the first integral
/// whose implied slope actually satisfies the phase equation (the integral
/// also vanishes on branches shifted by multiples of pi, which are
/// rejected here).
fn admissible_roots(theta: f64, c: f64, n: usize, r: f64) -> Vec<(f64, f64)> {
    const SCAN: usize = 2048;
    let phi_max = core::f64::consts::FRAC_PI_2 - 1e-6;
    let integral =
        |phi: f64| garding::potential_radial_first_integral(theta, n, r, r * math::tan(phi)) - c;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    let push = |phi: f64, roots: &mut Vec<(f64, f64)>| {
        let y = r * math::tan(phi);
        let yp = profile_slope(theta, n, r, y);
        if math::abs(phase_residual(theta, n, r, y, yp)) > 1e-8 {
            return;
        }
        if roots
            .iter()
            .any(|&(y0, _)| math::abs(y0 - y) <= 1e-9 * (1.0 + math::abs(y)))
        {
            return;
        }
        roots.push((y, yp));
    };
    let mut prev_phi = -phi_max;
    let mut prev_g = integral(prev_phi);
    for i in 1..=SCAN {
        let phi = -phi_max + 2.0 * phi_max * i as f64 / SCAN as f64;
        let g = integral(phi);
        if prev_g == 0.0 {
            push(prev_phi, &mut roots);
        } else if prev_g * g < 0.0 {
            let (mut lo, mut hi) = (prev_phi, phi);
            let mut g_lo = prev_g;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let g_mid = integral(mid);
                if g_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if g_lo * g_mid < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    g_lo = g_mid;
                }
            }
            push(0.5 * (lo + hi), &mut roots);
        }
        prev_phi = phi;
        prev_g = g;
    }
    if prev_g == 0.0 {
        push(prev_phi, &mut roots);
    }
    roots
}

/// Solves `Im(e^(-i theta)(r + i y)^n) = c` for the profile `y(r)` on
/// `steps + 1` even radii in `[r0, r1]`, picking the admissible branch
/// nearest the continuation prediction (smallest `|y|` at the first
/// radius), and integrates `u' = y` from `u(r0) = u0`.
pub fn radial_reference(
    theta: f64,
    c: f64,
    n: usize,
    r0: f64,
    r1: f64,
    steps: usize,
    u0: f64,
) -> Result<RadialProfile, SolverError> {
    if n == 0 || !(r0 > 0.0) || !(r1 > r0) || steps == 0 || !c.is_finite() || !theta.is_finite()
    {
        return Err(SolverError::InvalidProblem(
            "radial profile needs n >= 1, 0 < r0 < r1, and steps >= 1".into(),
        ));
    }
    let dr = (r1 - r0) / steps as f64;
    let mut profile = RadialProfile {
        r: Vec::with_capacity(steps + 1),
        y: Vec::with_capacity(steps + 1),
        y_prime: Vec::with_capacity(steps + 1),
        u: Vec::with_capacity(steps + 1),
        max_phase_residual: 0.0,
    };
    for i in 0..=steps {
        let r = r0 + dr * i as f64;
        let roots = admissible_roots(theta, c, n, r);
        let chosen = match profile.y.last() {
            None => roots
                .into_iter()
                .min_by(|a, b| math::abs(a.0).partial_cmp(&math::abs(b.0)).unwrap()),
            Some(&prev_y) => {
                let predicted = prev_y + dr * profile.y_prime.last().unwrap();
                roots.into_iter().min_by(|a, b| {
                    math::abs(a.0 - predicted)
                        .partial_cmp(&math::abs(b.0 - predicted))
                        .unwrap()
                })
            }
        };
        let (y, yp) = chosen.ok_or(SolverError::NoBracket { r })?;
        let residual = math::abs(phase_residual(theta, n, r, y, yp));
        profile.max_phase_residual = profile.max_phase_residual.max(residual);
        if let (Some(&py), Some(&pyp)) = (profile.y.last(), profile.y_prime.last()) {
            let pu = *profile.u.last().unwrap();
            profile
                .u
                .push(pu + 0.5 * dr * (py + y) + dr * dr / 12.0 * (pyp - yp));
        } else {
            profile.u.push(u0);
        }
        profile.r.push(r);
        profile.y.push(y);
        profile.y_prime.push(yp);
    }
    Ok(profile)
}

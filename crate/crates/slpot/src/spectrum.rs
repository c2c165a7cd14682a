//! Spectral building blocks: cyclic Jacobi diagonalization, elementary
//! symmetric functions built from eigenvalues, roots and critical points of
//! the shifted characteristic polynomial, and sign-variation counting.
//!
//! Conventions used throughout the crate:
//! * eigenvalues are reported ascending;
//! * `sigma[k]` is the k-th elementary symmetric function with `sigma[0] = 1`,
//!   so `det(tI + A) = t^n + sigma[1] t^(n-1) + ... + sigma[n]`;
//! * the roots of `det(tI + A)` are the negated eigenvalues in reverse order.

use alloc::vec;
use alloc::vec::Vec;

use crate::mat::SymMatrix;
use crate::math;
use crate::tol::Tol;

const MAX_JACOBI_SWEEPS: usize = 128;

/// Convergence target for the off-diagonal Frobenius norm, relative to the
/// Frobenius norm of the input.
const JACOBI_OFF_TOL: f64 = 1e-13;

/// Errors from the spectral routines.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumError {
    /// Input contained NaN or infinity (also guards iteration blow-up).
    NonFinite,
    /// Operation needs a larger matrix (for example critical points need
    /// `n >= 2`).
    TooSmall { n: usize, need: usize },
    /// Bisection bracket for a critical point had no sign change even after
    /// nudging away from coincident roots; caller should perturb the matrix.
    DegenerateBracket { index: usize },
}

impl core::fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SpectrumError::NonFinite => write!(f, "non-finite value in spectral computation"),
            SpectrumError::TooSmall { n, need } => {
                write!(f, "matrix dimension {n} below required {need}")
            }
            SpectrumError::DegenerateBracket { index } => {
                write!(f, "no sign change in critical-point bracket {index}")
            }
        }
    }
}

/// Eigenvalues plus derived quantities of one symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Elementary symmetric functions, `sigma[0] = 1`, length `n + 1`.
    pub sigma: Vec<f64>,
    /// Number of eigenvalues below the scaled zero threshold.
    pub neg_count: usize,
}

/// Roots and interior critical points of `p(t) = det(tI + A)`, both
/// ascending. `roots.len() == n`, `critical.len() == n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootsAndCriticalPoints {
    pub roots: Vec<f64>,
    pub critical: Vec<f64>,
}

/// Diagonalizes `a` in place by cyclic Jacobi rotations until the
/// off-diagonal Frobenius norm drops below `JACOBI_OFF_TOL` times the input
/// norm. Returns the unsorted diagonal.
fn jacobi_diagonal(n: usize, data: &mut [f64]) -> Result<Vec<f64>, SpectrumError> {
    let frob = math::sqrt(data.iter().map(|x| x * x).sum());
    if !frob.is_finite() {
        return Err(SpectrumError::NonFinite);
    }
    let target = JACOBI_OFF_TOL * frob;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * data[i * n + j] * data[i * n + j];
            }
        }
        if math::sqrt(off) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = data[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = data[p * n + p];
                let aqq = data[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.is_finite() {
                    math::copysign(1.0, theta) / (math::abs(theta) + math::sqrt(theta * theta + 1.0))
                } else {
                    0.5 / theta
                };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                let tau = s / (1.0 + c);
                data[p * n + p] = app - t * apq;
                data[q * n + q] = aqq + t * apq;
                data[p * n + q] = 0.0;
                data[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = data[k * n + p];
                    let akq = data[k * n + q];
                    let new_kp = akp - s * (akq + tau * akp);
                    let new_kq = akq + s * (akp - tau * akq);
                    data[k * n + p] = new_kp;
                    data[p * n + k] = new_kp;
                    data[k * n + q] = new_kq;
                    data[q * n + k] = new_kq;
                }
            }
        }
    }
    let diag: Vec<f64> = (0..n).map(|i| data[i * n + i]).collect();
    if diag.iter().any(|x| !x.is_finite()) {
        return Err(SpectrumError::NonFinite);
    }
    Ok(diag)
}

/// Elementary symmetric functions of the given values via the product
/// recurrence for `prod (x + v_i)`; returns length `n + 1` with leading 1.
pub fn elementary_symmetric(values: &[f64]) -> Vec<f64> {
    let mut sigma = vec![0.0; values.len() + 1];
    sigma[0] = 1.0;
    for (count, &v) in values.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            sigma[k] += v * sigma[k - 1];
        }
    }
    sigma
}

/// Full spectral decomposition summary of a symmetric matrix.
pub fn eigenvalues(a: &SymMatrix, tol: &Tol) -> Result<Spectrum, SpectrumError> {
    let n = a.n();
    let mut work: Vec<f64> = a.data().to_vec();
    let mut eigs = jacobi_diagonal(n, &mut work)?;
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    let sigma = elementary_symmetric(&eigs);
    let cut = -tol.zero_for(a.frob_norm());
    let neg_count = eigs.iter().filter(|&&l| l < cut).count();
    Ok(Spectrum {
        eigenvalues: eigs,
        sigma,
        neg_count,
    })
}

/// Ascending roots of `det(tI + A)` from ascending eigenvalues: negate and
/// reverse.
pub fn roots_from_eigenvalues(eigs: &[f64]) -> Vec<f64> {
    eigs.iter().rev().map(|l| -l).collect()
}

/// Derivative of `p(t) = prod (t - r_j)` evaluated directly from the roots.
fn char_poly_derivative(roots: &[f64], t: f64) -> f64 {
    let n = roots.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut prod = 1.0;
        for (j, &r) in roots.iter().enumerate() {
            if j != i {
                prod *= t - r;
            }
        }
        total += prod;
    }
    total
}

/// Critical points of `p` between consecutive roots by bisection of `p'`.
/// A collapsed bracket (numerically coincident roots) yields the shared root
/// itself, matching the limit where root and critical point agree.
pub fn critical_points_from_roots(roots: &[f64], tol: &Tol) -> Result<Vec<f64>, SpectrumError> {
    let n = roots.len();
    if n < 2 {
        return Err(SpectrumError::TooSmall { n, need: 2 });
    }
    let span = {
        let lo = roots[0];
        let hi = roots[n - 1];
        let m = math::abs(lo).max(math::abs(hi));
        if m > 1.0 {
            m
        } else {
            1.0
        }
    };
    let collapse = tol.root * span;
    let mut critical = Vec::with_capacity(n - 1);
    for idx in 0..n - 1 {
        let (ra, rb) = (roots[idx], roots[idx + 1]);
        if rb - ra <= collapse {
            critical.push(ra);
            continue;
        }
        let width = rb - ra;
        let mut a = ra;
        let mut b = rb;
        let mut fa = char_poly_derivative(roots, a);
        let mut fb = char_poly_derivative(roots, b);
        let mut nudge = 1e-12 * width;
        while fa == 0.0 && a < b {
            a = ra + nudge;
            fa = char_poly_derivative(roots, a);
            nudge *= 10.0;
        }
        nudge = 1e-12 * width;
        while fb == 0.0 && a < b {
            b = rb - nudge;
            fb = char_poly_derivative(roots, b);
            nudge *= 10.0;
        }
        if fa == 0.0 || fb == 0.0 || fa.signum() == fb.signum() {
            return Err(SpectrumError::DegenerateBracket { index: idx });
        }
        let width_target = tol.root * span;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= width_target || mid <= a || mid >= b {
                break;
            }
            let fm = char_poly_derivative(roots, mid);
            if fm == 0.0 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        critical.push(0.5 * (a + b));
    }
    Ok(critical)
}

/// Roots and critical points of `det(tI + A)` for a symmetric matrix with
/// `n >= 2`.
pub fn roots_and_critical_points(
    a: &SymMatrix,
    tol: &Tol,
) -> Result<RootsAndCriticalPoints, SpectrumError> {
    if a.n() < 2 {
        return Err(SpectrumError::TooSmall { n: a.n(), need: 2 });
    }
    let spec = eigenvalues(a, tol)?;
    roots_and_critical_points_from_spectrum(&spec, tol)
}

/// Same as [`roots_and_critical_points`] when a spectrum is already at hand.
pub fn roots_and_critical_points_from_spectrum(
    spec: &Spectrum,
    tol: &Tol,
) -> Result<RootsAndCriticalPoints, SpectrumError> {
    let roots = roots_from_eigenvalues(&spec.eigenvalues);
    let critical = critical_points_from_roots(&roots, tol)?;
    Ok(RootsAndCriticalPoints { roots, critical })
}

/// Number of strict sign changes in `seq` after dropping entries with
/// `|x| <= zero_tol`.
pub fn sign_variation(seq: &[f64], zero_tol: f64) -> usize {
    let mut changes = 0;
    let mut prev = 0.0f64;
    for &x in seq {
        if math::abs(x) <= zero_tol {
            continue;
        }
        if prev != 0.0 && x.signum() != prev.signum() {
            changes += 1;
        }
        prev = x;
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tol {
        Tol::default()
    }

    #[test]
    fn diagonal_matrices_are_exact() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let s = eigenvalues(&a, &tol()).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 2.0, 3.0]);
        assert_eq!(s.neg_count, 1);
    }

    #[test]
    fn sigma_of_reference_spectrum() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let s = eigenvalues(&a, &tol()).unwrap();
        let expect = [1.0, 4.0, 1.0, -6.0];
        for (got, want) in s.sigma.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-13, "sigma {got} vs {want}");
        }
    }

    #[test]
    fn two_by_two_off_diagonal() {
        let a = SymMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let s = eigenvalues(&a, &tol()).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn roots_are_negated_reversed_eigenvalues() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let rc = roots_and_critical_points(&a, &tol()).unwrap();
        assert_eq!(rc.roots, vec![-3.0, -2.0, 1.0]);
    }

    #[test]
    fn critical_points_of_reference_cubic() {
        // p(t) = (t+3)(t+2)(t-1), p'(t) = 3t^2 + 8t + 1, roots (-8 +- sqrt(52))/6.
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let rc = roots_and_critical_points(&a, &tol()).unwrap();
        let c0 = (-8.0 - 52.0f64.sqrt()) / 6.0;
        let c1 = (-8.0 + 52.0f64.sqrt()) / 6.0;
        assert!((rc.critical[0] - c0).abs() < 1e-10, "{} vs {}", rc.critical[0], c0);
        assert!((rc.critical[1] - c1).abs() < 1e-10, "{} vs {}", rc.critical[1], c1);
    }

    #[test]
    fn repeated_roots_collapse_critical_points() {
        let a = SymMatrix::diag(&[1.0, 1.0, 1.0]);
        let rc = roots_and_critical_points(&a, &tol()).unwrap();
        assert_eq!(rc.roots, vec![-1.0, -1.0, -1.0]);
        assert_eq!(rc.critical, vec![-1.0, -1.0]);
    }

    #[test]
    fn partially_repeated_roots_still_bracket() {
        // Eigenvalues (0, 0, 1) give roots (-1, 0, 0); the left bracket
        // [-1, 0] has p'(-1) != 0 but p'(0) = 0, exercising the nudge.
        let a = SymMatrix::diag(&[0.0, 0.0, 1.0]);
        let rc = roots_and_critical_points(&a, &tol()).unwrap();
        // p(t) = t^2 (t+1), p'(t) = 3t^2 + 2t, interior critical point -2/3.
        assert!((rc.critical[0] + 2.0 / 3.0).abs() < 1e-9);
        assert_eq!(rc.critical[1], 0.0);
    }

    #[test]
    fn critical_points_need_dimension_two() {
        let a = SymMatrix::diag(&[1.0]);
        assert_eq!(
            roots_and_critical_points(&a, &tol()),
            Err(SpectrumError::TooSmall { n: 1, need: 2 })
        );
    }

    #[test]
    fn sign_variation_counts_strict_changes() {
        assert_eq!(sign_variation(&[1.0, 4.0, 1.0, -6.0], 0.0), 1);
        assert_eq!(sign_variation(&[1.0, 0.0, -2.0, 3.0], 0.0), 2);
        assert_eq!(sign_variation(&[1.0, -1.0, 1.0, -1.0], 0.0), 3);
        assert_eq!(sign_variation(&[], 0.0), 0);
        assert_eq!(sign_variation(&[0.0, 0.0], 0.0), 0);
    }

    #[test]
    fn sign_variation_drops_near_zeros() {
        assert_eq!(sign_variation(&[1.0, 1e-12, -2.0], 1e-9), 1);
        assert_eq!(sign_variation(&[1.0, -1e-12, 2.0], 1e-9), 0);
    }

    #[test]
    fn jacobi_matches_known_rotation() {
        // Eigenvalues of [[1, 2], [2, 1]] are -1 and 3.
        let a = SymMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        let s = eigenvalues(&a, &tol()).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert_eq!(s.neg_count, 1);
    }

    #[test]
    fn elementary_symmetric_of_empty_is_one() {
        assert_eq!(elementary_symmetric(&[]), vec![1.0]);
    }
}

//! The operator `f(A) = sum_i arctan(lambda_i(A))`, its phase taxonomy, the
//! large-`t` expansion of `f(tA)`, and the tan-rescaling that makes the
//! operator uniformly monotone on the top phase interval.
//!
//! Phases live in `(-n pi/2, n pi/2)`. The special values are
//! `theta_k = (n - 2k) pi/2` for `k = 1..n-1`; removing them splits the range
//! into open intervals `I_k = (theta_k, theta_(k-1))` for `k = 1..n`, indexed
//! so that `I_1` is the topmost interval.

use core::f64::consts::FRAC_PI_2;

use crate::mat::SymMatrix;
use crate::math;
use crate::spectrum::{self, Spectrum, SpectrumError};
use crate::tol::Tol;

/// Where a phase value sits relative to the special values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseClass {
    /// Within the phase tolerance of `theta_k`, `1 <= k <= n-1`.
    Special(usize),
    /// Strictly inside the open interval `I_k`, `1 <= k <= n`.
    Interval(usize),
}

/// How `f(tA)` approaches its limit as `t` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    /// Approach from above: `sigma_(n-1) * sigma_n < 0`.
    DecreasingTo,
    /// Approach from below: `sigma_(n-1) * sigma_n > 0`.
    IncreasingTo,
    /// `sigma_(n-1)` vanishes to tolerance; the `1/t` term is absent.
    Indeterminate,
}

/// First-order description of `f(tA)` for large `t`:
/// `f(tA) = limit - first_order_coeff / t + O(1/t^3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    /// `(n - 2q) pi/2` where `q` counts negative eigenvalues.
    pub limit: f64,
    /// `sigma_(n-1) / sigma_n`, equal to the sum of reciprocal eigenvalues.
    pub first_order_coeff: f64,
    pub monotonicity: Monotonicity,
}

impl ExpansionReport {
    /// The two-term predictor `limit - first_order_coeff / t`.
    pub fn predict(&self, t: f64) -> f64 {
        self.limit - self.first_order_coeff / t
    }
}

/// Eigenvalue bound report for matrices in the top phase interval.
#[derive(Debug, Clone, PartialEq)]
pub struct TopIntervalBound {
    /// `theta - (n-2) pi/2`, the height above the top special value.
    pub delta: f64,
    /// `-tan(pi/2 - delta)`; every eigenvalue exceeds this.
    pub lower_bound: f64,
    /// Smallest eigenvalue actually observed.
    pub lambda_min: f64,
    /// Number of eigenvalues above the zero tolerance.
    pub positive_count: usize,
}

/// Errors from phase-level computations.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseError {
    /// `|theta| >= n pi/2`, outside the operator's range.
    OutOfRange { theta: f64, n: usize },
    /// `sigma_n` vanishes to tolerance, so the `1/t` coefficient is undefined.
    DegenerateSigma,
    /// `f(A)` sits within the phase tolerance of `+- n pi/2`, where the tan
    /// rescaling blows up.
    PoleProximity { value: f64 },
    /// A stated hypothesis does not hold for the given input.
    HypothesisViolated(&'static str),
    /// The witness eigenvalue could not be pinned to tolerance.
    RootFindFailure { residual: f64 },
    /// Propagated spectral failure.
    Spectral(SpectrumError),
}

impl From<SpectrumError> for PhaseError {
    fn from(e: SpectrumError) -> Self {
        PhaseError::Spectral(e)
    }
}

impl core::fmt::Display for PhaseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PhaseError::OutOfRange { theta, n } => {
                write!(f, "phase {theta} outside (-{n} pi/2, {n} pi/2)")
            }
            PhaseError::DegenerateSigma => write!(f, "top symmetric function vanishes"),
            PhaseError::PoleProximity { value } => {
                write!(f, "operator value {value} too close to the range endpoints")
            }
            PhaseError::HypothesisViolated(what) => write!(f, "hypothesis violated: {what}"),
            PhaseError::RootFindFailure { residual } => {
                write!(f, "witness root-find residual {residual} above tolerance")
            }
            PhaseError::Spectral(e) => write!(f, "{e}"),
        }
    }
}

/// The special phase value `theta_k = (n - 2k) pi/2`.
pub fn special_value(n: usize, k: usize) -> f64 {
    (n as f64 - 2.0 * k as f64) * FRAC_PI_2
}

/// Open bounds `(lo, hi)` of the phase interval `I_k`.
pub fn interval_bounds(n: usize, k: usize) -> (f64, f64) {
    (special_value(n, k), special_value(n, k - 1))
}

/// Operator value from an existing spectrum.
pub fn sl_value_from_spectrum(spec: &Spectrum) -> f64 {
    spec.eigenvalues.iter().map(|&l| math::atan(l)).sum()
}

/// `f(A) = sum arctan(lambda_i)`, in `(-n pi/2, n pi/2)`.
pub fn sl_value(a: &SymMatrix, tol: &Tol) -> Result<f64, PhaseError> {
    Ok(sl_value_from_spectrum(&spectrum::eigenvalues(a, tol)?))
}

/// Classifies `theta` as a special value or an interval member.
pub fn classify_phase(n: usize, theta: f64, tol: &Tol) -> Result<PhaseClass, PhaseError> {
    let top = n as f64 * FRAC_PI_2;
    if !theta.is_finite() || math::abs(theta) >= top {
        return Err(PhaseError::OutOfRange { theta, n });
    }
    let raw = (n as f64 - theta / FRAC_PI_2) / 2.0;
    let nearest = math::round(raw);
    if nearest >= 1.0 && nearest <= n as f64 - 1.0 {
        let k = nearest as usize;
        if math::abs(theta - special_value(n, k)) <= tol.phase {
            return Ok(PhaseClass::Special(k));
        }
    }
    let k = (math::floor(raw) as i64 + 1).clamp(1, n as i64) as usize;
    Ok(PhaseClass::Interval(k))
}

/// The Lagrangian duality sends phase `theta` to `-theta`.
pub fn dual_phase(theta: f64) -> f64 {
    -theta
}

/// Expansion of `f(tA)` for large `t` from an existing spectrum.
pub fn asymptotic_expansion_from_spectrum(
    spec: &Spectrum,
    scale: f64,
    tol: &Tol,
) -> Result<ExpansionReport, PhaseError> {
    let n = spec.eigenvalues.len();
    let zero = tol.zero_for(scale);
    let sigma_n = spec.sigma[n];
    if math::abs(sigma_n) <= zero {
        return Err(PhaseError::DegenerateSigma);
    }
    let sigma_top = spec.sigma[n - 1];
    let monotonicity = if math::abs(sigma_top) <= zero {
        Monotonicity::Indeterminate
    } else if sigma_top * sigma_n < 0.0 {
        Monotonicity::DecreasingTo
    } else {
        Monotonicity::IncreasingTo
    };
    Ok(ExpansionReport {
        limit: (n as f64 - 2.0 * spec.neg_count as f64) * FRAC_PI_2,
        first_order_coeff: sigma_top / sigma_n,
        monotonicity,
    })
}

/// Two-term large-`t` expansion of `f(tA)`; needs `sigma_n` away from zero.
pub fn asymptotic_expansion(a: &SymMatrix, tol: &Tol) -> Result<ExpansionReport, PhaseError> {
    let spec = spectrum::eigenvalues(a, tol)?;
    asymptotic_expansion_from_spectrum(&spec, a.frob_norm(), tol)
}

fn guarded_value(a: &SymMatrix, tol: &Tol) -> Result<(Spectrum, f64), PhaseError> {
    let spec = spectrum::eigenvalues(a, tol)?;
    let n = a.n();
    let f = sl_value_from_spectrum(&spec);
    if math::abs(f) >= n as f64 * FRAC_PI_2 - tol.phase {
        return Err(PhaseError::PoleProximity { value: f });
    }
    Ok((spec, f))
}

/// `tan(f(A) / n)`, the tamed operator value.
pub fn tame_value(a: &SymMatrix, tol: &Tol) -> Result<f64, PhaseError> {
    let (_, f) = guarded_value(a, tol)?;
    Ok(math::tan(f / a.n() as f64))
}

/// Derivative factor of the tamed operator along the identity direction:
/// `(1 + tan^2(f/n)) / n * sum_j 1 / (1 + lambda_j^2)`.
pub fn tame_derivative(a: &SymMatrix, tol: &Tol) -> Result<f64, PhaseError> {
    let (spec, f) = guarded_value(a, tol)?;
    let n = a.n() as f64;
    let t = math::tan(f / n);
    let chi_prime = (1.0 + t * t) / n;
    let slope: f64 = spec.eigenvalues.iter().map(|&l| 1.0 / (1.0 + l * l)).sum();
    Ok(chi_prime * slope)
}

/// Uniform lower bound `1 / (n (1 + tan^2(pi/2 - delta)))` for the tamed
/// derivative on matrices with `f(A) >= (n-2) pi/2 + delta`.
pub fn tameness_bound(n: usize, delta: f64) -> f64 {
    assert!(delta > 0.0, "delta must be positive");
    let t = math::tan(FRAC_PI_2 - delta);
    1.0 / (n as f64 * (1.0 + t * t))
}

/// Eigenvalue bounds available on the top phase interval: all but at most one
/// eigenvalue is positive, and the bottom one exceeds `-tan(pi/2 - delta)`.
pub fn top_interval_eigenvalue_bound(
    a: &SymMatrix,
    theta: f64,
    tol: &Tol,
) -> Result<TopIntervalBound, PhaseError> {
    let n = a.n();
    match classify_phase(n, theta, tol)? {
        PhaseClass::Interval(1) => {}
        _ => {
            return Err(PhaseError::HypothesisViolated(
                "phase must lie in the top interval",
            ))
        }
    }
    let spec = spectrum::eigenvalues(a, tol)?;
    let f = sl_value_from_spectrum(&spec);
    if f < theta - tol.phase {
        return Err(PhaseError::HypothesisViolated("f(A) below the given phase"));
    }
    let delta = theta - special_value(n, 1);
    let zero = tol.zero_for(a.frob_norm());
    Ok(TopIntervalBound {
        delta,
        lower_bound: -math::tan(FRAC_PI_2 - delta),
        lambda_min: spec.eigenvalues[0],
        positive_count: spec.eigenvalues.iter().filter(|&&l| l > zero).count(),
    })
}

/// Witness family `A(s) = diag(lambda_1(s), s, ..., s)` pinned to
/// `f(A(s)) = (n-2) pi/2`; its tamed derivative collapses as `s` grows,
/// showing no rescaling can be uniformly monotone below the top interval.
pub fn non_tamability_witness(n: usize, s: f64, tol: &Tol) -> Result<SymMatrix, PhaseError> {
    if n < 2 {
        return Err(PhaseError::HypothesisViolated("witness needs n >= 2"));
    }
    if !(s >= 1.0) {
        return Err(PhaseError::HypothesisViolated("witness needs s >= 1"));
    }
    let target = (n as f64 - 2.0) * FRAC_PI_2 - (n as f64 - 1.0) * math::atan(s);
    if target >= FRAC_PI_2 - 1e-9 {
        return Err(PhaseError::RootFindFailure {
            residual: target - FRAC_PI_2,
        });
    }
    let lambda_1 = math::tan(target);
    let mut d = alloc::vec![s; n];
    d[0] = lambda_1;
    let a = SymMatrix::diag(&d);
    let f = sl_value(&a, tol)?;
    let residual = math::abs(f - (n as f64 - 2.0) * FRAC_PI_2);
    if residual > 1e-10 {
        return Err(PhaseError::RootFindFailure { residual });
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tol {
        Tol::default()
    }

    #[test]
    fn reference_operator_value_is_half_pi() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let f = sl_value(&a, &tol()).unwrap();
        assert!((f - FRAC_PI_2).abs() < 1e-12, "got {f}");
    }

    #[test]
    fn operator_is_odd_on_reference() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let f_pos = sl_value(&a, &tol()).unwrap();
        let f_neg = sl_value(&a.scaled(-1.0), &tol()).unwrap();
        assert!((f_pos + f_neg).abs() < 1e-12);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn classify_detects_special_values() {
        // A ten-digit decimal must still snap onto the exact special value.
        assert_eq!(
            classify_phase(3, 1.5707963268, &tol()).unwrap(),
            PhaseClass::Special(1)
        );
        assert_eq!(classify_phase(2, 0.0, &tol()).unwrap(), PhaseClass::Special(1));
        assert_eq!(
            classify_phase(4, -FRAC_PI_2 * 2.0, &tol()).unwrap(),
            PhaseClass::Special(3)
        );
    }

    #[test]
    fn classify_detects_intervals() {
        assert_eq!(classify_phase(3, 1.6, &tol()).unwrap(), PhaseClass::Interval(1));
        assert_eq!(classify_phase(3, 1.5, &tol()).unwrap(), PhaseClass::Interval(2));
        assert_eq!(classify_phase(3, -1.6, &tol()).unwrap(), PhaseClass::Interval(3));
        assert_eq!(classify_phase(1, 0.3, &tol()).unwrap(), PhaseClass::Interval(1));
        assert_eq!(classify_phase(2, -0.2, &tol()).unwrap(), PhaseClass::Interval(2));
    }

    #[test]
    fn classify_rejects_out_of_range() {
        assert!(matches!(
            classify_phase(2, core::f64::consts::PI, &tol()),
            Err(PhaseError::OutOfRange { .. })
        ));
        assert!(matches!(
            classify_phase(2, f64::NAN, &tol()),
            Err(PhaseError::OutOfRange { .. })
        ));
    }

    #[test]
    fn interval_bounds_nest_correctly() {
        let (lo, hi) = interval_bounds(3, 1);
        assert!((lo - FRAC_PI_2).abs() < 1e-15);
        assert!((hi - 3.0 * FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn expansion_of_reference_matrix() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let rep = asymptotic_expansion(&a, &tol()).unwrap();
        assert!((rep.limit - FRAC_PI_2).abs() < 1e-15);
        assert!((rep.first_order_coeff + 1.0 / 6.0).abs() < 1e-13);
        assert_eq!(rep.monotonicity, Monotonicity::DecreasingTo);
    }

    #[test]
    fn expansion_predictor_tracks_cubic_error() {
        let a = SymMatrix::diag(&[-1.0, 2.0, 3.0]);
        let rep = asymptotic_expansion(&a, &tol()).unwrap();
        for &(t, budget) in &[(10.0, 3e-4), (100.0, 3e-7)] {
            let f = sl_value(&a.scaled(t), &tol()).unwrap();
            assert!(
                (f - rep.predict(t)).abs() < budget,
                "t = {t}: {}",
                (f - rep.predict(t)).abs()
            );
        }
    }

    #[test]
    fn expansion_rejects_singular_matrices() {
        let a = SymMatrix::diag(&[0.0, 1.0]);
        assert_eq!(asymptotic_expansion(&a, &tol()), Err(PhaseError::DegenerateSigma));
    }

    #[test]
    fn expansion_flags_vanishing_first_order_term() {
        let a = SymMatrix::diag(&[-1.0, 1.0]);
        let rep = asymptotic_expansion(&a, &tol()).unwrap();
        assert_eq!(rep.monotonicity, Monotonicity::Indeterminate);
    }

    #[test]
    fn tame_value_of_identity() {
        let a = SymMatrix::identity(2);
        let v = tame_value(&a, &tol()).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tame_derivative_of_identity_is_one() {
        let a = SymMatrix::identity(2);
        let d = tame_derivative(&a, &tol()).unwrap();
        assert!((d - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tame_ops_reject_pole_proximity() {
        let a = SymMatrix::diag(&[1e13, 1e13]);
        assert!(matches!(
            tame_value(&a, &tol()),
            Err(PhaseError::PoleProximity { .. })
        ));
    }

    #[test]
    fn tameness_bound_reference_value() {
        let b = tameness_bound(3, 0.1);
        assert!((b - 3.3223e-3).abs() < 5e-7, "got {b}");
        let at_top = tameness_bound(2, FRAC_PI_2);
        assert!((at_top - 0.5).abs() < 1e-15);
    }

    #[test]
    fn top_interval_bound_reports_margins() {
        let a = SymMatrix::diag(&[-0.01, 5.0, 5.0]);
        let theta = FRAC_PI_2 + 0.1;
        let b = top_interval_eigenvalue_bound(&a, theta, &tol()).unwrap();
        assert_eq!(b.positive_count, 2);
        assert!(b.lambda_min > b.lower_bound);
        assert!((b.delta - 0.1).abs() < 1e-15);
    }

    #[test]
    fn top_interval_bound_rejects_wrong_phase() {
        let a = SymMatrix::identity(3);
        assert!(matches!(
            top_interval_eigenvalue_bound(&a, 0.0, &tol()),
            Err(PhaseError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn witness_matches_closed_form_for_n2() {
        let a = non_tamability_witness(2, 10.0, &tol()).unwrap();
        assert!((a.get(0, 0) + 10.0).abs() < 1e-12);
        assert_eq!(a.get(1, 1), 10.0);
    }

    #[test]
    fn witness_pins_operator_to_special_value() {
        for &(n, s) in &[(2usize, 1.0), (2, 1000.0), (3, 7.0), (4, 50.0)] {
            let a = non_tamability_witness(n, s, &tol()).unwrap();
            let f = sl_value(&a, &tol()).unwrap();
            assert!((f - (n as f64 - 2.0) * FRAC_PI_2).abs() <= 1e-10);
        }
    }

    #[test]
    fn witness_rejects_unreachable_targets() {
        assert!(matches!(
            non_tamability_witness(5, 1.0, &tol()),
            Err(PhaseError::RootFindFailure { .. })
        ));
    }
}

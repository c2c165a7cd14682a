//! Closed-form membership tests for the eigenvalue cones and their
//! sigma-relaxed enlargements, with three interchangeable routes.
//!
//! For `1 <= k <= n` the cone `L_k` collects the symmetric matrices with
//! `lambda_k(A) >= 0`. Equivalently, with `p(t) = det(tI + A)` and roots
//! `r_1 <= ... <= r_n`, membership reads `r_(n-k+1) <= 0`, and by Descartes'
//! rule it also reads `Var(sigma~) <= k-1` on the trimmed coefficient
//! sequence. The enlargement `L_k^+` relaxes the root condition to the
//! critical points of `p`: `c_(n-k) <= 0`, or `Var(alpha~) <= k-1` with
//! `alpha = (1, sigma_1, ..., sigma_(n-1))`.

use alloc::vec::Vec;

use crate::mat::SymMatrix;
use crate::math;
use crate::spectrum::{self, SpectrumError};
use crate::tol::Tol;

/// Position of a matrix relative to a closed cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
    /// Closed-set membership from the sign-variation route, which cannot
    /// separate interior from boundary.
    Member,
}

/// Which characterization produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Eigenvalue,
    CriticalPoint,
    SignVariation,
}

/// Membership verdict with the signed quantity that decided it. Positive
/// margins point inward; the variation route reports the integer slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict {
    pub region: Region,
    pub route: Route,
    pub margin: f64,
}

/// Placement of an enlargement member relative to the underlying cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionLabel {
    /// Already in `L_k`.
    InLambdaK,
    /// In the residual open piece; `j` is the largest index in `0..n` with
    /// `sigma_j` away from zero, and there `sigma_j sigma_n < 0`.
    EkSet { j: usize },
    Outside,
}

/// Errors from branch membership tests.
#[derive(Debug, Clone, PartialEq)]
pub enum BranchError {
    /// `k` outside the admissible range for the requested branch.
    BadIndex { k: usize, n: usize },
    Spectral(SpectrumError),
}

impl From<SpectrumError> for BranchError {
    fn from(e: SpectrumError) -> Self {
        BranchError::Spectral(e)
    }
}

impl core::fmt::Display for BranchError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BranchError::BadIndex { k, n } => write!(f, "branch index {k} invalid for n = {n}"),
            BranchError::Spectral(e) => write!(f, "{e}"),
        }
    }
}

fn region_from_margin(margin: f64, zero: f64, route: Route) -> RegionVerdict {
    let region = if margin > zero {
        Region::Interior
    } else if margin < -zero {
        Region::Exterior
    } else {
        Region::Boundary
    };
    RegionVerdict { region, route, margin }
}

/// Membership of `A` in the closed cone `L_k` via `lambda_k(A) >= 0`.
pub fn lambda_branch(a: &SymMatrix, k: usize, tol: &Tol) -> Result<RegionVerdict, BranchError> {
    let n = a.n();
    if k < 1 || k > n {
        return Err(BranchError::BadIndex { k, n });
    }
    let spec = spectrum::eigenvalues(a, tol)?;
    let margin = spec.eigenvalues[k - 1];
    let verdict = region_from_margin(margin, tol.zero_for(a.frob_norm()), Route::Eigenvalue);
    debug_assert!(
        verdict.region == Region::Exterior || spec.neg_count <= k - 1,
        "interior or boundary of L_k must carry at most k-1 negative eigenvalues"
    );
    Ok(verdict)
}

/// Membership of `A` in the enlargement `L_k^+` via the critical points of
/// `det(tI + A)`: the cone holds exactly when `c_(n-k) <= 0`.
pub fn sigma_branch_critical(
    a: &SymMatrix,
    k: usize,
    tol: &Tol,
) -> Result<RegionVerdict, BranchError> {
    let n = a.n();
    if k < 1 || k > n - 1 {
        return Err(BranchError::BadIndex { k, n });
    }
    let rc = spectrum::roots_and_critical_points(a, tol)?;
    let margin = -rc.critical[n - k - 1];
    Ok(region_from_margin(
        margin,
        tol.zero_for(a.frob_norm()),
        Route::CriticalPoint,
    ))
}

fn trimmed_alpha(sigma: &[f64], n: usize) -> Vec<f64> {
    let mut alpha = Vec::with_capacity(n);
    alpha.extend_from_slice(&sigma[..n]);
    alpha
}

/// Membership of `A` in `L_k` via sign variations of the trimmed coefficient
/// sequence `sigma~`: append `sigma_n` to `(1, sigma_1, ..., sigma_(n-1))`
/// unless it vanishes.
pub fn lambda_branch_variation(a: &SymMatrix, k: usize, tol: &Tol) -> Result<bool, BranchError> {
    let n = a.n();
    if k < 1 || k > n {
        return Err(BranchError::BadIndex { k, n });
    }
    let spec = spectrum::eigenvalues(a, tol)?;
    let zero = tol.zero_for(a.frob_norm());
    let mut seq = trimmed_alpha(&spec.sigma, n);
    if math::abs(spec.sigma[n]) > zero {
        seq.push(spec.sigma[n]);
    }
    Ok(spectrum::sign_variation(&seq, zero) <= k - 1)
}

/// Membership of `A` in `L_k^+` via sign variations of
/// `alpha = (1, sigma_1, ..., sigma_(n-1))`.
pub fn sigma_branch_variation(
    a: &SymMatrix,
    k: usize,
    tol: &Tol,
) -> Result<RegionVerdict, BranchError> {
    let n = a.n();
    if k < 1 || k > n - 1 {
        return Err(BranchError::BadIndex { k, n });
    }
    let spec = spectrum::eigenvalues(a, tol)?;
    let zero = tol.zero_for(a.frob_norm());
    let alpha = trimmed_alpha(&spec.sigma, n);
    let var = spectrum::sign_variation(&alpha, zero);
    let slack = k as f64 - 1.0 - var as f64;
    let region = if slack >= 0.0 { Region::Member } else { Region::Exterior };
    Ok(RegionVerdict {
        region,
        route: Route::SignVariation,
        margin: slack,
    })
}

/// Splits a member of `L_k^+` into the `L_k` part and the residual open set,
/// on which `sigma_n` never vanishes and opposes the leading nonzero
/// `sigma_j`.
pub fn decompose_sigma_branch(
    a: &SymMatrix,
    k: usize,
    tol: &Tol,
) -> Result<DecompositionLabel, BranchError> {
    let membership = sigma_branch_critical(a, k, tol)?;
    if membership.region == Region::Exterior {
        return Ok(DecompositionLabel::Outside);
    }
    let spec = spectrum::eigenvalues(a, tol)?;
    let zero = tol.zero_for(a.frob_norm());
    if spec.eigenvalues[k - 1] >= -zero {
        return Ok(DecompositionLabel::InLambdaK);
    }
    let n = a.n();
    let j = (0..n)
        .rev()
        .find(|&j| math::abs(spec.sigma[j]) > zero)
        .unwrap_or(0);
    debug_assert!(
        math::abs(spec.sigma[n]) > zero,
        "residual set requires nonvanishing sigma_n"
    );
    debug_assert!(spec.sigma[j] * spec.sigma[n] < 0.0);
    Ok(DecompositionLabel::EkSet { j })
}

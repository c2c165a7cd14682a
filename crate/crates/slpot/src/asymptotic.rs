//! Membership tests for the asymptotic cones `F->_theta` of the subequations
//! `{f >= theta}`, plus a sampled oracle that checks the defining ray
//! condition directly.
//!
//! For interval phases `theta` in `I_k` the cone equals `L_k` outright. At
//! the special values `theta_k` the closure equals the enlargement `L_k^+`,
//! and the interior splits into matrices interior to `L_(k+1)` that either
//! already lie in `L_k` or carry a strictly negative product
//! `sigma_(n-1) sigma_n`.

use alloc::vec::Vec;

use crate::branches::{self, BranchError, Region};
use crate::mat::SymMatrix;
use crate::math;
use crate::phase::{self, Monotonicity, PhaseClass, PhaseError};
use crate::spectrum::{self, SpectrumError};
use crate::tol::Tol;

/// Which rule of the interior characterization fired (or failed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchCase {
    /// Interval phase in `I_k`: decided by `lambda_k` alone.
    IntervalCase(usize),
    /// Special phase `theta_k` with `lambda_k` nonnegative: decided by
    /// `lambda_(k+1)`.
    SpecialCaseA(usize),
    /// Special phase `theta_k` with `lambda_k` negative: decided by
    /// `lambda_(k+1)` and the sign of `sigma_(n-1) sigma_n`.
    SpecialCaseB(usize),
}

/// The scalars that decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticWitness {
    pub lambda_k: f64,
    /// Present for special phases, where the case split consults it.
    pub lambda_k_plus_1: Option<f64>,
    /// `sigma_(n-1) sigma_n`, consulted in the second special case.
    pub sigma_product: Option<f64>,
}

/// Joint interior and closure verdict for one matrix and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticVerdict {
    pub member_interior: bool,
    pub member_closure: bool,
    pub branch_case: BranchCase,
    pub witness: AsymptoticWitness,
}

/// Knobs for the sampled ray oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    /// Downward identity shifts, relative to `max(1, ||A||_F)`.
    pub eps_grid: Vec<f64>,
    /// Largest ray parameter sampled.
    pub t_max: f64,
    /// Number of logarithmically spaced samples on `[1, t_max]`.
    pub points: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            eps_grid: alloc::vec![1e-2, 1e-3, 1e-4],
            t_max: 1e6,
            points: 240,
        }
    }
}

/// Errors from asymptotic membership tests.
#[derive(Debug, Clone, PartialEq)]
pub enum AsymptoticError {
    /// Every shift in the grid had a vanishing determinant, so no ray could
    /// be certified either way.
    Inconclusive { shifts_tried: usize },
    Phase(PhaseError),
    Branch(BranchError),
    Spectral(SpectrumError),
}

impl From<PhaseError> for AsymptoticError {
    fn from(e: PhaseError) -> Self {
        AsymptoticError::Phase(e)
    }
}

impl From<BranchError> for AsymptoticError {
    fn from(e: BranchError) -> Self {
        AsymptoticError::Branch(e)
    }
}

impl From<SpectrumError> for AsymptoticError {
    fn from(e: SpectrumError) -> Self {
        AsymptoticError::Spectral(e)
    }
}

impl core::fmt::Display for AsymptoticError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AsymptoticError::Inconclusive { shifts_tried } => {
                write!(f, "all {shifts_tried} identity shifts were degenerate")
            }
            AsymptoticError::Phase(e) => write!(f, "{e}"),
            AsymptoticError::Branch(e) => write!(f, "{e}"),
            AsymptoticError::Spectral(e) => write!(f, "{e}"),
        }
    }
}

/// Interior and closure test against the eigenvalue characterization, shared
/// with the Garding generalization which feeds in its own spectrum.
pub(crate) fn verdict_from_spectrum(
    eigenvalues: &[f64],
    sigma: &[f64],
    class: PhaseClass,
    zero: f64,
) -> AsymptoticVerdict {
    let n = eigenvalues.len();
    match class {
        PhaseClass::Interval(k) => {
            let lambda_k = eigenvalues[k - 1];
            AsymptoticVerdict {
                member_interior: lambda_k > zero,
                member_closure: lambda_k >= -zero,
                branch_case: BranchCase::IntervalCase(k),
                witness: AsymptoticWitness {
                    lambda_k,
                    lambda_k_plus_1: None,
                    sigma_product: None,
                },
            }
        }
        PhaseClass::Special(k) => {
            let lambda_k = eigenvalues[k - 1];
            let lambda_next = eigenvalues[k];
            let product = sigma[n - 1] * sigma[n];
            let witness = AsymptoticWitness {
                lambda_k,
                lambda_k_plus_1: Some(lambda_next),
                sigma_product: Some(product),
            };
            if lambda_k >= -zero {
                AsymptoticVerdict {
                    member_interior: lambda_next > zero,
                    member_closure: true,
                    branch_case: BranchCase::SpecialCaseA(k),
                    witness,
                }
            } else {
                AsymptoticVerdict {
                    member_interior: lambda_next > zero && product < -zero,
                    member_closure: false,
                    branch_case: BranchCase::SpecialCaseB(k),
                    witness,
                }
            }
        }
    }
}

/// Interior membership `A` in `Int F->_theta` by the closed-form rules. The
/// closure flag in the verdict comes from the same spectrum; for special
/// phases it reflects the `L_k` part only, see [`asymptotic_closure`] for
/// the full closed test.
pub fn asymptotic_interior(
    a: &SymMatrix,
    theta: f64,
    tol: &Tol,
) -> Result<AsymptoticVerdict, AsymptoticError> {
    let class = phase::classify_phase(a.n(), theta, tol)?;
    let spec = spectrum::eigenvalues(a, tol)?;
    let zero = tol.zero_for(a.frob_norm());
    let mut verdict = verdict_from_spectrum(&spec.eigenvalues, &spec.sigma, class, zero);
    if let PhaseClass::Special(k) = class {
        if !verdict.member_closure {
            verdict.member_closure =
                branches::sigma_branch_critical(a, k, tol)?.region != Region::Exterior;
        }
    }
    Ok(verdict)
}

/// Closed membership `A` in `F->_theta`: the cone `L_k` for interval phases,
/// the enlargement `L_k^+` at the special values.
pub fn asymptotic_closure(a: &SymMatrix, theta: f64, tol: &Tol) -> Result<bool, AsymptoticError> {
    let class = phase::classify_phase(a.n(), theta, tol)?;
    let member = match class {
        PhaseClass::Interval(k) => branches::lambda_branch(a, k, tol)?.region != Region::Exterior,
        PhaseClass::Special(k) => {
            branches::sigma_branch_critical(a, k, tol)?.region != Region::Exterior
        }
    };
    Ok(member)
}

/// Samples the defining ray condition: `A` belongs to the asymptotic
/// interior when some downward shift `A - eps I` satisfies
/// `f(t (A - eps I)) >= theta` for all large `t`. Each shift is checked on a
/// log grid up to `t_max` and certified beyond it with the two-term
/// expansion; shifts with vanishing determinant are skipped.
pub fn definition_oracle(
    a: &SymMatrix,
    theta: f64,
    opts: &OracleOptions,
    tol: &Tol,
) -> Result<bool, AsymptoticError> {
    phase::classify_phase(a.n(), theta, tol)?;
    let scale = math::abs(a.frob_norm()).max(1.0);
    let mut degenerate = 0usize;
    for &rel in &opts.eps_grid {
        let shifted = a.add_scaled_identity(-rel * scale);
        let spec = spectrum::eigenvalues(&shifted, tol)?;
        let report = match phase::asymptotic_expansion_from_spectrum(
            &spec,
            shifted.frob_norm(),
            tol,
        ) {
            Ok(report) => report,
            Err(PhaseError::DegenerateSigma) => {
                degenerate += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let certified_beyond_grid = report.limit > theta + tol.phase
            || (math::abs(report.limit - theta) <= tol.phase
                && report.monotonicity == Monotonicity::DecreasingTo);
        if !certified_beyond_grid {
            continue;
        }
        let log_max = math::log10(opts.t_max);
        let last = (opts.points - 1).max(1) as f64;
        let slack = 1e-12;
        let mut tail_holds = true;
        for i in (0..opts.points).rev() {
            let t = math::exp(math::ln(10.0) * log_max * i as f64 / last);
            let f: f64 = spec.eigenvalues.iter().map(|&l| math::atan(t * l)).sum();
            if f < theta - slack {
                tail_holds = i + 1 < opts.points;
                break;
            }
        }
        if tail_holds {
            return Ok(true);
        }
    }
    if degenerate == opts.eps_grid.len() {
        return Err(AsymptoticError::Inconclusive {
            shifts_tried: degenerate,
        });
    }
    Ok(false)
}

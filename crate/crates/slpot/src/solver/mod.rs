//! Dirichlet solver for `tr arctan D^2 u = psi` on 2-d grid domains, plus
//! the tame reformulation for top-interval phases, exact radial reference
//! profiles, and the Lagrangian-graph mean-curvature verifier.

pub mod grid;
pub mod lagrangian;
pub mod radial;
pub mod scheme;

pub use grid::{
    discrete_sl_operator, solve, tame_solve, Grid, NodeKind, SolveProblem, SolveResult,
};
pub use lagrangian::{lagrangian_graph_check, LagrangianSample};
pub use radial::{radial_reference, RadialProfile};
pub use scheme::{SchemeWeights, WIDE_STENCIL};

use alloc::boxed::Box;
use alloc::string::String;

/// Errors from problem assembly, iteration, and the radial root-finder.
#[derive(Debug)]
pub enum SolverError {
    /// The problem description is inconsistent (bad mask, range, stencil).
    InvalidProblem(String),
    /// Iteration hit `max_iters`; carries the best iterate found.
    NotConverged(Box<SolveResult>),
    /// `tame_solve` requires the phase range inside the top interval.
    PhaseOutOfRange { psi: f64 },
    /// No admissible root of the radial first integral at this radius.
    NoBracket { r: f64 },
}

impl core::fmt::Display for SolverError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SolverError::InvalidProblem(why) => write!(f, "invalid problem: {why}"),
            SolverError::NotConverged(res) => write!(
                f,
                "not converged after {} sweeps, residual {:.3e}",
                res.iterations, res.residual_sup
            ),
            SolverError::PhaseOutOfRange { psi } => {
                write!(f, "phase {psi} outside the top interval")
            }
            SolverError::NoBracket { r } => {
                write!(f, "no admissible profile root at r = {r}")
            }
        }
    }
}

//! Output records emitted by the CLI. Field order is the serialization
//! order, so adding fields is append-only to keep byte output stable.

use serde::{Deserialize, Serialize};

/// `classify` result: phase interval or special value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseClassOut {
    pub kind: String,
    pub k: usize,
}

/// One cone-membership verdict with the scalar that decided it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteOut {
    pub region: String,
    pub route: String,
    pub margin: f64,
}

/// Placement inside the sigma enlargement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompOut {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

/// `branch` result: eigenvalue-cone verdicts plus the sigma enlargement
/// when it exists for the requested index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchOut {
    pub n: usize,
    pub k: usize,
    pub lambda: RouteOut,
    pub lambda_variation_agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<RouteOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_variation_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompOut>,
}

/// Scalars consulted by the closed-form membership rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub lambda_k: f64,
    pub lambda_k_plus_1: Option<f64>,
    pub sigma_product: Option<f64>,
}

/// `asym` result for one matrix and phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymOut {
    pub member_interior: bool,
    pub member_closure: bool,
    pub branch_case: String,
    pub k: usize,
    pub witnesses: WitnessOut,
}

/// `boundary --kappas` result for one curvature tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryOut {
    pub kappas: Vec<f64>,
    pub sigma_values: Vec<f64>,
    pub case: String,
    pub strictness: String,
    pub strict: bool,
}

/// `solve` summary; the node field goes to CSV separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSummaryOut {
    pub iterations: usize,
    pub residual_sup: f64,
    pub converged: bool,
    pub best_effort: bool,
}

/// `radial --format json` result; columns match the CSV layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialOut {
    pub r: Vec<f64>,
    pub y: Vec<f64>,
    pub y_prime: Vec<f64>,
    pub u: Vec<f64>,
    pub max_phase_residual: f64,
}

/// `verify-appendix-a` result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub max_deviation: f64,
    pub points: usize,
}

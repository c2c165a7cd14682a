//! Boundary geometry: principal curvatures of implicitly defined
//! hypersurfaces and the strict-convexity classification that decides
//! Dirichlet solvability for each phase.
//!
//! A domain is given as `{rho < 0}`. At a boundary point the second
//! fundamental form with respect to the interior normal is the Hessian of
//! `rho` restricted to the tangent hyperplane and divided by `|grad rho|`;
//! its eigenvalues are the principal curvatures, reported ascending, so a
//! sphere of radius `R` reports `1/R` on every axis.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::asymptotic::{self, AsymptoticError};
use crate::mat::SymMatrix;
use crate::math;
use crate::phase::{self, PhaseClass, PhaseError};
use crate::spectrum::{self, SpectrumError};
use crate::tol::Tol;

/// Default large parameters for the diagonal matrix cross-check.
pub const DEFAULT_T_LIST: [f64; 3] = [1e2, 1e3, 1e4];

type ScalarField = dyn Fn(&[f64]) -> f64 + Send + Sync;
type VectorField = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;
type MatrixField = dyn Fn(&[f64]) -> SymMatrix + Send + Sync;

/// A hypersurface `{rho = 0}` bounding the domain `{rho < 0}`, with
/// optional analytic derivative callbacks. Missing derivatives fall back to
/// centered finite differences with step `fd_step * (1 + |x|)`.
pub struct ImplicitSurface {
    dim: usize,
    rho: Box<ScalarField>,
    grad: Option<Box<VectorField>>,
    hess: Option<Box<MatrixField>>,
    fd_step: f64,
}

/// Second fundamental form data at one boundary point.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondFundamentalForm {
    /// The form in an orthonormal tangent basis, `(n-1) x (n-1)`.
    pub matrix: SymMatrix,
    /// Principal curvatures, ascending, interior-normal convention.
    pub kappas: Vec<f64>,
    pub interior_normal: Vec<f64>,
}

/// Which clause of the convexity classification applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexityCase {
    /// Interval phase with index below the dimension: one curvature decides.
    Case1,
    /// Special phase, bottom curvature nonnegative.
    Case2a,
    /// Special phase, bottom curvature negative: the sigma product decides.
    Case2b,
    /// Bottom interval or bottom special value: no condition.
    Case3,
}

/// Three-valued strictness: `Marginal` marks decision scalars inside the
/// zero tolerance, where the classification is not trustworthy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    NotStrict,
    Marginal,
}

/// Convexity verdict for one curvature tuple and phase.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPointReport {
    pub kappas: Vec<f64>,
    /// `sigma_1 .. sigma_(n-1)` of the curvature tuple.
    pub sigma_values: Vec<f64>,
    pub case: ConvexityCase,
    pub strictness: Strictness,
}

impl BoundaryPointReport {
    pub fn is_strict(&self) -> bool {
        self.strictness == Strictness::Strict
    }
}

/// Phase the boundary must be convex for, after dualization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletConvexity {
    /// `|theta|`; duality reduces both boundary conditions to this phase.
    pub phase: f64,
    /// `min(k, n-k+1)` when the phase sits in an interval.
    pub order: Option<usize>,
}

/// Errors from boundary-geometry computations.
#[derive(Debug)]
pub enum BoundaryError {
    /// `rho(x)` too far from zero for the point to count as boundary.
    NotOnSurface { rho: f64 },
    /// `|grad rho|` below the minimum, no well-defined normal.
    DegenerateGradient { norm: f64 },
    /// Curvature tuple length does not match the ambient dimension.
    WrongTupleSize { expected: usize, got: usize },
    Phase(PhaseError),
    Spectral(SpectrumError),
    Asymptotic(AsymptoticError),
}

impl From<PhaseError> for BoundaryError {
    fn from(e: PhaseError) -> Self {
        BoundaryError::Phase(e)
    }
}

impl From<SpectrumError> for BoundaryError {
    fn from(e: SpectrumError) -> Self {
        BoundaryError::Spectral(e)
    }
}

impl From<AsymptoticError> for BoundaryError {
    fn from(e: AsymptoticError) -> Self {
        BoundaryError::Asymptotic(e)
    }
}

impl core::fmt::Display for BoundaryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BoundaryError::NotOnSurface { rho } => {
                write!(f, "point misses the surface: rho = {rho}")
            }
            BoundaryError::DegenerateGradient { norm } => {
                write!(f, "gradient norm {norm} below minimum")
            }
            BoundaryError::WrongTupleSize { expected, got } => {
                write!(f, "expected {expected} curvatures, got {got}")
            }
            BoundaryError::Phase(e) => write!(f, "{e}"),
            BoundaryError::Spectral(e) => write!(f, "{e}"),
            BoundaryError::Asymptotic(e) => write!(f, "{e}"),
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    math::sqrt(v.iter().map(|x| x * x).sum::<f64>())
}

impl ImplicitSurface {
    pub fn new(dim: usize, rho: Box<ScalarField>) -> Self {
        ImplicitSurface {
            dim,
            rho,
            grad: None,
            hess: None,
            fd_step: 1e-5,
        }
    }

    pub fn with_grad(mut self, grad: Box<VectorField>) -> Self {
        self.grad = Some(grad);
        self
    }

    pub fn with_hess(mut self, hess: Box<MatrixField>) -> Self {
        self.hess = Some(hess);
        self
    }

    pub fn with_fd_step(mut self, fd_step: f64) -> Self {
        self.fd_step = fd_step;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, x: &[f64]) -> f64 {
        (self.rho)(x)
    }

    fn step(&self, x: &[f64]) -> f64 {
        self.fd_step * (1.0 + norm(x))
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        if let Some(g) = &self.grad {
            return g(x);
        }
        let h = self.step(x);
        let mut out = Vec::with_capacity(self.dim);
        let mut probe = x.to_vec();
        for i in 0..self.dim {
            probe[i] = x[i] + h;
            let plus = self.rho(&probe);
            probe[i] = x[i] - h;
            let minus = self.rho(&probe);
            probe[i] = x[i];
            out.push((plus - minus) / (2.0 * h));
        }
        out
    }

    pub fn hessian(&self, x: &[f64]) -> SymMatrix {
        if let Some(hf) = &self.hess {
            return hf(x);
        }
        let n = self.dim;
        let h = self.step(x);
        if self.grad.is_some() {
            let mut entries = alloc::vec![0.0; n * n];
            let mut probe = x.to_vec();
            for i in 0..n {
                probe[i] = x[i] + h;
                let plus = self.gradient(&probe);
                probe[i] = x[i] - h;
                let minus = self.gradient(&probe);
                probe[i] = x[i];
                for j in 0..n {
                    entries[i * n + j] = (plus[j] - minus[j]) / (2.0 * h);
                }
            }
            return SymMatrix::new(n, entries).expect("finite surface derivatives");
        }
        let center = self.rho(x);
        let mut entries = alloc::vec![0.0; n * n];
        let mut probe = x.to_vec();
        for i in 0..n {
            probe[i] = x[i] + h;
            let plus = self.rho(&probe);
            probe[i] = x[i] - h;
            let minus = self.rho(&probe);
            probe[i] = x[i];
            entries[i * n + i] = (plus - 2.0 * center + minus) / (h * h);
            for j in i + 1..n {
                probe[i] = x[i] + h;
                probe[j] = x[j] + h;
                let pp = self.rho(&probe);
                probe[j] = x[j] - h;
                let pm = self.rho(&probe);
                probe[i] = x[i] - h;
                let mm = self.rho(&probe);
                probe[j] = x[j] + h;
                let mp = self.rho(&probe);
                probe[i] = x[i];
                probe[j] = x[j];
                let v = (pp - pm - mp + mm) / (4.0 * h * h);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        SymMatrix::new(n, entries).expect("finite surface derivatives")
    }

    /// Sphere `|x| = radius` in dimension `dim`, analytic derivatives.
    pub fn sphere(dim: usize, radius: f64) -> Self {
        ImplicitSurface::new(
            dim,
            Box::new(move |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>() - radius * radius),
        )
        .with_grad(Box::new(|x: &[f64]| x.iter().map(|v| 2.0 * v).collect()))
        .with_hess(Box::new(|x: &[f64]| SymMatrix::identity(x.len()).scaled(2.0)))
    }

    /// Cylinder `x_1^2 + x_2^2 = radius^2` in dimension `dim >= 2`.
    pub fn cylinder(dim: usize, radius: f64) -> Self {
        ImplicitSurface::new(
            dim,
            Box::new(move |x: &[f64]| x[0] * x[0] + x[1] * x[1] - radius * radius),
        )
        .with_grad(Box::new(|x: &[f64]| {
            let mut g = alloc::vec![0.0; x.len()];
            g[0] = 2.0 * x[0];
            g[1] = 2.0 * x[1];
            g
        }))
        .with_hess(Box::new(|x: &[f64]| {
            let n = x.len();
            SymMatrix::from_fn(n, |i, j| if i == j && i < 2 { 2.0 } else { 0.0 })
        }))
    }

    /// Torus in three dimensions: tube radius `tube` around the circle of
    /// radius `ring` in the `x_1 x_2` plane.
    pub fn torus(tube: f64, ring: f64) -> Self {
        let rho = move |x: &[f64]| {
            let s = math::hypot(x[0], x[1]);
            let d = s - ring;
            d * d + x[2] * x[2] - tube * tube
        };
        let grad = move |x: &[f64]| {
            let s = math::hypot(x[0], x[1]);
            let factor = 2.0 * (s - ring) / s;
            alloc::vec![factor * x[0], factor * x[1], 2.0 * x[2]]
        };
        let hess = move |x: &[f64]| {
            let s = math::hypot(x[0], x[1]);
            let s3 = s * s * s;
            SymMatrix::from_fn(3, |i, j| {
                if i == 2 || j == 2 {
                    if i == 2 && j == 2 {
                        2.0
                    } else {
                        0.0
                    }
                } else {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    2.0 * (1.0 - ring / s) * delta + 2.0 * ring * x[i] * x[j] / s3
                }
            })
        };
        ImplicitSurface::new(3, Box::new(rho))
            .with_grad(Box::new(grad))
            .with_hess(Box::new(hess))
    }
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `u`,
/// by the Householder reflection that sends the last axis onto `u`.
fn tangent_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let sign = if u[n - 1] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = u.to_vec();
    v[n - 1] += sign;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let mut basis = Vec::with_capacity(n - 1);
    for col in 0..n - 1 {
        let mut t = alloc::vec![0.0; n];
        for row in 0..n {
            let delta = if row == col { 1.0 } else { 0.0 };
            t[row] = delta - 2.0 * v[row] * v[col] / vv;
        }
        basis.push(t);
    }
    basis
}

/// Second fundamental form at `x`, interior-normal convention.
pub fn second_fundamental_form(
    surface: &ImplicitSurface,
    x: &[f64],
    tol: &Tol,
) -> Result<SecondFundamentalForm, BoundaryError> {
    let rho = surface.rho(x);
    if math::abs(rho) > tol.surface * (1.0 + norm(x)) {
        return Err(BoundaryError::NotOnSurface { rho });
    }
    let grad = surface.gradient(x);
    let grad_norm = norm(&grad);
    if grad_norm < 1e-6 {
        return Err(BoundaryError::DegenerateGradient { norm: grad_norm });
    }
    let unit: Vec<f64> = grad.iter().map(|g| g / grad_norm).collect();
    let basis = tangent_basis(&unit);
    let hess = surface.hessian(x);
    let n = surface.dim();
    let m = n - 1;
    let mut entries = alloc::vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let mut acc = 0.0;
            for r in 0..n {
                for c in 0..n {
                    acc += basis[i][r] * hess.get(r, c) * basis[j][c];
                }
            }
            let v = acc / grad_norm;
            entries[i * m + j] = v;
            entries[j * m + i] = v;
        }
    }
    let matrix = SymMatrix::new(m, entries).expect("finite second fundamental form");
    let kappas = spectrum::eigenvalues(&matrix, tol)?.eigenvalues;
    Ok(SecondFundamentalForm {
        matrix,
        kappas,
        interior_normal: unit.iter().map(|u| -u).collect(),
    })
}

/// Strict convexity classification of a curvature tuple for one phase.
/// `n` is the ambient dimension, so `kappas` has `n-1` entries.
pub fn classify_convexity(
    kappas: &[f64],
    n: usize,
    theta: f64,
    tol: &Tol,
) -> Result<BoundaryPointReport, BoundaryError> {
    if kappas.len() != n - 1 {
        return Err(BoundaryError::WrongTupleSize {
            expected: n - 1,
            got: kappas.len(),
        });
    }
    let mut kappas = kappas.to_vec();
    kappas.sort_by(|a, b| a.partial_cmp(b).expect("finite curvatures"));
    let sigma_all = spectrum::elementary_symmetric(&kappas);
    let sigma_values = sigma_all[1..].to_vec();
    let scale = kappas.iter().fold(0.0f64, |m, &k| m.max(math::abs(k)));
    let zero = tol.zero_for(scale);
    let class = phase::classify_phase(n, theta, tol)?;
    let (case, strictness) = match class {
        PhaseClass::Interval(k) if k < n => {
            let decisive = kappas[k - 1];
            let s = if decisive > zero {
                Strictness::Strict
            } else if decisive < -zero {
                Strictness::NotStrict
            } else {
                Strictness::Marginal
            };
            (ConvexityCase::Case1, s)
        }
        PhaseClass::Interval(_) => (ConvexityCase::Case3, Strictness::Strict),
        PhaseClass::Special(k) if k == n - 1 => (ConvexityCase::Case3, Strictness::Strict),
        PhaseClass::Special(k) => {
            let low = kappas[k - 1];
            let high = kappas[k];
            if low >= -zero {
                let s = if high > zero {
                    Strictness::Strict
                } else {
                    Strictness::Marginal
                };
                (ConvexityCase::Case2a, s)
            } else {
                let top = sigma_all[n - 1];
                let second = sigma_all[n - 2];
                let s = if !(high > zero) || math::abs(top * second) <= zero {
                    if math::abs(high) <= zero || math::abs(second) <= zero || math::abs(top) <= zero
                    {
                        Strictness::Marginal
                    } else {
                        Strictness::NotStrict
                    }
                } else if top * second < 0.0 {
                    Strictness::Strict
                } else {
                    Strictness::NotStrict
                };
                (ConvexityCase::Case2b, s)
            }
        }
    };
    Ok(BoundaryPointReport {
        kappas,
        sigma_values,
        case,
        strictness,
    })
}

/// Cross-check of [`classify_convexity`] through the defining matrix test:
/// `diag(kappa_1, ..., kappa_(n-1), t)` must be interior to the asymptotic
/// cone for every listed large `t`.
pub fn matrix_convexity_test(
    kappas: &[f64],
    n: usize,
    theta: f64,
    t_list: &[f64],
    tol: &Tol,
) -> Result<bool, BoundaryError> {
    if kappas.len() != n - 1 {
        return Err(BoundaryError::WrongTupleSize {
            expected: n - 1,
            got: kappas.len(),
        });
    }
    let mut d = kappas.to_vec();
    d.push(0.0);
    for &t in t_list {
        d[n - 1] = t;
        let a = SymMatrix::diag(&d);
        if !asymptotic::asymptotic_interior(&a, theta, tol)?.member_interior {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The convexity the Dirichlet problem demands of the boundary: by duality
/// both requirements collapse to the phase `|theta|`, and on intervals to
/// `min(k, n-k+1)`-convexity.
pub fn dirichlet_required_convexity(
    n: usize,
    theta: f64,
    tol: &Tol,
) -> Result<DirichletConvexity, BoundaryError> {
    let phase_to_test = math::abs(theta);
    let order = match phase::classify_phase(n, phase_to_test, tol)? {
        PhaseClass::Interval(k) => Some(k.min(n - k + 1)),
        PhaseClass::Special(_) => None,
    };
    Ok(DirichletConvexity {
        phase: phase_to_test,
        order,
    })
}

/// Full per-point classification used by surface sweeps.
pub fn classify_surface_point(
    surface: &ImplicitSurface,
    x: &[f64],
    theta: f64,
    tol: &Tol,
) -> Result<(SecondFundamentalForm, BoundaryPointReport), BoundaryError> {
    let form = second_fundamental_form(surface, x, tol)?;
    let report = classify_convexity(&form.kappas, surface.dim(), theta, tol)?;
    Ok((form, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn tol() -> Tol {
        Tol::default()
    }

    #[test]
    fn unit_sphere_curvatures() {
        let s = ImplicitSurface::sphere(3, 1.0);
        let form = second_fundamental_form(&s, &[1.0, 0.0, 0.0], &tol()).unwrap();
        assert!((form.kappas[0] - 1.0).abs() < 1e-12);
        assert!((form.kappas[1] - 1.0).abs() < 1e-12);
        assert!((form.interior_normal[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_radius_scales_curvature() {
        let s = ImplicitSurface::sphere(3, 2.0);
        let x = [0.0, 2.0, 0.0];
        let form = second_fundamental_form(&s, &x, &tol()).unwrap();
        for k in &form.kappas {
            assert!((k - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn cylinder_curvatures() {
        let s = ImplicitSurface::cylinder(3, 1.0);
        let form = second_fundamental_form(&s, &[1.0, 0.0, 0.7], &tol()).unwrap();
        assert!(form.kappas[0].abs() < 1e-12);
        assert!((form.kappas[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn torus_inner_equator_curvatures() {
        let s = ImplicitSurface::torus(1.0, 3.0);
        let form = second_fundamental_form(&s, &[2.0, 0.0, 0.0], &tol()).unwrap();
        assert!((form.kappas[0] + 0.5).abs() < 1e-12, "got {:?}", form.kappas);
        assert!((form.kappas[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn finite_difference_fallback_matches_analytic() {
        let radius = 1.0;
        let fd_only = ImplicitSurface::new(
            3,
            Box::new(move |x: &[f64]| {
                x.iter().map(|v| v * v).sum::<f64>() - radius * radius
            }),
        );
        let form = second_fundamental_form(&fd_only, &[0.0, 0.0, 1.0], &tol()).unwrap();
        for k in &form.kappas {
            assert!((k - 1.0).abs() < 1e-5, "got {k}");
        }
    }

    #[test]
    fn defining_function_scaling_cancels() {
        let plain = ImplicitSurface::torus(1.0, 3.0);
        let scaled = ImplicitSurface::new(3, {
            let inner = ImplicitSurface::torus(1.0, 3.0);
            Box::new(move |x: &[f64]| {
                (1.0 + 0.3 * math::sin(x[0] + 2.0 * x[1])) * inner.rho(x)
            })
        })
        .with_grad({
            let inner = ImplicitSurface::torus(1.0, 3.0);
            Box::new(move |x: &[f64]| {
                let a = 1.0 + 0.3 * math::sin(x[0] + 2.0 * x[1]);
                let da = [
                    0.3 * math::cos(x[0] + 2.0 * x[1]),
                    0.6 * math::cos(x[0] + 2.0 * x[1]),
                    0.0,
                ];
                let r = inner.rho(x);
                let g = inner.gradient(x);
                (0..3).map(|i| a * g[i] + r * da[i]).collect()
            })
        });
        let x = [2.0, 0.0, 0.0];
        let base = second_fundamental_form(&plain, &x, &tol()).unwrap();
        let alt = second_fundamental_form(&scaled, &x, &tol()).unwrap();
        for (a, b) in base.kappas.iter().zip(alt.kappas.iter()) {
            assert!((a - b).abs() <= 1e-6 * a.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn off_surface_points_are_rejected() {
        let s = ImplicitSurface::sphere(3, 1.0);
        assert!(matches!(
            second_fundamental_form(&s, &[1.5, 0.0, 0.0], &tol()),
            Err(BoundaryError::NotOnSurface { .. })
        ));
    }

    #[test]
    fn degenerate_gradient_is_rejected() {
        let s = ImplicitSurface::new(2, Box::new(|x: &[f64]| x[0] * x[0] - x[1] * x[1]));
        assert!(matches!(
            second_fundamental_form(&s, &[0.0, 0.0], &tol()),
            Err(BoundaryError::DegenerateGradient { .. })
        ));
    }

    #[test]
    fn saddle_witness_is_strict_case_2b() {
        let report = classify_convexity(&[-1.0, 2.0], 3, FRAC_PI_2, &tol()).unwrap();
        assert_eq!(report.case, ConvexityCase::Case2b);
        assert_eq!(report.strictness, Strictness::Strict);
        assert!((report.sigma_values[0] - 1.0).abs() < 1e-14);
        assert!((report.sigma_values[1] + 2.0).abs() < 1e-14);
    }

    #[test]
    fn nonnegative_bottom_curvature_is_case_2a() {
        let report = classify_convexity(&[0.5, 2.0], 3, FRAC_PI_2, &tol()).unwrap();
        assert_eq!(report.case, ConvexityCase::Case2a);
        assert_eq!(report.strictness, Strictness::Strict);
    }

    #[test]
    fn interval_phase_reads_one_curvature() {
        let report = classify_convexity(&[1.0, 1.0], 3, 1.6, &tol()).unwrap();
        assert_eq!(report.case, ConvexityCase::Case1);
        assert_eq!(report.strictness, Strictness::Strict);
        let low = classify_convexity(&[-0.2, 1.0], 3, 1.6, &tol()).unwrap();
        assert_eq!(low.strictness, Strictness::NotStrict);
    }

    #[test]
    fn bottom_phases_need_nothing() {
        let report = classify_convexity(&[-5.0, -5.0], 3, -1.6, &tol()).unwrap();
        assert_eq!(report.case, ConvexityCase::Case3);
        assert_eq!(report.strictness, Strictness::Strict);
        let special = classify_convexity(&[-5.0, -5.0], 3, -FRAC_PI_2, &tol()).unwrap();
        assert_eq!(special.case, ConvexityCase::Case3);
    }

    #[test]
    fn sigma_degeneracy_is_flagged_marginal() {
        let report = classify_convexity(&[-1.0, 1.0], 3, FRAC_PI_2, &tol()).unwrap();
        assert_eq!(report.case, ConvexityCase::Case2b);
        assert_eq!(report.strictness, Strictness::Marginal);
    }

    #[test]
    fn matrix_test_agrees_on_reference_tuples() {
        let t = tol();
        assert!(matrix_convexity_test(&[-1.0, 2.0], 3, FRAC_PI_2, &DEFAULT_T_LIST, &t).unwrap());
        assert!(!matrix_convexity_test(&[-2.0, -1.0], 3, FRAC_PI_2, &DEFAULT_T_LIST, &t).unwrap());
        assert!(matrix_convexity_test(&[1.0], 2, 0.8, &DEFAULT_T_LIST, &t).unwrap());
    }

    #[test]
    fn dirichlet_convexity_by_duality() {
        let t = tol();
        let d = dirichlet_required_convexity(3, -FRAC_PI_2, &t).unwrap();
        assert!((d.phase - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(d.order, None);
        let e = dirichlet_required_convexity(4, 2.0, &t).unwrap();
        assert_eq!(e.order, Some(2));
        let z = dirichlet_required_convexity(4, 0.0, &t).unwrap();
        assert_eq!(z.order, None);
        assert_eq!(z.phase, 0.0);
    }

    #[test]
    fn torus_sweep_is_strict_at_the_top_special_value() {
        let s = ImplicitSurface::torus(1.0, 3.0);
        let t = tol();
        for iv in 0..20 {
            for iw in 0..20 {
                let v = iv as f64 * core::f64::consts::TAU / 20.0;
                let w = iw as f64 * core::f64::consts::TAU / 20.0;
                let ring = 3.0 + math::cos(v);
                let x = [ring * math::cos(w), ring * math::sin(w), math::sin(v)];
                let (_, report) = classify_surface_point(&s, &x, FRAC_PI_2, &t).unwrap();
                assert!(
                    report.is_strict(),
                    "not strict at v={v} w={w}: {:?}",
                    report.kappas
                );
            }
        }
    }
}

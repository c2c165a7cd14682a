//! Hyperbolic-polynomial generalization of the operator: polynomials `g`
//! whose restriction to lines through the identity factors as
//! `g(tI + A) = g(I) prod_k (t + lambda_k^g(A))`, the generalized operator
//! `f^g(A) = sum_k arctan(lambda_k^g(A))`, the graph-curvature fiber
//! transform, and the radial first integrals.
//!
//! Instances are verified at construction: the product identity is checked
//! at probe values, the eigenvalue routine must produce finite sorted reals,
//! and adding positive matrices must not decrease the bottom eigenvalue.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::asymptotic::{self, AsymptoticVerdict};
use crate::mat::SymMatrix;
use crate::math;
use crate::phase::{self, PhaseError};
use crate::spectrum::{self, SpectrumError};
use crate::tol::Tol;

/// Probe values for the construction-time product-identity check.
const PROBES: [f64; 5] = [-1.8, -0.4, 0.3, 1.1, 2.7];
/// Relative tolerance for the product identity at the probes.
const PROBE_RTOL: f64 = 1e-6;

type EvalFn = dyn Fn(&SymMatrix) -> Result<f64, GardingError> + Send + Sync;
type EigFn = dyn Fn(&SymMatrix, &Tol) -> Result<Vec<f64>, GardingError> + Send + Sync;

/// A polynomial on symmetric matrices, hyperbolic with respect to the
/// identity, carrying its own eigenvalue routine. Immutable once built;
/// the callbacks must be pure.
pub struct GardingPolynomial {
    degree: usize,
    ambient: usize,
    normalization: f64,
    evaluate: Box<EvalFn>,
    eigenvalues: Box<EigFn>,
}

/// First and second order jet of a graph: gradient `p` and Hessian `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureJet {
    pub p: Vec<f64>,
    pub a: SymMatrix,
}

/// Errors from Garding-polynomial construction and use.
#[derive(Debug, Clone, PartialEq)]
pub enum GardingError {
    /// The complex instance needs an even ambient dimension.
    OddDimension { ambient: usize },
    /// Matrix dimension does not match the instance's ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// `g(tI + A)` failed to match `g(I) prod(t + lambda_k^g)` at a probe.
    ProductIdentity { probe: f64, lhs: f64, rhs: f64 },
    /// The eigenvalue routine produced non-finite or unsorted output.
    BadEigenvalues,
    /// `g(I) <= 0`, so the normalization convention fails.
    BadNormalization { value: f64 },
    /// Adding a positive matrix decreased the bottom eigenvalue.
    NotMonotone,
    /// Jet dimensions are inconsistent.
    BadJet,
    Phase(PhaseError),
    Spectral(SpectrumError),
}

impl From<SpectrumError> for GardingError {
    fn from(e: SpectrumError) -> Self {
        GardingError::Spectral(e)
    }
}

impl From<PhaseError> for GardingError {
    fn from(e: PhaseError) -> Self {
        GardingError::Phase(e)
    }
}

impl core::fmt::Display for GardingError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GardingError::OddDimension { ambient } => {
                write!(f, "complex instance needs even ambient dimension, got {ambient}")
            }
            GardingError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected}x{expected} input, got {got}x{got}")
            }
            GardingError::ProductIdentity { probe, lhs, rhs } => {
                write!(f, "product identity fails at t = {probe}: {lhs} vs {rhs}")
            }
            GardingError::BadEigenvalues => write!(f, "eigenvalue routine output invalid"),
            GardingError::BadNormalization { value } => {
                write!(f, "g(identity) = {value} must be positive")
            }
            GardingError::NotMonotone => {
                write!(f, "bottom eigenvalue decreased under a positive perturbation")
            }
            GardingError::BadJet => write!(f, "jet gradient and Hessian dimensions disagree"),
            GardingError::Phase(e) => write!(f, "{e}"),
            GardingError::Spectral(e) => write!(f, "{e}"),
        }
    }
}

fn verification_samples(ambient: usize) -> Vec<SymMatrix> {
    let wavy = SymMatrix::from_fn(ambient, |i, j| {
        0.6 * math::sin(((i + 1) * (j + 2)) as f64) + if i == j { 0.9 } else { 0.0 }
    });
    let mut d = Vec::with_capacity(ambient);
    for i in 0..ambient {
        d.push(if i % 2 == 0 { -0.7 - i as f64 * 0.3 } else { 1.1 + i as f64 * 0.4 });
    }
    alloc::vec![wavy, SymMatrix::diag(&d), SymMatrix::zero(ambient)]
}

impl GardingPolynomial {
    /// Wraps the callbacks after verifying the product identity at the probe
    /// values, the sanity of the eigenvalue routine, and monotonicity of the
    /// bottom eigenvalue under positive perturbations.
    pub fn new(
        degree: usize,
        ambient: usize,
        evaluate: Box<EvalFn>,
        eigenvalues: Box<EigFn>,
        tol: &Tol,
    ) -> Result<Self, GardingError> {
        let normalization = evaluate(&SymMatrix::identity(ambient))?;
        if !(normalization > 0.0) || !normalization.is_finite() {
            return Err(GardingError::BadNormalization { value: normalization });
        }
        let g = GardingPolynomial {
            degree,
            ambient,
            normalization,
            evaluate,
            eigenvalues,
        };
        for a in verification_samples(ambient) {
            let lam = g.eigenvalues(&a, tol)?;
            for &t in PROBES.iter() {
                let lhs = g.evaluate(&a.add_scaled_identity(t))?;
                let rhs = g.normalization * lam.iter().map(|&l| t + l).product::<f64>();
                let scale = math::abs(lhs).max(math::abs(rhs)).max(1.0);
                if math::abs(lhs - rhs) > PROBE_RTOL * scale {
                    return Err(GardingError::ProductIdentity { probe: t, lhs, rhs });
                }
            }
            let bottom = lam[0];
            let bumped = g.eigenvalues(&a.add_scaled_identity(1.0), tol)?;
            if bumped[0] < bottom + 1.0 - 1e-9 {
                return Err(GardingError::NotMonotone);
            }
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the symmetric matrices the polynomial acts on.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `g(I)`, positive by construction.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn evaluate(&self, a: &SymMatrix) -> Result<f64, GardingError> {
        if a.n() != self.ambient {
            return Err(GardingError::DimensionMismatch {
                expected: self.ambient,
                got: a.n(),
            });
        }
        (self.evaluate)(a)
    }

    /// The `degree` generalized eigenvalues, ascending.
    pub fn eigenvalues(&self, a: &SymMatrix, tol: &Tol) -> Result<Vec<f64>, GardingError> {
        if a.n() != self.ambient {
            return Err(GardingError::DimensionMismatch {
                expected: self.ambient,
                got: a.n(),
            });
        }
        let lam = (self.eigenvalues)(a, tol)?;
        if lam.len() != self.degree
            || lam.iter().any(|l| !l.is_finite())
            || lam.windows(2).any(|w| w[0] > w[1])
        {
            return Err(GardingError::BadEigenvalues);
        }
        Ok(lam)
    }
}

fn matmul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = alloc::vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Real determinant by LU with partial pivoting; independent of the
/// eigenvalue path so the product-identity check is meaningful.
fn lu_det(n: usize, data: &[f64]) -> f64 {
    let mut m = data.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if math::abs(m[row * n + col]) > math::abs(m[pivot * n + col]) {
                pivot = row;
            }
        }
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for row in col + 1..n {
            let factor = m[row * n + col] / d;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                m[row * n + j] -= factor * m[col * n + j];
            }
        }
    }
    det
}

/// Complex determinant of a Hermitian matrix given as `re + i im`,
/// by LU with partial pivoting on modulus. The result is real.
fn hermitian_det(m: usize, re: &[f64], im: &[f64]) -> f64 {
    let mut ar = re.to_vec();
    let mut ai = im.to_vec();
    let mut det = (1.0, 0.0);
    for col in 0..m {
        let mut pivot = col;
        let mut best = math::hypot(ar[col * m + col], ai[col * m + col]);
        for row in col + 1..m {
            let mag = math::hypot(ar[row * m + col], ai[row * m + col]);
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..m {
                ar.swap(col * m + j, pivot * m + j);
                ai.swap(col * m + j, pivot * m + j);
            }
            det = (-det.0, -det.1);
        }
        let (dr, di) = (ar[col * m + col], ai[col * m + col]);
        det = (det.0 * dr - det.1 * di, det.0 * di + det.1 * dr);
        let denom = dr * dr + di * di;
        for row in col + 1..m {
            let (nr, ni) = (ar[row * m + col], ai[row * m + col]);
            if nr == 0.0 && ni == 0.0 {
                continue;
            }
            let fr = (nr * dr + ni * di) / denom;
            let fi = (ni * dr - nr * di) / denom;
            for j in col..m {
                let (cr, ci) = (ar[col * m + j], ai[col * m + j]);
                ar[row * m + j] -= fr * cr - fi * ci;
                ai[row * m + j] -= fr * ci + fi * cr;
            }
        }
    }
    det.0
}

/// The standard complex structure on `R^(2m)`, ordered `(x, y)` with
/// `J(x, y) = (-y, x)`.
fn complex_structure(m: usize) -> Vec<f64> {
    let n = 2 * m;
    let mut j = alloc::vec![0.0; n * n];
    for i in 0..m {
        j[i * n + (m + i)] = -1.0;
        j[(m + i) * n + i] = 1.0;
    }
    j
}

/// `(A - JAJ)/2`, the part of `A` that commutes with `J`.
pub fn complex_symmetric_part(a: &SymMatrix) -> Result<SymMatrix, GardingError> {
    let n = a.n();
    if n % 2 != 0 {
        return Err(GardingError::OddDimension { ambient: n });
    }
    let j = complex_structure(n / 2);
    let jaj = matmul(n, &j, &matmul(n, a.data(), &j));
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n * n {
        entries.push(0.5 * (a.data()[i] - jaj[i]));
    }
    SymMatrix::new(n, entries).map_err(|_| GardingError::BadEigenvalues)
}

/// The determinant polynomial: `g = det`, generalized eigenvalues are the
/// ordinary spectrum, degree equals the ambient dimension.
pub fn det_instance(n: usize, tol: &Tol) -> Result<GardingPolynomial, GardingError> {
    GardingPolynomial::new(
        n,
        n,
        Box::new(move |a| Ok(lu_det(a.n(), a.data()))),
        Box::new(move |a, tol| Ok(spectrum::eigenvalues(a, tol)?.eigenvalues)),
        tol,
    )
}

fn complex_eigenvalues(a: &SymMatrix, tol: &Tol) -> Result<Vec<f64>, GardingError> {
    let b = complex_symmetric_part(a)?;
    let all = spectrum::eigenvalues(&b, tol)?.eigenvalues;
    Ok(all.into_iter().step_by(2).collect())
}

/// The complex determinant of the `J`-commuting part, degree `m` on
/// ambient dimension `2m`. Its eigenvalues are those of the associated
/// Hermitian form, each appearing twice in the real spectrum.
pub fn complex_sl_instance(m: usize, tol: &Tol) -> Result<GardingPolynomial, GardingError> {
    let n = 2 * m;
    GardingPolynomial::new(
        m,
        n,
        Box::new(move |a| {
            let b = complex_symmetric_part(a)?;
            let mut re = alloc::vec![0.0; m * m];
            let mut im = alloc::vec![0.0; m * m];
            for p in 0..m {
                for q in 0..m {
                    re[p * m + q] = b.get(p, q);
                    im[p * m + q] = -b.get(p, m + q);
                }
            }
            Ok(hermitian_det(m, &re, &im))
        }),
        Box::new(complex_eigenvalues),
        tol,
    )
}

/// Like [`complex_sl_instance`] but keyed by the ambient dimension, which
/// must be even.
pub fn complex_sl_instance_for_ambient(
    ambient: usize,
    tol: &Tol,
) -> Result<GardingPolynomial, GardingError> {
    if ambient % 2 != 0 {
        return Err(GardingError::OddDimension { ambient });
    }
    complex_sl_instance(ambient / 2, tol)
}

fn quaternion_structures(m: usize) -> [Vec<f64>; 3] {
    let n = 4 * m;
    let mut qi = alloc::vec![0.0; n * n];
    let mut qj = alloc::vec![0.0; n * n];
    let mut qk = alloc::vec![0.0; n * n];
    for b in 0..m {
        let o = 4 * b;
        let set = |mat: &mut Vec<f64>, r: usize, c: usize, v: f64| {
            mat[(o + r) * n + (o + c)] = v;
        };
        set(&mut qi, 0, 1, -1.0);
        set(&mut qi, 1, 0, 1.0);
        set(&mut qi, 2, 3, 1.0);
        set(&mut qi, 3, 2, -1.0);
        set(&mut qj, 0, 2, -1.0);
        set(&mut qj, 1, 3, -1.0);
        set(&mut qj, 2, 0, 1.0);
        set(&mut qj, 3, 1, 1.0);
        set(&mut qk, 0, 3, -1.0);
        set(&mut qk, 1, 2, 1.0);
        set(&mut qk, 2, 1, -1.0);
        set(&mut qk, 3, 0, 1.0);
    }
    [qi, qj, qk]
}

/// Quaternionic analogue on ambient dimension `4m`: averages away the parts
/// anticommuting with the three complex structures; eigenvalues appear four
/// times each. Both callbacks route through the real spectrum.
pub fn quaternion_sl_instance(m: usize, tol: &Tol) -> Result<GardingPolynomial, GardingError> {
    let n = 4 * m;
    let part = move |a: &SymMatrix| -> Result<SymMatrix, GardingError> {
        let structures = quaternion_structures(m);
        let mut acc = a.data().to_vec();
        for s in structures.iter() {
            let sas = matmul(n, s, &matmul(n, a.data(), s));
            for i in 0..n * n {
                acc[i] -= sas[i];
            }
        }
        for v in acc.iter_mut() {
            *v *= 0.25;
        }
        SymMatrix::new(n, acc).map_err(|_| GardingError::BadEigenvalues)
    };
    GardingPolynomial::new(
        m,
        n,
        Box::new({
            let part = part.clone();
            let tol = tol.clone();
            move |a| {
                let b = part(a)?;
                let lam = spectrum::eigenvalues(&b, &tol)?.eigenvalues;
                Ok(lam.into_iter().step_by(4).product())
            }
        }),
        Box::new(move |a, tol| {
            let b = part(a)?;
            let lam = spectrum::eigenvalues(&b, tol)?.eigenvalues;
            Ok(lam.into_iter().step_by(4).collect())
        }),
        tol,
    )
}

/// Generalized operator value `f^g(A) = sum_k arctan(lambda_k^g(A))`,
/// in `(-m pi/2, m pi/2)`.
pub fn gsl_value(g: &GardingPolynomial, a: &SymMatrix, tol: &Tol) -> Result<f64, GardingError> {
    Ok(g.eigenvalues(a, tol)?.iter().map(|&l| math::atan(l)).sum())
}

/// Interior membership in the generalized asymptotic cone: the same case
/// logic as the base operator, with generalized eigenvalues and their
/// elementary symmetric functions in place of the ordinary ones.
pub fn g_asymptotic_interior(
    g: &GardingPolynomial,
    a: &SymMatrix,
    theta: f64,
    tol: &Tol,
) -> Result<AsymptoticVerdict, GardingError> {
    let class = phase::classify_phase(g.degree(), theta, tol)?;
    let lam = g.eigenvalues(a, tol)?;
    let sigma = spectrum::elementary_symmetric(&lam);
    let scale = math::sqrt(lam.iter().map(|l| l * l).sum::<f64>());
    let zero = tol.zero_for(scale);
    let mut verdict = asymptotic::verdict_from_spectrum(&lam, &sigma, class, zero);
    if let phase::PhaseClass::Special(k) = class {
        if !verdict.member_closure {
            let roots = spectrum::roots_from_eigenvalues(&lam);
            let crit = spectrum::critical_points_from_roots(&roots, tol)?;
            verdict.member_closure = crit[g.degree() - k - 1] <= zero;
        }
    }
    Ok(verdict)
}

fn unit_gradient(p: &[f64]) -> Option<(Vec<f64>, f64)> {
    let norm = math::sqrt(p.iter().map(|x| x * x).sum::<f64>());
    if norm < 1e-300 {
        return None;
    }
    Some((p.iter().map(|x| x / norm).collect(), norm))
}

fn gradient_stretch(n: usize, p: &[f64], on_p: f64) -> SymMatrix {
    match unit_gradient(p) {
        None => SymMatrix::identity(n),
        Some((hat, _)) => {
            SymMatrix::from_fn(n, |i, j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                delta + (on_p - 1.0) * hat[i] * hat[j]
            })
        }
    }
}

/// The matrix whose eigenvalues are the principal curvatures of the graph
/// of a function with gradient `p` and Hessian `A`:
/// `(1/sqrt(1+|p|^2)) E_p A E_p`, where `E_p` fixes the orthogonal
/// complement of `p` and contracts along `p` by `1/sqrt(1+|p|^2)`.
pub fn curvature_fiber_matrix(jet: &CurvatureJet) -> Result<SymMatrix, GardingError> {
    let n = jet.a.n();
    if jet.p.len() != n {
        return Err(GardingError::BadJet);
    }
    let s = math::sqrt(1.0 + jet.p.iter().map(|x| x * x).sum::<f64>());
    let e = gradient_stretch(n, &jet.p, 1.0 / s);
    Ok(jet.a.congruence(e.data()).scaled(1.0 / s))
}

/// Inverse of [`curvature_fiber_matrix`]: recovers the Hessian from the
/// curvature matrix at the same gradient.
pub fn curvature_fiber_inverse(p: &[f64], ii: &SymMatrix) -> Result<SymMatrix, GardingError> {
    let n = ii.n();
    if p.len() != n {
        return Err(GardingError::BadJet);
    }
    let s = math::sqrt(1.0 + p.iter().map(|x| x * x).sum::<f64>());
    let e_inv = gradient_stretch(n, p, s);
    Ok(ii.congruence(e_inv.data()).scaled(s))
}

/// Closed membership of a jet in the graph-curvature subequation:
/// `sum_j arctan(kappa_j) >= theta` for the principal curvatures of the
/// graph.
pub fn curvature_membership(
    jet: &CurvatureJet,
    theta: f64,
    tol: &Tol,
) -> Result<bool, GardingError> {
    let ii = curvature_fiber_matrix(jet)?;
    let f = phase::sl_value(&ii, tol)?;
    Ok(f >= theta - tol.zero)
}

fn complex_power_imag(theta: f64, n: usize, re: f64, im: f64) -> f64 {
    let mut zr = math::cos(-theta);
    let mut zi = math::sin(-theta);
    for _ in 0..n {
        let nr = zr * re - zi * im;
        let ni = zr * im + zi * re;
        zr = nr;
        zi = ni;
    }
    zi
}

/// First integral of the radial graph-curvature equation:
/// `Im(e^(-i theta) (r + i y / sqrt(1+y^2))^n)`, constant along radial
/// profiles `y(r)` with curvature phase `theta`.
pub fn radial_first_integral(theta: f64, n: usize, r: f64, y: f64) -> f64 {
    complex_power_imag(theta, n, r, y / math::sqrt(1.0 + y * y))
}

/// First integral of the radial potential equation:
/// `Im(e^(-i theta) (r + i y)^n)`, constant along `y = u'(r)` when the
/// radial potential `u(|x|)` solves the operator equation with phase
/// `theta`.
pub fn potential_radial_first_integral(theta: f64, n: usize, r: f64, y: f64) -> f64 {
    complex_power_imag(theta, n, r, y)
}

/// Right-hand side `y'` of the radial graph-curvature equation
/// `(n-1) arctan(kappa_tan) + arctan(kappa_rad) = theta`, with
/// `kappa_tan = y / (r sqrt(1+y^2))` and `kappa_rad = y' / (1+y^2)^(3/2)`.
pub fn curvature_radial_slope(theta: f64, n: usize, r: f64, y: f64) -> f64 {
    let s2 = 1.0 + y * y;
    let tangential = math::atan(y / (r * math::sqrt(s2)));
    let inner = theta - (n as f64 - 1.0) * tangential;
    s2 * math::sqrt(s2) * math::tan(inner)
}

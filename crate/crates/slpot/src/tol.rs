//! Shared numerical tolerances. Every predicate that asks "is this scalar
//! zero" goes through one of these knobs so the whole crate can be retuned
//! from a single place (the CLI maps the `SLPDE_TOL` variable here).

/// Tolerance bundle used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    /// Base scale for "treat as zero" tests on eigenvalues and symmetric
    /// functions. Scaled by `max(1, norm)` of the input, see [`Tol::zero_for`].
    pub zero: f64,
    /// Half-width of the band around each special phase value.
    pub phase: f64,
    /// Relative width target for critical-point bisection brackets.
    pub root: f64,
    /// How far off the zero level set a query point may sit.
    pub surface: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            zero: 1e-9,
            phase: 1e-9,
            root: 1e-12,
            surface: 1e-8,
        }
    }
}

impl Tol {
    /// Zero threshold adapted to an input of the given magnitude.
    pub fn zero_for(&self, scale: f64) -> f64 {
        self.zero * if scale > 1.0 { scale } else { 1.0 }
    }

    /// Replaces the base zero threshold, keeping the other knobs.
    pub fn with_zero(mut self, zero: f64) -> Self {
        self.zero = zero;
        self
    }
}

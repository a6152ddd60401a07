//! Evaluation configuration and the common result record.

use num_complex::Complex64;

/// Knobs controlling quadrature and series evaluation.
///
/// `working_digits` caps how much accuracy callers may request: tolerances
/// tighter than what the arithmetic can deliver are clamped in the kernels.
/// All kernels run in IEEE double precision with compensated (and, where
/// cancellation demands it, double-double) accumulation, so roughly 15-16
/// digits are actually realizable; the field exists so call sites state
/// intent explicitly and so tighter backends can slot in later.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionConfig {
    /// Requested working precision in decimal digits (>= 15).
    pub working_digits: u32,
    /// Absolute/relative tolerance target for adaptive quadrature.
    pub quad_tol: f64,
    /// Tolerance target for series truncation (tail bound threshold).
    pub series_tol: f64,
    /// Hard cap on series terms / refinement steps before giving up.
    pub max_terms: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            working_digits: 30,
            quad_tol: 1e-11,
            series_tol: 1e-10,
            max_terms: 2_000_000,
        }
    }
}

impl PrecisionConfig {
    /// Tolerance floor actually achievable by the f64 kernels.
    pub const EPS_FLOOR: f64 = 1e-15;

    /// Clamp a requested tolerance to the achievable floor.
    pub fn clamp_tol(tol: f64) -> f64 {
        tol.max(Self::EPS_FLOOR)
    }

    /// Quadrature tolerance after clamping.
    pub fn quad_tol(&self) -> f64 {
        Self::clamp_tol(self.quad_tol)
    }

    /// Series tolerance after clamping.
    pub fn series_tol(&self) -> f64 {
        Self::clamp_tol(self.series_tol)
    }
}

/// Value + error estimate returned by quadrature and series routines.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    /// Computed value.
    pub value: Complex64,
    /// Estimated absolute error.
    pub err: f64,
    /// Number of series terms or integrand evaluations consumed.
    pub terms_used: usize,
    /// Whether the requested tolerance was met. `false` means the value is
    /// the best available estimate, not garbage; callers decide whether
    /// that is fatal.
    pub converged: bool,
}

impl EvalResult {
    /// Convenience constructor for an exactly-known value.
    pub fn exact(value: Complex64) -> Self {
        Self { value, err: 0.0, terms_used: 0, converged: true }
    }

    /// Real part, for call sites that know the value is real.
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

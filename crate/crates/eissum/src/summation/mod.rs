//! The summation-identity machinery.
//!
//! For a form f of weight k on Γ₀(N) with Fricke image g = f|w_N, the core
//! identity evaluated here reads
//!
//! ```text
//! (1/Γ(ρ+1)) Σ_{n≤x} a⁺(n)(x−n)^ρ + (x^ρ/2πi) Σ_{n≤x} a⁻(n) g_ρ(n,x) − Q_ρ(x)
//!   = i^k x^{(ρ+k)/2} (√N/2π)^ρ Σ_n b⁺(n) n^{−(ρ+k)/2} J_{ρ+k}(4π√(nx/N))
//!   + i^k x^{(ρ+1)/2} (√N/2π)^{ρ+k−1} Σ_n b⁻(n) n^{−((ρ−1)/2+k)}
//!       ∫₀^{1/2} u^{k+(ρ−3)/2} (1−u)^{−(1+ρ)/2} J_{ρ+1}(4π√(nx(1−u)/(Nu))) du,
//! ```
//!
//! where i^k is the principal branch (the sign of the right-hand side is
//! pinned numerically through the Laplace-transform check in `converse`),
//! valid for ρ above a growth-determined threshold (see
//! [`crate::forms::rho_threshold`]). Each term has its own evaluator, the
//! nonholomorphic right-hand side additionally has an independent
//! Bessel-free route ([`rhs_via_shadow`]), and the module also provides the
//! asymptotic-ratio and Laplace-transform (converse) checks.

mod asym;
mod converse;
mod lhs;
mod series;
mod shadow;
mod verify;

pub use asym::{asymptotic_ratio, error_term_ratio};
pub use converse::{converse_check, ConverseReport};
pub use lhs::{g_rho, main_term, nonholo_correction, residual_q, residual_q_scale, weighted_power_sum};
pub use series::{bessel_series_f, rhs_holomorphic, rhs_nonholo_integral, u_integral, BesselSeries};
pub use shadow::rhs_via_shadow;
pub use verify::verify_identity;

use crate::precision::PrecisionConfig;
use num_complex::Complex64;

/// Per-evaluation knobs for the identity machinery.
#[derive(Debug, Clone)]
pub struct SummationParams {
    /// Weight exponent ρ of the power sum.
    pub rho: f64,
    /// Evaluation point x > 0 (non-integer recommended away from the
    /// ρ = 0 boundary-convention test).
    pub x: f64,
    /// Numeric tolerances.
    pub cfg: PrecisionConfig,
    /// Hard cap on the number of series terms per Bessel series.
    pub n_max_bessel: usize,
    /// Evaluate outside the proven ρ-range without erroring.
    pub experimental: bool,
}

impl SummationParams {
    pub fn new(rho: f64, x: f64) -> Self {
        Self {
            rho,
            x,
            cfg: PrecisionConfig::default(),
            n_max_bessel: 200_000,
            experimental: false,
        }
    }

    pub fn experimental(mut self) -> Self {
        self.experimental = true;
        self
    }
}

/// Itemized outcome of one identity evaluation.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// (1/Γ(ρ+1)) Σ_{n≤x} a⁺(n)(x−n)^ρ.
    pub lhs_weighted: Complex64,
    /// (x^ρ/2πi) Σ_{n≤x} a⁻(n) g_ρ(n,x).
    pub lhs_nonholo: Complex64,
    /// Q_ρ(x).
    pub residual_q: Complex64,
    /// First right-hand series (holomorphic Bessel series).
    pub rhs_holo: Complex64,
    /// Second right-hand series (nonholomorphic u-integral series).
    pub rhs_nonholo: Complex64,
    /// (lhs_weighted + lhs_nonholo − residual_q) − (rhs_holo + rhs_nonholo).
    pub residual: Complex64,
    /// |residual| divided by the largest single Q_ρ term.
    pub rel_residual: f64,
    /// Whether the holomorphic series was only conditionally convergent
    /// (extended ρ-range) and was summed with oscillation averaging.
    pub conditional: bool,
    /// All term evaluators met their tolerance targets.
    pub converged: bool,
    /// Per-term notes (estimated errors, truncation points).
    pub diagnostics: Vec<String>,
}

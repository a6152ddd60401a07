//! Error types shared across the crate.

use thiserror::Error;

/// Unified error enum for numeric and arithmetic failures.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Gamma function evaluated at a pole (non-positive integer).
    #[error("gamma pole at non-positive integer argument {0}")]
    PoleAtNonPositiveInteger(f64),

    /// Incomplete gamma requires a strictly positive second argument.
    #[error("upper incomplete gamma requires x > 0, got {0}")]
    NonPositiveX(f64),

    /// Regularized/continued incomplete beta hit a parameter pole.
    #[error("incomplete beta parameter pole: a = {0} is a non-positive integer")]
    BetaParameterPole(f64),

    /// `W_nu(s)` evaluated at (or too close to) one of its poles.
    #[error("W_nu pole: s = {s} within {tol} of the pole set for nu = {nu}")]
    PoleInS { nu: f64, s: f64, tol: f64 },

    /// Defining integral requested outside its convergence half-plane.
    #[error("integral diverges: need s > max(-nu, 0), got nu = {nu}, s = {s}")]
    OutOfConvergenceRegion { nu: f64, s: f64 },

    /// Bessel order must be non-negative in this implementation.
    #[error("bessel_j requires nu >= 0, got {0}")]
    NegativeOrder(f64),

    /// Quadrature or series did not meet the tolerance within budget.
    #[error("failed to converge: {0}")]
    NonConvergence(String),

    /// Argument outside the mathematical domain of an arithmetic routine.
    #[error("domain error: {0}")]
    Domain(String),

    /// Discriminant passed to an L-value routine is not a fundamental
    /// discriminant of an imaginary quadratic field.
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),

    /// Identity evaluation requested outside the proven rho-range without
    /// the experimental escape hatch.
    #[error("rho = {rho} outside valid range (need rho > {threshold}); pass experimental mode to force")]
    RangeViolation { rho: f64, threshold: f64 },

    /// Unknown form name requested from the registry.
    #[error("unknown form '{0}' (available: {1})")]
    UnknownForm(String, String),

    /// Bad parameter for a form family.
    #[error("invalid form parameter: {0}")]
    InvalidFormParameter(String),
}

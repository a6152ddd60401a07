//! Gauss hypergeometric series and the analytically continued incomplete
//! beta function B(x; a, b).
//!
//! The continuation used throughout the crate is
//!
//! ```text
//! B(x; a, b) = (x^a / a) · ₂F₁(a, 1-b; a+1; x),
//! ```
//!
//! which agrees with the integral ∫₀ˣ t^{a-1}(1-t)^{b-1} dt for a, b > 0 and
//! extends it to arbitrary real b (and non-pole a), exactly the continuation
//! needed for the W transform and the boundary-term kernel at negative
//! parameters.

use crate::error::Error;
use crate::Result;

/// ₂F₁(a, b; c; x) by direct power series; requires |x| < 1 (geometric
/// convergence for the arguments this crate uses, where x <= ~0.9).
pub fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if x.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "2F1 series requires |x| < 1, got x = {x}"
        )));
    }
    if c <= 0.0 && (c - c.round()).abs() < 1e-12 {
        return Err(Error::BetaParameterPole(c));
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for m in 0..100_000u64 {
        let mf = m as f64;
        term *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!(
        "2F1 series stalled: a={a}, b={b}, c={c}, x={x}"
    )))
}

/// Analytically continued incomplete beta B(x; a, b) for 0 < x < 1, real b,
/// and a not a non-positive integer.
pub fn incomplete_beta_cont(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!(
            "incomplete beta requires 0 < x < 1, got x = {x}"
        )));
    }
    if a <= 0.0 && (a - a.round()).abs() < 1e-12 {
        return Err(Error::BetaParameterPole(a));
    }
    // x^a Σ_m (1-b)_m x^m / (m! (a+m)); the m-th numerator factor is the
    // Pochhammer recurrence (1-b)_{m+1} = (1-b)_m (1-b+m).
    let mut poch_term = 1.0f64; // (1-b)_m x^m / m!
    let mut sum = 1.0 / a;
    for m in 0..200_000u64 {
        let mf = m as f64;
        poch_term *= (1.0 - b + mf) * x / (mf + 1.0);
        let term = poch_term / (a + mf + 1.0);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && mf > 2.0 - b {
            return Ok(sum * x.powf(a));
        }
    }
    Err(Error::NonConvergence(format!(
        "incomplete beta series stalled: x={x}, a={a}, b={b}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_log_case() {
        // ₂F₁(1, 1; 2; x) = -ln(1-x)/x.
        for &x in &[0.1, 0.5, 0.9] {
            let f = hyp2f1_series(1.0, 1.0, 2.0, x).unwrap();
            let expect = -(1.0f64 - x).ln() / x;
            assert!((f - expect).abs() < 1e-13 * expect.abs());
        }
    }

    #[test]
    fn binomial_case() {
        // ₂F₁(a, b; b; x) = (1-x)^{-a}, independent of b.
        let f = hyp2f1_series(2.5, 3.0, 3.0, 0.3).unwrap();
        assert!((f - (0.7f64).powf(-2.5)).abs() < 1e-13);
    }

    #[test]
    fn beta_positive_parameters_match_integral() {
        // B(1/2; 1, 1/2) = 2 - √2 (substitute t = 1 - u²).
        let v = incomplete_beta_cont(0.5, 1.0, 0.5).unwrap();
        assert!((v - (2.0 - 2.0f64.sqrt())).abs() < 1e-14);
        // B(x; 1, b) = (1 - (1-x)^b)/b.
        for &(x, b) in &[(0.25, 2.0), (0.7, 0.3), (0.5, -1.5)] {
            let v = incomplete_beta_cont(x, 1.0, b).unwrap();
            let expect = (1.0 - (1.0f64 - x).powf(b)) / b;
            assert!((v - expect).abs() < 1e-13 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn beta_contiguous_relation() {
        // B(x; a, b) = B(x; a+1, b) + ... direct identity:
        // d/dx B = x^{a-1}(1-x)^{b-1}; instead verify the recurrence
        // a B(x;a,b) + b' ... use: B(x;a,b) = [x^a (1-x)^b + (a+b) B(x;a+1,b)] / a
        // (integration by parts, valid in the continued sense).
        for &(x, a, b) in &[(0.3, 0.7, 2.5), (0.5, 1.5, -0.5), (0.2, 0.5, -1.25)] {
            let lhs = incomplete_beta_cont(x, a, b).unwrap();
            let rhs = (x.powf(a) * (1.0 - x).powf(b)
                + (a + b) * incomplete_beta_cont(x, a + 1.0, b).unwrap())
                / a;
            assert!(
                (lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0),
                "x={x}, a={a}, b={b}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn beta_parameter_pole_rejected() {
        assert!(incomplete_beta_cont(0.5, 0.0, 1.0).is_err());
        assert!(incomplete_beta_cont(0.5, -2.0, 1.0).is_err());
        assert!(incomplete_beta_cont(0.5, -0.5, 1.0).is_ok());
    }
}

//! Bessel function of the first kind for real non-negative order.
//!
//! Two regimes:
//!
//! * **Power series** below the switch point. The ascending series
//!   alternates with a largest term of size ~e^z/(2πz), so in plain f64 it
//!   sheds almost a digit per unit of z. The inner 0F1-type sum is therefore
//!   accumulated in double-double ([`crate::dd`]), keeping the result near
//!   full f64 accuracy across the whole series regime.
//! * **Hankel asymptotic expansion** above the switch point, truncated at
//!   its smallest term, with that term as the error estimate.
//!
//! The regimes overlap by design; consistency on the overlap band is part
//! of the self-test suite.

use crate::dd::Dd;
use crate::error::Error;
use crate::precision::{EvalResult, PrecisionConfig};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::gamma_real;

/// Argument at which evaluation switches from the power series to the
/// asymptotic expansion.
pub fn bessel_switch_point(nu: f64) -> f64 {
    25.0 + 5.0 * nu
}

/// J_ν(z) for ν >= 0, z >= 0.
pub fn bessel_j(nu: f64, z: f64, cfg: &PrecisionConfig) -> Result<EvalResult> {
    if nu < 0.0 {
        return Err(Error::NegativeOrder(nu));
    }
    if z < 0.0 {
        return Err(Error::Domain(format!("bessel_j requires z >= 0, got {z}")));
    }
    if z == 0.0 {
        let v = if nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(EvalResult::exact(Complex64::new(v, 0.0)));
    }
    if z <= bessel_switch_point(nu) {
        bessel_j_series(nu, z, cfg)
    } else {
        bessel_j_asymptotic(nu, z, cfg)
    }
}

/// Ascending power series, exposed separately for the overlap self-test.
pub fn bessel_j_series(nu: f64, z: f64, cfg: &PrecisionConfig) -> Result<EvalResult> {
    let q = z * z / 4.0;
    // Inner sum Σ_m (-1)^m q^m / (m! (ν+1)_m) in double-double; the f64
    // prefactor (z/2)^ν / Γ(ν+1) multiplies a sum of size O(1), so overall
    // relative error stays near f64 epsilon.
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    let mut max_term = 1.0f64;
    let mut m = 0.0f64;
    let mut terms = 1usize;
    loop {
        term = term.mul_f64(-q).div_f64((m + 1.0) * (nu + m + 1.0));
        sum = sum.add(term);
        m += 1.0;
        terms += 1;
        max_term = max_term.max(term.abs());
        if term.abs() < 1e-34 * sum.abs().max(1e-300) && m > q.sqrt() {
            break;
        }
        if terms > cfg.max_terms {
            return Err(Error::NonConvergence(format!(
                "bessel series stalled at nu = {nu}, z = {z}"
            )));
        }
    }
    let prefactor = (nu * (z / 2.0).ln()).exp() / gamma_real(nu + 1.0)?;
    let value = prefactor * sum.to_f64();
    // Cancellation floor: double-double keeps ~32 digits, so the achievable
    // absolute error is max_term * 1e-32 (plus f64 prefactor rounding).
    let err = prefactor.abs() * (max_term * 1e-31) + value.abs() * 1e-15;
    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        err,
        terms_used: terms,
        converged: true,
    })
}

/// Hankel large-argument expansion, exposed separately for the overlap
/// self-test. Truncated at the smallest term.
pub fn bessel_j_asymptotic(nu: f64, z: f64, cfg: &PrecisionConfig) -> Result<EvalResult> {
    let mu = 4.0 * nu * nu;
    let omega = z - nu * FRAC_PI_2 - FRAC_PI_4;
    let (cos_w, sin_w) = (omega.cos(), omega.sin());

    // c_m = Π_{j=1..m} (μ - (2j-1)²) / (8 j z); P sums even m with sign
    // (-1)^{m/2}, Q sums odd m with sign (-1)^{(m-1)/2}.
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut c = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut m = 0usize;
    loop {
        let j = (m + 1) as f64;
        c *= (mu - (2.0 * j - 1.0).powi(2)) / (8.0 * j * z);
        let t = c.abs();
        if t >= prev || m + 1 > cfg.max_terms.min(60) {
            // Divergent tail reached (or hard cap): stop before this term.
            break;
        }
        m += 1;
        match m % 4 {
            1 => q += c,
            2 => p -= c,
            3 => q -= c,
            _ => p += c,
        }
        prev = t;
        if t < 1e-18 {
            break;
        }
    }
    let amp = (2.0 / (PI * z)).sqrt();
    let value = amp * (cos_w * p - sin_w * q);
    let err = amp * (prev.min(c.abs()) + 1e-16 * (p.abs() + q.abs()));
    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        err,
        terms_used: m,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn j(nu: f64, z: f64) -> f64 {
        bessel_j(nu, z, &cfg()).unwrap().re()
    }

    /// J_{1/2}(z) = √(2/(πz)) sin z.
    fn j_half(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * z.sin()
    }

    /// J_{3/2}(z) = √(2/(πz)) (sin z / z - cos z).
    fn j_three_half(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * (z.sin() / z - z.cos())
    }

    #[test]
    fn half_integer_closed_forms_small_z() {
        for &z in &[0.5, 2.0, PI, 10.0, 25.0] {
            assert!((j(0.5, z) - j_half(z)).abs() < 1e-12, "z = {z}");
            assert!((j(1.5, z) - j_three_half(z)).abs() < 1e-12, "z = {z}");
        }
        // J_{1/2}(π) = 0 exactly.
        assert!(j(0.5, PI).abs() < 1e-13);
    }

    #[test]
    fn half_integer_closed_forms_large_z() {
        for &z in &[40.0, 100.0, 1000.0, 4400.0] {
            assert!((j(0.5, z) - j_half(z)).abs() < 1e-13, "z = {z}");
            assert!((j(2.5, z)
                - (2.0 / (PI * z)).sqrt()
                    * ((3.0 / (z * z) - 1.0) * z.sin() - 3.0 * z.cos() / z))
                .abs()
                < 1e-12,
                "z = {z}");
        }
    }

    #[test]
    fn integer_order_reference_values() {
        // J_0(1) and J_1(1), 16-digit reference values.
        assert!((j(0.0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-14);
        assert!((j(1.0, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-14);
        // J_0(30): asymptotic regime.
        assert!((j(0.0, 30.0) - (-0.086_367_983_581_040_1)).abs() < 1e-12);
    }

    #[test]
    fn series_asymptotic_overlap_band() {
        let c = cfg();
        for &nu in &[0.0, 0.5, 1.0, 2.5, 3.5, 6.5] {
            let t = bessel_switch_point(nu);
            for &frac in &[0.8, 0.9, 1.0, 1.1, 1.2] {
                let z = frac * t;
                let s = bessel_j_series(nu, z, &c).unwrap();
                let a = bessel_j_asymptotic(nu, z, &c).unwrap();
                let diff = (s.value - a.value).norm();
                assert!(
                    diff < 1e-10 + s.err + a.err,
                    "nu = {nu}, z = {z}: series {} vs asymptotic {} (diff {diff:.3e})",
                    s.value.re,
                    a.value.re
                );
            }
        }
    }

    #[test]
    fn envelope_bound() {
        // |J_ν(z)| <= √(2/(πz)) for z in the asymptotic regime.
        for &z in &[100.0, 1000.0] {
            for &nu in &[0.0, 1.5, 4.5] {
                assert!(j(nu, z).abs() <= (2.0 / (PI * z)).sqrt() * 1.000001);
            }
        }
    }

    #[test]
    fn rejects_negative_order_and_argument() {
        assert!(bessel_j(-0.5, 1.0, &cfg()).is_err());
        assert!(bessel_j(0.5, -1.0, &cfg()).is_err());
    }

    #[test]
    fn value_at_zero() {
        assert_eq!(bessel_j(0.0, 0.0, &cfg()).unwrap().re(), 1.0);
        assert_eq!(bessel_j(1.5, 0.0, &cfg()).unwrap().re(), 0.0);
    }
}

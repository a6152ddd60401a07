//! Asymptotic checks: ratio of the weighted power sum against its predicted
//! leading term, and the ratio of the subtracted sum against the first
//! error term for the weight 3/2 form.

use super::lhs::{main_term, nonholo_correction, weighted_power_sum};
use super::SummationParams;
use crate::error::Error;
use crate::forms::{rho_threshold, FormSpec};
use crate::numkernel::gamma_real;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Ratio of the power sum to its predicted leading term; tends to 1 as
/// x → ∞ inside the admissible ρ-range.
///
/// For the weight 3/2 form the leading-term statement absorbs the
/// g_ρ-correction into the error, so the numerator is the weighted sum
/// alone; for other weights the correction is part of the main-term
/// asymptotics and is included.
pub fn asymptotic_ratio(form: &FormSpec, params: &SummationParams) -> Result<f64> {
    let (rho, x) = (params.rho, params.x);
    let threshold = rho_threshold(form).rho_0 - 0.5;
    if rho <= threshold && !params.experimental {
        return Err(Error::RangeViolation { rho, threshold });
    }
    let mut numerator = weighted_power_sum(form, rho, x)?;
    if (form.k - 1.5).abs() > 1e-12 {
        numerator += nonholo_correction(form, rho, x, &params.cfg)?;
    }
    let main = main_term(form, rho, x)?;
    Ok((numerator / main).re)
}

/// Ratio of the power sum minus its leading term to the predicted first
/// error term — the x^{ρ+1} term of Q_ρ(x), which for the weight 3/2 form is
/// x^{ρ+1}·(−√2/8)/Γ(ρ+2). Weight 3/2 form only, sensible for ρ > 1. The
/// g_ρ-correction term shares the x^{ρ+1} order and is included in the
/// subtracted numerator so the ratio can settle at 1.
pub fn error_term_ratio(form: &FormSpec, params: &SummationParams) -> Result<f64> {
    if form.name != "zagier" {
        return Err(Error::Domain(format!(
            "error_term_ratio is defined for the weight 3/2 form only, got {}",
            form.name
        )));
    }
    let (rho, x) = (params.rho, params.x);
    if rho <= 1.0 && !params.experimental {
        return Err(Error::RangeViolation { rho, threshold: 1.0 });
    }
    let numerator = weighted_power_sum(form, rho, x)?
        + nonholo_correction(form, rho, x, &params.cfg)?
        - main_term(form, rho, x)?;
    let n_level = form.level as f64;
    let coeff = (2.0 * PI * n_level.powf(form.k / 2.0 - 1.0)
        * (form.b0_minus * Complex64::i().powf(form.k)))
    .re;
    let denom = x.powf(rho + 1.0) * coeff / gamma_real(rho + 2.0)?;
    Ok((numerator / denom).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::zagier_form;

    #[test]
    fn ratio_approaches_one() {
        let form = zagier_form();
        let mut prev_dev = f64::INFINITY;
        for &x in &[100.25f64, 1000.25, 10_000.25] {
            let r = asymptotic_ratio(&form, &SummationParams::new(2.0, x)).unwrap();
            let dev = (r - 1.0).abs();
            assert!(dev < prev_dev, "x={x}: deviation {dev} did not shrink");
            prev_dev = dev;
        }
        assert!(prev_dev < 0.05, "final deviation {prev_dev}");
    }

    #[test]
    fn range_guard() {
        let form = zagier_form();
        assert!(asymptotic_ratio(&form, &SummationParams::new(0.3, 100.25)).is_err());
        assert!(
            asymptotic_ratio(&form, &SummationParams::new(0.3, 100.25).experimental()).is_ok()
        );
        assert!(error_term_ratio(&form, &SummationParams::new(0.5, 100.25)).is_err());
    }

    #[test]
    fn error_ratio_settles_near_one() {
        let form = zagier_form();
        let r = error_term_ratio(&form, &SummationParams::new(5.0, 10_000.25)).unwrap();
        assert!((r - 1.0).abs() < 0.2, "ratio {r}");
    }
}

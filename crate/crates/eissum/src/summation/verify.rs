//! End-to-end evaluation of the summation identity with an itemized report.

use super::lhs::{nonholo_correction, residual_q, residual_q_scale, weighted_power_sum};
use super::series::{rhs_holomorphic, rhs_nonholo_integral};
use super::{IdentityReport, SummationParams};
use crate::error::Error;
use crate::forms::{rho_threshold, FormSpec};
use crate::Result;

/// Evaluate both sides of the identity at (ρ, x) and report the residual.
///
/// The residual is normalized by the largest single term of Q_ρ(x), which
/// sets the natural magnitude scale of the identity at (ρ, x). Outside the
/// proven ρ-range the call errors unless `params.experimental` is set, in
/// which case the evaluation proceeds and the report is labelled
/// accordingly.
pub fn verify_identity(form: &FormSpec, params: &SummationParams) -> Result<IdentityReport> {
    let (rho, x) = (params.rho, params.x);
    if x <= 0.0 {
        return Err(Error::NonPositiveX(x));
    }
    let range = rho_threshold(form);
    if rho <= range.min_rho() && !params.experimental {
        return Err(Error::RangeViolation {
            rho,
            threshold: range.min_rho(),
        });
    }

    let lhs_weighted = weighted_power_sum(form, rho, x)?;
    let lhs_nonholo = nonholo_correction(form, rho, x, &params.cfg)?;
    let q = residual_q(form, rho, x)?;
    let (holo, conditional) = rhs_holomorphic(form, params)?;
    let nonholo = rhs_nonholo_integral(form, params)?;

    let residual = lhs_weighted + lhs_nonholo - q - holo.value - nonholo.value;
    let scale = residual_q_scale(form, rho, x)?.max(1.0);

    let mut diagnostics = vec![
        format!(
            "holomorphic series: {} terms, est. err {:.3e}{}",
            holo.terms_used,
            holo.err,
            if conditional { " (oscillation-averaged)" } else { "" }
        ),
        format!(
            "u-integral series: {} terms, est. err {:.3e}",
            nonholo.terms_used, nonholo.err
        ),
        format!("residual scale (largest Q term): {scale:.6e}"),
    ];
    if rho <= range.rho_0 - 0.5 {
        diagnostics.push(format!(
            "rho = {rho} at or below standard threshold {}; extended/conditional regime",
            range.rho_0 - 0.5
        ));
    }

    Ok(IdentityReport {
        lhs_weighted,
        lhs_nonholo,
        residual_q: q,
        rhs_holo: holo.value,
        rhs_nonholo: nonholo.value,
        residual,
        rel_residual: residual.norm() / scale,
        conditional,
        converged: holo.converged && nonholo.converged,
        diagnostics,
    })
}

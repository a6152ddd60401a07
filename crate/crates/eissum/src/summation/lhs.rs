//! Left-hand-side terms of the identity: the weighted power sum, the
//! incomplete-beta weight g_ρ(n,x) with its nonholomorphic sum, the residue
//! polynomial Q_ρ(x), and the leading (main) term of the asymptotics.

use crate::error::Error;
use crate::forms::{FormSpec, MinusSupport};
use crate::numkernel::{gamma_real, incomplete_beta_cont, quad_with_tol_real};
use crate::precision::PrecisionConfig;
use crate::sums::KahanC;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// (1/Γ(ρ+1)) Σ_{n≤x} a⁺(n)(x−n)^ρ, with the half-weight convention on the
/// boundary term when ρ = 0 and x is an integer.
pub fn weighted_power_sum(form: &FormSpec, rho: f64, x: f64) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("weighted_power_sum requires x > 0, got {x}")));
    }
    let n_max = x.floor() as u64;
    let at_boundary = (x - n_max as f64) == 0.0;
    let mut acc = KahanC::new();
    for n in 1..=n_max {
        let mut w = (x - n as f64).powf(rho);
        if n == n_max && at_boundary {
            if rho == 0.0 {
                w = 0.5; // average of the left/right limits
            } else {
                w = 0.0;
            }
        }
        acc.add(form.a_plus(n)? * w);
    }
    Ok(acc.value() / gamma_real(rho + 1.0)?)
}

/// The weight attached to nonholomorphic coefficients:
///
/// g_ρ(n,x) = (2πi/Γ(k+ρ)) (1+n/x)^ρ ∫_{2n/(x+n)}^1 v^{−k} (1−v)^{k+ρ−1} dv.
///
/// Away from n ≈ x the integral is closed in terms of the analytically
/// continued incomplete beta; close to n = x (lower limit near 1) direct
/// quadrature is better conditioned. Requires n ≤ x and k + ρ > 1.
pub fn g_rho(n: u64, x: f64, k: f64, rho: f64, cfg: &PrecisionConfig) -> Result<Complex64> {
    if k + rho <= 1.0 {
        return Err(Error::RangeViolation {
            rho,
            threshold: 1.0 - k,
        });
    }
    let nf = n as f64;
    if nf > x {
        return Err(Error::RangeViolation {
            rho,
            threshold: f64::NAN,
        });
    }
    let c = 2.0 * nf / (x + nf); // lower integration limit, in (0, 1]
    let integral = if c < 0.8 {
        // ∫_c^1 v^{-k}(1-v)^{k+ρ-1} dv = B(1-k, k+ρ) - B(c; 1-k, k+ρ)
        let complete = gamma_real(1.0 - k)? * gamma_real(k + rho)? / gamma_real(1.0 + rho)?;
        complete - incomplete_beta_cont(c, 1.0 - k, k + rho)?
    } else {
        let f = |v: f64| v.powf(-k) * (1.0 - v).powf(k + rho - 1.0);
        quad_with_tol_real(&f, c, 1.0, cfg.quad_tol()).re()
    };
    let prefactor = Complex64::new(0.0, 2.0 * PI) / gamma_real(k + rho)?;
    Ok(prefactor * (1.0 + nf / x).powf(rho) * integral)
}

/// Iterate the support of the minus-part coefficients up to and including x.
pub(crate) fn minus_support_upto(support: MinusSupport, x: f64) -> Vec<u64> {
    match support {
        MinusSupport::PerfectSquares => {
            let m_max = x.sqrt().floor() as u64;
            (1..=m_max).map(|m| m * m).filter(|&n| n as f64 <= x).collect()
        }
        MinusSupport::All => (1..=x.floor() as u64).collect(),
    }
}

/// (x^ρ/2πi) Σ_{n≤x} a⁻(n) g_ρ(n,x), summed over the support of a⁻.
pub fn nonholo_correction(
    form: &FormSpec,
    rho: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<Complex64> {
    if x < 1.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = KahanC::new();
    for n in minus_support_upto(form.minus_support, x) {
        let a = form.a_minus(n)?;
        if a.norm() == 0.0 {
            continue;
        }
        acc.add(a * g_rho(n, x, form.k, rho, cfg)?);
    }
    let prefactor = x.powf(rho) / Complex64::new(0.0, 2.0 * PI);
    Ok(prefactor * acc.value())
}

/// The four residue terms of Q_ρ(x), returned separately:
/// Q_ρ(x) = x^ρ (−a⁺(0)/Γ(ρ+1) + 2πx N^{k/2−1} b⁻(0) i^k/Γ(ρ+2)
///          − a⁻(0) x^{k−1} (2π)^{k−1}/Γ(ρ+k) + b⁺(0) i^k x^k (2π)^k/(N^{k/2} Γ(ρ+k+1))).
fn q_terms(form: &FormSpec, rho: f64, x: f64) -> Result<[Complex64; 4]> {
    let k = form.k;
    let n = form.level as f64;
    let ik = Complex64::i().powf(k);
    let xr = x.powf(rho);
    Ok([
        -form.a0_plus / gamma_real(rho + 1.0)? * xr,
        form.b0_minus * ik * (2.0 * PI * x * n.powf(k / 2.0 - 1.0) / gamma_real(rho + 2.0)?) * xr,
        -form.a0_minus * (x.powf(k - 1.0) * (2.0 * PI).powf(k - 1.0) / gamma_real(rho + k)?) * xr,
        form.b0_plus
            * ik
            * (x.powf(k) * (2.0 * PI).powf(k) / (n.powf(k / 2.0) * gamma_real(rho + k + 1.0)?))
            * xr,
    ])
}

/// Q_ρ(x) assembled from the form's constant terms.
pub fn residual_q(form: &FormSpec, rho: f64, x: f64) -> Result<Complex64> {
    Ok(q_terms(form, rho, x)?.iter().sum())
}

/// Magnitude of the largest single term of Q_ρ(x); the natural scale against
/// which identity residuals are measured.
pub fn residual_q_scale(form: &FormSpec, rho: f64, x: f64) -> Result<f64> {
    Ok(q_terms(form, rho, x)?
        .iter()
        .map(|t| t.norm())
        .fold(0.0, f64::max))
}

///// Leading term of the power-sum asymptotics, by the weight case split:
///
/// * 2 ≥ k > 1: x^{ρ+k} b⁺(0) i^k (2π)^k / (N^{k/2} Γ(ρ+k+1)),
/// * k = 1:     (2πi/Γ(ρ+2)) x^{ρ+1} (b⁻(0) + b⁺(0)/N),
/// * k < 1:     x^{ρ+1} 2π N^{k/2−1} b⁻(0) i^k / Γ(ρ+2).
pub fn main_term(form: &FormSpec, rho: f64, x: f64) -> Result<Complex64> {
    let k = form.k;
    let n = form.level as f64;
    let ik = Complex64::i().powf(k);
    if k > 1.0 {
        Ok(form.b0_plus * ik
            * (x.powf(rho + k) * (2.0 * PI).powf(k) / (n.powf(k / 2.0) * gamma_real(rho + k + 1.0)?)))
    } else if k == 1.0 {
        Ok(Complex64::new(0.0, 2.0 * PI) / gamma_real(rho + 2.0)?
            * x.powf(rho + 1.0)
            * (form.b0_minus + form.b0_plus / n))
    } else {
        Ok(form.b0_minus * ik
            * (x.powf(rho + 1.0) * 2.0 * PI * n.powf(k / 2.0 - 1.0) / gamma_real(rho + 2.0)?))
    }
}

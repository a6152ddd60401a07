//! Laplace-transform consequence of the identity: for every y > 0,
//!
//!   Σ a⁺(n)e^{−ny} + Σ a⁻(n)e^{ny}Γ(1−k, 2ny) + a⁺(0)
//!     − (2πN^{k/2−1}i^k/y)·b⁻(0) + ((2π)^{k−1}/y^{k−1})·a⁻(0)
//!     − (i^k(2π)^k/(N^{k/2}y^k))·b⁺(0)
//!   = (2πi/(√N y))^k [ Σ b⁺(n)e^{−4nπ²/(Ny)}
//!                      + Σ b⁻(n)e^{4nπ²/(Ny)}Γ(1−k, 8nπ²/(Ny)) ],
//!
//! with (2πi/(√N y))^k on the principal branch, matching the sign
//! convention of the identity's right-hand side.
//!
//! All series converge exponentially, so this is a cheap, sharp consistency
//! check on the whole coefficient system, independent of the Bessel-series
//! machinery.

use crate::forms::FormSpec;
use crate::numkernel::upper_incomplete_gamma;
use crate::precision::PrecisionConfig;
use crate::sums::KahanC;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Outcome of one converse-identity evaluation: the two sides, their
/// difference, and the magnitude of the largest contributing term (the
/// natural scale for judging the residual).
#[derive(Debug, Clone, Copy)]
pub struct ConverseReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: Complex64,
    pub scale: f64,
}

impl ConverseReport {
    /// |residual| relative to the largest term.
    pub fn rel(&self) -> f64 {
        self.residual.norm() / self.scale.max(1e-300)
    }
}

/// Sum Σ c(n)·w(n) with exponentially decaying weights, stopping once the
/// running term magnitude stays below `floor` (relative to the largest
/// term seen). Returns (sum, largest term magnitude).
fn exp_series(
    coeff: &dyn Fn(u64) -> Result<Complex64>,
    weight: &dyn Fn(f64) -> f64,
    floor: f64,
) -> Result<(Complex64, f64)> {
    let mut acc = KahanC::new();
    let mut largest = 0.0f64;
    let mut quiet = 0u32;
    for n in 1..=200_000u64 {
        let c = coeff(n)?;
        if c.norm() == 0.0 {
            // Sparse coefficient support (e.g. perfect squares only): a zero
            // coefficient says nothing about the tail, so it must not count
            // towards the stopping streak.
            continue;
        }
        let term = c * weight(n as f64);
        let mag = term.norm();
        largest = largest.max(mag);
        acc.add(term);
        if n >= 4 && mag < floor * largest.max(1.0) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok((acc.value(), largest))
}

/// The weight Γ(1−k, 2t)e^t of the nonholomorphic series. For large t the
/// product is ~ (2t)^{−k}e^{−t}, far below any tolerance in use, and the
/// incomplete-gamma kernel may reject the underflowing argument — return an
/// exact zero there instead.
fn gamma_weight(k: f64, t: f64) -> f64 {
    if t > 350.0 {
        return 0.0;
    }
    match upper_incomplete_gamma(1.0 - k, 2.0 * t) {
        Ok(g) => g * t.exp(),
        Err(_) => 0.0,
    }
}

/// Evaluate both sides of the Laplace-transform identity at y > 0.
pub fn converse_check(form: &FormSpec, y: f64, _cfg: &PrecisionConfig) -> Result<ConverseReport> {
    assert!(y > 0.0, "converse_check requires y > 0");
    let k = form.k;
    let n_level = form.level as f64;
    let ik = Complex64::i().powf(k);
    let floor = 1e-18;

    let (plus_f, m1) = exp_series(&|n| form.a_plus(n), &|nf| (-nf * y).exp(), floor)?;
    let (minus_f, m2) = exp_series(
        &|n| form.a_minus(n),
        &|nf| gamma_weight(k, nf * y),
        floor,
    )?;

    let const_terms = [
        form.a0_plus,
        -2.0 * PI * n_level.powf(k / 2.0 - 1.0) / y * ik * form.b0_minus,
        (2.0 * PI).powf(k - 1.0) / y.powf(k - 1.0) * form.a0_minus,
        -ik * (2.0 * PI).powf(k) / (n_level.powf(k / 2.0) * y.powf(k)) * form.b0_plus,
    ];
    let lhs = plus_f + minus_f + const_terms.iter().sum::<Complex64>();

    let w = 4.0 * PI * PI / (n_level * y);
    let (plus_g, m3) = exp_series(&|n| form.b_plus(n), &|nf| (-nf * w).exp(), floor)?;
    let (minus_g, m4) = exp_series(
        &|n| form.b_minus(n),
        &|nf| gamma_weight(k, nf * w),
        floor,
    )?;
    // Principal-branch (2πi/(√N y))^k, same branch convention as the
    // right-hand side of the summation identity.
    let prefactor = Complex64::new(0.0, 2.0 * PI / (n_level.sqrt() * y)).powf(k);
    let rhs = prefactor * (plus_g + minus_g);

    let scale = const_terms
        .iter()
        .map(|t| t.norm())
        .chain([m1, m2, prefactor.norm() * m3, prefactor.norm() * m4])
        .fold(0.0, f64::max);

    Ok(ConverseReport {
        lhs,
        rhs,
        residual: lhs - rhs,
        scale,
    })
}

//! Alternative, elementary evaluation of the nonholomorphic right-hand-side
//! term. The inner Bessel series in v can be traded, via the functional
//! equation of the shadow's L-function, for a piecewise-polynomial sum, so
//! the term becomes
//!
//!   i^{2k−1} ∫₁^∞ (v+1)^{−k} [ (1/Γ(ρ+k)) Σ_{n≤vx} a⁻(n) n^{1−k} v^{k−2}
//!                                          (x − n/v)^{ρ+k−1}
//!                              − N^{(k−2)/2} conj(Q_{ρ+k−1}(x, v/√N)) ] dv,
//!
//! with
//!
//!   Q_{ρ+k−1}(x, w) = (k−1)(4π)^{k−1} x^{ρ+k−1} w^{k−2}
//!     · ( −i^{2k+1} conj(a⁻(0)) / Γ(ρ+k)
//!         + (2πxw·i)^{2−k} conj(b⁻(0)) / Γ(ρ+2) ),
//!
//! all powers on the principal branch. The phase i^{2k−1} and the a⁻(0)
//! coefficient in Q are pinned numerically: with them, the truncated power
//! sum minus Q tracks the conjugated shadow Bessel series pointwise in v,
//! and the integral reproduces the direct u-integral evaluation.
//!
//! Both integrals diverge separately when k ≤ 1 + growth of the sum; their
//! difference decays like v^{−k−(ρ+1)/2−1/4}, so the combined integrand is
//! what gets integrated, piecewise between the jump points v = n/x where a
//! new term enters the sum.

use super::lhs::residual_q_scale;
use super::SummationParams;
use crate::error::Error;
use crate::forms::{FormSpec, MinusSupport};
use crate::numkernel::{gamma_real, quad_with_tol};
use crate::precision::EvalResult;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// conj(Q_{ρ+k−1}(x, v/√N)) as a function of v > 0.
fn q_bar(form: &FormSpec, rho: f64, x: f64, v: f64) -> Result<Complex64> {
    let k = form.k;
    let n_level = form.level as f64;
    let w = v / n_level.sqrt();
    let i = Complex64::i();
    let inner = -i.powf(2.0 * k + 1.0) * form.a0_minus.conj() / gamma_real(rho + k)?
        + (Complex64::new(0.0, 2.0 * PI * x * w)).powf(2.0 - k) * form.b0_minus.conj()
            / gamma_real(rho + 2.0)?;
    let q = (k - 1.0) * (4.0 * PI).powf(k - 1.0) * x.powf(rho + k - 1.0) * w.powf(k - 2.0)
        * inner;
    Ok(q.conj())
}

/// Σ_{n ≤ vx} a⁻(n) n^{1−k} v^{k−2} (x − n/v)^{ρ+k−1}.
fn truncated_shadow_sum(form: &FormSpec, rho: f64, x: f64, v: f64) -> Result<Complex64> {
    let k = form.k;
    let mut acc = Complex64::new(0.0, 0.0);
    let bound = v * x;
    let mut idx = 1u64;
    loop {
        let n = match form.minus_support {
            MinusSupport::All => idx,
            MinusSupport::PerfectSquares => idx * idx,
        };
        let nf = n as f64;
        if nf > bound {
            break;
        }
        let body = x - nf / v;
        if body > 0.0 {
            acc += form.a_minus(n)? * (nf.powf(1.0 - k) * body.powf(rho + k - 1.0));
        }
        idx += 1;
    }
    Ok(acc * v.powf(k - 2.0))
}

/// Evaluate the nonholomorphic right-hand-side term through the shadow
/// route. Must agree with the direct u-integral evaluation; keeping both is
/// the cross-check that validates each.
pub fn rhs_via_shadow(form: &FormSpec, params: &SummationParams) -> Result<EvalResult> {
    let (rho, x) = (params.rho, params.x);
    let k = form.k;
    let n_level = form.level as f64;
    let gamma_rk = gamma_real(rho + k)?;
    let combined = |v: f64| -> Complex64 {
        let sum = match truncated_shadow_sum(form, rho, x, v) {
            Ok(s) => s,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        let q = match q_bar(form, rho, x, v) {
            Ok(q) => q,
            Err(_) => return Complex64::new(f64::NAN, f64::NAN),
        };
        (1.0 + v).powf(-k) * (sum / gamma_rk - n_level.powf((k - 2.0) / 2.0) * q)
    };

    // Combined-integrand decay exponent; the envelope of the equivalent
    // Bessel series in v.
    let d = k + (rho + 1.0) / 2.0 + 0.25;
    if d <= 1.0 {
        return Err(Error::NonConvergence(format!(
            "rhs_via_shadow tail exponent {d} <= 1 (k = {k}, rho = {rho})"
        )));
    }

    // A v^{−d} tail with d barely above 1 converges too slowly to chase the
    // full quadrature tolerance, so floor the absolute target; this route
    // exists as a cross-check against the direct evaluation, not as the
    // highest-precision one.
    let scale = residual_q_scale(form, rho, x)?.max(1.0);
    let tol = (params.cfg.series_tol * scale).max(1e-7);

    // Jump points of the truncated sum sit at v = n/x (support n > x).
    // Integrate piecewise between them, grouped into blocks of v-width ≥ 2
    // so each block spans at least one oscillation of the underlying series.
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    let mut evals = 0usize;
    let mut v_lo = 1.0f64;
    let mut block = Complex64::new(0.0, 0.0);
    let mut block_start = 1.0f64;
    let mut small_blocks = 0u32;
    let slice_tol = (tol * 0.01).max(1e-14 * scale);
    'outer: for step in 1..200_000u64 {
        // Next jump strictly above v_lo; guard against the float landing a
        // hair below the current boundary, which would stall the sweep.
        let v_next = match form.minus_support {
            MinusSupport::All => {
                let mut n = (v_lo * x).floor() as u64 + 1;
                while n as f64 / x <= v_lo {
                    n += 1;
                }
                n as f64 / x
            }
            MinusSupport::PerfectSquares => {
                let mut m = (v_lo * x).sqrt().floor() as u64 + 1;
                while (m * m) as f64 / x <= v_lo {
                    m += 1;
                }
                (m * m) as f64 / x
            }
        };
        let v_hi = v_next.max(v_lo + 1e-9);
        let piece = quad_with_tol(&combined, v_lo, v_hi, slice_tol);
        if piece.value.re.is_nan() {
            return Err(Error::NonConvergence(
                "rhs_via_shadow: integrand evaluation failed".into(),
            ));
        }
        acc += piece.value;
        block += piece.value;
        err += piece.err;
        evals += piece.terms_used;
        v_lo = v_hi;
        if v_lo - block_start >= 2.0 {
            // Extrapolate the remaining tail from the last block assuming
            // the v^{−d} envelope; stop once two consecutive blocks certify
            // a tail below tolerance.
            let tail = block.norm() * v_lo / ((d - 1.0) * (v_lo - block_start));
            if tail < tol && step > 4 {
                small_blocks += 1;
                if small_blocks >= 2 {
                    err += tail;
                    break 'outer;
                }
            } else {
                small_blocks = 0;
            }
            block = Complex64::new(0.0, 0.0);
            block_start = v_lo;
        }
        if step == 199_999 {
            return Err(Error::NonConvergence(
                "rhs_via_shadow: slice budget exhausted".into(),
            ));
        }
    }

    // Carries the same sign convention as `rhs_nonholo_integral`; the phase
    // is pinned numerically against that route.
    let phase = Complex64::i().powf(2.0 * k - 1.0);
    Ok(EvalResult {
        value: phase * acc,
        err,
        terms_used: evals,
        converged: true,
    })
}

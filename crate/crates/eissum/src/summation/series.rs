//! Right-hand-side series: the generic Bessel series
//! F_ν(y; b_n; μ_n) = Σ_n b_n (y²/μ_n)^{ν/2} J_ν(4π√(μ_n) y)
//! with rigorous tail majorants in the absolutely convergent regime and
//! oscillation averaging in the conditional regime, plus the two concrete
//! right-hand sides of the identity built on it.

use super::lhs::residual_q_scale;
use super::SummationParams;
use crate::error::Error;
use crate::forms::{FormSpec, MinusSupport};
use crate::numkernel::{bessel_j, quad_with_tol_real};
use crate::precision::{EvalResult, PrecisionConfig};
use crate::sums::KahanC;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// J_ν(z) as a bare f64 at default precision.
fn jn(nu: f64, z: f64) -> Result<f64> {
    Ok(bessel_j(nu, z, &PrecisionConfig::default())?.re())
}

/// Description of one Bessel series Σ b_n (y²/μ_n)^{ν/2} J_ν(4π√(μ_n)y)
/// with μ_n = mu_scale · n and |b_n| = O(n^{coeff_growth}).
pub struct BesselSeries<'a> {
    pub nu: f64,
    pub y: f64,
    pub mu_scale: f64,
    pub coeff_growth: f64,
    pub support: MinusSupport,
    pub coeff: &'a dyn Fn(u64) -> Result<Complex64>,
}

impl BesselSeries<'_> {
    /// n for the idx-th support element (1-based).
    fn support_n(&self, idx: u64) -> u64 {
        match self.support {
            MinusSupport::All => idx,
            MinusSupport::PerfectSquares => idx * idx,
        }
    }

    /// Tail-decay exponent in the support index: the n-th term is bounded by
    /// C·idx^{-e}; absolute convergence needs e > 1.
    fn decay_exponent(&self) -> f64 {
        let e_n = self.nu / 2.0 + 0.25 - self.coeff_growth;
        match self.support {
            MinusSupport::All => e_n,
            MinusSupport::PerfectSquares => 2.0 * e_n,
        }
    }

    /// Envelope constant: |term(n)| ≤ |b_n| n^{-ν/2-1/4} · envelope().
    fn envelope(&self) -> f64 {
        self.y.powf(self.nu - 0.5) * self.mu_scale.powf(-self.nu / 2.0 - 0.25)
            / (2f64.sqrt() * PI)
    }

    fn term(&self, n: u64) -> Result<Complex64> {
        let b = (self.coeff)(n)?;
        if b.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mu = self.mu_scale * n as f64;
        let z = 4.0 * PI * mu.sqrt() * self.y;
        Ok(b * (self.y * self.y / mu).powf(self.nu / 2.0) * jn(self.nu, z)?)
    }
}

/// Number of series terms over which the Bessel phase at index T advances by
/// roughly four periods — the window used for oscillation averaging.
fn averaging_window(s: &BesselSeries, t: u64) -> usize {
    let n = s.support_n(t) as f64;
    // d/dn of z = 4πy√(mu_scale·n) gives a per-π spacing of √n/(2y√mu_scale).
    let spacing = n.sqrt() / (2.0 * s.y * s.mu_scale.sqrt());
    let per_index = match s.support {
        MinusSupport::All => spacing,
        MinusSupport::PerfectSquares => spacing / (2.0 * n.sqrt()),
    };
    ((8.0 * per_index).ceil() as usize).clamp(64, 4000)
}

/// Evaluate the series to absolute tolerance `tol`.
///
/// In the absolutely convergent regime (decay exponent > 1) the truncation
/// error is controlled by the power-law majorant; in the conditional regime
/// the partial sums oscillate without decaying, and the value is estimated
/// by averaging the partial sums over whole oscillation periods after a
/// fixed burn-in, with `converged = false` and a heuristic error bar.
pub fn bessel_series_f(s: &BesselSeries, cap: usize, tol: f64) -> Result<EvalResult> {
    let e = s.decay_exponent();
    let mut acc = KahanC::new();
    let mut burn_in = 5000.min(cap) as u64;
    if e > 1.02 {
        // Absolutely convergent: try the rigorous majorant first. When the
        // decay exponent is barely above 1 the majorant needs astronomically
        // many terms, so give up on certifying after a fixed burn-in and
        // fall through to oscillation averaging of the partial sums.
        let mut cmax = 0.0f64;
        let env = s.envelope();
        let mut idx = 0u64;
        let burn_cap = 30_000.min(cap) as u64;
        loop {
            idx += 1;
            let n = s.support_n(idx);
            let b_norm = (s.coeff)(n)?.norm();
            cmax = cmax.max(b_norm / (n as f64).powf(s.coeff_growth));
            acc.add(s.term(n)?);
            let tail = cmax * env * (idx as f64).powf(1.0 - e) / (e - 1.0);
            if idx >= 8 && tail < tol {
                return Ok(EvalResult {
                    value: acc.value(),
                    err: tail,
                    terms_used: idx as usize,
                    converged: true,
                });
            }
            if idx >= burn_cap {
                burn_in = idx;
                break;
            }
        }
    } else {
        // Conditional regime: fixed burn-in, no majorant available.
        for idx in 1..=burn_in {
            acc.add(s.term(s.support_n(idx))?);
        }
    }

    // Average the partial sums over whole oscillation periods: the partial
    // sums circle the limit with the Bessel phase, and the first-order
    // oscillation cancels in the window mean.
    let window = averaging_window(s, burn_in).min(cap.saturating_sub(burn_in as usize)).max(2);
    let mut partials = Vec::with_capacity(window);
    for idx in burn_in + 1..=burn_in + window as u64 {
        acc.add(s.term(s.support_n(idx))?);
        partials.push(acc.value());
    }
    let mean = partials.iter().sum::<Complex64>() / partials.len() as f64;
    let spread = partials
        .iter()
        .map(|p| (p - mean).norm())
        .fold(0.0, f64::max);
    Ok(EvalResult {
        value: mean,
        err: spread,
        terms_used: (burn_in as usize) + window,
        converged: false,
    })
}

/// First right-hand series:
/// i^k x^{(ρ+k)/2} (√N/2π)^ρ Σ_n b⁺(n) n^{−(ρ+k)/2} J_{ρ+k}(4π√(nx/N)).
///
/// The sign convention fixes the branch of i^k at half-integral k; it is
/// pinned numerically by the Laplace-transform identity (see converse.rs),
/// which determines the relative sign of the two sides to machine accuracy.
///
/// Returns the evaluated term and whether the conditional-summation policy
/// was in force.
pub fn rhs_holomorphic(form: &FormSpec, params: &SummationParams) -> Result<(EvalResult, bool)> {
    let (rho, x) = (params.rho, params.x);
    let n_level = form.level as f64;
    let coeff = |n: u64| form.b_plus(n);
    let series = BesselSeries {
        nu: rho + form.k,
        y: x.sqrt(),
        mu_scale: 1.0 / n_level,
        coeff_growth: form.mu_g_plus,
        support: MinusSupport::All,
        coeff: &coeff,
    };
    let prefactor = Complex64::i().powf(form.k) * n_level.powf(-form.k / 2.0)
        / (2.0 * PI).powf(rho);
    let conditional = series.decay_exponent() <= 1.02;
    let scale = residual_q_scale(form, rho, x)?.max(1.0);
    let tol = params.cfg.series_tol * scale / prefactor.norm();
    let mut r = bessel_series_f(&series, params.n_max_bessel, tol)?;
    r.value *= prefactor;
    r.err *= prefactor.norm();
    Ok((r, conditional))
}

/// The inner u-integral of the second right-hand series, in the
/// v = 1/u − 1 chart:
///
/// ∫₀^{1/2} u^{k+(ρ−3)/2} (1−u)^{−(1+ρ)/2} J_{ρ+1}(c√((1−u)/u)) du
///   = ∫₁^∞ (1+v)^{−k} v^{−(1+ρ)/2} J_{ρ+1}(c√v) dv,
///
/// integrated slice-by-slice between consecutive Bessel phase multiples of π
/// so every slice is a half-oscillation. Returns (value, error estimate).
pub fn u_integral(k: f64, rho: f64, c: f64, tol: f64) -> Result<(f64, f64)> {
    let f = |v: f64| (1.0 + v).powf(-k) * v.powf(-(1.0 + rho) / 2.0);
    let nu = rho + 1.0;
    let integrand = |v: f64| -> f64 {
        f(v) * jn(nu, c * v.sqrt()).unwrap_or(f64::NAN)
    };
    // Decay exponent of the slice integrals: envelope v^{-(k+(ρ+1)/2+1/4)}
    // times slice width ~ v^{1/2}.
    let e = k + (rho + 1.0) / 2.0 - 0.25;
    if e <= 1.0 {
        return Err(Error::NonConvergence(format!(
            "u_integral tail exponent {e} <= 1 (k = {k}, rho = {rho})"
        )));
    }
    let mut acc = 0.0f64;
    let mut err = 0.0f64;
    let mut v_lo = 1.0f64;
    let mut small_streak = 0u32;
    for j in 1..20_000u32 {
        let v_hi = ((c + j as f64 * PI) / c).powi(2);
        let piece = quad_with_tol_real(&integrand, v_lo, v_hi, tol * 0.05);
        acc += piece.re();
        err += piece.err;
        let tail = piece.re().abs() * v_hi / ((e - 1.0) * (v_hi - v_lo));
        if piece.re().abs() < 0.25 * tol {
            small_streak += 1;
            if small_streak >= 2 && j >= 4 {
                return Ok((acc, err + tail));
            }
        } else {
            small_streak = 0;
        }
        v_lo = v_hi;
    }
    Err(Error::NonConvergence(
        "u_integral: slice budget exhausted".into(),
    ))
}

/// Second right-hand series:
/// i^k x^{(ρ+1)/2} (√N/2π)^{ρ+k−1} Σ_n b⁻(n) n^{−((ρ−1)/2+k)} I_n(k,ρ),
/// with the same branch convention as the first series,
/// with I_n the u-integral above at c = 4π√(nx/N).
pub fn rhs_nonholo_integral(form: &FormSpec, params: &SummationParams) -> Result<EvalResult> {
    let (rho, x) = (params.rho, params.x);
    let k = form.k;
    let n_level = form.level as f64;
    let prefactor = Complex64::i().powf(k)
        * x.powf((rho + 1.0) / 2.0)
        * (n_level.sqrt() / (2.0 * PI)).powf(rho + k - 1.0);
    let scale = residual_q_scale(form, rho, x)?.max(1.0);
    let tol = params.cfg.series_tol * scale / prefactor.norm();

    let n_exp = (rho - 1.0) / 2.0 + k;
    // Per-index decay: |b⁻(n)| n^{-n_exp} |I_n| with |I_n| = O(c_n^{-1/2}),
    // c_n ∝ √n.
    let e_n = n_exp + 0.25 - form.mu_g_minus;
    let e = match form.minus_support {
        MinusSupport::All => e_n,
        MinusSupport::PerfectSquares => 2.0 * e_n,
    };
    if e <= 1.0 {
        return Err(Error::NonConvergence(format!(
            "rhs_nonholo_integral majorant exponent {e} <= 1"
        )));
    }

    let mut acc = KahanC::new();
    let mut err = 0.0f64;
    let mut cmax = 0.0f64;
    let mut kmax = 1.0f64; // max of |I_n|·√c_n, the empirical envelope constant
    let mut idx = 0u64;
    // Every term costs a full adaptive quadrature, so bound the term count
    // and report the extrapolated tail in `err` instead of chasing a
    // tolerance that would take millions of integrals to certify.
    let cap = (params.n_max_bessel as u64).min(4_000);
    loop {
        idx += 1;
        let n = match form.minus_support {
            MinusSupport::All => idx,
            MinusSupport::PerfectSquares => idx * idx,
        };
        let b = form.b_minus(n)?;
        let weight = (n as f64).powf(-n_exp);
        let c = 4.0 * PI * (n as f64 * x / n_level).sqrt();
        if b.norm() > 0.0 {
            let i_tol = (tol * 0.5 / (b.norm() * weight).max(1e-6)).max(1e-13);
            let (i_val, i_err) = u_integral(k, rho, c, i_tol)?;
            kmax = kmax.max(i_val.abs() * c.sqrt());
            acc.add(b * (weight * i_val));
            err += b.norm() * weight * i_err;
        }
        cmax = cmax.max(b.norm() / (n as f64).powf(form.mu_g_minus));
        let env = cmax * kmax / (4.0 * PI * (x / n_level).sqrt()).sqrt();
        let tail = env * (idx as f64).powf(1.0 - e) / (e - 1.0);
        if (idx >= 4 && tail < tol) || idx >= cap {
            let converged = tail < tol;
            return Ok(EvalResult {
                value: prefactor * acc.value(),
                err: prefactor.norm() * (err + tail),
                terms_used: idx as usize,
                converged,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{dirichlet_l_one, fundamental_discriminant, hurwitz_h, r_n_and_t_n, QuadChar};
    use crate::forms::zagier_form;
    use crate::numkernel::gamma_real;
    use num_traits::ToPrimitive;

    #[test]
    fn zero_coefficients_give_zero() {
        let coeff = |_n: u64| Ok(Complex64::new(0.0, 0.0));
        let s = BesselSeries {
            nu: 3.5,
            y: 2.0,
            mu_scale: 0.25,
            coeff_growth: 0.0,
            support: MinusSupport::All,
            coeff: &coeff,
        };
        let r = bessel_series_f(&s, 100_000, 1e-10).unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_term_matches_bessel_j() {
        // b_1 = 1, others 0; μ_1 = 1/4, ν = 3/2, y = 1:
        // F = 4^{3/4} J_{3/2}(2π).
        let coeff = |n: u64| {
            Ok(if n == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            })
        };
        let s = BesselSeries {
            nu: 1.5,
            y: 1.0,
            mu_scale: 0.25,
            coeff_growth: 0.0,
            support: MinusSupport::All,
            coeff: &coeff,
        };
        let r = bessel_series_f(&s, 100_000, 1e-12).unwrap();
        let expect = 4f64.powf(0.75) * jn(1.5, 2.0 * PI).unwrap();
        assert!((r.value.re - expect).abs() < 1e-10, "{} vs {expect}", r.value.re);
    }

    #[test]
    fn holomorphic_series_matches_explicit_display() {
        // The generic first RHS series for the weight 3/2 form must equal
        // its explicit classical form,
        // −i^{3/2}(1+i) x^{(2ρ+3)/4}/(2√2 π^ρ) Σ (H(n) + √n π^{-1} L(χ_{-n},1)(2−χ_{-n}(2)) T_n)
        //   · n^{-(2ρ+3)/4} J_{ρ+3/2}(2π√(nx)),
        // term by term on the first terms.
        let form = zagier_form();
        let rho = 2.0f64;
        let x = 50.5f64;
        let pre_generic = Complex64::i().powf(1.5) * x.powf((rho + 1.5) / 2.0)
            * (2.0 / (2.0 * PI)).powf(rho);
        let pre_display = Complex64::i().powf(1.5) * Complex64::new(1.0, 1.0)
            * x.powf((2.0 * rho + 3.0) / 4.0)
            / (2.0 * 2f64.sqrt() * PI.powf(rho));
        for n in 1..=10u64 {
            let generic = pre_generic * form.b_plus(n).unwrap()
                * (n as f64).powf(-(rho + 1.5) / 2.0)
                * jn(rho + 1.5, 4.0 * PI * (n as f64 * x / 4.0).sqrt()).unwrap();
            let h = hurwitz_h(n).to_f64().unwrap();
            let (d, _) = fundamental_discriminant(-(n as i64)).unwrap();
            let chi = QuadChar::new(d);
            let l = dirichlet_l_one(&chi).unwrap().re();
            let (_, t_n) = r_n_and_t_n(n).unwrap();
            let display = pre_display
                * (h + (n as f64).sqrt() / PI * l * (2.0 - chi.eval(2) as f64)
                    * t_n.to_f64().unwrap())
                * (n as f64).powf(-(2.0 * rho + 3.0) / 4.0)
                * jn(rho + 1.5, 2.0 * PI * (n as f64 * x).sqrt()).unwrap();
            assert!(
                (generic - display).norm() <= 1e-8 * display.norm().max(1e-12),
                "n = {n}: {generic} vs {display}"
            );
        }
    }

    #[test]
    fn nonholo_series_matches_explicit_display() {
        // Per support point n = m², the generic second-RHS term must equal
        // −i^{3/2}(1+i) x^{(ρ+1)/2}/(4√2 π^{ρ+1}) m^{-(ρ+1)} I_m with the
        // same inner integral.
        let form = zagier_form();
        let rho = 2.0f64;
        let x = 20.5f64;
        let k = 1.5;
        let pre_generic = Complex64::i().powf(k) * x.powf((rho + 1.0) / 2.0)
            * (2.0 / (2.0 * PI)).powf(rho + k - 1.0);
        let pre_display = Complex64::i().powf(1.5) * Complex64::new(1.0, 1.0)
            * x.powf((rho + 1.0) / 2.0)
            / (4.0 * 2f64.sqrt() * PI.powf(rho + 1.0));
        for m in 1..=4u64 {
            let n = m * m;
            let c = 4.0 * PI * (n as f64 * x / 4.0).sqrt();
            let (i_val, _) = u_integral(k, rho, c, 1e-11).unwrap();
            let generic = pre_generic * form.b_minus(n).unwrap()
                * (n as f64).powf(-((rho - 1.0) / 2.0 + k))
                * i_val;
            let display = pre_display * (m as f64).powf(-(rho + 1.0)) * i_val;
            assert!(
                (generic - display).norm() <= 1e-10 * display.norm().max(1e-15),
                "m = {m}: {generic} vs {display}"
            );
        }
    }

    #[test]
    fn bessel_term_derivative_consistency() {
        // With a_ρ(n, y) = (2π)^{−ρ} (y²/n)^{(ρ+k)/2} J_{ρ+k}(4π√n y) (one
        // term of the series at level 1 with its ρ-dependent prefactor),
        // d/dy a_{ρ+1}(n,y) = 2y · a_ρ(n,y).
        let k = 1.5;
        let n = 3.0f64;
        let a = |rho: f64, y: f64| -> f64 {
            (2.0 * PI).powf(-rho)
                * (y * y / n).powf((rho + k) / 2.0)
                * jn(rho + k, 4.0 * PI * n.sqrt() * y).unwrap()
        };
        for &(rho, y) in &[(2.0f64, 1.3f64), (2.5, 2.1), (4.0, 0.9)] {
            let h = 1e-4 * y;
            let deriv = (a(rho + 1.0, y + h) - a(rho + 1.0, y - h)) / (2.0 * h);
            let target = 2.0 * y * a(rho, y);
            assert!(
                (deriv - target).abs() <= 1e-6 * target.abs().max(1.0),
                "rho={rho}, y={y}: {deriv} vs {target}"
            );
        }
    }

    #[test]
    fn rhs_holo_magnitude_envelope() {
        // |rhs_holomorphic| = O(x^{(ρ+k)/2 − 1/4}): check the log-log slope
        // over two decades stays below the predicted exponent + margin.
        let form = zagier_form();
        let rho = 2.0f64;
        let mut mags = Vec::new();
        for &x in &[100.25f64, 10_000.25] {
            let params = SummationParams::new(rho, x);
            let (r, conditional) = rhs_holomorphic(&form, &params).unwrap();
            assert!(!conditional);
            mags.push(r.value.norm());
        }
        let slope = (mags[1] / mags[0]).log10() / 2.0;
        assert!(
            slope <= (rho + 1.5) / 2.0 - 0.25 + 0.15,
            "slope {slope}"
        );
    }

    #[test]
    fn gamma_scale_sanity() {
        // Γ(ρ+5/2) at ρ=2 enters the main term as 105√π/16.
        assert!((gamma_real(4.5).unwrap() - 105.0 * PI.sqrt() / 16.0).abs() < 1e-12);
    }
}

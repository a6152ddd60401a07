//! Concrete form data behind a name-keyed registry.
//!
//! A [`FormSpec`] packages everything the summation machinery needs about a
//! single form f of weight k on Γ₀(N) and its Fricke image g = f|w_N: the
//! four coefficient generators a±(n), b±(n), the four constant terms, and
//! growth exponents μ± with |a±(n)| = O(n^{μ±}).
//!
//! Two families are registered:
//!
//! * `zagier` — the weight 3/2 form on Γ₀(4) whose holomorphic coefficients
//!   are the Hurwitz class numbers H(n);
//! * `eisenstein-p` — for odd k ≥ 5, the weight 2 − k/2 form on Γ₀(4) built
//!   from an Eisenstein-type series, with coefficients expressed through
//!   L-values, twisted divisor sums and 2-adic character sums.

use crate::arith::{
    dirichlet_l_int, dirichlet_l_one, fundamental_discriminant, hurwitz_h, p_form_arith,
    r_n_and_t_n, zeta_real, QuadChar,
};
use crate::error::Error;
use crate::numkernel::gamma_real;
use crate::precision::PrecisionConfig;
use crate::Result;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

/// The small positive ε used wherever a growth exponent is "μ + ε for every
/// ε > 0". Any positive value is valid; a small one keeps the computed
/// ρ-thresholds close to their stated limits.
pub const EPSILON_MU: f64 = 0.01;

/// Support of the a⁻/b⁻ generators, used to skip zero terms cheaply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinusSupport {
    /// Nonzero only at n = m².
    PerfectSquares,
    /// Potentially nonzero at every n ≥ 1.
    All,
}

type Generator = Box<dyn Fn(u64) -> Result<Complex64> + Send + Sync>;

/// A coefficient generator with a per-instance memo table.
struct MemoFn {
    f: Generator,
    cache: Mutex<HashMap<u64, Complex64>>,
}

impl MemoFn {
    fn new(f: Generator) -> Self {
        Self {
            f,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn call(&self, n: u64) -> Result<Complex64> {
        if let Some(v) = self.cache.lock().unwrap().get(&n) {
            return Ok(*v);
        }
        let v = (self.f)(n)?;
        self.cache.lock().unwrap().insert(n, v);
        Ok(v)
    }
}

/// Fourier data of a form f and its Fricke image g = f|w_N.
pub struct FormSpec {
    /// Registry name plus parameters, e.g. `eisenstein-p(k=5)`.
    pub name: String,
    /// Weight k (a half-integer).
    pub k: f64,
    /// Level N.
    pub level: u32,
    /// Constant terms a⁺(0), a⁻(0) of f and b⁺(0), b⁻(0) of g.
    pub a0_plus: Complex64,
    pub a0_minus: Complex64,
    pub b0_plus: Complex64,
    pub b0_minus: Complex64,
    /// Growth exponents: |a±(n)| = O(n^{μ_f±}), |b±(n)| = O(n^{μ_g±}).
    pub mu_f_plus: f64,
    pub mu_f_minus: f64,
    pub mu_g_plus: f64,
    pub mu_g_minus: f64,
    /// Support of the minus-part generators.
    pub minus_support: MinusSupport,
    a_plus: MemoFn,
    a_minus: MemoFn,
    b_plus: MemoFn,
    b_minus: MemoFn,
}

impl FormSpec {
    /// Holomorphic-part coefficient a⁺(n) of f, n ≥ 1.
    pub fn a_plus(&self, n: u64) -> Result<Complex64> {
        self.a_plus.call(n)
    }

    /// Nonholomorphic-part coefficient a⁻(n) of f, n ≥ 1.
    pub fn a_minus(&self, n: u64) -> Result<Complex64> {
        self.a_minus.call(n)
    }

    /// Holomorphic-part coefficient b⁺(n) of g = f|w_N, n ≥ 1.
    pub fn b_plus(&self, n: u64) -> Result<Complex64> {
        self.b_plus.call(n)
    }

    /// Nonholomorphic-part coefficient b⁻(n) of g = f|w_N, n ≥ 1.
    pub fn b_minus(&self, n: u64) -> Result<Complex64> {
        self.b_minus.call(n)
    }
}

/// Validity threshold for the summation identity in ρ.
#[derive(Debug, Clone, Copy)]
pub struct RhoRange {
    /// The identity holds for ρ > ρ₀ − 1/2.
    pub rho_0: f64,
    /// Whether the k = 3/2 extension to ρ > ρ₀ − 3/2 applies.
    pub extended: bool,
}

impl RhoRange {
    /// Smallest admissible ρ (exclusive): ρ₀ − 3/2 when the weight 3/2
    /// extension applies, else ρ₀ − 1/2.
    pub fn min_rho(&self) -> f64 {
        if self.extended {
            self.rho_0 - 1.5
        } else {
            self.rho_0 - 0.5
        }
    }
}

/// The two-branch threshold ρ₀ for a form: with μ ranging over all four
/// growth exponents, ρ₀ = max{2 + 2μ − k, k} for k ≥ 1 and
/// ρ₀ = max{3 + 2μ − 2k} for k < 1.
pub fn rho_threshold(form: &FormSpec) -> RhoRange {
    let mus = [
        form.mu_f_plus,
        form.mu_f_minus,
        form.mu_g_plus,
        form.mu_g_minus,
    ];
    let k = form.k;
    let rho_0 = if k >= 1.0 {
        mus.iter()
            .map(|&mu| 2.0 + 2.0 * mu - k)
            .fold(k, f64::max)
    } else {
        mus.iter()
            .map(|&mu| 3.0 + 2.0 * mu - 2.0 * k)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    RhoRange {
        rho_0,
        extended: (k - 1.5).abs() < 1e-12,
    }
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const ONE_PLUS_I: Complex64 = Complex64::new(1.0, 1.0);

/// The weight 3/2, level 4 form with a⁺(n) = H(n) (Hurwitz class numbers).
pub fn zagier_form() -> FormSpec {
    let cfg = PrecisionConfig::default();
    let sqrt_pi = PI.sqrt();

    // a⁻(n), b⁻(n) live on perfect squares; the shared square test.
    fn square_root_of(n: u64) -> Option<u64> {
        let r = (n as f64).sqrt().round() as u64;
        (r * r == n).then_some(r)
    }

    let a_plus: Generator = Box::new(|n| {
        Ok(c64(hurwitz_h(n).to_f64().expect("H(n) fits in f64")))
    });
    let a_minus: Generator = Box::new(move |n| {
        Ok(match square_root_of(n) {
            Some(_) => c64((n as f64).sqrt() / (4.0 * sqrt_pi)),
            None => c64(0.0),
        })
    });
    let b_plus: Generator = Box::new(move |n| {
        let h = hurwitz_h(n).to_f64().expect("H(n) fits in f64");
        let (d, _) = fundamental_discriminant(-(n as i64))?;
        let chi = QuadChar::new(d);
        let l1 = dirichlet_l_one(&chi)?.re();
        let (_, t_n) = r_n_and_t_n(n)?;
        let t_n = t_n.to_f64().expect("T_n fits in f64");
        let chi2 = chi.eval(2) as f64;
        Ok(ONE_PLUS_I
            * (h / 8f64.sqrt()
                + (n as f64).sqrt() / (2.0 * 2f64.sqrt() * PI) * l1 * (2.0 - chi2) * t_n))
    });
    let b_minus: Generator = Box::new(move |n| {
        Ok(match square_root_of(n) {
            Some(_) => ONE_PLUS_I * ((n as f64).sqrt() / (4.0 * (2.0 * PI).sqrt())),
            None => c64(0.0),
        })
    });
    let _ = &cfg;

    FormSpec {
        name: "zagier".into(),
        k: 1.5,
        level: 4,
        a0_plus: c64(-1.0 / 12.0),
        a0_minus: c64(1.0 / (8.0 * PI)),
        b0_plus: -ONE_PLUS_I / (12.0 * 8f64.sqrt()),
        // Pinned numerically rather than taken from a closed-form
        // simplification: this constant must make g equal f under the level-4
        // Fricke flip, and evaluating both expansions at the fixed point
        // τ = i/2 (and at τ = i) determines it to machine precision. The same
        // value is forced, independently, by the x^{ρ+1}-order balance of the
        // summation identity and by the Laplace-transform identity.
        b0_minus: ONE_PLUS_I / (8.0 * PI * 2f64.sqrt()),
        mu_f_plus: 0.5 + EPSILON_MU,
        mu_f_minus: 0.5,
        mu_g_plus: 0.5 + EPSILON_MU,
        mu_g_minus: 0.5,
        minus_support: MinusSupport::PerfectSquares,
        a_plus: MemoFn::new(a_plus),
        a_minus: MemoFn::new(a_minus),
        b_plus: MemoFn::new(b_plus),
        b_minus: MemoFn::new(b_minus),
    }
}

/// Principal-branch z^p.
fn cpow(z: Complex64, p: f64) -> Complex64 {
    z.powf(p)
}

/// Shared L-value prefactor of the weight 2 − k/2 family:
/// π L(χ_n, (k−1)/2)(1 − χ_n(2) 2^{(1−k)/2}) T_{n,k} / (ζ(k−1)(1 − 2^{1−k})),
/// where χ_n = ((−1)^{(k+1)/2} 4t / ·) for n = t m², t squarefree.
fn p_prefactor(k: u32, n: i64, cfg: &PrecisionConfig) -> Result<f64> {
    let (t, _) = crate::arith::squarefree_decomposition(n);
    let sign = if (k + 1) / 2 % 2 == 0 { 1 } else { -1 };
    let chi = QuadChar::new(sign * 4 * t);
    let l = dirichlet_l_int(&chi, (k - 1) / 2, cfg)?.re();
    let chi2 = chi.eval(2) as f64;
    let zeta = zeta_real((k - 1) as f64, cfg)?.re();
    let (t_nk, _) = p_form_arith(k, n)?;
    let t_nk = t_nk.to_f64().expect("T_{n,k} fits in f64");
    Ok(PI * l * (1.0 - chi2 * 2f64.powf((1.0 - k as f64) / 2.0)) * t_nk
        / (zeta * (1.0 - 2f64.powi(1 - k as i32))))
}

/// The bracket shared by b⁺(n) and b⁻(n):
/// (2^{2−k} cos²(πk/4) − 1)/(2i)^{k/2} − 2^{1−k/2} cos(πk/4) A_k(n).
fn p_bracket(k: u32, a_k_n: Complex64) -> Complex64 {
    let kf = k as f64;
    let cos = (PI * kf / 4.0).cos();
    c64(2f64.powf(2.0 - kf) * cos * cos - 1.0) / cpow(Complex64::new(0.0, 2.0), kf / 2.0)
        - c64(2f64.powf(1.0 - kf / 2.0) * cos) * a_k_n
}

/// The weight 2 − k/2, level 4 form built from an Eisenstein-type series,
/// for odd k ≥ 5.
pub fn eisenstein_p_form(k: u32) -> Result<FormSpec> {
    if k % 2 == 0 || k < 5 {
        return Err(Error::InvalidFormParameter(format!(
            "eisenstein-p requires odd k >= 5, got {k}"
        )));
    }
    let cfg = PrecisionConfig::default();
    let kf = k as f64;
    let m2i = Complex64::new(0.0, -2.0); // −2i
    let i = Complex64::i();
    let i_mk = cpow(i, -kf);
    let cos = (PI * kf / 4.0).cos();
    let gamma_half = gamma_real(kf / 2.0 - 1.0)?;

    // ζ-ratio appearing in all four constant terms.
    let zeta_ratio = zeta_real(kf - 2.0, &cfg)?.re() * (1.0 - 2f64.powf(2.0 - kf))
        / (zeta_real(kf - 1.0, &cfg)?.re() * (1.0 - 2f64.powf(1.0 - kf)));

    let a0_plus =
        cpow(c64(2.0), 2.0 - 1.5 * kf) * cpow(i, kf / 2.0 - 2.0) * (1.0 + i_mk) * PI * zeta_ratio;
    let b0_plus = (c64(2f64.powf(2.0 - kf) * (1.0 - 2f64.powf(2.0 - kf) * cos * cos))
        + c64(2f64.powf(3.0 - 2.0 * kf) * cos) * (1.0 + i_mk) * cpow(i, kf / 2.0))
        * PI
        * zeta_ratio;
    let b0_minus = c64(-2f64.powf(1.0 - kf / 2.0) * cos);

    let a_plus: Generator = Box::new(move |n| {
        let cfg = PrecisionConfig::default();
        let (_, a_k_n) = p_form_arith(k, n as i64)?;
        Ok(cpow(m2i, 2.0 - kf / 2.0) * p_prefactor(k, n as i64, &cfg)? * a_k_n)
    });
    let a_minus: Generator = Box::new(move |n| {
        let cfg = PrecisionConfig::default();
        let (_, a_k_mn) = p_form_arith(k, -(n as i64))?;
        Ok(cpow(m2i, 2.0 - kf / 2.0) * p_prefactor(k, -(n as i64), &cfg)? * a_k_mn / gamma_half)
    });
    let b_plus: Generator = Box::new(move |n| {
        let cfg = PrecisionConfig::default();
        let (_, a_k_n) = p_form_arith(k, n as i64)?;
        Ok(c64(p_prefactor(k, n as i64, &cfg)?) / cpow(m2i, kf / 2.0 - 2.0)
            * p_bracket(k, a_k_n))
    });
    let b_minus: Generator = Box::new(move |n| {
        let cfg = PrecisionConfig::default();
        let (_, a_k_mn) = p_form_arith(k, -(n as i64))?;
        Ok(c64(p_prefactor(k, -(n as i64), &cfg)?) / (cpow(m2i, kf / 2.0 - 2.0) * gamma_half)
            * p_bracket(k, a_k_mn))
    });

    Ok(FormSpec {
        name: format!("eisenstein-p(k={k})"),
        k: 2.0 - kf / 2.0,
        level: 4,
        a0_plus,
        a0_minus: c64(1.0),
        b0_plus,
        b0_minus,
        mu_f_plus: EPSILON_MU,
        mu_f_minus: EPSILON_MU,
        mu_g_plus: EPSILON_MU,
        mu_g_minus: EPSILON_MU,
        minus_support: MinusSupport::All,
        a_plus: MemoFn::new(a_plus),
        a_minus: MemoFn::new(a_minus),
        b_plus: MemoFn::new(b_plus),
        b_minus: MemoFn::new(b_minus),
    })
}

/// A family of forms selectable by name, with an optional integer parameter.
pub trait FormFamily: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;
    /// One-line description for `--help`-style listings.
    fn describe(&self) -> &'static str;
    /// Build the form, given the family parameter (k for parametric families).
    fn build(&self, param: Option<u32>) -> Result<FormSpec>;
}

struct ZagierFamily;

impl FormFamily for ZagierFamily {
    fn name(&self) -> &'static str {
        "zagier"
    }
    fn describe(&self) -> &'static str {
        "weight 3/2, level 4; holomorphic coefficients are Hurwitz class numbers H(n)"
    }
    fn build(&self, param: Option<u32>) -> Result<FormSpec> {
        if param.is_some() {
            return Err(Error::InvalidFormParameter(
                "the zagier form takes no k parameter".into(),
            ));
        }
        Ok(zagier_form())
    }
}

struct EisensteinPFamily;

impl FormFamily for EisensteinPFamily {
    fn name(&self) -> &'static str {
        "eisenstein-p"
    }
    fn describe(&self) -> &'static str {
        "weight 2 - k/2, level 4, for odd k >= 5 (pass k; default 5)"
    }
    fn build(&self, param: Option<u32>) -> Result<FormSpec> {
        eisenstein_p_form(param.unwrap_or(5))
    }
}

static REGISTRY: Lazy<Vec<Box<dyn FormFamily>>> =
    Lazy::new(|| vec![Box::new(ZagierFamily), Box::new(EisensteinPFamily)]);

/// All registered form families.
pub fn form_registry() -> &'static [Box<dyn FormFamily>] {
    &REGISTRY
}

/// Build a form by registry name.
pub fn build_form(name: &str, param: Option<u32>) -> Result<FormSpec> {
    for family in REGISTRY.iter() {
        if family.name() == name {
            return family.build(param);
        }
    }
    let names: Vec<_> = REGISTRY.iter().map(|f| f.name()).collect();
    Err(Error::UnknownForm(name.to_string(), names.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zagier_point_values() {
        let f = zagier_form();
        assert_relative_eq!(f.a_plus(3).unwrap().re, 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(
            f.a_minus(4).unwrap().re,
            0.5 / PI.sqrt(),
            max_relative = 1e-14
        );
        assert_eq!(f.a_minus(5).unwrap(), Complex64::new(0.0, 0.0));
        let b0 = -ONE_PLUS_I / (12.0 * 8f64.sqrt());
        assert!((f.b0_plus - b0).norm() < 1e-15);
    }

    #[test]
    fn zagier_minus_ratio_is_constant() {
        // b⁻(m²)/a⁻(m²) = (1+i)/√2 for every m.
        let f = zagier_form();
        let expect = ONE_PLUS_I / 2f64.sqrt();
        for m in 1..=12u64 {
            let r = f.b_minus(m * m).unwrap() / f.a_minus(m * m).unwrap();
            assert!((r - expect).norm() < 1e-13, "m = {m}");
        }
    }

    #[test]
    fn principal_branch_phase() {
        // i^{3/2}(1+i) = -√2, the phase that turns the generic main-term
        // coefficient into the classical one for the weight 3/2 form.
        let v = cpow(Complex64::i(), 1.5) * ONE_PLUS_I;
        assert!((v - Complex64::new(-2f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rho_thresholds() {
        let z = rho_threshold(&zagier_form());
        assert_relative_eq!(z.rho_0, 1.5 + 2.0 * EPSILON_MU, max_relative = 1e-12);
        assert!(z.extended);
        assert_relative_eq!(z.min_rho(), 2.0 * EPSILON_MU, max_relative = 1e-9);

        let p = rho_threshold(&eisenstein_p_form(5).unwrap());
        assert_relative_eq!(p.rho_0, 4.0 + 2.0 * EPSILON_MU, max_relative = 1e-12);
        assert!(!p.extended);
        assert_relative_eq!(p.min_rho(), 3.5 + 2.0 * EPSILON_MU, max_relative = 1e-12);
    }

    #[test]
    fn p_form_constants() {
        let f = eisenstein_p_form(5).unwrap();
        assert_eq!(f.k, -0.5);
        assert_eq!(f.level, 4);
        assert_eq!(f.a0_minus, Complex64::new(1.0, 0.0));
        // b⁻(0) = -2^{1-5/2} cos(5π/4) = 2^{-3/2}·2^{-1/2} = 1/4.
        assert_relative_eq!(f.b0_minus.re, 0.25, max_relative = 1e-13);
        assert!(f.b0_minus.im.abs() < 1e-15);
        // k = 7: -2^{-5/2} cos(7π/4) = -2^{-3}.
        let f7 = eisenstein_p_form(7).unwrap();
        assert_relative_eq!(f7.b0_minus.re, -0.125, max_relative = 1e-13);
        assert!(eisenstein_p_form(4).is_err());
        assert!(eisenstein_p_form(3).is_err());
    }

    #[test]
    fn p_form_squarefree_reduces_to_prefactor() {
        // For odd squarefree n, T_{n,k} = 1 and a⁺(n) is the L-value
        // prefactor times A_k(n).
        let cfg = PrecisionConfig::default();
        let f = eisenstein_p_form(5).unwrap();
        for &n in &[1i64, 3, 5, 7, 11, 15, 21] {
            let (t, a) = p_form_arith(5, n).unwrap();
            assert_eq!(t, crate::arith::Rational::new(1, 1));
            let expect = cpow(Complex64::new(0.0, -2.0), 2.0 - 2.5)
                * p_prefactor(5, n, &cfg).unwrap()
                * a;
            let got = f.a_plus(n as u64).unwrap();
            assert!((got - expect).norm() < 1e-13 * expect.norm().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let f1 = zagier_form();
        let f2 = zagier_form();
        for n in 1..=50u64 {
            assert_eq!(f1.b_plus(n).unwrap(), f2.b_plus(n).unwrap());
            // memoized second call agrees bitwise with the cold call
            assert_eq!(f1.b_plus(n).unwrap(), f2.b_plus(n).unwrap());
        }
        let p1 = eisenstein_p_form(5).unwrap();
        let p2 = eisenstein_p_form(5).unwrap();
        for n in 1..=30u64 {
            assert_eq!(p1.a_minus(n).unwrap(), p2.a_minus(n).unwrap());
        }
    }

    #[test]
    fn growth_certification() {
        // Sampled check that |a±(n)| / n^{μ±+0.1} stays bounded.
        let f = zagier_form();
        let mut max_ratio = 0.0f64;
        for n in (1..=500u64).chain((501..=10_000).step_by(97)) {
            let r = f.b_plus(n).unwrap().norm() / (n as f64).powf(f.mu_g_plus + 0.1);
            max_ratio = max_ratio.max(r);
            let r = f.a_plus(n).unwrap().norm() / (n as f64).powf(f.mu_f_plus + 0.1);
            max_ratio = max_ratio.max(r);
        }
        assert!(max_ratio < 10.0, "zagier growth ratio {max_ratio}");

        let p = eisenstein_p_form(5).unwrap();
        let mut max_ratio = 0.0f64;
        for n in (1..=200u64).chain((201..=4000).step_by(131)) {
            for v in [p.a_plus(n).unwrap(), p.a_minus(n).unwrap(), p.b_plus(n).unwrap(), p.b_minus(n).unwrap()] {
                max_ratio = max_ratio.max(v.norm() / (n as f64).powf(EPSILON_MU + 0.1));
            }
        }
        assert!(max_ratio < 50.0, "p-form growth ratio {max_ratio}");
    }

    #[test]
    fn registry_lookup() {
        assert!(build_form("zagier", None).is_ok());
        assert!(build_form("zagier", Some(5)).is_err());
        assert!(build_form("eisenstein-p", None).is_ok());
        assert!(build_form("eisenstein-p", Some(7)).is_ok());
        assert!(matches!(
            build_form("nope", None),
            Err(Error::UnknownForm(_, _))
        ));
        assert_eq!(form_registry().len(), 2);
    }
}

//! Quadratic characters and their Dirichlet L-values.
//!
//! Two independent routes are used, matching how the values enter the
//! coefficient formulas:
//!
//! * `L(χ_d, 1)` through the exact class number formula — the class number
//!   is computed by form counting, so the only rounding is the final π/√|d|.
//! * `L(χ, m)` for integer m ≥ 2 by summing the character series over
//!   complete periods, with the block tails closed in Euler–Maclaurin form.

use super::cache::{ArithCache, GLOBAL};
use super::hurwitz::{class_number, is_fundamental};
use super::kronecker::kronecker_symbol;
use super::multiplicative::{divisors, largest_odd_square_root, moebius, sigma_k, squarefree_decomposition};
use super::Rational;
use crate::error::Error;
use crate::precision::{EvalResult, PrecisionConfig};
use crate::Result;
use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::f64::consts::PI;
use std::sync::Mutex;

/// Real quadratic character a ↦ (disc / a) (Kronecker symbol); `disc = 1`
/// is the trivial character mod 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadChar {
    pub disc: i64,
}

impl QuadChar {
    pub fn new(disc: i64) -> Self {
        Self { disc }
    }

    pub fn trivial() -> Self {
        Self { disc: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.disc == 1
    }

    /// Period of the character.
    pub fn modulus(&self) -> u64 {
        self.disc.unsigned_abs().max(1)
    }

    pub fn eval(&self, a: i64) -> i64 {
        kronecker_symbol(self.disc, a)
    }
}

/// Fundamental discriminant d of ℚ(√m) for m < 0, together with the square
/// part f of m (m = t·f² with t squarefree; d is t or 4t).
pub fn fundamental_discriminant(m: i64) -> Result<(i64, u64)> {
    if m >= 0 {
        return Err(Error::Domain(format!(
            "fundamental_discriminant requires a negative argument, got {m}"
        )));
    }
    let (t, f) = squarefree_decomposition(m);
    let d = if t.rem_euclid(4) == 1 { t } else { 4 * t };
    Ok((d, f))
}

/// Unit count w(d) of the imaginary quadratic order of discriminant d.
pub fn unit_count(d: i64) -> u64 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// L(χ_d, 1) via the class number formula 2π h(d) / (w(d) √|d|).
pub fn dirichlet_l_one(chi: &QuadChar) -> Result<EvalResult> {
    if chi.is_trivial() {
        return Err(Error::Domain(
            "L(s) of the trivial character has a pole at s = 1".into(),
        ));
    }
    let d = chi.disc;
    if d >= 0 || !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let (h, w) = class_number(d)?;
    let value = 2.0 * PI * h as f64 / (w as f64 * ((-d) as f64).sqrt());
    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        err: value * 4.0 * f64::EPSILON,
        terms_used: 1,
        converged: true,
    })
}

/// Hurwitz zeta ζ(s, w) for s > 1, w > 0 by Euler–Maclaurin.
fn hurwitz_zeta(s: f64, w: f64) -> f64 {
    // Push the argument to z ≥ 18 so three Bernoulli corrections leave an
    // error well below 1e-12 for every s ≥ 2.
    let mut head = 0.0f64;
    let mut j = 0.0f64;
    while w + j < 18.0 {
        head += (w + j).powf(-s);
        j += 1.0;
    }
    let z = w + j;
    let zi = 1.0 / z;
    let zs = z.powf(-s); // z^{-s}
    head
        + zs * z / (s - 1.0)
        + zs * 0.5
        + zs * zi * s / 12.0
        - zs * zi.powi(3) * s * (s + 1.0) * (s + 2.0) / 720.0
        + zs * zi.powi(5) * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0
}

/// ζ(s) for real s > 1 by Euler–Maclaurin.
pub fn zeta_real(s: f64, _cfg: &PrecisionConfig) -> Result<EvalResult> {
    if s <= 1.0 {
        return Err(Error::Domain(format!("zeta_real requires s > 1, got {s}")));
    }
    let value = hurwitz_zeta(s, 1.0);
    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        err: value.abs() * 1e-13,
        terms_used: 18,
        converged: true,
    })
}

/// ζ(m, w) for integer m ≥ 2 — same Euler–Maclaurin scheme as
/// [`hurwitz_zeta`] but with integer powers, which is what the inner loop of
/// [`dirichlet_l_int`] spends its time on.
fn hurwitz_zeta_int(m: i32, w: f64) -> f64 {
    let mut head = 0.0f64;
    let mut j = 0.0f64;
    while w + j < 18.0 {
        head += (w + j).powi(-m);
        j += 1.0;
    }
    let z = w + j;
    let s = m as f64;
    let zi = 1.0 / z;
    let zs = z.powi(-m);
    head
        + zs * z / (s - 1.0)
        + zs * 0.5
        + zs * zi * s / 12.0
        - zs * zi.powi(3) * s * (s + 1.0) * (s + 2.0) / 720.0
        + zs * zi.powi(5) * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0
}

/// Smallest-prime-factor sieve, grown on demand and shared across calls.
static SPF: Lazy<Mutex<Vec<u32>>> = Lazy::new(|| Mutex::new(Vec::new()));

fn spf_up_to(n: usize) -> std::sync::MutexGuard<'static, Vec<u32>> {
    let mut spf = SPF.lock().unwrap();
    if spf.len() <= n {
        let m = (n + 1).next_power_of_two().max(1024);
        *spf = vec![0u32; m];
        for i in 2..m {
            if spf[i] == 0 {
                for j in (i..m).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
    }
    spf
}

/// Table of χ(r) for r = 1..q, filled multiplicatively: the Kronecker symbol
/// is only evaluated at primes, everything else is one table lookup.
fn chi_table(disc: i64, q: u64) -> Vec<i8> {
    let q = q as usize;
    let spf = spf_up_to(q);
    let mut table = vec![0i8; q + 1];
    if q >= 1 {
        table[1] = 1;
    }
    for r in 2..=q {
        let p = spf[r] as usize;
        table[r] = table[r / p] * kronecker_symbol(disc, p as i64) as i8;
    }
    table
}

/// L(χ, m) for integer m ≥ 2: the character series summed over complete
/// periods, L = q^{-m} Σ_{r=1}^{q} χ(r) ζ(m, r/q), so the only truncation
/// is inside the Euler–Maclaurin tail (error ≪ 1e-12).
pub fn dirichlet_l_int(chi: &QuadChar, m: u32, _cfg: &PrecisionConfig) -> Result<EvalResult> {
    if m < 2 {
        return Err(Error::Domain(format!("dirichlet_l_int requires m >= 2, got {m}")));
    }
    let key = (chi.disc, m);
    let value = ArithCache::memo(&GLOBAL.l_values, key, || {
        let q = chi.modulus();
        let qm = (q as f64).powi(-(m as i32));
        let table = chi_table(chi.disc, q);
        let mut acc = crate::sums::Kahan::new();
        for r in 1..=q {
            let c = table[r as usize];
            if c != 0 {
                acc.add(c as f64 * qm * hurwitz_zeta_int(m as i32, r as f64 / q as f64));
            }
        }
        acc.value()
    });
    Ok(EvalResult {
        value: Complex64::new(value, 0.0),
        err: value.abs().max(1.0) * 1e-12,
        terms_used: chi.modulus() as usize,
        converged: true,
    })
}

/// The pair (r_n, T_n): r_n is the largest odd r with r² | n, and
/// T_n = (1/r_n) Σ_{m | r_n} μ(m) χ_{-n}(m) σ₁(r_n/m), where χ_{-n} is the
/// Kronecker character of the fundamental discriminant of ℚ(√-n).
pub fn r_n_and_t_n(n: u64) -> Result<(u64, Rational)> {
    if n == 0 {
        return Err(Error::Domain("r_n/T_n require n >= 1".into()));
    }
    let r = largest_odd_square_root(n);
    let (d, _) = fundamental_discriminant(-(n as i64))?;
    let chi = QuadChar::new(d);
    let mut acc = Rational::new(0, 1);
    for m in divisors(r) {
        let mu = moebius(m);
        if mu == 0 {
            continue;
        }
        let c = chi.eval(m as i64);
        if c == 0 {
            continue;
        }
        acc += Rational::from_integer(mu * c * sigma_k(r / m, 1) as i64);
    }
    Ok((r, acc / Rational::from_integer(r as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(-4).unwrap(), (-4, 2));
        assert_eq!(fundamental_discriminant(-9).unwrap(), (-4, 3));
        assert_eq!(fundamental_discriminant(-12).unwrap(), (-3, 2));
        assert_eq!(fundamental_discriminant(-1).unwrap(), (-4, 1));
        assert_eq!(fundamental_discriminant(-7).unwrap(), (-7, 1));
        assert!(fundamental_discriminant(4).is_err());
    }

    #[test]
    fn l_one_small_discriminants() {
        // d = -4: L = π/4 (Leibniz); d = -3: L = π/(3√3).
        let l4 = dirichlet_l_one(&QuadChar::new(-4)).unwrap().re();
        assert!((l4 - PI / 4.0).abs() < 1e-14);
        let l3 = dirichlet_l_one(&QuadChar::new(-3)).unwrap().re();
        assert!((l3 - PI / (3.0 * 3.0f64.sqrt())).abs() < 1e-14);
        assert!(dirichlet_l_one(&QuadChar::trivial()).is_err());
    }

    #[test]
    fn l_one_against_abel_summed_series() {
        // Independent oracle: sum Σ χ(a)/a over 50 complete periods, then
        // close the tail exactly. Writing a = N + (u-1)q + r and using
        // Σ_r χ(r) = 0, the tail telescopes to -(1/q) Σ_r χ(r) ψ((N+r)/q),
        // where ψ is evaluated by its large-argument expansion.
        fn digamma_large(z: f64) -> f64 {
            z.ln() - 0.5 / z - 1.0 / (12.0 * z * z) + 1.0 / (120.0 * z.powi(4))
        }
        for d in (-200i64..0).filter(|&d| is_fundamental(d)) {
            let chi = QuadChar::new(d);
            let q = chi.modulus() as i64;
            let n_max = 50 * q;
            let mut sum = 0.0f64;
            for a in 1..=n_max {
                sum += chi.eval(a) as f64 / a as f64;
            }
            for r in 1..=q {
                sum -= chi.eval(r) as f64 * digamma_large((n_max + r) as f64 / q as f64)
                    / q as f64;
            }
            let exact = dirichlet_l_one(&chi).unwrap().re();
            assert!(
                (sum - exact).abs() < 1e-6,
                "d = {d}: series {sum} vs formula {exact}"
            );
        }
    }

    #[test]
    fn zeta_values() {
        let cfg = PrecisionConfig::default();
        assert!((zeta_real(2.0, &cfg).unwrap().re() - PI * PI / 6.0).abs() < 1e-12);
        assert!((zeta_real(4.0, &cfg).unwrap().re() - PI.powi(4) / 90.0).abs() < 1e-12);
        assert!((zeta_real(3.0, &cfg).unwrap().re() - 1.202_056_903_159_594).abs() < 1e-12);
        assert!(zeta_real(1.0, &cfg).is_err());
    }

    #[test]
    fn sieved_character_table_matches_direct() {
        for &d in &[-4i64, -3, -20, 4, 12, -168] {
            let chi = QuadChar::new(d);
            let t = chi_table(d, chi.modulus());
            for r in 1..=chi.modulus() {
                assert_eq!(t[r as usize] as i64, chi.eval(r as i64), "d={d}, r={r}");
            }
        }
    }

    #[test]
    fn l_int_values() {
        let cfg = PrecisionConfig::default();
        // Trivial character mod 1 reduces to ζ(m).
        let z2 = dirichlet_l_int(&QuadChar::trivial(), 2, &cfg).unwrap().re();
        assert!((z2 - PI * PI / 6.0).abs() < 1e-12);
        // L(χ_{-4}, 3) = π³/32 (classical).
        let l = dirichlet_l_int(&QuadChar::new(-4), 3, &cfg).unwrap().re();
        assert!((l - PI.powi(3) / 32.0).abs() < 1e-12, "{l}");
        // Termwise domination: |L(χ, 2)| ≤ ζ(2).
        for &d in &[-3i64, -8, -20, 5, 12] {
            let l = dirichlet_l_int(&QuadChar::new(d), 2, &cfg).unwrap().re();
            assert!(l.abs() <= PI * PI / 6.0 + 1e-12, "d = {d}");
        }
    }

    #[test]
    fn l_int_against_direct_partial_sums() {
        let cfg = PrecisionConfig::default();
        for &(d, m) in &[(-4i64, 2u32), (-3, 2), (-20, 3), (-7, 4)] {
            let chi = QuadChar::new(d);
            let mut sum = 0.0f64;
            let n = 200_000i64;
            for a in 1..=n {
                sum += chi.eval(a) as f64 / (a as f64).powi(m as i32);
            }
            // Integral tail bound from the spec: |tail| ≤ ∫_N^∞ t^{-m} dt.
            let tail = (n as f64).powi(1 - m as i32) / (m as f64 - 1.0);
            let fast = dirichlet_l_int(&chi, m, &cfg).unwrap().re();
            assert!(
                (fast - sum).abs() <= tail + 1e-10,
                "d = {d}, m = {m}: {fast} vs {sum} ± {tail}"
            );
        }
    }

    #[test]
    fn t_n_examples() {
        assert_eq!(r_n_and_t_n(7).unwrap(), (1, Rational::new(1, 1)));
        assert_eq!(r_n_and_t_n(8).unwrap(), (1, Rational::new(1, 1)));
        // n = 9: r = 3, χ_{-9} = χ_{-4}, χ_{-4}(3) = -1:
        // T₉ = (σ₁(3) + (-1)(-1)σ₁(1))/3 = (4+1)/3.
        assert_eq!(r_n_and_t_n(9).unwrap(), (3, Rational::new(5, 3)));
    }
}

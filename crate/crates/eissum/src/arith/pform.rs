//! Exact arithmetic factors for the weight 2 − k/2 Eisenstein-type family:
//! the twisted divisor sum T_{n,k} (a rational number) and the 2-adic factor
//! A_k(n) (a finite complex character sum).

use super::kronecker::kronecker_symbol;
use super::multiplicative::{odd_divisors, moebius, ord2, squarefree_decomposition};
use super::Rational;
use crate::error::Error;
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// χ_n(a) = ((−1)^{(k+1)/2} 4t / a) where n = t·m², t squarefree (signed).
fn chi_n(k: u32, t: i64, a: i64) -> i64 {
    let sign = if (k + 1) / 2 % 2 == 0 { 1 } else { -1 };
    kronecker_symbol(sign * 4 * t, a)
}

/// T_{n,k} = Σ_{odd a,b>0, ab|m} μ(a) χ_n(a) a^{(1−k)/2} b^{2−k}, exact.
pub fn t_nk(k: u32, n: i64) -> Result<Rational> {
    check_params(k, n)?;
    let (t, m) = squarefree_decomposition(n);
    let mut acc = Rational::new(0, 1);
    for a in odd_divisors(m) {
        let mu = moebius(a);
        if mu == 0 {
            continue;
        }
        let c = chi_n(k, t, a as i64);
        if c == 0 {
            continue;
        }
        // a^{(1-k)/2} with (k-1)/2 a positive integer: an exact reciprocal.
        let a_pow = (a as i64).pow((k - 1) / 2);
        let a_factor = Rational::new(mu * c, a_pow);
        for b in odd_divisors(m / a) {
            let b_pow = (b as i64).pow(k - 2);
            acc += a_factor * Rational::new(1, b_pow);
        }
    }
    Ok(acc)
}

/// The Gauss-type sum S_ν(j, n) = Σ_{ℓ=1}^{2^j} ((−1)^ν 2^j / ℓ) e(nℓ/2^j).
pub fn s_nu(nu: u32, j: u32, n: i64) -> Complex64 {
    let q = 1i64 << j;
    let top = if nu % 2 == 1 { -q } else { q };
    let mut acc = Complex64::new(0.0, 0.0);
    for ell in 1..=q {
        let c = kronecker_symbol(top, ell);
        if c == 0 {
            continue;
        }
        // e^{2πi nℓ/2^j}; reduce the phase mod 2^j before going to floats.
        let phase = TAU * (n * ell).rem_euclid(q) as f64 / q as f64;
        acc += c as f64 * Complex64::new(phase.cos(), phase.sin());
    }
    acc
}

/// A_k(n) = (1 + i^{−k})/2^k + Σ_{j≥2} Σ_{ν=1,2} (1 + (−1)^ν i^{−k}) 2^{−kj/2} S_ν(j,n).
/// The j-sum is finite: S_ν(j, n) vanishes once j > ord₂(n) + 3.
pub fn a_k(k: u32, n: i64) -> Result<Complex64> {
    check_params(k, n)?;
    // i^{-k} for odd k cycles through ±i.
    let i_mk = match k % 4 {
        1 => Complex64::new(0.0, -1.0),
        3 => Complex64::new(0.0, 1.0),
        _ => unreachable!(),
    };
    let mut acc = (1.0 + i_mk) / 2f64.powi(k as i32);
    let j_max = ord2(n) + 3;
    for j in 2..=j_max {
        let w = 2f64.powf(-(k as f64) * j as f64 / 2.0);
        for nu in 1..=2u32 {
            let sign = if nu % 2 == 1 { -1.0 } else { 1.0 };
            acc += (1.0 + sign * i_mk) * w * s_nu(nu, j, n);
        }
    }
    Ok(acc)
}

/// Both exact factors at once, as used by the coefficient formulas.
pub fn p_form_arith(k: u32, n: i64) -> Result<(Rational, Complex64)> {
    Ok((t_nk(k, n)?, a_k(k, n)?))
}

fn check_params(k: u32, n: i64) -> Result<()> {
    if k % 2 == 0 || k < 5 {
        return Err(Error::InvalidFormParameter(format!(
            "k must be an odd integer >= 5, got {k}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidFormParameter("n must be nonzero".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_nk_is_one_for_squarefree() {
        for &n in &[1i64, 2, 3, 5, 6, 7, 10, -1, -2, -5, -11, 2310] {
            assert_eq!(t_nk(5, n).unwrap(), Rational::new(1, 1), "n = {n}");
            assert_eq!(t_nk(7, n).unwrap(), Rational::new(1, 1), "n = {n}");
        }
        // 8 = 2·2²: odd square part is 1, so still a single (a,b) = (1,1) term.
        assert_eq!(t_nk(5, 8).unwrap(), Rational::new(1, 1));
    }

    #[test]
    fn t_nk_direct_example() {
        // n = 9 = 1·3², k = 5: terms (a,b) ∈ {(1,1),(1,3),(3,1)}:
        // 1 + 3^{-3} + μ(3)χ₉(3)·3^{-2} with χ₉(3) = (-4/3) = -1.
        let expect = Rational::new(1, 1) + Rational::new(1, 27) + Rational::new(1, 9);
        assert_eq!(t_nk(5, 9).unwrap(), expect);
    }

    #[test]
    fn parameter_guards() {
        assert!(t_nk(4, 3).is_err());
        assert!(t_nk(3, 3).is_err());
        assert!(a_k(5, 0).is_err());
    }

    #[test]
    fn s_nu_trivially_bounded() {
        for j in 2..=6u32 {
            for nu in 1..=2u32 {
                for n in 1..=64i64 {
                    let s = s_nu(nu, j, n);
                    assert!(s.norm() <= 2f64.powi(j as i32) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn s_nu_vanishes_beyond_cutoff() {
        for n in 1..=32i64 {
            let j = ord2(n) + 4;
            for nu in 1..=2u32 {
                assert!(s_nu(nu, j, n).norm() < 1e-9, "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn a5_respects_paper_bound() {
        for n in 1..=512i64 {
            let a = a_k(5, n).unwrap();
            let mut bound = 1.0;
            for j in 2..=(ord2(n) + 2) {
                bound += 4.0 * 2f64.powf((1.0 - 2.5) * j as f64);
            }
            assert!(a.norm() <= bound, "n = {n}: |A| = {} > {bound}", a.norm());
        }
    }
}

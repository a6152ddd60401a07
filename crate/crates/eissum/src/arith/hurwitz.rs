//! Hurwitz class numbers and ordinary class numbers by reduced-form
//! enumeration, plus the exact Hurwitz–Kronecker recurrence check.

use super::cache::{ArithCache, GLOBAL};
use super::multiplicative::lambda1;
use super::Rational;
use crate::error::Error;
use crate::Result;

/// Hurwitz class number H(n) as an exact rational; the denominator always
/// divides 12.
///
/// Conventions: H(0) = -1/12; H(n) = 0 unless n ≡ 0, 3 (mod 4); otherwise
/// H(n) sums weights over reduced positive-definite forms (a, b, c) of
/// discriminant b² - 4ac = -n, i.e. |b| ≤ a ≤ c with b ≥ 0 whenever |b| = a
/// or a = c. Weights: 1/3 for the forms proportional to x²+xy+y²
/// (a = b = c), 1/2 for those proportional to x²+y² (a = c, b = 0), else 1.
pub fn hurwitz_h(n: u64) -> Rational {
    ArithCache::memo(&GLOBAL.hurwitz, n, || hurwitz_h_uncached(n))
}

fn hurwitz_h_uncached(n: u64) -> Rational {
    if n == 0 {
        return Rational::new(-1, 12);
    }
    match n % 4 {
        1 | 2 => return Rational::new(0, 1),
        _ => {}
    }
    let mut twelfths = 0i64; // accumulate in units of 1/12 (exact)
    let mut b = if n % 4 == 0 { 0u64 } else { 1u64 };
    while 3 * b * b <= n {
        let m = (b * b + n) / 4;
        let mut a = std::cmp::max(b, 1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                twelfths += if a == b && a == c {
                    4 // weight 1/3
                } else if b == 0 && a == c {
                    6 // weight 1/2
                } else if b == 0 || a == b || a == c {
                    12 // single reduced representative, weight 1
                } else {
                    24 // (a, ±b, c) both reduced, weight 1 each
                };
            }
            a += 1;
        }
        b += 2;
    }
    Rational::new(twelfths, 12)
}

/// Whether d is a fundamental discriminant (of a quadratic field).
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |m: i64| -> bool {
        let (t, sq) = super::multiplicative::squarefree_decomposition(m);
        sq == 1 && t == m
    };
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && squarefree(q)
        }
        _ => false,
    }
}

/// Class number h(d) for a negative fundamental discriminant, together with
/// the unit count w(d).
pub fn class_number(d: i64) -> Result<(u64, u64)> {
    if d >= 0 || !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let h = ArithCache::memo(&GLOBAL.class_number, d, || class_number_uncached(d));
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok((h, w))
}

fn class_number_uncached(d: i64) -> u64 {
    // Count reduced forms of discriminant d < 0, one per class (no
    // stabilizer weights here — this is the ordinary class number).
    let n = (-d) as u64;
    let mut count = 0u64;
    let mut b = if n % 4 == 0 { 0u64 } else { 1u64 };
    while 3 * b * b <= n {
        let m = (b * b + n) / 4;
        let mut a = std::cmp::max(b, 1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                count += if b == 0 || a == b || a == c { 1 } else { 2 };
            }
            a += 1;
        }
        b += 2;
    }
    count
}

/// Exact residual of the Hurwitz–Kronecker class number relation
/// Σ_{r² ≤ 4n} H(4n - r²) + λ₁(n) - 2σ₁(n); zero for every n ≥ 1.
pub fn hurwitz_kronecker_check(n: u64) -> Rational {
    assert!(n >= 1);
    let mut sum = hurwitz_h(4 * n); // r = 0 term
    let mut r = 1u64;
    while r * r <= 4 * n {
        sum += hurwitz_h(4 * n - r * r) * Rational::new(2, 1); // ±r
        r += 1;
    }
    sum + Rational::from_integer(lambda1(n) as i64)
        - Rational::from_integer(2 * super::multiplicative::sigma_k(n, 1) as i64)
}

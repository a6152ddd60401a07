//! Elementary multiplicative functions by trial-division factorization.
//!
//! Everything here runs at "desk scale" (arguments up to ~10⁷), where trial
//! division is instantaneous; no advanced factoring is warranted.

/// Prime factorization of n ≥ 1 as (prime, exponent) pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of n, unsorted order not guaranteed.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out
}

/// Odd divisors of n.
pub fn odd_divisors(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|d| d % 2 == 1).collect()
}

/// σ_k(n) = Σ_{d|n} d^k.
pub fn sigma_k(n: u64, k: u32) -> u64 {
    divisors(n).iter().map(|d| d.pow(k)).sum()
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// λ₁(n) = Σ_{d|n} min(d, n/d).
pub fn lambda1(n: u64) -> u64 {
    divisors(n).iter().map(|&d| d.min(n / d)).sum()
}

/// 2-adic valuation of n ≠ 0.
pub fn ord2(n: i64) -> u32 {
    n.unsigned_abs().trailing_zeros()
}

/// Decompose n = t·m² with t squarefree (t carries the sign of n), m ≥ 1.
pub fn squarefree_decomposition(n: i64) -> (i64, u64) {
    assert!(n != 0, "squarefree decomposition requires n != 0");
    let mut t = if n < 0 { -1i64 } else { 1i64 };
    let mut m = 1u64;
    for (p, e) in factorize(n.unsigned_abs()) {
        if e % 2 == 1 {
            t *= p as i64;
        }
        m *= p.pow(e / 2);
    }
    (t, m)
}

/// Largest odd r with r² | n.
pub fn largest_odd_square_root(n: u64) -> u64 {
    let (_, m) = squarefree_decomposition(n as i64);
    let mut m = m;
    while m % 2 == 0 {
        m /= 2;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_and_lambda() {
        assert_eq!(sigma_k(6, 1), 12);
        assert_eq!(sigma_k(1, 1), 1);
        assert_eq!(sigma_k(12, 0), 6);
        // λ₁(6) = min(1,6)+min(2,3)+min(3,2)+min(6,1) = 1+2+2+1 = 6.
        assert_eq!(lambda1(6), 6);
        assert_eq!(lambda1(1), 1);
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(1), 1);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition(12), (3, 2));
        assert_eq!(squarefree_decomposition(-9), (-1, 3));
        assert_eq!(squarefree_decomposition(7), (7, 1));
        assert_eq!(squarefree_decomposition(-48), (-3, 4));
    }

    #[test]
    fn odd_square_roots() {
        assert_eq!(largest_odd_square_root(8), 1);
        assert_eq!(largest_odd_square_root(9), 3);
        assert_eq!(largest_odd_square_root(144), 3);
        assert_eq!(largest_odd_square_root(225), 15);
    }

    #[test]
    fn divisor_count_consistency() {
        for n in 1..=200u64 {
            let mut ds = divisors(n);
            ds.sort_unstable();
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(ds, brute, "n = {n}");
        }
    }
}

//! Kronecker symbol (a/n), the full extension of the Jacobi symbol.

/// Kronecker symbol (a/n) for arbitrary integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i64;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Factor out powers of two from the bottom; (a/2) is 0 for even a,
    // +1 for a ≡ ±1 (mod 8), -1 for a ≡ ±3 (mod 8).
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let a8 = a.rem_euclid(8);
        let sym2 = if a8 == 1 || a8 == 7 { 1 } else { -1 };
        while n % 2 == 0 {
            n /= 2;
            result *= sym2;
        }
    }
    // Jacobi symbol for odd positive n by quadratic reciprocity.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let n8 = n % 8;
            if n8 == 3 || n8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        assert_eq!(kronecker_symbol(-4, 3), -1);
        assert_eq!(kronecker_symbol(12, 4), 0);
        for a in -20..20 {
            assert_eq!(kronecker_symbol(a, 1), 1, "a = {a}");
        }
        // (2/n) table: n ≡ ±1 mod 8 → 1, n ≡ ±3 mod 8 → -1.
        assert_eq!(kronecker_symbol(2, 7), 1);
        assert_eq!(kronecker_symbol(2, 3), -1);
        assert_eq!(kronecker_symbol(2, 5), -1);
        assert_eq!(kronecker_symbol(2, 17), 1);
    }

    #[test]
    fn matches_legendre_for_odd_primes() {
        // Brute-force Legendre symbol via explicit squares mod p.
        for &p in &[3i64, 5, 7, 11, 13, 23, 101] {
            let squares: std::collections::HashSet<i64> =
                (1..p).map(|x| (x * x) % p).collect();
            for a in 0..p {
                let expect = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker_symbol(a, p), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn multiplicative_in_top() {
        for n in [-15i64, -8, 2, 9, 12, 21, 40] {
            for a in -12i64..=12 {
                for b in -12i64..=12 {
                    assert_eq!(
                        kronecker_symbol(a * b, n),
                        kronecker_symbol(a, n) * kronecker_symbol(b, n),
                        "a={a}, b={b}, n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn periodic_for_fundamental_discriminants() {
        for &d in &[-3i64, -4, -7, -8, -20, 5, 8, 13] {
            let q = d.abs();
            for r in 1..=3 * q {
                assert_eq!(
                    kronecker_symbol(d, r),
                    kronecker_symbol(d, r + q),
                    "d={d}, r={r}"
                );
            }
        }
    }
}

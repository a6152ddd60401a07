//! Minimal double-double arithmetic (an unevaluated sum of two f64).
//!
//! Used where a single alternating series suffers catastrophic cancellation
//! in f64 — chiefly the Bessel power series at moderate argument, where the
//! largest term exceeds the result by many orders of magnitude. Only the
//! handful of operations needed there are provided. Algorithms are the
//! classical error-free transformations of Dekker and Knuth, with the
//! product splitting done by FMA.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Knuth two-sum: a + b = s + e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Dekker fast two-sum, valid when |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// a * b = p + e exactly (FMA-based).
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, x);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let p2 = p2 + self.lo * x;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Division by an f64, one Newton-style correction step.
    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        // Residual r = self - q1 * x, computed exactly.
        let (p, e) = two_prod(q1, x);
        let r = (self.hi - p) - e + self.lo;
        let q2 = r / x;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_many_small_terms_keeps_extended_precision() {
        // 10^7 additions of 0.1 in plain f64 drift by ~1e-9; Dd stays exact
        // to well below f64 epsilon of the result.
        let mut acc = Dd::ZERO;
        for _ in 0..10_000_000 {
            acc = acc.add_f64(0.1);
        }
        assert!((acc.to_f64() - 1.0e6).abs() < 1e-9);
    }

    #[test]
    fn mul_and_div_roundtrip() {
        let a = Dd::from(std::f64::consts::PI);
        let b = a.mul_f64(7.0).div_f64(7.0);
        assert!((b.to_f64() - std::f64::consts::PI).abs() < 1e-16);
        assert!(b.lo.abs() < 1e-16);
    }

    #[test]
    fn cancellation_example() {
        // (1 + 1e-17) - 1 is lost in f64 but representable in Dd.
        let x = Dd::from(1.0).add_f64(1e-17).add_f64(-1.0);
        assert!((x.to_f64() - 1e-17).abs() < 1e-25);
    }
}

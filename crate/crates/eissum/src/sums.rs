//! Compensated (Neumaier) summation for f64 and complex accumulators.
//!
//! All series and reductions in the crate go through these accumulators so
//! results are deterministic for a fixed summation order and rounding error
//! stays at one ulp of the exact sum rather than growing with term count.

use num_complex::Complex64;

/// Neumaier-compensated f64 accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Component-wise compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanC {
    re: Kahan,
    im: Kahan,
}

impl KahanC {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sum a slice in index order with compensation. Deterministic regardless of
/// how the slice was produced (e.g. filled by a parallel map).
pub fn sum_ordered(values: &[Complex64]) -> Complex64 {
    let mut acc = KahanC::new();
    for &v in values {
        acc.add(v);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_handles_magnitude_jumps() {
        // Classic Neumaier test: naive and plain-Kahan summation both fail.
        let mut k = Kahan::new();
        for &v in &[1.0, 1e100, 1.0, -1e100] {
            k.add(v);
        }
        assert_eq!(k.value(), 2.0);
    }

    #[test]
    fn ordered_sum_matches_sequential() {
        let xs: Vec<Complex64> = (1..=1000)
            .map(|n| Complex64::new(1.0 / n as f64, (-1.0f64).powi(n) / n as f64))
            .collect();
        let a = sum_ordered(&xs);
        let mut acc = KahanC::new();
        for &x in &xs {
            acc.add(x);
        }
        assert_eq!(a, acc.value());
    }
}

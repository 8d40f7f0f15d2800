//! Floating-point helpers shared by the analytic modules.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if libm::fabs(self.sum) >= libm::fabs(value) {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sums terms in order of decreasing magnitude with compensation.
pub fn sum_descending(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| libm::fabs(*b).total_cmp(&libm::fabs(*a)));
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

/// `ln Σ exp(v)`, ignoring `-inf` entries. Returns `-inf` for an empty or
/// all-zero sum.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let mut acc = CompensatedSum::new();
    for &v in values {
        if v != f64::NEG_INFINITY {
            acc.add(libm::exp(v - max));
        }
    }
    max + libm::log(acc.value())
}

/// `ln(n!)`, exact summation for small `n`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 256 {
        let mut acc = CompensatedSum::new();
        for k in 2..=n {
            acc.add(libm::log(k as f64));
        }
        return acc.value();
    }
    libm::lgamma(n as f64 + 1.0)
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `base^exp` in log space where `0 · ln 0` is taken as `0`.
pub fn ln_pow(ln_base: f64, exp: u64) -> f64 {
    if exp == 0 {
        0.0
    } else {
        exp as f64 * ln_base
    }
}

/// Real-exponent version of [`ln_pow`].
pub fn ln_pow_f(ln_base: f64, exp: f64) -> f64 {
    if exp == 0.0 {
        0.0
    } else {
        exp * ln_base
    }
}

/// Natural logarithm of an arbitrary-precision integer; `-inf` for zero.
pub fn ln_biguint(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        if let Some(v) = value.to_f64() {
            if v.is_finite() {
                return libm::log(v);
            }
        }
    }
    let shift = bits - 64;
    let top = (value >> shift).to_u64().unwrap_or(u64::MAX);
    libm::log(top as f64) + shift as f64 * core::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut terms = vec![1.0];
        terms.extend(core::iter::repeat_n(1e-16, 10_000));
        assert!((sum_descending(terms) - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn log_sum_exp_handles_zeros() {
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        let v = log_sum_exp(&[f64::NEG_INFINITY, 0.0, 0.0]);
        assert!((v - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn ln_factorial_matches_product() {
        assert!((ln_factorial(10) - 3_628_800f64.ln()).abs() < 1e-12);
        let big = ln_factorial(300);
        let sum: f64 = (2..=300).map(|k| (k as f64).ln()).sum();
        assert!((big - sum).abs() / sum < 1e-12);
    }

    #[test]
    fn ln_biguint_large() {
        let v = BigUint::from(3u32).pow(5000);
        assert!((ln_biguint(&v) - 5000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::from(0u32)), f64::NEG_INFINITY);
    }
}

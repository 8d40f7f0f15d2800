//! Critical starting fitness, minimal-path formulas and the averaged
//! expectation.

use alloc::vec::Vec;

use crate::bounds::{eval_bounds, ln_upper_derivative};
use crate::numeric::{self, ln_binomial};
use crate::{Error, Result};

/// Root of `sinh(1−x)^α cosh(1−x)^{1−α} = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub alpha: f64,
    pub x_star: f64,
    /// `α ln sinh(1−x*) + (1−α) ln cosh(1−x*)`.
    pub residual: f64,
    /// Set for `α = 0`, where the root is the limit `x* = 1`.
    pub degenerate: bool,
}

fn critical_fn(alpha: f64, x: f64) -> f64 {
    let big_x = 1.0 - x;
    alpha * libm::log(libm::sinh(big_x)) + (1.0 - alpha) * libm::log(libm::cosh(big_x))
}

/// Bisection to a bracket of width `1e−14`, then one secant step.
pub fn critical_x(alpha: f64) -> Result<CriticalPoint> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if alpha == 0.0 {
        return Ok(CriticalPoint {
            alpha,
            x_star: 1.0,
            residual: 0.0,
            degenerate: true,
        });
    }
    // f is +∞-ish at x = 0 only if sinh(1) > 1; check both ends explicitly
    let (mut lo, mut hi) = (0.0f64, 1.0f64 - 1e-300);
    let (mut f_lo, mut f_hi) = (critical_fn(alpha, lo), critical_fn(alpha, hi));
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::InvalidArgument("critical equation is not bracketed"));
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        let f_mid = critical_fn(alpha, mid);
        if f_mid > 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    let x_star = if (lo..=hi).contains(&secant) { secant } else { 0.5 * (lo + hi) };
    Ok(CriticalPoint {
        alpha,
        x_star,
        residual: critical_fn(alpha, x_star),
        degenerate: false,
    })
}

pub fn critical_curve(alphas: &[f64]) -> Result<Vec<CriticalPoint>> {
    alphas.iter().map(|&a| critical_x(a)).collect()
}

/// `E^x(Θ̃) = L (1−x)^{L−1}`, the expected number of open shortest paths.
pub fn minimal_path_expectation(dim: u32, x: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::InvalidArgument("L must be at least 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::StartFitnessOutOfRange(x));
    }
    Ok(f64::from(dim) * libm::pow(1.0 - x, f64::from(dim - 1)))
}

/// Unconditioned `E(Θ̃) = ∫_0^1 L (1−x)^{L−1} dx`.
pub fn minimal_path_expectation_unconditioned(dim: u32) -> Result<f64> {
    if dim == 0 {
        return Err(Error::InvalidArgument("L must be at least 1"));
    }
    Ok(1.0)
}

/// `x_c(L) = 1 − exp(−ln L / (L−1))`, where `L (1−x)^{L−1}` crosses 1.
pub fn x_c(dim: u32) -> Result<f64> {
    if dim < 2 {
        return Err(Error::InvalidArgument("x_c(L) needs L ≥ 2"));
    }
    let l = f64::from(dim);
    Ok(-libm::expm1(-libm::log(l) / (l - 1.0)))
}

/// `Σ_H 2^{−L} C(L,H) G'_{L,H}(1−x)` next to its closed form `L (e^{1−x}/2)^L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedExpectation {
    pub exact_sum: f64,
    pub closed_form: f64,
    pub ln_exact_sum: f64,
    pub ln_closed_form: f64,
}

pub fn averaged_expectation(dim: u32, x: f64) -> Result<AveragedExpectation> {
    if dim == 0 {
        return Err(Error::InvalidArgument("L must be at least 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::StartFitnessOutOfRange(x));
    }
    let l = f64::from(dim);
    let big_x = 1.0 - x;
    let ln2 = core::f64::consts::LN_2;
    let terms: Vec<f64> = (0..=dim)
        .map(|h| {
            let g = if big_x == 0.0 {
                // G'_{L,H}(0) is 1 for H = 1 and 0 otherwise
                if h == 1 {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                ln_upper_derivative(dim, h, big_x)
            };
            ln_binomial(u64::from(dim), u64::from(h)) - l * ln2 + g
        })
        .collect();
    let ln_exact_sum = numeric::log_sum_exp(&terms);
    let ln_closed_form = libm::log(l) + l * (big_x - ln2);
    Ok(AveragedExpectation {
        exact_sum: libm::exp(ln_exact_sum),
        closed_form: libm::exp(ln_closed_form),
        ln_exact_sum,
        ln_closed_form,
    })
}

/// L-th roots of the bounds next to the limit `sinh^α cosh^{1−α}(1−x)`,
/// `α = H/L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDiagnostic {
    pub dim: u32,
    pub hamming: u32,
    pub x: f64,
    pub lower_root: f64,
    pub upper_root: f64,
    pub limit: f64,
}

pub fn limit_diagnostic(dim: u32, hamming: u32, x: f64) -> Result<LimitDiagnostic> {
    let b = eval_bounds(dim, hamming, x)?;
    let l = f64::from(dim);
    let alpha = f64::from(hamming) / l;
    let big_x = 1.0 - x;
    let limit = libm::exp(
        numeric::ln_pow_f(libm::log(libm::sinh(big_x)), alpha)
            + numeric::ln_pow_f(libm::log(libm::cosh(big_x)), 1.0 - alpha),
    );
    Ok(LimitDiagnostic {
        dim,
        hamming,
        x,
        lower_root: libm::exp(b.log_lower / l),
        upper_root: libm::exp(b.log_upper / l),
        limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_critical_points() {
        let one = critical_x(1.0).unwrap();
        let expected = 1.0 - (1.0 + 2f64.sqrt()).ln();
        assert!((one.x_star - expected).abs() < 1e-12);
        assert!(one.residual.abs() <= 1e-12);
        assert!((one.x_star - 0.11863).abs() < 1e-5);
        let half = critical_x(0.5).unwrap();
        assert!((half.x_star - (1.0 - 0.5 * (2.0 + 5f64.sqrt()).ln())).abs() < 1e-12);
        assert!((half.x_star - 0.278182).abs() < 1e-6);
        let mid = critical_x(0.75).unwrap();
        assert!(mid.residual.abs() <= 1e-12);
        assert!(one.x_star < mid.x_star && mid.x_star < half.x_star);
    }

    #[test]
    fn alpha_edge_cases() {
        let zero = critical_x(0.0).unwrap();
        assert!(zero.degenerate);
        assert_eq!(zero.x_star, 1.0);
        assert!(critical_x(-0.1).is_err());
        assert!(critical_x(1.1).is_err());
        assert!(critical_x(f64::NAN).is_err());
        assert!(critical_x(1e-6).unwrap().x_star > 0.99);
    }

    #[test]
    fn curve_is_strictly_decreasing() {
        let grid: Vec<f64> = (1..=100).map(|i| f64::from(i) / 100.0).collect();
        let curve = critical_curve(&grid).unwrap();
        for w in curve.windows(2) {
            assert!(w[1].x_star < w[0].x_star);
        }
        for p in &curve {
            assert!(p.residual.abs() <= 1e-12);
        }
    }

    #[test]
    fn minimal_path_formulas() {
        assert_eq!(minimal_path_expectation(7, 0.0).unwrap(), 7.0);
        assert!((minimal_path_expectation(10, 0.1).unwrap() - 3.874_204_89).abs() < 1e-8);
        for l in [2u32, 10, 100] {
            let xc = x_c(l).unwrap();
            assert!((minimal_path_expectation(l, xc).unwrap() - 1.0).abs() < 1e-12);
            assert!(minimal_path_expectation(l, xc - 1e-3).unwrap() > 1.0);
            assert!(minimal_path_expectation(l, xc + 1e-3).unwrap() < 1.0);
        }
        let l = 1e6;
        let ratio = x_c(1_000_000).unwrap() * l / l.ln();
        assert!((ratio - 1.0).abs() < 0.02);
        assert!(x_c(1).is_err());
        assert_eq!(minimal_path_expectation_unconditioned(5).unwrap(), 1.0);
    }

    #[test]
    fn averaged_identity() {
        for l in [1u32, 2, 5, 30, 100] {
            for x in [0.0, 0.25, 0.3, 0.5, 0.75, 1.0] {
                let a = averaged_expectation(l, x).unwrap();
                let rel = ((a.ln_exact_sum - a.ln_closed_form).exp() - 1.0).abs();
                assert!(rel <= 1e-10, "L={l} x={x} rel={rel}");
            }
        }
        let a = averaged_expectation(6, 1.0).unwrap();
        assert!((a.exact_sum - 6.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn averaged_divergence_threshold() {
        let threshold = 1.0 - core::f64::consts::LN_2;
        assert!((threshold - 0.30685).abs() < 1e-5);
        let grows = |x: f64| {
            averaged_expectation(200, x).unwrap().ln_closed_form
                > averaged_expectation(100, x).unwrap().ln_closed_form
        };
        assert!(grows(threshold - 0.01));
        assert!(!grows(threshold + 0.01));
    }

    #[test]
    fn limit_examples() {
        let d = limit_diagnostic(400, 400, 0.5).unwrap();
        let s = 0.5f64.sinh();
        assert!((d.upper_root - s).abs() < 0.03 && (d.lower_root - s).abs() < 0.03);
        assert!((d.limit - s).abs() < 1e-15);
        let x1 = critical_x(1.0).unwrap().x_star;
        assert!((limit_diagnostic(50, 50, x1).unwrap().limit - 1.0).abs() < 1e-12);
        let xh = critical_x(0.5).unwrap().x_star;
        let d = limit_diagnostic(400, 200, xh).unwrap();
        assert!((d.limit - 1.0).abs() < 1e-12);
        assert!(d.lower_root <= d.upper_root);
        assert!((d.lower_root - 1.0).abs() < 0.05 && (d.upper_root - 1.0).abs() < 0.05);
    }
}

//! Upper and lower recurrences sandwiching `a_{L,H,p}`, their generating
//! functions, and the resulting bounds on the expected number of open paths.
//!
//! Upper: `M_{L,H,p} = (H+2p)! [X^{H+2p}] sinh(X)^H cosh(X)^{L−H}`.
//! Lower: `m̃_{L,H,p} = (H+2p)! [X^{H+2p}] Π_{l≤H} sinh_l(X) · cosh_H(X)^{L−H}`
//! where `sinh_l` and `cosh_H` are damped truncations of the Taylor series.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumeration::{binomial, CountKind, CountTable};
use crate::numeric::{self, CompensatedSum};
use crate::{Error, Result};

fn check_dims(dim: u32, hamming: u32) -> Result<()> {
    if hamming == 0 {
        return Err(Error::ZeroHamming);
    }
    if hamming > dim {
        return Err(Error::HammingOutOfRange { hamming, dim });
    }
    Ok(())
}

/// `M_{L,H,p}` for `p ≤ max_p`.
pub fn majo_table(dim: u32, hamming: u32, max_p: u32) -> Result<CountTable> {
    check_dims(dim, hamming)?;
    let max_p = max_p as usize;
    let mut m = vec![BigUint::one(); max_p + 1];
    for l in 1..u64::from(hamming) {
        // M_{l+1,p} = Σ_q C(l+1+2p, 2q+1) M_{l,p−q}
        m = (0..=max_p)
            .map(|p| {
                (0..=p).fold(BigUint::zero(), |acc, q| {
                    let n = l + 1 + 2 * p as u64;
                    acc + binomial(n, 2 * q as u64 + 1) * &m[p - q]
                })
            })
            .collect();
    }
    let h = u64::from(hamming);
    for _ in hamming..dim {
        // one more back direction: Σ_q C(H+2p, 2q) M_{p−q}
        m = (0..=max_p)
            .map(|p| {
                (0..=p).fold(BigUint::zero(), |acc, q| {
                    acc + binomial(h + 2 * p as u64, 2 * q as u64) * &m[p - q]
                })
            })
            .collect();
    }
    Ok(CountTable {
        dim,
        hamming,
        kind: CountKind::UpperM,
        counts: m,
    })
}

fn ratio_pow(num: i64, den: i64, exp: u64) -> BigRational {
    let base = BigRational::new(BigInt::from(num), BigInt::from(den));
    num_traits::pow(base, exp as usize)
}

/// `m̃_{L,H,p}` for `p ≤ max_p`, as exact rationals.
pub fn mino_tilde_table(dim: u32, hamming: u32, max_p: u32) -> Result<CountTable<BigRational>> {
    check_dims(dim, hamming)?;
    let max_p = max_p as usize;
    let mut m: Vec<BigRational> = (0..=max_p)
        .map(|p| if p == 0 { BigRational::one() } else { BigRational::zero() })
        .collect();
    for l in 1..i64::from(hamming) {
        // step l → l+1, damping [(l+1−2q)/(l+2)]^{2q} while 2q < l+1
        m = (0..=max_p)
            .map(|p| {
                let mut acc = BigRational::zero();
                for q in (0..=p as i64).take_while(|q| 2 * q < l + 1) {
                    let prev = &m[p - q as usize];
                    if prev.is_zero() {
                        continue;
                    }
                    let c = binomial((l + 1 + 2 * p as i64) as u64, (2 * q + 1) as u64);
                    acc += ratio_pow(l + 1 - 2 * q, l + 2, (2 * q) as u64)
                        * BigRational::from(BigInt::from(c))
                        * prev;
                }
                acc
            })
            .collect();
    }
    let h = i64::from(hamming);
    for _ in hamming..dim {
        // damping [(H+1−2q)/(H+1)]^{2q−1} while 2q < H+1
        m = (0..=max_p)
            .map(|p| {
                let mut acc = m[p].clone();
                for q in (1..=p as i64).take_while(|q| 2 * q < h + 1) {
                    let prev = &m[p - q as usize];
                    if prev.is_zero() {
                        continue;
                    }
                    let c = binomial((h + 2 * p as i64) as u64, (2 * q) as u64);
                    acc += ratio_pow(h + 1 - 2 * q, h + 1, (2 * q - 1) as u64)
                        * BigRational::from(BigInt::from(c))
                        * prev;
                }
                acc
            })
            .collect();
    }
    Ok(CountTable {
        dim,
        hamming,
        kind: CountKind::LowerMTilde,
        counts: m,
    })
}

/// Running product `X^n / n!` with a stopping rule shared by the series below.
const SERIES_EPS: f64 = 1e-18;

/// `sinh_l(X) = Σ_{2q<l} X^{2q+1}/(2q+1)! · ((l−2q)/(l+1))^{2q}`.
pub fn sinh_truncated(l: u32, x: f64) -> f64 {
    sinh_series(l, x).0
}

/// `sinh_l'(X)`.
pub fn sinh_truncated_deriv(l: u32, x: f64) -> f64 {
    sinh_series(l, x).1
}

/// `cosh_H(X) = Σ_{2q<H+1} X^{2q}/(2q)! · ((H+1−2q)/(H+1))^{2q−1}`.
pub fn cosh_truncated(h: u32, x: f64) -> f64 {
    cosh_series(h, x).0
}

/// `cosh_H'(X)`.
pub fn cosh_truncated_deriv(h: u32, x: f64) -> f64 {
    cosh_series(h, x).1
}

/// `(sinh_l(X), sinh_l'(X))`.
fn sinh_series(l: u32, x: f64) -> (f64, f64) {
    let lf = f64::from(l);
    let mut value = CompensatedSum::new();
    let mut deriv = CompensatedSum::new();
    // x^{2q}/(2q)!
    let mut even_term = 1.0;
    let mut q = 0u32;
    while 2 * q < l {
        let n = f64::from(2 * q);
        if q > 0 {
            even_term *= x * x / ((n - 1.0) * n);
        }
        let damp = libm::pow((lf - n) / (lf + 1.0), n);
        let d = even_term * damp;
        let v = d * x / (n + 1.0);
        deriv.add(d);
        value.add(v);
        if d <= SERIES_EPS * deriv.value() && q > 0 {
            break;
        }
        q += 1;
    }
    (value.value(), deriv.value())
}

/// `(cosh_H(X), cosh_H'(X))`.
fn cosh_series(h: u32, x: f64) -> (f64, f64) {
    let hf = f64::from(h);
    let mut value = CompensatedSum::new();
    let mut deriv = CompensatedSum::new();
    value.add(1.0);
    // x^{2q−1}/(2q−1)!
    let mut odd_term = x;
    let mut q = 1u32;
    while 2 * q < h + 1 {
        let n = f64::from(2 * q);
        if q > 1 {
            odd_term *= x * x / ((n - 2.0) * (n - 1.0));
        }
        let damp = libm::pow((hf + 1.0 - n) / (hf + 1.0), n - 1.0);
        let d = odd_term * damp;
        let v = d * x / n;
        deriv.add(d);
        value.add(v);
        if v <= SERIES_EPS * value.value() {
            break;
        }
        q += 1;
    }
    (value.value(), deriv.value())
}

/// Bounds on `E^x(Θ)` for one `(L, H, x)`, with the natural logs of both
/// sides (`-inf` for a zero bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub dim: u32,
    pub hamming: u32,
    pub x: f64,
    pub lower: f64,
    pub upper: f64,
    pub log_lower: f64,
    pub log_upper: f64,
}

/// `ln G'_{L,H}(X)` for `0 ≤ H ≤ L`, with
/// `G' = sinh^{H−1} cosh^{L−H−1} (H cosh² + (L−H) sinh²)`.
pub fn ln_upper_derivative(dim: u32, hamming: u32, big_x: f64) -> f64 {
    let (l, h) = (f64::from(dim), f64::from(hamming));
    let ln_sinh = libm::log(libm::sinh(big_x));
    let ln_cosh = libm::log(libm::cosh(big_x));
    if hamming == 0 {
        // L cosh^{L−1} sinh
        return libm::log(l) + numeric::ln_pow(ln_cosh, u64::from(dim - 1)) + ln_sinh;
    }
    if hamming == dim {
        // L sinh^{L−1} cosh
        return libm::log(l) + numeric::ln_pow(ln_sinh, u64::from(dim - 1)) + ln_cosh;
    }
    let mixed = numeric::log_sum_exp(&[
        libm::log(h) + 2.0 * ln_cosh,
        libm::log(l - h) + 2.0 * ln_sinh,
    ]);
    numeric::ln_pow(ln_sinh, u64::from(hamming - 1))
        + f64::from(dim - hamming - 1) * ln_cosh
        + mixed
}

/// `ln g_{L,H}(X)` and the log-derivative `g'/g`.
fn ln_lower_parts(dim: u32, hamming: u32, big_x: f64) -> (f64, f64) {
    let mut ln_g = CompensatedSum::new();
    let mut log_deriv = CompensatedSum::new();
    for l in 1..=hamming {
        let (s, ds) = sinh_series(l, big_x);
        ln_g.add(libm::log(s));
        log_deriv.add(ds / s);
    }
    if dim > hamming {
        let (c, dc) = cosh_series(hamming, big_x);
        let k = f64::from(dim - hamming);
        ln_g.add(k * libm::log(c));
        log_deriv.add(k * dc / c);
    }
    (ln_g.value(), log_deriv.value())
}

/// `g'_{L,H}(1−x) ≤ E^x(Θ) ≤ G'_{L,H}(1−x)`.
///
/// At `x = 1` both sides vanish unless `H = 1`, where the one-step path is
/// open with certainty and both bounds equal 1.
pub fn eval_bounds(dim: u32, hamming: u32, x: f64) -> Result<BoundPair> {
    check_dims(dim, hamming)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::StartFitnessOutOfRange(x));
    }
    let big_x = 1.0 - x;
    let (log_lower, log_upper) = if big_x == 0.0 {
        let v = if hamming == 1 { 0.0 } else { f64::NEG_INFINITY };
        (v, v)
    } else {
        let (ln_g, log_deriv) = ln_lower_parts(dim, hamming, big_x);
        (ln_g + libm::log(log_deriv), ln_upper_derivative(dim, hamming, big_x))
    };
    Ok(BoundPair {
        dim,
        hamming,
        x,
        lower: libm::exp(log_lower),
        upper: libm::exp(log_upper),
        log_lower,
        log_upper,
    })
}

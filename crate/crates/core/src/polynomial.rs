//! The `φ_L` polynomials counting the recursive path set by length, and the
//! resulting bounds on the total number `a_L` of self-avoiding corner paths.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::enumeration::binomial;
use crate::{Error, Result};

/// Dense polynomial with arbitrary-precision integer coefficients, lowest
/// degree first. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn monomial(coefficient: BigInt, degree: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        c[degree] = coefficient;
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Coefficient of `X^n`, zero past the degree.
    pub fn coefficient(&self, n: usize) -> BigInt {
        self.coefficients.get(n).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `P(X + X²)` by Horner's rule; multiplying by `X + X²` is a shifted
    /// add, done in place.
    pub fn compose_x_plus_x2(&self) -> IntegerPolynomial {
        let Some(deg) = self.degree() else {
            return Self::default();
        };
        let mut r: Vec<BigInt> = vec![BigInt::zero(); 2 * deg + 1];
        let mut top = 0usize;
        r[0] = self.coefficients[deg].clone();
        for c in self.coefficients[..deg].iter().rev() {
            // r ← r·(X + X²) + c, top grows by 2
            for j in (1..=top + 2).rev() {
                let mut v = core::mem::take(&mut r[j - 1]);
                if j >= 2 {
                    v += &r[j - 2];
                }
                r[j] = v;
            }
            r[0] = c.clone();
            top += 2;
        }
        Self::new(r)
    }

    /// Keeps only the terms whose degree has the parity of `parity`.
    pub fn parity_part(&self, parity: usize) -> IntegerPolynomial {
        let c = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == parity % 2 { c.clone() } else { BigInt::zero() })
            .collect();
        Self::new(c)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.sign()) {
                (true, Sign::Minus) => "-",
                (true, _) => "",
                (false, Sign::Minus) => " - ",
                (false, _) => " + ",
            };
            first = false;
            write!(f, "{sep}{}", c.abs())?;
            match i {
                0 => {}
                1 => write!(f, "*X")?,
                _ => write!(f, "*X^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Largest `L` accepted by [`phi_polynomial`] and [`al_bounds`].
pub const DEFAULT_PHI_CAP: u32 = 16;

/// `φ_L`, with `φ_1 = X` and
/// `φ_{L+1}(X) = (1+X)/2 · φ_L(X+X²) − (1−X)/2 · φ_L(X−X²)`.
pub fn phi_polynomial(dim: u32) -> Result<IntegerPolynomial> {
    phi_polynomial_capped(dim, DEFAULT_PHI_CAP)
}

pub fn phi_polynomial_capped(dim: u32, cap: u32) -> Result<IntegerPolynomial> {
    if dim == 0 {
        return Err(Error::InvalidArgument("φ_L needs L ≥ 1"));
    }
    if dim > cap {
        return Err(Error::CapExceeded {
            what: "phi dimension",
            value: u64::from(dim),
            cap: u64::from(cap),
        });
    }
    let mut phi = IntegerPolynomial::monomial(BigInt::one(), 1);
    for l in 1..dim as usize {
        // φ_L has the parity of L, so φ_L(X − X²) = (−1)^L φ_L(−(X + (−X)²))
        // and the two halves combine to the parity-(L+1) part of
        // (1 + X) φ_L(X + X²).
        let composed = phi.compose_x_plus_x2();
        let n = composed.coefficients.len();
        let mut next = vec![BigInt::zero(); n + 1];
        for i in ((l + 1) % 2..=n).step_by(2) {
            let mut v = BigInt::zero();
            if i < n {
                v += &composed.coefficients[i];
            }
            if i >= 1 {
                v += &composed.coefficients[i - 1];
            }
            next[i] = v;
        }
        phi = IntegerPolynomial::new(next);
    }
    Ok(phi)
}

/// Straight evaluation of the two-term recurrence, for cross-checking.
pub fn phi_polynomial_literal(dim: u32) -> Result<IntegerPolynomial> {
    if dim == 0 {
        return Err(Error::InvalidArgument("φ_L needs L ≥ 1"));
    }
    let mut phi = IntegerPolynomial::monomial(BigInt::one(), 1);
    for _ in 1..dim {
        let plus = phi.compose_x_plus_x2();
        // P(X − X²) = P(−Y) with Y = −X + X²: compose P(−·) with X + X² after X → −X
        let reflected = IntegerPolynomial::new(
            phi.coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        );
        let minus_at_neg = reflected.compose_x_plus_x2();
        // minus_at_neg(X) = φ(−(X + X²)); substitute X → −X to get φ(X − X²)
        let minus: Vec<BigInt> = minus_at_neg
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        let n = plus.coefficients.len().max(minus.len()) + 1;
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in plus.coefficients.iter().enumerate() {
            out[i] += c;
            out[i + 1] += c;
        }
        for (i, c) in minus.iter().enumerate() {
            out[i] -= c;
            out[i + 1] += c;
        }
        for c in &mut out {
            debug_assert!((&*c % 2u32).is_zero());
            *c /= 2;
        }
        phi = IntegerPolynomial::new(out);
    }
    Ok(phi)
}

/// `d_L`: `(2^{L+1} − 1)/3` for odd `L`, `(2^{L+1} − 2)/3` for even `L`.
pub fn degree_formula(dim: u32) -> u64 {
    let pow = 1u64 << (dim + 1);
    if dim % 2 == 1 {
        (pow - 1) / 3
    } else {
        (pow - 2) / 3
    }
}

/// Bounds on `a_L`, the number of self-avoiding paths between opposite
/// corners: `2^{d_{L−1}} ≤ a_L ≤ Σ_{p : L+2p ≤ 2^L} M_{L,p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlBounds {
    pub dim: u32,
    pub lower: BigUint,
    pub upper: BigUint,
}

/// The upper sum is evaluated from
/// `M_{L,p} = 2^{−L} Σ_j (−1)^j C(L,j) (L−2j)^{L+2p}`, summing the
/// geometric series in `p` for each `j`.
pub fn al_bounds(dim: u32) -> Result<AlBounds> {
    if dim == 0 {
        return Err(Error::InvalidArgument("a_L needs L ≥ 1"));
    }
    if dim > DEFAULT_PHI_CAP {
        return Err(Error::CapExceeded {
            what: "a_L bound dimension",
            value: u64::from(dim),
            cap: u64::from(DEFAULT_PHI_CAP),
        });
    }
    let lower = if dim == 1 {
        BigUint::one()
    } else {
        BigUint::one() << degree_formula(dim - 1)
    };
    let l = u64::from(dim);
    let last_p = ((1u64 << dim) - l) / 2;
    let mut total = BigInt::zero();
    for j in 0..=l {
        let r = l as i64 - 2 * j as i64;
        // Σ_{p=0}^{P} r^{L+2p}
        let series = match r.unsigned_abs() {
            0 => BigInt::zero(),
            1 => BigInt::from(r).pow(dim) * BigInt::from(last_p + 1),
            _ => {
                let r = BigInt::from(r);
                let r2 = &r * &r;
                let num = r.pow(dim) * (r2.pow((last_p + 1) as u32) - 1u32);
                num / (r2 - 1u32)
            }
        };
        let term = BigInt::from(binomial(l, j)) * series;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let upper = (total >> dim)
        .to_biguint()
        .ok_or(Error::InvalidArgument("negative a_L upper sum"))?;
    Ok(AlBounds { dim, lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::majo_table;
    use crate::enumeration::mset_counts;
    use alloc::string::ToString;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn small_phis() {
        assert_eq!(phi_polynomial(1).unwrap(), poly(&[0, 1]));
        assert_eq!(phi_polynomial(2).unwrap(), poly(&[0, 0, 2]));
        assert_eq!(phi_polynomial(3).unwrap(), poly(&[0, 0, 0, 6, 0, 2]));
        assert_eq!(phi_polynomial(3).unwrap().to_string(), "6*X^3 + 2*X^5");
        assert_eq!(
            phi_polynomial(4).unwrap(),
            poly(&[0, 0, 0, 0, 24, 0, 36, 0, 40, 0, 12])
        );
    }

    #[test]
    fn projection_matches_literal_recurrence() {
        for l in 1..=8 {
            assert_eq!(phi_polynomial(l).unwrap(), phi_polynomial_literal(l).unwrap(), "L={l}");
        }
    }

    #[test]
    fn composition_by_hand() {
        // (1 + 2Y + 3Y²)(Y = X + X²) = 1 + 2X + 5X² + 6X³ + 3X⁴
        assert_eq!(poly(&[1, 2, 3]).compose_x_plus_x2(), poly(&[1, 2, 5, 6, 3]));
        assert_eq!(poly(&[]).compose_x_plus_x2(), poly(&[]));
        assert_eq!(poly(&[7]).compose_x_plus_x2(), poly(&[7]));
    }

    #[test]
    fn matches_mset_counts() {
        for l in 1..=7u32 {
            let phi = phi_polynomial(l).unwrap();
            let m = mset_counts(l, l).unwrap();
            for (p, c) in m.counts.iter().enumerate() {
                assert_eq!(phi.coefficient(l as usize + 2 * p), BigInt::from(c.clone()));
            }
            assert_eq!(phi.degree().unwrap(), l as usize + 2 * (m.counts.len() - 1));
        }
    }

    #[test]
    fn degree_parity_and_shift_identity() {
        let mut prev: Option<IntegerPolynomial> = None;
        for l in 1..=11u32 {
            let phi = phi_polynomial(l).unwrap();
            assert_eq!(phi.degree().unwrap() as u64, degree_formula(l));
            assert!(phi.all_nonnegative());
            assert_eq!(phi.parity_part(l as usize), phi);
            if let Some(p) = &prev {
                assert_eq!(phi.eval(&BigInt::one()), p.eval(&BigInt::from(2)));
            }
            prev = Some(phi);
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_formula(1), 1);
        assert_eq!(degree_formula(2), 2);
        assert_eq!(degree_formula(4), 10);
        assert_eq!(degree_formula(5), 21);
    }

    #[test]
    fn caps() {
        assert!(matches!(phi_polynomial(17), Err(Error::CapExceeded { .. })));
        assert!(matches!(phi_polynomial_capped(9, 8), Err(Error::CapExceeded { .. })));
        assert!(phi_polynomial(0).is_err());
        assert!(al_bounds(0).is_err());
    }

    #[test]
    fn al_upper_matches_table_sum() {
        for l in 1..=7u32 {
            let last_p = ((1u32 << l) - l) / 2;
            let table = majo_table(l, l, last_p).unwrap();
            assert_eq!(al_bounds(l).unwrap().upper, table.total(), "L={l}");
        }
    }

    #[test]
    fn al_bounds_bracket_known_totals() {
        let known: [(u32, u64); 5] = [(1, 1), (2, 2), (3, 18), (4, 6432), (5, 18_651_552_840)];
        for (l, a) in known {
            let b = al_bounds(l).unwrap();
            assert!(b.lower <= BigUint::from(a) && BigUint::from(a) <= b.upper, "L={l}");
        }
        assert_eq!(al_bounds(5).unwrap().lower, BigUint::from(1024u32));
    }
}

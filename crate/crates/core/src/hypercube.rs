//! Genotypes on the `L`-hypercube and the label-string coding of walks.
//!
//! A walk from `σ0 = 00…0` is written as a string of direction labels
//! `1..=L`; each occurrence of a label toggles that bit. Labels are 1-based
//! at the API boundary and stored 0-based.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Largest supported dimension; bit arithmetic stays inside a `u64`.
pub const MAX_DIM: u32 = 62;

fn check_dim(dim: u32) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim, max: MAX_DIM });
    }
    Ok(())
}

fn mask(dim: u32) -> u64 {
    (1u64 << dim) - 1
}

/// A corner of the `L`-hypercube. Bit `i` holds the state of site `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genotype {
    bits: u64,
    dim: u32,
}

impl Genotype {
    pub fn new(bits: u64, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if bits & !mask(dim) != 0 {
            return Err(Error::BitsOutOfRange { bits, dim });
        }
        Ok(Self { bits, dim })
    }

    /// `σ0`, the all-wild genotype.
    pub fn zeros(dim: u32) -> Result<Self> {
        Self::new(0, dim)
    }

    /// `σ1`, the all-mutant genotype.
    pub fn ones(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { bits: mask(dim), dim })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn distance(self, other: Genotype) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    /// Toggles the site named by a 1-based label.
    pub fn toggled(self, label: u32) -> Result<Self> {
        if label == 0 || label > self.dim {
            return Err(Error::LabelOutOfRange { label, dim: self.dim });
        }
        Ok(Self {
            bits: self.bits ^ (1 << (label - 1)),
            dim: self.dim,
        })
    }
}

impl fmt::Display for Genotype {
    /// Site 1 first, as in the label coding.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A walk from `σ0` coded by the sequence of flipped sites.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathCode {
    steps: Vec<u8>,
    dim: u32,
}

impl PathCode {
    /// Builds a path from 1-based labels.
    pub fn from_labels(dim: u32, labels: &[u32]) -> Result<Self> {
        check_dim(dim)?;
        let mut steps = Vec::with_capacity(labels.len());
        for &label in labels {
            if label == 0 || label > dim {
                return Err(Error::LabelOutOfRange { label, dim });
            }
            steps.push((label - 1) as u8);
        }
        Ok(Self { steps, dim })
    }

    pub(crate) fn from_raw(dim: u32, steps: Vec<u8>) -> Self {
        debug_assert!(steps.iter().all(|&s| u32::from(s) < dim));
        Self { steps, dim }
    }

    /// Parses the textual form: a digit string such as `"1213212"` when
    /// `dim ≤ 9`, or comma-separated labels for any dimension.
    pub fn parse(text: &str, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        let text = text.trim();
        let mut labels = Vec::new();
        if text.contains(',') {
            for part in text.split(',') {
                let label = part
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::PathSyntax("label is not a number"))?;
                labels.push(label);
            }
        } else if !text.is_empty() {
            if dim > 9 {
                return Err(Error::PathSyntax("use comma-separated labels when L > 9"));
            }
            for c in text.chars() {
                let label = c.to_digit(10).ok_or(Error::PathSyntax("expected a digit"))?;
                labels.push(label);
            }
        }
        Self::from_labels(dim, &labels)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// 1-based labels.
    pub fn labels(&self) -> impl ExactSizeIterator<Item = u32> + '_ {
        self.steps.iter().map(|&s| u32::from(s) + 1)
    }

    /// Occurrence count of each label, indexed 0-based.
    pub fn label_counts(&self) -> Vec<u32> {
        let mut counts = alloc::vec![0u32; self.dim as usize];
        for &s in &self.steps {
            counts[s as usize] += 1;
        }
        counts
    }

    /// Genotypes visited from `σ0`, including `σ0` and the final one.
    pub fn states(&self) -> impl Iterator<Item = u64> + '_ {
        core::iter::once(0).chain(self.steps.iter().scan(0u64, |cur, &s| {
            *cur ^= 1 << s;
            Some(*cur)
        }))
    }
}

impl fmt::Display for PathCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::with_capacity(self.steps.len() * 2);
        for (i, label) in self.labels().enumerate() {
            if self.dim > 9 && i > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("{label}"));
        }
        f.write_str(&out)
    }
}

/// A fittest site with bits `1..=H` set and the rest clear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EndpointSpec {
    dim: u32,
    hamming: u32,
}

impl EndpointSpec {
    pub fn new(dim: u32, hamming: u32) -> Result<Self> {
        check_dim(dim)?;
        if hamming > dim {
            return Err(Error::HammingOutOfRange { hamming, dim });
        }
        Ok(Self { dim, hamming })
    }

    /// The opposite corner, `H = L`.
    pub fn corner(dim: u32) -> Result<Self> {
        Self::new(dim, dim)
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    pub fn hamming(self) -> u32 {
        self.hamming
    }

    pub fn endpoint(self) -> Genotype {
        Genotype {
            bits: mask(self.hamming),
            dim: self.dim,
        }
    }
}

impl FromStr for EndpointSpec {
    type Err = Error;

    /// `"L"` or `"L:H"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = Error::InvalidArgument("expected L or L:H");
        match s.split_once(':') {
            Some((l, h)) => Self::new(
                l.trim().parse().map_err(|_| bad.clone())?,
                h.trim().parse().map_err(|_| bad)?,
            ),
            None => Self::corner(s.trim().parse().map_err(|_| bad)?),
        }
    }
}

fn same_dim(expected: u32, found: u32) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Toggles, in order, the bit named by each step.
pub fn apply_path(start: Genotype, path: &PathCode) -> Result<Genotype> {
    same_dim(start.dim, path.dim)?;
    let bits = path.steps.iter().fold(start.bits, |b, &s| b ^ (1 << s));
    Ok(Genotype { bits, dim: start.dim })
}

/// Labels `1..=H` occur an odd number of times, the others an even number.
pub fn endpoint_valid(path: &PathCode, spec: EndpointSpec) -> Result<bool> {
    same_dim(spec.dim, path.dim)?;
    let parity = path.steps.iter().fold(0u64, |b, &s| b ^ (1 << s));
    Ok(parity == spec.endpoint().bits)
}

/// True iff no genotype repeats along the walk from `σ0`, checked by
/// recording every visited state.
pub fn is_self_avoiding(path: &PathCode) -> bool {
    let mut seen: Vec<u64> = path.states().collect();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Same predicate via the substring characterisation: a walk revisits a
/// site iff some non-empty contiguous substring has every label an even
/// number of times, i.e. two prefix parity masks coincide.
pub fn is_self_avoiding_by_substrings(path: &PathCode) -> bool {
    let mut prefix = Vec::with_capacity(path.len() + 1);
    prefix.push(0u64);
    for &s in &path.steps {
        let last = *prefix.last().unwrap();
        prefix.push(last ^ (1 << s));
    }
    for i in 0..prefix.len() {
        for j in i + 1..prefix.len() {
            if prefix[i] == prefix[j] {
                return false;
            }
        }
    }
    true
}

/// Number of backsteps `p = (len − H) / 2` of a path to the endpoint.
pub fn backstep_count(path: &PathCode, spec: EndpointSpec) -> Result<u32> {
    if !endpoint_valid(path, spec)? {
        return Err(Error::InvalidEndpoint { hamming: spec.hamming });
    }
    // endpoint validity fixes len ≡ H (mod 2) and len ≥ H
    Ok((path.len() as u32 - spec.hamming) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, dim: u32) -> PathCode {
        PathCode::parse(text, dim).unwrap()
    }

    #[test]
    fn apply_path_examples() {
        let zero = Genotype::zeros(3).unwrap();
        assert_eq!(apply_path(zero, &p("123", 3)).unwrap(), Genotype::ones(3).unwrap());
        assert_eq!(apply_path(zero, &p("", 3)).unwrap(), zero);
        assert_eq!(apply_path(zero, &p("12131", 3)).unwrap().bits(), 0b111);
    }

    #[test]
    fn apply_path_errors() {
        let zero = Genotype::zeros(4).unwrap();
        assert!(matches!(
            apply_path(zero, &p("12", 3)),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
        assert!(matches!(
            PathCode::parse("14", 3),
            Err(Error::LabelOutOfRange { label: 4, dim: 3 })
        ));
        assert!(PathCode::parse("10", 3).is_err());
    }

    #[test]
    fn endpoint_examples() {
        assert!(endpoint_valid(&p("123", 3), EndpointSpec::new(3, 3).unwrap()).unwrap());
        assert!(endpoint_valid(&p("1213212", 3), EndpointSpec::new(3, 3).unwrap()).unwrap());
        assert!(!endpoint_valid(&p("12", 2), EndpointSpec::new(2, 1).unwrap()).unwrap());
        assert!(endpoint_valid(&p("1221", 2), EndpointSpec::new(2, 0).unwrap()).unwrap());
    }

    #[test]
    fn self_avoidance_examples() {
        assert!(!is_self_avoiding(&p("11", 1)));
        assert!(!is_self_avoiding(&p("12313424", 4)));
        assert!(!is_self_avoiding(&p("1212", 2)));
        assert!(is_self_avoiding(&p("31323", 3)));
        assert!(is_self_avoiding(&p("1213212", 3)));
        assert!(is_self_avoiding(&p("", 3)));
    }

    #[test]
    fn backstep_examples() {
        let spec = EndpointSpec::corner(3).unwrap();
        assert_eq!(backstep_count(&p("123", 3), spec).unwrap(), 0);
        assert_eq!(backstep_count(&p("12131", 3), spec).unwrap(), 1);
        assert_eq!(backstep_count(&p("1213212", 3), spec).unwrap(), 2);
        assert!(matches!(
            backstep_count(&p("12", 3), spec),
            Err(Error::InvalidEndpoint { hamming: 3 })
        ));
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("1213212", 3).to_string(), "1213212");
        let wide = p("1,10,2", 12);
        assert_eq!(wide.labels().collect::<Vec<_>>(), [1, 10, 2]);
        assert_eq!(wide.to_string(), "1,10,2");
        assert!(PathCode::parse("123", 10).is_err());
        assert_eq!(p("1,2,3", 3), p("123", 3));
        assert_eq!(Genotype::new(0b011, 3).unwrap().to_string(), "110");
        assert_eq!("5:2".parse::<EndpointSpec>().unwrap(), EndpointSpec::new(5, 2).unwrap());
    }

    #[test]
    fn genotype_invariants() {
        assert!(Genotype::new(0b1000, 3).is_err());
        assert!(Genotype::zeros(0).is_err());
        assert!(Genotype::zeros(63).is_err());
        assert_eq!(Genotype::ones(62).unwrap().weight(), 62);
        assert_eq!(EndpointSpec::new(10, 5).unwrap().endpoint().bits(), 0b11111);
    }

    /// Every label string of length ≤ 10 over at most 4 labels.
    #[test]
    fn predicates_agree_exhaustively() {
        for dim in 1..=4u32 {
            let mut buf = Vec::new();
            fn rec(dim: u32, buf: &mut Vec<u8>, depth: usize) {
                let path = PathCode::from_raw(dim, buf.clone());
                assert_eq!(
                    is_self_avoiding(&path),
                    is_self_avoiding_by_substrings(&path),
                    "{path}"
                );
                if depth == 10 {
                    return;
                }
                for s in 0..dim as u8 {
                    buf.push(s);
                    rec(dim, buf, depth + 1);
                    buf.pop();
                }
            }
            rec(dim, &mut buf, 0);
        }
    }

    /// Longest self-avoiding walks from σ0 to σ1 are Hamiltonian-bounded.
    #[test]
    fn self_avoiding_length_bound() {
        let dim = 3;
        let mut longest = 0;
        let mut buf = Vec::new();
        fn rec(dim: u32, buf: &mut Vec<u8>, longest: &mut usize) {
            let path = PathCode::from_raw(dim, buf.clone());
            if !is_self_avoiding(&path) {
                return;
            }
            if endpoint_valid(&path, EndpointSpec::corner(dim).unwrap()).unwrap() {
                *longest = (*longest).max(path.len());
            }
            for s in 0..dim as u8 {
                buf.push(s);
                rec(dim, buf, longest);
                buf.pop();
            }
        }
        rec(dim, &mut buf, &mut longest);
        assert_eq!(longest, 7);
        assert!(longest < (1 << dim));
    }

    fn arb_path() -> impl Strategy<Value = PathCode> {
        (1u32..=8).prop_flat_map(|dim| {
            proptest::collection::vec(0..dim as u8, 0..24)
                .prop_map(move |steps| PathCode::from_raw(dim, steps))
        })
    }

    proptest! {
        #[test]
        fn weight_parity_matches_length(path in arb_path()) {
            let end = apply_path(Genotype::zeros(path.dim()).unwrap(), &path).unwrap();
            prop_assert_eq!(end.weight() as usize % 2, path.len() % 2);
        }

        #[test]
        fn valid_endpoint_is_reached(path in arb_path()) {
            let end = apply_path(Genotype::zeros(path.dim()).unwrap(), &path).unwrap();
            for h in 0..=path.dim() {
                let spec = EndpointSpec::new(path.dim(), h).unwrap();
                prop_assert_eq!(endpoint_valid(&path, spec).unwrap(), end == spec.endpoint());
            }
        }

        #[test]
        fn predicates_agree(path in arb_path()) {
            prop_assert_eq!(is_self_avoiding(&path), is_self_avoiding_by_substrings(&path));
        }

        #[test]
        fn text_round_trip(path in arb_path()) {
            prop_assert_eq!(PathCode::parse(&path.to_string(), path.dim()).unwrap(), path);
        }
    }
}

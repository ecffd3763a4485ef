//! Exact integer arithmetic for the dimension counts and the irrational
//! bound comparisons.
//!
//! Everything that feeds a decision is integer arithmetic: bounds of the
//! shape `A/√k` are compared to integers by squaring both sides, and the
//! dimension counts use arbitrary-precision binomials. Several of the
//! inequalities decided here sit within a fraction of a percent of the
//! boundary, so no floating point is allowed on any decision path.

use crate::seq::MultiplicitySequence;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("radicand of a quadratic bound must be positive")]
    ZeroRadicand,
}

/// Decimal-string serialization for big integers, so JSON transcripts stay
/// readable.
pub mod big_str {
    use num_bigint::{BigInt, BigUint};
    use serde::Serializer;

    pub fn biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn bigint_opt<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }
}

/// Binomial coefficient C(n, k), exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Virtual dimension of the degree-`t` system in `Pⁿ` with the given
/// multiplicities: C(n+t, n) − Σ C(n+mᵢ−1, n) − 1.
pub fn vdim(n: u32, t: u64, mults: &MultiplicitySequence) -> BigInt {
    let total = BigInt::from(binomial(n as u64 + t, n as u64));
    let conditions: BigInt = mults
        .mults()
        .iter()
        .map(|&m| BigInt::from(binomial(n as u64 + m - 1, n as u64)))
        .sum();
    total - conditions - 1
}

/// Expected dimension: max(vdim, −1).
pub fn edim(n: u32, t: u64, mults: &MultiplicitySequence) -> BigInt {
    vdim(n, t, mults).max(BigInt::from(-1))
}

/// The real number A/√k, for non-negative integer A and positive integer k.
///
/// Comparisons against integers are exact: for v ≥ 0,
/// v ≤ A/√k ⟺ v²·k ≤ A².
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticBound {
    #[serde(serialize_with = "big_str::biguint")]
    pub a: BigUint,
    pub k: u64,
}

impl QuadraticBound {
    pub fn new(a: BigUint, k: u64) -> Result<Self, ArithError> {
        if k == 0 {
            return Err(ArithError::ZeroRadicand);
        }
        Ok(QuadraticBound { a, k })
    }

    /// Bound equal to the plain integer `a` (radicand 1).
    pub fn integer(a: BigUint) -> Self {
        QuadraticBound { a, k: 1 }
    }

    /// Order of the integer `v` relative to A/√k.
    pub fn cmp_int(&self, v: &BigInt) -> Ordering {
        if v.is_negative() {
            return Ordering::Less;
        }
        let v = v.magnitude();
        let lhs = v * v * BigUint::from(self.k);
        let rhs = &self.a * &self.a;
        lhs.cmp(&rhs)
    }

    /// Largest integer ≤ A/√k.
    pub fn int_floor(&self) -> BigUint {
        (&self.a * &self.a / BigUint::from(self.k)).sqrt()
    }

    /// Exact test of R² − 3R ≥ D, i.e. A² − 3A√k ≥ D·k.
    pub fn square_minus_triple_at_least(&self, d: &BigUint) -> bool {
        let a2 = &self.a * &self.a;
        let dk = d * BigUint::from(self.k);
        if a2 < dk {
            return false;
        }
        // A² − D·k ≥ 3A√k ⟺ (A² − D·k)² ≥ 9A²k, both sides non-negative.
        let lhs = &a2 - &dk;
        &lhs * &lhs >= BigUint::from(9u32) * a2 * BigUint::from(self.k)
    }
}

impl std::fmt::Display for QuadraticBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/sqrt({})", self.a, self.k)
        }
    }
}

/// Order of the integer `v` versus the bound A/√k, exactly.
pub fn cmp_int_vs_quadratic(v: &BigInt, bound: &QuadraticBound) -> Ordering {
    bound.cmp_int(v)
}

/// Least d ≥ 0 with d(d+3) ≥ target.
pub fn min_d_quadratic(target: &BigUint) -> BigUint {
    if target.is_zero() {
        return BigUint::zero();
    }
    // positive root of d² + 3d − target: start from ⌊√target⌋ and adjust.
    let mut d = target.sqrt();
    while &d * (&d + BigUint::from(3u32)) >= *target {
        if d.is_zero() {
            return d;
        }
        d -= BigUint::one();
    }
    loop {
        d += BigUint::one();
        if &d * (&d + BigUint::from(3u32)) >= *target {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::MultiplicitySequence;

    fn mults(v: &[u64]) -> MultiplicitySequence {
        MultiplicitySequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(11, 2), 55u32.into());
        assert_eq!(binomial(4, 0), 1u32.into());
        assert_eq!(binomial(3, 5), 0u32.into());
        assert_eq!(binomial(52, 5), 2_598_960u64.into());
    }

    #[test]
    fn vdim_examples() {
        assert_eq!(vdim(2, 2, &mults(&[1, 1, 1, 1, 1])), BigInt::from(0));
        assert_eq!(vdim(2, 4, &mults(&[2, 2, 2, 2, 2])), BigInt::from(-1));
        assert_eq!(vdim(2, 9, &mults(&[4, 4, 4, 3, 3, 3, 3])), BigInt::from(0));
        assert_eq!(edim(2, 4, &mults(&[2, 2, 2, 2, 2])), BigInt::from(-1));
        assert_eq!(edim(2, 0, &mults(&[3])), BigInt::from(-1));
    }

    #[test]
    fn quadratic_comparisons() {
        let b = QuadraticBound::new(36u32.into(), 10).unwrap();
        assert_eq!(b.cmp_int(&BigInt::from(8)), Ordering::Less); // 640 < 1296
        let b = QuadraticBound::new(350u32.into(), 113).unwrap();
        assert_eq!(b.cmp_int(&BigInt::from(33)), Ordering::Greater); // 123057 > 122500
        let b = QuadraticBound::new(0u32.into(), 1).unwrap();
        assert_eq!(b.cmp_int(&BigInt::from(0)), Ordering::Equal);
        assert_eq!(b.cmp_int(&BigInt::from(-3)), Ordering::Less);
        assert!(QuadraticBound::new(1u32.into(), 0).is_err());
    }

    #[test]
    fn int_floor_matches_definition() {
        // floor(350/sqrt(113)) = 32
        let b = QuadraticBound::new(350u32.into(), 113).unwrap();
        assert_eq!(b.int_floor(), 32u32.into());
        let b = QuadraticBound::new(36u32.into(), 10).unwrap();
        assert_eq!(b.int_floor(), 11u32.into()); // 36/sqrt(10) ≈ 11.38
    }

    #[test]
    fn min_d_quadratic_examples() {
        assert_eq!(min_d_quadratic(&BigUint::from(0u32)), BigUint::from(0u32));
        assert_eq!(min_d_quadratic(&BigUint::from(54u32)), BigUint::from(6u32));
        assert_eq!(min_d_quadratic(&BigUint::from(992u32)), BigUint::from(31u32));
        assert_eq!(min_d_quadratic(&BigUint::from(1u32)), BigUint::from(1u32));
        for t in 0u32..2000 {
            let d = min_d_quadratic(&BigUint::from(t));
            assert!(&d * (&d + BigUint::from(3u32)) >= BigUint::from(t));
            if !d.is_zero() {
                let d1 = &d - BigUint::from(1u32);
                assert!(&d1 * (&d1 + BigUint::from(3u32)) < BigUint::from(t));
            }
        }
    }
}

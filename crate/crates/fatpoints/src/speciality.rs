//! Deciding non-speciality and h¹-regularity of the planar system
//! L(d; m₁,…,m_s) at general points.
//!
//! Two one-sided provers: [`prove_h1_regular`] runs a chain of reductions on
//! the staircase (1,2,…,d+1) and emits a replayable certificate, while
//! [`closed_form_criterion`] decides by a single exact inequality on the
//! virtual dimension. Neither ever claims a system special; `unknown` is
//! the only negative outcome.

use crate::arith::{binomial, vdim};
use crate::reduction::{reduce_chain, ChainFailure, ChainOutcome, ReductionCertificate};
use crate::seq::{IntSequence, MultiplicitySequence};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriterionError {
    #[error("the closed-form criterion needs at least 4 points, got {0}")]
    FewerThanFourPoints(usize),
    #[error("degree search exceeded the u64 range")]
    TooLarge,
}

/// The staircase sequence (1, 2, …, d+1); its size is C(d+2, 2), the number
/// of plane monomials of degree at most d. Allocates d+1 entries.
pub fn staircase(d: u64) -> IntSequence {
    assert!(d < u64::MAX, "degree out of range");
    IntSequence::from_iter(1..=d + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Proof {
    Proven,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Effectivity {
    Proven,
    RefutedByVdim,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProverRoute {
    ReductionChain,
    Criterion,
}

/// Outcome of a speciality prover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialityVerdict {
    pub nonspecial: Proof,
    pub effective: Effectivity,
    pub h1_regular: Proof,
    pub route: ProverRoute,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ReductionCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_used: Option<Vec<u64>>,
    pub orders_tried: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_failure: Option<ChainFailure>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "crate::arith::big_str::bigint_opt"
    )]
    pub criterion_lhs: Option<BigInt>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "crate::arith::big_str::bigint_opt"
    )]
    pub criterion_rhs: Option<BigInt>,
}

impl SpecialityVerdict {
    fn unknown(route: ProverRoute) -> Self {
        SpecialityVerdict {
            nonspecial: Proof::Unknown,
            effective: Effectivity::Unknown,
            h1_regular: Proof::Unknown,
            route,
            certificate: None,
            order_used: None,
            orders_tried: 0,
            chain_failure: None,
            criterion_lhs: None,
            criterion_rhs: None,
        }
    }
}

/// Which reduction orders the chain prover tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderStrategy {
    /// The stored order of the multiplicity sequence (descending after
    /// normalization).
    AsGiven,
    Descending,
    /// m₄ moved to the end, the order used by the closed-form criterion's
    /// argument.
    Criterion,
    /// Try up to n distinct permutations, descending first.
    Backtrack(u32),
}

impl FromStr for OrderStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "as-given" => Ok(OrderStrategy::AsGiven),
            "descending" => Ok(OrderStrategy::Descending),
            "kryterium" => Ok(OrderStrategy::Criterion),
            other => {
                if let Some(n) = other.strip_prefix("backtrack=") {
                    let n: u32 = n
                        .parse()
                        .map_err(|_| format!("bad backtracking budget `{n}`"))?;
                    if n == 0 {
                        return Err("backtracking budget must be positive".into());
                    }
                    Ok(OrderStrategy::Backtrack(n))
                } else {
                    Err(format!(
                        "unknown order `{other}` (expected as-given, descending, kryterium or backtrack=<n>)"
                    ))
                }
            }
        }
    }
}

/// The reduction order (m₁, m₂, m₃, m₅, …, m_s, m₄): the fourth-largest
/// multiplicity is applied last.
pub fn criterion_order(mults: &MultiplicitySequence) -> Result<Vec<u64>, CriterionError> {
    let m = mults.mults();
    if m.len() < 4 {
        return Err(CriterionError::FewerThanFourPoints(m.len()));
    }
    let mut order = Vec::with_capacity(m.len());
    order.extend_from_slice(&m[..3]);
    order.extend_from_slice(&m[4..]);
    order.push(m[3]);
    Ok(order)
}

// Lexicographically previous permutation in place; false once at the minimum.
fn prev_permutation(v: &mut [u64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Runs the chain prover with an explicit reduction order.
pub fn prove_h1_regular_with_order(d: u64, order: &[u64]) -> SpecialityVerdict {
    let initial = staircase(d);
    match reduce_chain(&initial, order) {
        Ok(ChainOutcome::Complete(cert)) => {
            let effective = cert.final_size > 0;
            SpecialityVerdict {
                nonspecial: Proof::Proven,
                effective: if effective {
                    Effectivity::Proven
                } else {
                    Effectivity::RefutedByVdim
                },
                h1_regular: if effective { Proof::Proven } else { Proof::Unknown },
                route: ProverRoute::ReductionChain,
                certificate: Some(cert),
                order_used: Some(order.to_vec()),
                orders_tried: 1,
                chain_failure: None,
                criterion_lhs: None,
                criterion_rhs: None,
            }
        }
        Ok(ChainOutcome::Failed(fail)) => SpecialityVerdict {
            chain_failure: Some(fail),
            orders_tried: 1,
            ..SpecialityVerdict::unknown(ProverRoute::ReductionChain)
        },
        // staircases are positive, so chain input errors cannot occur
        Err(_) => SpecialityVerdict::unknown(ProverRoute::ReductionChain),
    }
}

/// Chain prover: reduces the staircase (1,…,d+1) by the multiplicities in an
/// order chosen by `strategy`. A completed chain with positive final size
/// proves h¹-regularity; final size zero proves the system non-special and
/// empty; a failed chain proves nothing.
pub fn prove_h1_regular(
    d: u64,
    mults: &MultiplicitySequence,
    strategy: OrderStrategy,
) -> SpecialityVerdict {
    let budget = match strategy {
        OrderStrategy::Backtrack(n) => n.max(1),
        _ => 1,
    };
    let mut order: Vec<u64> = match strategy {
        OrderStrategy::AsGiven | OrderStrategy::Descending | OrderStrategy::Backtrack(_) => {
            mults.mults().to_vec()
        }
        OrderStrategy::Criterion => {
            criterion_order(mults).unwrap_or_else(|_| mults.mults().to_vec())
        }
    };
    let mut tried = 0u32;
    let mut last_failure;
    loop {
        tried += 1;
        let mut verdict = prove_h1_regular_with_order(d, &order);
        if verdict.nonspecial == Proof::Proven {
            verdict.orders_tried = tried;
            return verdict;
        }
        last_failure = verdict.chain_failure;
        if tried >= budget || !prev_permutation(&mut order) {
            break;
        }
    }
    SpecialityVerdict {
        chain_failure: last_failure,
        orders_tried: tried,
        ..SpecialityVerdict::unknown(ProverRoute::ReductionChain)
    }
}

/// Right-hand side of the closed-form criterion: (3m₄² − 7m₄ + 4)/2, always
/// an integer; 0 for m₄ = 1, 1 for m₄ = 2, 5 for m₄ = 3.
pub fn criterion_threshold(m4: u64) -> BigInt {
    let m = BigInt::from(m4);
    (BigInt::from(3) * &m * &m - BigInt::from(7) * &m + BigInt::from(4)) / BigInt::from(2)
}

/// Closed-form criterion for s ≥ 4 points: with L = vdim + 1 and
/// R = (3m₄² − 7m₄ + 4)/2, the conditions d ≥ m₁ + m₂ and L ≥ R prove the
/// system non-special; it is moreover effective (hence h¹-regular) iff
/// L ≥ 1, and proven empty when L ≤ 0.
pub fn closed_form_criterion(
    d: u64,
    mults: &MultiplicitySequence,
) -> Result<SpecialityVerdict, CriterionError> {
    if mults.s() < 4 {
        return Err(CriterionError::FewerThanFourPoints(mults.s()));
    }
    let l = vdim(2, d, mults) + BigInt::one();
    let r = criterion_threshold(mults.nth(4).unwrap());
    let degree_ok = d as u128 >= mults.nth(1).unwrap() as u128 + mults.nth(2).unwrap() as u128;
    let gate = degree_ok && l >= r;
    let effective_proven = gate && l >= BigInt::one();
    Ok(SpecialityVerdict {
        nonspecial: if gate { Proof::Proven } else { Proof::Unknown },
        effective: if effective_proven {
            Effectivity::Proven
        } else if gate {
            Effectivity::RefutedByVdim
        } else {
            Effectivity::Unknown
        },
        h1_regular: if effective_proven { Proof::Proven } else { Proof::Unknown },
        route: ProverRoute::Criterion,
        certificate: None,
        order_used: None,
        orders_tried: 0,
        chain_failure: None,
        criterion_lhs: Some(l),
        criterion_rhs: Some(r),
    })
}

/// Least upper bound d+1 on the Castelnuovo–Mumford regularity of the fat
/// points ideal obtainable from the closed-form criterion: d is the minimal
/// degree ≥ m₁ + m₂ at which the criterion proves h¹-regularity.
pub fn reg_upper_bound(mults: &MultiplicitySequence) -> Result<u64, CriterionError> {
    if mults.s() < 4 {
        return Err(CriterionError::FewerThanFourPoints(mults.s()));
    }
    let start = mults.nth(1).unwrap() as u128 + mults.nth(2).unwrap() as u128;
    if start >= u64::MAX as u128 {
        return Err(CriterionError::TooLarge);
    }
    let start = start as u64;
    let threshold = criterion_threshold(mults.nth(4).unwrap()).max(BigInt::one());
    // L = vdim + 1 grows by d+2 per degree step while the threshold is
    // constant, so the scan terminates.
    let mut l = BigInt::from(binomial(start + 2, 2)) - BigInt::from(mults.sum_m_m_plus_1()) / 2u32;
    let mut d = start;
    loop {
        if l >= threshold {
            return d.checked_add(1).ok_or(CriterionError::TooLarge);
        }
        l += BigInt::from(d) + BigInt::from(2u32);
        d = d.checked_add(1).ok_or(CriterionError::TooLarge)?;
    }
}

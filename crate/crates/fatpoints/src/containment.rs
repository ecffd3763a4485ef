//! Exact numerical criteria deciding the containment I^(2r) ⊆ M^r·I^r for a
//! planar fat points ideal, for all r ≥ 1 at once.
//!
//! The workhorse is a search for a witness degree d satisfying three integer
//! conditions:
//!
//!   * d(d+3) ≥ Σ mᵢ(mᵢ+1) + ρ(m₄), forcing reg(I) ≤ d+1,
//!   * d ≥ m₁ + m₂, the degree floor for the regularity bound,
//!   * d+2 ≤ max{ 2Σmᵢ/√(s+1), m₁+m₂+m₃+m₄, 2m₁ }, where each branch certifies
//!     the initial-degree bound α(I^(2r)) ≥ r(d+2) (a Seshadri-type bound, a
//!     quadratic plane transformation emptying the system, or the single big
//!     point), which together with the regularity bound gives the containment.
//!
//! All comparisons are exact integer arithmetic; the square-root branch is
//! decided by squaring. [`prove_containment`] routes a multiplicity sequence
//! through the special-case criteria (all-ones, one fat point, almost
//! homogeneous, uniformly fat) before falling back to the direct search.

use crate::arith::{big_str, min_d_quadratic, QuadraticBound};
use crate::seq::MultiplicitySequence;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContainmentError {
    #[error("this criterion needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("a quadratic plane transformation needs at least 3 multiplicities")]
    NeedThreeMultiplicities,
    #[error("parameter constraint violated: {0}")]
    BadParams(String),
    #[error("value out of supported range: {0}")]
    TooLarge(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// ρ(m): 0 for m = 1, (3m−1)(m−2) for m ≥ 2.
pub fn rho(m: u64) -> Result<BigUint, ContainmentError> {
    if m == 0 {
        return Err(ContainmentError::ZeroMultiplicity);
    }
    if m == 1 {
        return Ok(BigUint::zero());
    }
    Ok((BigUint::from(m) * 3u32 - 1u32) * BigUint::from(m - 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaBranch {
    Nagata,
    Cremona,
    BigPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContainmentRoute {
    AllOnes,
    AlmostSimple,
    AlmostHomogeneous,
    UniformlyFat,
    DirectCriterion,
    Unknown,
}

/// Exact evaluation of the three witness conditions at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeConditions {
    pub d: u64,
    #[serde(serialize_with = "big_str::biguint")]
    pub reg_lhs: BigUint,
    #[serde(serialize_with = "big_str::biguint")]
    pub reg_rhs: BigUint,
    pub reg_ok: bool,
    pub degree_floor: u128,
    pub degree_floor_ok: bool,
    pub nagata_bound: QuadraticBound,
    pub nagata_ok: bool,
    pub cremona_rhs: u128,
    pub cremona_ok: bool,
    pub big_point_rhs: u128,
    pub big_point_ok: bool,
    pub admitted: Vec<AlphaBranch>,
    pub all_ok: bool,
}

/// Σ mᵢ(mᵢ+1) + ρ(m₄), the target d(d+3) has to reach.
pub fn regularity_target(mults: &MultiplicitySequence) -> Result<BigUint, ContainmentError> {
    let m4 = mults
        .nth(4)
        .ok_or(ContainmentError::TooFewPoints { needed: 4, got: mults.s() })?;
    Ok(mults.sum_m_m_plus_1() + rho(m4)?)
}

/// Evaluates all three conditions at degree `d`, with the exact numbers on
/// both sides of every comparison.
pub fn conditions_at(
    mults: &MultiplicitySequence,
    d: u64,
) -> Result<DegreeConditions, ContainmentError> {
    let reg_rhs = regularity_target(mults)?;
    let m = mults.mults();
    let (m1, m2, m3, m4) = (m[0] as u128, m[1] as u128, m[2] as u128, m[3] as u128);
    let s = mults.s() as u64;

    let reg_lhs = BigUint::from(d) * BigUint::from(d + 3);
    let reg_ok = reg_lhs >= reg_rhs;

    let degree_floor = m1 + m2;
    let degree_floor_ok = d as u128 >= degree_floor;

    let nagata_bound = QuadraticBound::new(mults.sum() * 2u32, s + 1)
        .expect("s + 1 is positive");
    let d_plus_2 = BigInt::from(d) + BigInt::from(2);
    let nagata_ok = nagata_bound.cmp_int(&d_plus_2) != Ordering::Greater;

    let cremona_rhs = m1 + m2 + m3 + m4;
    let cremona_ok = d as u128 + 2 <= cremona_rhs;

    let big_point_rhs = 2 * m1;
    let big_point_ok = d as u128 + 2 <= big_point_rhs;

    let mut admitted = Vec::new();
    if nagata_ok {
        admitted.push(AlphaBranch::Nagata);
    }
    if cremona_ok {
        admitted.push(AlphaBranch::Cremona);
    }
    if big_point_ok {
        admitted.push(AlphaBranch::BigPoint);
    }
    let all_ok = reg_ok && degree_floor_ok && !admitted.is_empty();

    Ok(DegreeConditions {
        d,
        reg_lhs,
        reg_rhs,
        reg_ok,
        degree_floor,
        degree_floor_ok,
        nagata_bound,
        nagata_ok,
        cremona_rhs,
        cremona_ok,
        big_point_rhs,
        big_point_ok,
        admitted,
        all_ok,
    })
}

fn biguint_to_u64(v: &BigUint, what: &str) -> Result<u64, ContainmentError> {
    u64::try_from(v.clone()).map_err(|_| ContainmentError::TooLarge(what.to_string()))
}

/// The witness window [d_lo, d_hi]: d_lo is the least degree meeting the
/// regularity target and the degree floor, and d_hi is the largest degree
/// any branch of the upper bound admits. Empty window iff d_lo > d_hi.
pub fn witness_window(
    mults: &MultiplicitySequence,
) -> Result<(u64, Option<u64>), ContainmentError> {
    let target = regularity_target(mults)?;
    let d_reg = min_d_quadratic(&target);
    let m = mults.mults();
    let floor = m[0] as u128 + m[1] as u128;
    let d_lo_big = d_reg.max(BigUint::from(floor));
    let d_lo = biguint_to_u64(&d_lo_big, "witness degree")?;

    let s = mults.s() as u64;
    let nagata = QuadraticBound::new(mults.sum() * 2u32, s + 1).expect("positive radicand");
    let cremona = BigUint::from(m[0]) + m[1] + m[2] + m[3];
    let big_point = BigUint::from(2 * (m[0] as u128));
    let upper = nagata.int_floor().max(cremona).max(big_point);
    let d_hi = if upper >= BigUint::from(2u32) {
        Some(biguint_to_u64(&(upper - 2u32), "witness degree")?)
    } else {
        None
    };
    Ok((d_lo, d_hi))
}

/// Verdict of the containment machinery, with the exact transcript of every
/// comparison it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentVerdict {
    pub proven: bool,
    pub route: ContainmentRoute,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<AlphaBranch>,
    pub branches: Vec<AlphaBranch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<DegreeConditions>,
    pub subfacts: Vec<String>,
    pub diagnostics: String,
}

impl ContainmentVerdict {
    fn unknown(diagnostics: String, subfacts: Vec<String>) -> Self {
        ContainmentVerdict {
            proven: false,
            route: ContainmentRoute::Unknown,
            witness_d: None,
            branch: None,
            branches: Vec::new(),
            conditions: None,
            subfacts,
            diagnostics,
        }
    }

    fn proven_at(
        route: ContainmentRoute,
        cond: DegreeConditions,
        subfacts: Vec<String>,
        diagnostics: String,
    ) -> Self {
        ContainmentVerdict {
            proven: true,
            route,
            witness_d: Some(cond.d),
            branch: cond.admitted.first().copied(),
            branches: cond.admitted.clone(),
            conditions: Some(cond),
            subfacts,
            diagnostics,
        }
    }
}

/// Direct search for a witness degree over the full admissible window.
/// Requires s ≥ 9. Returns a proven verdict with the minimal witness, or an
/// unproven one carrying the exact failing comparisons at the boundary
/// degree (the least d meeting the regularity target and degree floor).
pub fn degree_criterion(
    mults: &MultiplicitySequence,
) -> Result<ContainmentVerdict, ContainmentError> {
    if mults.s() < 9 {
        return Err(ContainmentError::TooFewPoints { needed: 9, got: mults.s() });
    }
    let (d_lo, d_hi) = witness_window(mults)?;
    if d_hi.is_some_and(|hi| d_lo <= hi) {
        let cond = conditions_at(mults, d_lo)?;
        if !cond.all_ok {
            return Err(ContainmentError::Internal(format!(
                "window [{d_lo}, {:?}] computed but conditions fail at {d_lo}",
                d_hi
            )));
        }
        let diag = format!(
            "witness degree {} admitted by {:?}; window [{}, {}]",
            d_lo,
            cond.admitted,
            d_lo,
            d_hi.unwrap()
        );
        Ok(ContainmentVerdict::proven_at(
            ContainmentRoute::DirectCriterion,
            cond,
            Vec::new(),
            diag,
        ))
    } else {
        let cond = conditions_at(mults, d_lo)?;
        let diag = format!(
            "no witness degree: the least degree meeting the regularity target and the degree floor is {}, \
             but every upper-bound branch admits at most {}",
            d_lo,
            d_hi.map_or("none".to_string(), |h| h.to_string()),
        );
        Ok(ContainmentVerdict {
            proven: false,
            route: ContainmentRoute::DirectCriterion,
            witness_d: None,
            branch: None,
            branches: Vec::new(),
            conditions: Some(cond),
            subfacts: Vec::new(),
            diagnostics: diag,
        })
    }
}

/// The standard quadratic plane transformation based at the first three
/// points: (t; μ₁, μ₂, μ₃, …) ↦ (2t−μ₁−μ₂−μ₃; t−μ₂−μ₃, t−μ₁−μ₃, t−μ₁−μ₂, …).
pub fn cremona_transform(
    t: i128,
    mults: &[i128],
) -> Result<(i128, Vec<i128>), ContainmentError> {
    if mults.len() < 3 {
        return Err(ContainmentError::NeedThreeMultiplicities);
    }
    let (u1, u2, u3) = (mults[0], mults[1], mults[2]);
    let degree = 2 * t - u1 - u2 - u3;
    let mut out = vec![t - u2 - u3, t - u1 - u3, t - u1 - u2];
    out.extend_from_slice(&mults[3..]);
    Ok((degree, out))
}

/// A plane system is trivially empty once its degree is negative or smaller
/// than one of the prescribed multiplicities.
pub fn empty_by_degree(degree: i128, mults: &[i128]) -> bool {
    degree < 0 || mults.iter().any(|&m| m > degree)
}

/// Least degree d with d(d+3) ≥ target and d+2 ≤ bound, if any. Existence is
/// guaranteed whenever bound² − 3·bound ≥ target.
pub fn min_witness_degree(target: &BigUint, bound: &QuadraticBound) -> Option<u64> {
    let d = min_d_quadratic(target);
    let v = BigInt::from(d.clone()) + BigInt::from(2);
    if bound.cmp_int(&v) == Ordering::Greater {
        return None;
    }
    u64::try_from(d).ok()
}

/// One fat point of multiplicity m₀ ≥ 2 plus s ≥ 8 simple points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostSimpleCheck {
    pub m0: u64,
    pub s: u64,
    /// Largest t with t(t−1)/2 < s + m₀(m₀+1)/2, the maximal possible
    /// regularity of the ideal.
    pub t_max: u64,
    pub nagata_ok: bool,
    pub big_point_ok: bool,
    pub holds: bool,
}

/// Checks that either 2(m₀+s)/√(s+2) ≥ t_max+1 or 2m₀ ≥ t_max+1, where
/// t_max bounds the regularity of the ideal of one m₀-fold point and s
/// simple points. Exact; expected to hold on the whole hypothesis range.
pub fn check_almost_simple(m0: u64, s: u64) -> Result<AlmostSimpleCheck, ContainmentError> {
    if m0 < 2 {
        return Err(ContainmentError::BadParams(format!("m0 must be ≥ 2, got {m0}")));
    }
    if s < 8 {
        return Err(ContainmentError::BadParams(format!(
            "need at least 9 points in total, got {}",
            s + 1
        )));
    }
    // t_max: largest t with t(t-1) < 2s + m0(m0+1); b > 0, so t_max ≥ 1 and
    // sqrt_floor(b) + 2 is an upper bound to walk down from.
    let b = BigUint::from(2u32) * BigUint::from(s) + BigUint::from(m0) * BigUint::from(m0 + 1);
    let mut t = {
        b.sqrt() + 2u32
    };
    while &t * (&t - 1u32) >= b {
        t -= 1u32;
    }
    let t_max = biguint_to_u64(&t, "t_max")?;

    // 4(m0+s)² ≥ (t_max+1)²(s+2)
    let ms = BigUint::from(m0) + BigUint::from(s);
    let lhs = BigUint::from(4u32) * &ms * &ms;
    let t1 = BigUint::from(t_max) + 1u32;
    let rhs = &t1 * &t1 * BigUint::from(s + 2);
    let nagata_ok = lhs >= rhs;
    let big_point_ok = 2 * m0 as u128 > t_max as u128;
    Ok(AlmostSimpleCheck {
        m0,
        s,
        t_max,
        nagata_ok,
        big_point_ok,
        holds: nagata_ok || big_point_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaPart {
    A,
    B,
}

/// A hypothesis → conclusion instance check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationCheck {
    pub part: LemmaPart,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    /// hypothesis ⟹ conclusion for this instance.
    pub holds: bool,
}

/// Almost-homogeneous bound check, for m₀ ≥ 1, m ≥ 2, s ≥ 8 with
/// Σ = sm + m₀ and Q = sm² + m₀²:
///
/// * part a: if m₀√(s+2) ≥ Σ then 4m₀² ≥ Q + Σ + 3m² + 6m₀;
/// * part b: if m₀√(s+2) ≤ Σ then 4Σ² ≥ (s+2)(m₀² + (s+3)m² + 3Σ).
pub fn check_almost_homogeneous_ineq(
    m0: u64,
    m: u64,
    s: u64,
    part: LemmaPart,
) -> Result<ImplicationCheck, ContainmentError> {
    if m0 < 1 || m < 2 || s < 8 {
        return Err(ContainmentError::BadParams(format!(
            "need m0 ≥ 1, m ≥ 2, s ≥ 8; got m0={m0}, m={m}, s={s}"
        )));
    }
    let m0b = BigUint::from(m0);
    let mb = BigUint::from(m);
    let sb = BigUint::from(s);
    let sigma = &sb * &mb + &m0b;
    let q = &sb * &mb * &mb + &m0b * &m0b;
    let hyp_sq = &m0b * &m0b * (&sb + 2u32); // m₀²(s+2) vs Σ²
    let sigma_sq = &sigma * &sigma;
    let (hypothesis_holds, conclusion_holds) = match part {
        LemmaPart::A => {
            let hyp = hyp_sq >= sigma_sq;
            let lhs = BigUint::from(4u32) * &m0b * &m0b;
            let rhs = &q + &sigma + BigUint::from(3u32) * &mb * &mb + BigUint::from(6u32) * &m0b;
            (hyp, lhs >= rhs)
        }
        LemmaPart::B => {
            let hyp = hyp_sq <= sigma_sq;
            let lhs = BigUint::from(4u32) * &sigma * &sigma;
            let rhs = (&sb + 2u32)
                * (&m0b * &m0b + (&sb + 3u32) * &mb * &mb + BigUint::from(3u32) * &sigma);
            (hyp, lhs >= rhs)
        }
    };
    Ok(ImplicationCheck {
        part,
        hypothesis_holds,
        conclusion_holds,
        holds: !hypothesis_holds || conclusion_holds,
    })
}

/// Uniformly-fat inequality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformlyFatCheck {
    /// T = 4Σ² − (s+1)(Q + Σ + ρ(m₄)); the inequality holds iff T ≥ 0 and
    /// T² ≥ 36Σ²(s+1).
    #[serde(serialize_with = "big_str::bigint")]
    pub t_value: BigInt,
    pub holds: bool,
}

/// Exact evaluation of 4Σ²/(s+1) ≥ Q + (6/√(s+1) + 1)Σ + ρ(m₄) for a sorted
/// uniformly-fat sequence (s ≥ 9, m_s ≥ m₁/2).
pub fn check_uniformly_fat_ineq(
    mults: &MultiplicitySequence,
) -> Result<UniformlyFatCheck, ContainmentError> {
    let s = mults.s();
    if s < 9 {
        return Err(ContainmentError::TooFewPoints { needed: 9, got: s });
    }
    if 2 * (mults.smallest() as u128) < mults.largest() as u128 {
        return Err(ContainmentError::BadParams(format!(
            "not uniformly fat: 2·{} < {}",
            mults.smallest(),
            mults.largest()
        )));
    }
    let sigma = BigInt::from(mults.sum());
    let q = BigInt::from(mults.sum_squares());
    let rho4 = BigInt::from(rho(mults.nth(4).unwrap())?);
    let s1 = BigInt::from(s as u64 + 1);
    let t = BigInt::from(4) * &sigma * &sigma - &s1 * (&q + &sigma + &rho4);
    let holds = !t.is_negative()
        && &t * &t >= BigInt::from(36) * &sigma * &sigma * &s1;
    Ok(UniformlyFatCheck { t_value: t, holds })
}

/// The six-term polynomial in (x, y, s, t) whose non-negativity underlies
/// the uniformly-fat case.
pub fn fatness_poly(x: u64, y: u64, s: u64, t: u64) -> BigInt {
    let (x, y, s, t) = (
        BigInt::from(x),
        BigInt::from(y),
        BigInt::from(s),
        BigInt::from(t),
    );
    let x2 = &x * &x;
    let y2 = &y * &y;
    let xy = &x * &y;
    let c_s2 = BigInt::from(3) * &x2 - BigInt::from(6) * &x;
    let c_st = BigInt::from(16) * &xy - BigInt::from(7) * &x2 - BigInt::from(4) * &y2
        + BigInt::from(6) * &x
        - BigInt::from(12) * &y;
    let c_t2 = BigInt::from(4) * (&x2 + BigInt::from(4) * &y2 - BigInt::from(4) * &xy);
    let c_s = BigInt::from(4)
        * (&x2 - &y2 - BigInt::from(4) * &xy - BigInt::from(9) * &x + BigInt::from(6) * &y);
    let c_t = BigInt::from(3)
        * (BigInt::from(16) * &xy - BigInt::from(5) * &x2 - BigInt::from(12) * &y2
            + BigInt::from(2) * &x
            - BigInt::from(4) * &y);
    let c_0 = BigInt::from(5) * &x2 + BigInt::from(12) * &y2 - BigInt::from(32) * &xy
        + BigInt::from(24) * &y
        - BigInt::from(30) * &x;
    c_s2 * &s * &s + c_st * &s * &t + c_t2 * &t * &t + c_s * &s + c_t * &t + c_0
}

/// Evaluates the polynomial under the constraints x ≥ y, 2y ≥ x, s ≥ 9,
/// t ≥ 4, s ≥ t, returning the exact value and its sign verdict.
pub fn check_fatness_poly(
    x: u64,
    y: u64,
    s: u64,
    t: u64,
) -> Result<(BigInt, bool), ContainmentError> {
    if !(x >= y && 2 * (y as u128) >= x as u128 && s >= 9 && t >= 4 && s >= t) {
        return Err(ContainmentError::BadParams(format!(
            "constraints x ≥ y, 2y ≥ x, s ≥ 9, t ≥ 4, s ≥ t violated for ({x}, {y}, {s}, {t})"
        )));
    }
    let v = fatness_poly(x, y, s, t);
    let ok = !v.is_negative();
    Ok((v, ok))
}

// (m0, m) split of an almost homogeneous sequence with repeated value ≥ 2.
fn almost_homogeneous_split(mults: &MultiplicitySequence) -> Option<(u64, u64)> {
    let m = mults.mults();
    let n = m.len();
    if mults.all_equal() {
        return (m[0] >= 2).then_some((m[0], m[0]));
    }
    if m[1] == m[n - 1] {
        // one distinguished larger point
        return (m[1] >= 2).then_some((m[0], m[1]));
    }
    if m[0] == m[n - 2] {
        // one distinguished smaller point
        return Some((m[n - 1], m[0]));
    }
    None
}

fn finish_via_window(
    mults: &MultiplicitySequence,
    route: ContainmentRoute,
    target: &BigUint,
    bound: &QuadraticBound,
    mut subfacts: Vec<String>,
) -> Result<Option<ContainmentVerdict>, ContainmentError> {
    let floor = mults.nth(1).unwrap() as u128 + mults.nth(2).unwrap() as u128;
    let floor = u64::try_from(floor)
        .map_err(|_| ContainmentError::TooLarge("degree floor".into()))?;
    let d0 = min_witness_degree(target, bound);
    subfacts.push(match d0 {
        Some(d) => format!("least degree with d(d+3) ≥ {target} and d+2 ≤ {bound}: {d}"),
        None => format!("no degree satisfies d(d+3) ≥ {target} and d+2 ≤ {bound}"),
    });
    let d = match d0 {
        Some(d) if d >= floor => d,
        _ => {
            subfacts.push(format!(
                "falling back to the degree floor d = m1+m2 = {floor} (d+2 ≤ m1+m2+m3+m4 always holds there)"
            ));
            floor
        }
    };
    let cond = conditions_at(mults, d)?;
    if cond.all_ok {
        let diag = format!("witness degree {d} admitted by {:?}", cond.admitted);
        Ok(Some(ContainmentVerdict::proven_at(route, cond, subfacts, diag)))
    } else {
        subfacts.push(format!("verification at degree {d} failed; deferring to the direct search"));
        Ok(None)
    }
}

/// Decides I^(2r) ⊆ M^r·I^r for all r ≥ 1, routing through the special-case
/// results in order: all multiplicities 1 (any point count); one fat point
/// with a simple tail; almost homogeneous; uniformly fat; direct witness
/// search. `unknown` is a valid outcome.
pub fn prove_containment(mults: &MultiplicitySequence) -> ContainmentVerdict {
    let n = mults.s();
    let mut subfacts: Vec<String> = Vec::new();

    if mults.largest() == 1 {
        return ContainmentVerdict {
            proven: true,
            route: ContainmentRoute::AllOnes,
            witness_d: None,
            branch: None,
            branches: Vec::new(),
            conditions: None,
            subfacts: vec![format!(
                "all multiplicities equal 1: containment holds for {n} simple general points"
            )],
            diagnostics: "simple points case".into(),
        };
    }

    if n < 9 {
        return ContainmentVerdict::unknown(
            format!("only {n} points; the criteria need at least 9 unless all multiplicities are 1"),
            subfacts,
        );
    }

    // one fat point, all others simple
    if mults.nth(2).unwrap() == 1 {
        match check_almost_simple(mults.largest(), (n - 1) as u64) {
            Ok(check) => {
                subfacts.push(format!(
                    "one point of multiplicity {} plus {} simple points: t_max = {}, \
                     seshadri bound {}, big point bound {}",
                    check.m0, check.s, check.t_max, check.nagata_ok, check.big_point_ok
                ));
                if check.holds {
                    let branch = if check.nagata_ok {
                        AlphaBranch::Nagata
                    } else {
                        AlphaBranch::BigPoint
                    };
                    return ContainmentVerdict {
                        proven: true,
                        route: ContainmentRoute::AlmostSimple,
                        witness_d: None,
                        branch: Some(branch),
                        branches: if check.nagata_ok && check.big_point_ok {
                            vec![AlphaBranch::Nagata, AlphaBranch::BigPoint]
                        } else {
                            vec![branch]
                        },
                        conditions: None,
                        subfacts,
                        diagnostics: "one fat point with a simple tail".into(),
                    };
                }
            }
            Err(e) => subfacts.push(format!("almost-simple check not applicable: {e}")),
        }
    }

    // almost homogeneous: all but at most one multiplicity equal, repeated ≥ 2
    if let Some((m0, m)) = almost_homogeneous_split(mults) {
        let s = (n - 1) as u64;
        let m0b = BigUint::from(m0);
        let sigma = mults.sum();
        let part_a = &m0b * &m0b * BigUint::from(s + 2) >= &sigma * &sigma;
        let part = if part_a { LemmaPart::A } else { LemmaPart::B };
        if let Ok(instance) = check_almost_homogeneous_ineq(m0, m, s, part) {
            subfacts.push(format!(
                "almost homogeneous (m0 = {m0}, m = {m}, {s} repeated points): bound part {:?} \
                 hypothesis {}, conclusion {}",
                part, instance.hypothesis_holds, instance.conclusion_holds
            ));
        }
        let bound = if part_a {
            QuadraticBound::integer(BigUint::from(2u128 * m0 as u128))
        } else {
            QuadraticBound::new(sigma * 2u32, s + 2).expect("positive radicand")
        };
        if let Ok(target) = regularity_target(mults) {
            match finish_via_window(mults, ContainmentRoute::AlmostHomogeneous, &target, &bound, subfacts.clone()) {
                Ok(Some(verdict)) => return verdict,
                Ok(None) => {}
                Err(e) => subfacts.push(format!("almost-homogeneous route abandoned: {e}")),
            }
        }
    }

    // uniformly fat: m_s ≥ m₁/2
    if 2 * (mults.smallest() as u128) >= mults.largest() as u128 {
        match check_uniformly_fat_ineq(mults) {
            Ok(check) => {
                subfacts.push(format!(
                    "uniformly fat: T = {} (inequality {})",
                    check.t_value,
                    if check.holds { "holds" } else { "fails" }
                ));
                if check.holds {
                    let bound = QuadraticBound::new(mults.sum() * 2u32, n as u64 + 1)
                        .expect("positive radicand");
                    if let Ok(target) = regularity_target(mults) {
                        match finish_via_window(
                            mults,
                            ContainmentRoute::UniformlyFat,
                            &target,
                            &bound,
                            subfacts.clone(),
                        ) {
                            Ok(Some(verdict)) => return verdict,
                            Ok(None) => {}
                            Err(e) => subfacts.push(format!("uniformly-fat route abandoned: {e}")),
                        }
                    }
                }
            }
            Err(e) => subfacts.push(format!("uniformly-fat check not applicable: {e}")),
        }
    }

    // direct witness search
    match degree_criterion(mults) {
        Ok(mut verdict) => {
            if verdict.proven {
                let mut all = subfacts;
                all.append(&mut verdict.subfacts);
                verdict.subfacts = all;
                verdict
            } else {
                ContainmentVerdict {
                    route: ContainmentRoute::Unknown,
                    subfacts,
                    ..verdict
                }
            }
        }
        Err(e) => ContainmentVerdict::unknown(format!("direct search not applicable: {e}"), subfacts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mults(text: &str) -> MultiplicitySequence {
        MultiplicitySequence::parse(text).unwrap()
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(1).unwrap(), BigUint::zero());
        assert_eq!(rho(2).unwrap(), BigUint::zero());
        assert_eq!(rho(3).unwrap(), BigUint::from(8u32));
        assert_eq!(rho(8).unwrap(), BigUint::from(138u32));
        assert!(rho(0).is_err());
    }

    #[test]
    fn exceptional_sequence_has_no_witness() {
        let v = degree_criterion(&mults("8^9,1^103")).unwrap();
        assert!(!v.proven);
        let cond = v.conditions.unwrap();
        assert_eq!(cond.d, 31);
        assert!(cond.reg_ok && cond.degree_floor_ok);
        assert_eq!(cond.reg_lhs, BigUint::from(31u32 * 34));
        assert_eq!(cond.reg_rhs, BigUint::from(992u32));
        // 33²·113 = 123057 > 122500 = (2·175)²
        assert!(!cond.nagata_ok);
        assert_eq!(cond.nagata_bound, QuadraticBound::new(350u32.into(), 113).unwrap());
        assert!(!cond.cremona_ok);
        assert_eq!(cond.cremona_rhs, 32);
        assert!(!cond.big_point_ok);
        assert_eq!(cond.big_point_rhs, 16);
    }

    #[test]
    fn homogeneous_witnesses() {
        let v = degree_criterion(&mults("2^9")).unwrap();
        assert!(v.proven);
        assert_eq!(v.witness_d, Some(6));
        assert_eq!(
            v.branches,
            vec![AlphaBranch::Nagata, AlphaBranch::Cremona]
        );

        let v = degree_criterion(&mults("1^9")).unwrap();
        assert!(v.proven);
        assert_eq!(v.witness_d, Some(3));
        assert!(v.branches.contains(&AlphaBranch::Nagata));

        assert!(degree_criterion(&mults("3^8")).is_err());
    }

    #[test]
    fn cremona_examples() {
        assert_eq!(cremona_transform(4, &[2, 2, 2]).unwrap(), (2, vec![0, 0, 0]));
        let (deg, ms) = cremona_transform(1, &[1, 1, 1]).unwrap();
        assert_eq!((deg, ms.clone()), (-1, vec![-1, -1, -1]));
        assert!(empty_by_degree(deg, &ms));
        assert_eq!(
            cremona_transform(5, &[3, 2, 1, 1]).unwrap(),
            (4, vec![2, 1, 0, 1])
        );
        assert!(cremona_transform(2, &[1, 1]).is_err());
        assert!(!empty_by_degree(2, &[0, 0, 0]));
    }

    #[test]
    fn min_witness_degree_examples() {
        let b = |a: u32, k: u64| QuadraticBound::new(a.into(), k).unwrap();
        assert_eq!(min_witness_degree(&BigUint::from(0u32), &b(2, 1)), Some(0));
        assert_eq!(min_witness_degree(&BigUint::from(54u32), &b(36, 10)), Some(6));
        assert_eq!(min_witness_degree(&BigUint::from(992u32), &b(350, 113)), None);
    }

    #[test]
    fn almost_simple_examples() {
        let c = check_almost_simple(2, 8).unwrap();
        assert_eq!(c.t_max, 5);
        assert!(c.nagata_ok && c.holds);
        let c = check_almost_simple(6, 36).unwrap();
        assert_eq!(c.t_max, 11);
        assert!(c.nagata_ok && c.holds);
        let c = check_almost_simple(7, 49).unwrap();
        assert!(c.holds);
        // tight cell passing only through the big point branch
        let c = check_almost_simple(6, 8).unwrap();
        assert_eq!(c.t_max, 8);
        assert!(!c.nagata_ok && c.big_point_ok && c.holds);
        assert!(check_almost_simple(1, 20).is_err());
        assert!(check_almost_simple(3, 7).is_err());
    }

    #[test]
    fn almost_homogeneous_ineq_examples() {
        let c = check_almost_homogeneous_ineq(10, 2, 8, LemmaPart::A).unwrap();
        assert!(c.hypothesis_holds && c.conclusion_holds && c.holds);
        let c = check_almost_homogeneous_ineq(2, 2, 8, LemmaPart::B).unwrap();
        assert!(c.hypothesis_holds && c.conclusion_holds && c.holds);
        let c = check_almost_homogeneous_ineq(1, 2, 8, LemmaPart::A).unwrap();
        assert!(!c.hypothesis_holds && c.holds); // vacuous
        assert!(check_almost_homogeneous_ineq(1, 1, 8, LemmaPart::A).is_err());
    }

    #[test]
    fn uniformly_fat_examples() {
        let c = check_uniformly_fat_ineq(&mults("2,1^8")).unwrap();
        assert!(!c.holds); // the stated exception
        let c = check_uniformly_fat_ineq(&mults("2,2,1^7")).unwrap();
        assert_eq!(c.t_value, BigInt::from(224));
        assert!(c.holds);
        let c = check_uniformly_fat_ineq(&mults("1^9")).unwrap();
        assert_eq!(c.t_value, BigInt::from(144));
        assert!(!c.holds); // 144² < 36·81·10
        assert!(check_uniformly_fat_ineq(&mults("3,1^8")).is_err());
    }

    #[test]
    fn fatness_poly_examples() {
        let (v, ok) = check_fatness_poly(4, 2, 9, 4).unwrap();
        assert_eq!(v, BigInt::from(160));
        assert!(ok);
        let (_, ok) = check_fatness_poly(4, 4, 9, 9).unwrap();
        assert!(ok);
        let (v, ok) = check_fatness_poly(2, 1, 9, 4).unwrap();
        assert_eq!(v, BigInt::from(-680));
        assert!(!ok);
        assert!(check_fatness_poly(4, 1, 9, 4).is_err()); // 2y < x
        assert!(check_fatness_poly(4, 2, 8, 4).is_err());
    }

    #[test]
    fn dispatch_examples() {
        let v = prove_containment(&mults("1^9"));
        assert!(v.proven);
        assert_eq!(v.route, ContainmentRoute::AllOnes);

        let v = prove_containment(&mults("5,1^8"));
        assert!(v.proven);
        assert_eq!(v.route, ContainmentRoute::AlmostSimple);

        // both almost homogeneous and uniformly fat; the routing order
        // resolves it through the almost-homogeneous machinery
        let v = prove_containment(&mults("3^8,2"));
        assert!(v.proven);
        assert_eq!(v.route, ContainmentRoute::AlmostHomogeneous);
        assert!(v.witness_d.is_some());
        assert!(v.conditions.as_ref().unwrap().all_ok);

        let v = prove_containment(&mults("8^9,1^103"));
        assert!(!v.proven);
        assert_eq!(v.route, ContainmentRoute::Unknown);
        assert!(v.conditions.is_some());
    }

    #[test]
    fn dispatch_small_inputs() {
        let v = prove_containment(&mults("1,1,1"));
        assert!(v.proven);
        assert_eq!(v.route, ContainmentRoute::AllOnes);
        let v = prove_containment(&mults("3,2,2"));
        assert!(!v.proven);
        assert_eq!(v.route, ContainmentRoute::Unknown);
    }

    #[test]
    fn dispatch_uniformly_fat_route() {
        // not almost homogeneous, genuinely routed through the fat case
        let v = prove_containment(&mults("4,4,3,3,3,2,2,2,2"));
        assert!(v.proven);
        assert_eq!(v.route, ContainmentRoute::UniformlyFat);
        assert!(v.conditions.as_ref().unwrap().all_ok);
    }
}

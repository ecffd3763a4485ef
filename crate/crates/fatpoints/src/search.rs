//! Scanning harnesses: two-block family scans for sequences the degree
//! search cannot handle, exhaustive verification of the finite case grids
//! the proofs lean on, and an empirical soundness audit of the provers
//! against the interpolation oracle.

use crate::containment::{
    check_almost_homogeneous_ineq, check_almost_simple, check_fatness_poly,
    check_uniformly_fat_ineq, degree_criterion, LemmaPart,
};
use crate::oracle::{dim_system, rng, DimCertificate};
use crate::seq::MultiplicitySequence;
use crate::speciality::{
    closed_form_criterion, prove_h1_regular, OrderStrategy, Proof,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("cannot parse family `{0}`; expected a=lo..hi,p=lo..hi,b=lo..hi,q=lo..hi")]
    BadFamily(String),
    #[error("family spans {cells} cells, over the cap of {cap} (pass --force to override)")]
    OverCap { cells: u128, cap: u128 },
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
}

pub const DEFAULT_SCAN_CAP: u128 = 200_000;

/// Inclusive ranges for two-block families (a^p, b^q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyRanges {
    pub a: (u64, u64),
    pub p: (u64, u64),
    pub b: (u64, u64),
    pub q: (u64, u64),
}

impl FamilyRanges {
    pub fn parse(text: &str) -> Result<Self, ScanError> {
        let mut a = None;
        let mut p = None;
        let mut b = None;
        let mut q = None;
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, range) = part
                .split_once('=')
                .ok_or_else(|| ScanError::BadFamily(text.into()))?;
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| ScanError::BadFamily(text.into()))?;
            let lo: u64 = lo.trim().parse().map_err(|_| ScanError::BadFamily(text.into()))?;
            let hi: u64 = hi.trim().parse().map_err(|_| ScanError::BadFamily(text.into()))?;
            if lo > hi {
                return Err(ScanError::BadFamily(text.into()));
            }
            match key.trim() {
                "a" => a = Some((lo, hi)),
                "p" => p = Some((lo, hi)),
                "b" => b = Some((lo, hi)),
                "q" => q = Some((lo, hi)),
                _ => return Err(ScanError::BadFamily(text.into())),
            }
        }
        match (a, p, b, q) {
            (Some(a), Some(p), Some(b), Some(q)) => Ok(FamilyRanges { a, p, b, q }),
            _ => Err(ScanError::BadFamily(text.into())),
        }
    }

    pub fn cells(&self) -> u128 {
        let span = |(lo, hi): (u64, u64)| (hi - lo + 1) as u128;
        span(self.a) * span(self.p) * span(self.b) * span(self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanHit {
    pub mults: String,
    pub s: usize,
    pub boundary_degree: Option<u64>,
}

/// Enumerates sorted sequences (a^p, b^q) with a ≥ b and at least 9 points
/// and returns those where the degree search finds no witness.
pub fn scan_degree_criterion_failures(
    family: &FamilyRanges,
    cap: u128,
) -> Result<Vec<ScanHit>, ScanError> {
    let cells = family.cells();
    if cells > cap {
        return Err(ScanError::OverCap { cells, cap });
    }
    let mut work: Vec<(u64, u64, u64, u64)> = Vec::new();
    for a in family.a.0..=family.a.1 {
        for p in family.p.0..=family.p.1 {
            for b in family.b.0..=family.b.1 {
                for q in family.q.0..=family.q.1 {
                    if a < b || p == 0 || q == 0 || a == 0 || b == 0 {
                        continue;
                    }
                    if a == b && q != family.q.0 {
                        continue; // merged block; avoid duplicates
                    }
                    if p + q < 9 {
                        continue;
                    }
                    work.push((a, p, b, q));
                }
            }
        }
    }
    let mut hits: Vec<ScanHit> = work
        .par_iter()
        .filter_map(|&(a, p, b, q)| {
            let mut v = vec![a; p as usize];
            v.extend(std::iter::repeat_n(b, q as usize));
            let mults = MultiplicitySequence::new(v).expect("positive entries");
            match degree_criterion(&mults) {
                Ok(verdict) if !verdict.proven => Some(ScanHit {
                    mults: mults.to_compressed(),
                    s: mults.s(),
                    boundary_degree: verdict.conditions.map(|c| c.d),
                }),
                _ => None,
            }
        })
        .collect();
    hits.sort();
    hits.dedup();
    Ok(hits)
}

/// One verified grid: name, cell count, and any failing cells (expected
/// none; a failure would contradict a proof step or expose a bug).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub name: String,
    pub cells: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn grid_report(name: &str, cells: u64, failures: Vec<String>) -> GridReport {
    GridReport {
        name: name.to_string(),
        cells,
        passed: failures.is_empty(),
        failures,
    }
}

/// The finite (m₀, s) grid of the one-fat-point case: m₀² ≤ s ≤ 33 together
/// with 8 ≤ s ≤ m₀² ≤ 36, all with m₀ ≥ 2, s ≥ 8.
pub fn grid_almost_simple() -> GridReport {
    let mut cells = 0u64;
    let mut failures = Vec::new();
    for m0 in 2u64..=6 {
        for s in 8u64..=36 {
            let in_first = m0 * m0 <= s && s <= 33;
            let in_second = s <= m0 * m0 && m0 * m0 <= 36;
            if !(in_first || in_second) {
                continue;
            }
            cells += 1;
            match check_almost_simple(m0, s) {
                Ok(c) if c.holds => {}
                Ok(c) => failures.push(format!("(m0={m0}, s={s}): t_max={} fails both bounds", c.t_max)),
                Err(e) => failures.push(format!("(m0={m0}, s={s}): {e}")),
            }
        }
    }
    grid_report("almost-simple", cells, failures)
}

/// One-fat-point check over an explicit (m₀, s) rectangle.
pub fn grid_almost_simple_ranged(m0: (u64, u64), s: (u64, u64)) -> GridReport {
    let mut cells = 0u64;
    let mut failures = Vec::new();
    for m0v in m0.0.max(2)..=m0.1 {
        for sv in s.0.max(8)..=s.1 {
            cells += 1;
            match check_almost_simple(m0v, sv) {
                Ok(c) if c.holds => {}
                Ok(c) => failures.push(format!("(m0={m0v}, s={sv}): t_max={} fails both bounds", c.t_max)),
                Err(e) => failures.push(format!("(m0={m0v}, s={sv}): {e}")),
            }
        }
    }
    grid_report("almost-simple", cells, failures)
}

/// Part b of the almost-homogeneous bound; by default m ∈ {2,3},
/// 8 ≤ s ≤ 21 and every m₀ up to (and a little past) the hypothesis
/// boundary.
pub fn grid_almost_homogeneous() -> GridReport {
    grid_almost_homogeneous_ranged((2, 3), (8, 21), None)
}

pub fn grid_almost_homogeneous_ranged(
    m: (u64, u64),
    s: (u64, u64),
    m0: Option<(u64, u64)>,
) -> GridReport {
    let mut cells = 0u64;
    let mut failures = Vec::new();
    for mv in m.0.max(2)..=m.1 {
        for sv in s.0.max(8)..=s.1 {
            // hypothesis b fails well before m₀ = 2sm; scanning past the
            // boundary only adds vacuous cells
            let (lo, hi) = m0.unwrap_or((1, 2 * sv * mv));
            for m0v in lo.max(1)..=hi {
                cells += 1;
                match check_almost_homogeneous_ineq(m0v, mv, sv, LemmaPart::B) {
                    Ok(c) if c.holds => {}
                    Ok(_) => failures.push(format!("(m0={m0v}, m={mv}, s={sv})")),
                    Err(e) => failures.push(format!("(m0={m0v}, m={mv}, s={sv}): {e}")),
                }
            }
        }
    }
    grid_report("almost-homogeneous-part-b", cells, failures)
}

/// The polynomial inequality grid: by default 9 ≤ s ≤ 16, 4 ≤ x ≤ 33 and
/// all admissible (y, t) with x ≥ y, 2y ≥ x, 4 ≤ t ≤ s.
pub fn grid_fatness_poly() -> GridReport {
    grid_fatness_poly_ranged((4, 33), (9, 16))
}

pub fn grid_fatness_poly_ranged(x: (u64, u64), s: (u64, u64)) -> GridReport {
    let mut cells = 0u64;
    let mut failures = Vec::new();
    for sv in s.0.max(9)..=s.1 {
        for xv in x.0.max(4)..=x.1 {
            for y in xv.div_ceil(2)..=xv {
                for t in 4..=sv {
                    cells += 1;
                    match check_fatness_poly(xv, y, sv, t) {
                        Ok((_, true)) => {}
                        Ok((v, false)) => {
                            failures.push(format!("(x={xv}, y={y}, s={sv}, t={t}): value {v}"))
                        }
                        Err(e) => failures.push(format!("(x={xv}, y={y}, s={sv}, t={t}): {e}")),
                    }
                }
            }
        }
    }
    grid_report("fatness-polynomial", cells, failures)
}

/// The uniformly-fat inequality over sorted sequences with every entry in
/// [⌈m₁/2⌉, m₁]; by default 4 ≤ m₁ ≤ 12, 9 ≤ s ≤ 14.
pub fn grid_uniformly_fat() -> GridReport {
    grid_uniformly_fat_ranged((4, 12), (9, 14))
}

pub fn grid_uniformly_fat_ranged(m1_range: (u64, u64), s_range: (u64, u64)) -> GridReport {
    let mut cells = 0u64;
    let mut failures = Vec::new();
    for m1 in m1_range.0..=m1_range.1 {
        for s in s_range.0.max(9) as usize..=s_range.1 as usize {
            // non-increasing tails below the leading m₁
            let lo = m1.div_ceil(2);
            let mut stack: Vec<Vec<u64>> = vec![vec![m1]];
            while let Some(cur) = stack.pop() {
                if cur.len() == s {
                    cells += 1;
                    let mults = MultiplicitySequence::new(cur).expect("positive");
                    match check_uniformly_fat_ineq(&mults) {
                        Ok(c) if c.holds => {}
                        Ok(c) => failures.push(format!(
                            "{}: T = {}",
                            mults.to_compressed(),
                            c.t_value
                        )),
                        Err(e) => failures.push(format!("{}: {e}", mults.to_compressed())),
                    }
                    continue;
                }
                let max_next = *cur.last().unwrap();
                for next in lo..=max_next {
                    let mut v = cur.clone();
                    v.push(next);
                    stack.push(v);
                }
            }
        }
    }
    grid_report("uniformly-fat", cells, failures)
}

/// Runs the three finite-case grids the proofs reduce to. All must pass.
pub fn verify_finite_cases() -> Vec<GridReport> {
    vec![
        grid_almost_simple(),
        grid_almost_homogeneous(),
        grid_fatness_poly(),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrosscheckLimits {
    pub d_max: u64,
    pub s_max: usize,
    pub m_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub limits: CrosscheckLimits,
    pub prime: u64,
    pub seed: u64,
    pub trials: u32,
    pub instances: u64,
    pub chain_proofs: u64,
    pub criterion_proofs: u64,
    pub oracle_checks: u64,
    pub violations: Vec<String>,
    pub passed: bool,
}

fn sorted_tuples(s_max: usize, m_max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = (1..=m_max).map(|m| vec![m]).collect();
    while let Some(cur) = stack.pop() {
        out.push(cur.clone());
        if cur.len() < s_max {
            let cap = *cur.last().unwrap();
            for next in 1..=cap {
                let mut v = cur.clone();
                v.push(next);
                stack.push(v);
            }
        }
    }
    out.sort();
    out
}

/// For every (d, mults) in range, any non-speciality proof produced by the
/// chain prover or the closed-form criterion must be confirmed by a
/// full-expected-rank oracle certificate. Returns every violation found
/// (none are expected).
pub fn crosscheck_reduction_vs_oracle(
    limits: CrosscheckLimits,
    prime: u64,
    trials: u32,
    seed: u64,
) -> Result<CrosscheckReport, ScanError> {
    let tuples = sorted_tuples(limits.s_max, limits.m_max);
    let cases: Vec<(u64, Vec<u64>)> = (0..=limits.d_max)
        .flat_map(|d| tuples.iter().map(move |t| (d, t.clone())))
        .collect();
    struct Cell {
        chain: bool,
        criterion: bool,
        checked: bool,
        violation: Option<String>,
    }
    let results: Vec<Result<Cell, ScanError>> = cases
        .par_iter()
        .enumerate()
        .map(|(idx, (d, tuple))| {
            let mults = MultiplicitySequence::new(tuple.clone()).expect("positive");
            let chain = prove_h1_regular(*d, &mults, OrderStrategy::Descending);
            let chain_proven = chain.nonspecial == Proof::Proven;
            let crit_proven = if mults.s() >= 4 {
                closed_form_criterion(*d, &mults)
                    .map(|v| v.nonspecial == Proof::Proven)
                    .unwrap_or(false)
            } else {
                false
            };
            let mut violation = None;
            let mut checked = false;
            if chain_proven || crit_proven {
                checked = true;
                let report = dim_system(*d, &mults, prime, trials, rng::substream(seed, idx as u64))?;
                let confirmed = report.certificate != DimCertificate::None
                    && report.dim_observed == report.edim;
                if !confirmed {
                    violation = Some(format!(
                        "L({d}; {}): prover says non-special (chain={chain_proven}, criterion={crit_proven}) \
                         but oracle observed dim {} vs edim {} (certificate {:?})",
                        mults, report.dim_observed, report.edim, report.certificate
                    ));
                }
            }
            Ok(Cell {
                chain: chain_proven,
                criterion: crit_proven,
                checked,
                violation,
            })
        })
        .collect();
    let mut chain_proofs = 0;
    let mut criterion_proofs = 0;
    let mut oracle_checks = 0;
    let mut violations = Vec::new();
    for r in results {
        let cell = r?;
        chain_proofs += u64::from(cell.chain);
        criterion_proofs += u64::from(cell.criterion);
        oracle_checks += u64::from(cell.checked);
        if let Some(v) = cell.violation {
            violations.push(v);
        }
    }
    violations.sort();
    Ok(CrosscheckReport {
        limits,
        prime,
        seed,
        trials,
        instances: cases.len() as u64,
        chain_proofs,
        criterion_proofs,
        oracle_checks,
        passed: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{DEFAULT_PRIME, DEFAULT_SEED};

    #[test]
    fn family_parse() {
        let f = FamilyRanges::parse("a=2..130,p=9..12,b=1..12,q=80..224").unwrap();
        assert_eq!(f.a, (2, 130));
        assert_eq!(f.q, (80, 224));
        assert!(FamilyRanges::parse("a=2..1,p=1..1,b=1..1,q=1..1").is_err());
        assert!(FamilyRanges::parse("a=2..3").is_err());
        assert!(FamilyRanges::parse("z=2..3,a=1..1,p=1..1,b=1..1,q=1..1").is_err());
    }

    #[test]
    fn scan_finds_the_known_failure() {
        let f = FamilyRanges::parse("a=8..8,p=9..9,b=1..1,q=100..110").unwrap();
        let hits = scan_degree_criterion_failures(&f, DEFAULT_SCAN_CAP).unwrap();
        assert!(hits.iter().any(|h| h.mults == "8^9,1^103"));
    }

    #[test]
    fn scan_finds_all_known_failing_families() {
        for (family, expect) in [
            ("a=9..9,p=11..11,b=1..1,q=78..82", "9^11,1^80"),
            ("a=20..20,p=12..12,b=2..2,q=88..92", "20^12,2^90"),
            ("a=30..30,p=11..11,b=3..3,q=128..132", "30^11,3^130"),
            ("a=60..60,p=11..11,b=5..5,q=222..226", "60^11,5^224"),
            ("a=130..130,p=12..12,b=12..12,q=99..103", "130^12,12^101"),
        ] {
            let f = FamilyRanges::parse(family).unwrap();
            let hits = scan_degree_criterion_failures(&f, DEFAULT_SCAN_CAP).unwrap();
            assert!(
                hits.iter().any(|h| h.mults == expect),
                "scan over {family} missed {expect}: {hits:?}"
            );
        }
    }

    #[test]
    fn uniformly_fat_grid_passes_in_the_proven_regime() {
        let g = grid_uniformly_fat();
        assert!(g.passed, "{:?}", &g.failures[..g.failures.len().min(5)]);
        assert!(g.cells > 100_000);
    }

    #[test]
    fn scan_two_block_small_family_all_pass() {
        let f = FamilyRanges::parse("a=2..2,p=1..29,b=1..1,q=1..29").unwrap();
        let hits = scan_degree_criterion_failures(&f, DEFAULT_SCAN_CAP)
            .unwrap()
            .into_iter()
            .filter(|h| h.s <= 30)
            .collect::<Vec<_>>();
        assert!(hits.is_empty(), "unexpected failures: {hits:?}");
    }

    #[test]
    fn scan_cap_enforced() {
        let f = FamilyRanges::parse("a=1..100,p=1..100,b=1..100,q=1..100").unwrap();
        assert!(matches!(
            scan_degree_criterion_failures(&f, DEFAULT_SCAN_CAP),
            Err(ScanError::OverCap { .. })
        ));
    }

    #[test]
    fn finite_grid_cells_pass() {
        let g = grid_almost_simple();
        assert!(g.passed, "{:?}", g.failures);
        assert!(g.cells > 0);
    }

    #[test]
    fn crosscheck_smoke() {
        let report = crosscheck_reduction_vs_oracle(
            CrosscheckLimits { d_max: 5, s_max: 3, m_max: 3 },
            DEFAULT_PRIME,
            2,
            DEFAULT_SEED,
        )
        .unwrap();
        assert!(report.passed, "{:?}", report.violations);
        assert!(report.chain_proofs > 0);
    }
}

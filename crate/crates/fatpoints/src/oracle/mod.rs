//! Independent verification by exact linear algebra over a prime field.
//!
//! A plane curve of degree ≤ d through the points with prescribed
//! multiplicities corresponds to a kernel vector of the conditions matrix:
//! one column per monomial x^a y^b with a+b ≤ d, one row per divided-power
//! (Hasse) derivative of order < mᵢ at point i. Hasse derivatives express
//! the Taylor coefficients directly, so the multiplicity conditions are
//! correct in any characteristic; requiring p > d additionally keeps the
//! binomial factors away from the characteristic.
//!
//! Rank is lower-semicontinuous in the point coordinates, so full expected
//! rank at a single sampled configuration certifies non-speciality for
//! general points, and a zero kernel certifies emptiness. Observed rank
//! deficiency is only Monte-Carlo evidence of speciality.

pub mod fp;
pub mod rng;

use crate::arith::{binomial, edim as edim_big};
use crate::seq::MultiplicitySequence;
use fp::{validate_prime, Echelon, FpMat};
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_PRIME: u64 = 65537;
pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_TRIALS: u32 = 3;

// Guard on dense-matrix work: number of monomial columns.
const MAX_COLS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] fp::FpError),
    #[error("prime {p} must exceed the working degree {d}")]
    PrimeTooSmall { p: u64, d: u64 },
    #[error("need at least one trial")]
    NoTrials,
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("scale and r must be positive")]
    ZeroParameter,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A sampled affine point configuration over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    pub prime: u64,
    pub points: Vec<(u64, u64)>,
    pub seed: u64,
}

/// Samples s points with pairwise distinct x- and y-coordinates.
pub fn sample_config(s: usize, prime: u64, seed: u64) -> PointConfig {
    let mut stream = rng::Stream::new(seed);
    let mut xs: Vec<u64> = Vec::with_capacity(s);
    let mut ys: Vec<u64> = Vec::with_capacity(s);
    while xs.len() < s {
        let v = stream.below(prime);
        if !xs.contains(&v) {
            xs.push(v);
        }
    }
    while ys.len() < s {
        let v = stream.below(prime);
        if !ys.contains(&v) {
            ys.push(v);
        }
    }
    PointConfig {
        prime,
        points: xs.into_iter().zip(ys).collect(),
        seed,
    }
}

/// The interpolation conditions matrix: Σ C(mᵢ+1, 2) rows of Hasse
/// derivatives over C(d+2, 2) monomial columns.
#[derive(Debug, Clone)]
pub struct ConditionsMatrix {
    pub matrix: FpMat,
    pub d: u64,
}

/// Exact rank of a conditions matrix over F_p.
pub fn rank_mod_p(m: &ConditionsMatrix) -> usize {
    m.matrix.rank()
}

fn checked_cols(d: u64) -> Result<usize, OracleError> {
    let cols = binomial(d + 2, 2);
    usize::try_from(cols)
        .ok()
        .filter(|&c| c <= MAX_COLS)
        .ok_or_else(|| OracleError::InstanceTooLarge(format!("C({}+2, 2) monomials", d)))
}

/// Builds the conditions matrix for degree-≤d curves with the prescribed
/// multiplicities at the configured points.
pub fn build_conditions(
    d: u64,
    mults: &[u64],
    config: &PointConfig,
) -> Result<ConditionsMatrix, OracleError> {
    let p = config.prime;
    validate_prime(p)?;
    if p <= d {
        return Err(OracleError::PrimeTooSmall { p, d });
    }
    let cols = checked_cols(d)?;
    let rows_big: u128 = mults
        .iter()
        .map(|&m| (m as u128) * (m as u128 + 1) / 2)
        .sum();
    if rows_big.saturating_mul(cols as u128) > 50_000_000 {
        return Err(OracleError::InstanceTooLarge(format!("{rows_big}x{cols} matrix")));
    }
    let rows = rows_big as usize;

    // binomial table C(n, k) mod p for n ≤ d (n < p, so entries are exact
    // images of the integer binomials)
    let du = d as usize;
    let mut binom = vec![vec![0u64; du + 1]; du + 1];
    for n in 0..=du {
        binom[n][0] = 1;
        for k in 1..=n {
            binom[n][k] = (binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0 }) % p;
        }
    }

    let mut mat = FpMat::zero(p, rows, cols);
    let mut row = 0usize;
    for (&m, &(px, py)) in mults.iter().zip(config.points.iter()) {
        // power tables for this point
        let mut powx = vec![1u64; du + 1];
        let mut powy = vec![1u64; du + 1];
        for e in 1..=du {
            powx[e] = powx[e - 1] * px % p;
            powy[e] = powy[e - 1] * py % p;
        }
        for order in 0..m as usize {
            for dy in 0..=order {
                let dx = order - dy;
                // row of the Hasse derivative D^(dx, dy) evaluated at (px, py)
                let mut col = 0usize;
                for total in 0..=du {
                    for b in 0..=total {
                        let a = total - b;
                        if a >= dx && b >= dy {
                            let v = binom[a][dx] * binom[b][dy] % p * powx[a - dx] % p
                                * powy[b - dy]
                                % p;
                            mat.set(row, col, v);
                        }
                        col += 1;
                    }
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, rows);
    Ok(ConditionsMatrix { matrix: mat, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimCertificate {
    /// Full expected rank observed: dimension equals the expected dimension
    /// for general points.
    Nonspecial,
    /// Zero kernel observed: the system is empty for general points.
    Empty,
    /// No certificate; the observed dimension is Monte-Carlo evidence only.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub d: u64,
    pub prime: u64,
    pub seed: u64,
    pub trials_run: u32,
    pub rows: usize,
    pub cols: usize,
    pub max_rank: usize,
    pub dim_observed: i64,
    pub edim: i64,
    pub certificate: DimCertificate,
}

/// Observed dimension of the degree-d system at `trials` random point
/// configurations, with certification by semicontinuity where the observed
/// rank is conclusive.
pub fn dim_system(
    d: u64,
    mults: &MultiplicitySequence,
    prime: u64,
    trials: u32,
    seed: u64,
) -> Result<DimReport, OracleError> {
    if trials == 0 {
        return Err(OracleError::NoTrials);
    }
    validate_prime(prime)?;
    if prime <= d {
        return Err(OracleError::PrimeTooSmall { p: prime, d });
    }
    let cols = checked_cols(d)?;
    let rows_big: u128 = mults
        .mults()
        .iter()
        .map(|&m| (m as u128) * (m as u128 + 1) / 2)
        .sum();
    if rows_big.saturating_mul(cols as u128) > 50_000_000 {
        return Err(OracleError::InstanceTooLarge(format!("{rows_big}x{cols} matrix")));
    }
    let rows = rows_big as usize;
    let full = rows.min(cols);
    let mut max_rank = 0usize;
    let mut trials_run = 0u32;
    for i in 0..trials {
        let config = sample_config(mults.s(), prime, rng::substream(seed, i as u64));
        let cm = build_conditions(d, mults.mults(), &config)?;
        debug_assert_eq!(cm.matrix.rows, rows);
        debug_assert_eq!(cm.matrix.cols, cols);
        max_rank = max_rank.max(cm.matrix.rank());
        trials_run += 1;
        if max_rank == full {
            break;
        }
    }
    let dim_observed = cols as i64 - 1 - max_rank as i64;
    let edim_val = edim_big(2, d, mults);
    let edim = i64::try_from(edim_val)
        .map_err(|_| OracleError::Internal("edim exceeds i64".into()))?;
    let certificate = if max_rank == cols {
        DimCertificate::Empty
    } else if max_rank == full {
        DimCertificate::Nonspecial
    } else {
        DimCertificate::None
    };
    Ok(DimReport {
        d,
        prime,
        seed,
        trials_run,
        rows,
        cols,
        max_rank,
        dim_observed,
        edim,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    pub scale: u64,
    pub prime: u64,
    pub seed: u64,
    /// 1 + the largest degree certified empty: a true lower bound on the
    /// initial degree at general points.
    pub alpha_lb: u64,
    /// Least degree where something was observed; an upper-bound heuristic.
    pub alpha_observed: u64,
    /// True when the observed dimension equals the expected one at
    /// `alpha_observed`, pinning the initial degree exactly.
    pub certified_exact: bool,
}

/// Scans degrees upward on the scaled multiplicities (scale·mᵢ) until the
/// system stops being certifiably empty.
pub fn alpha_scan(
    mults: &MultiplicitySequence,
    scale: u64,
    prime: u64,
    trials: u32,
    seed: u64,
) -> Result<AlphaReport, OracleError> {
    if scale == 0 {
        return Err(OracleError::ZeroParameter);
    }
    let scaled = MultiplicitySequence::new(
        mults.mults().iter().map(|&m| m * scale).collect(),
    )
    .expect("scaled multiplicities stay positive");
    // a union of scale·mᵢ lines per point realizes degree scale·Σmᵢ, so the
    // scan terminates before the cap
    let cap = u64::try_from(scaled.sum())
        .map_err(|_| OracleError::InstanceTooLarge("scaled multiplicity sum".into()))?;
    for d in 0..=cap {
        let report = dim_system(d, &scaled, prime, trials, rng::substream(seed, d))?;
        if report.certificate != DimCertificate::Empty {
            return Ok(AlphaReport {
                scale,
                prime,
                seed,
                alpha_lb: d,
                alpha_observed: d,
                certified_exact: report.dim_observed == report.edim && report.edim >= 0,
            });
        }
    }
    Err(OracleError::Internal(
        "system still empty at the product-of-lines degree".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeContainment {
    pub t: u64,
    pub dim_symbolic: usize,
    pub dim_product: usize,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedReport {
    pub r: u64,
    pub t_max: u64,
    pub prime: u64,
    pub seed: u64,
    pub per_degree: Vec<DegreeContainment>,
    pub all_contained: bool,
}

// monomial index within the degree-≤D basis: blocks by total degree, then by
// the y-exponent; the degree-≤a basis is a prefix of the degree-≤b basis
// for a ≤ b.
fn mono_index(total: usize, b: usize) -> usize {
    total * (total + 1) / 2 + b
}

fn poly_mul(p: u64, f: &[u64], fdeg: usize, g: &[u64], gdeg: usize) -> Vec<u64> {
    let mut out = vec![0u64; mono_index(fdeg + gdeg, fdeg + gdeg) + 1];
    for tf in 0..=fdeg {
        for bf in 0..=tf {
            let cf = f[mono_index(tf, bf)];
            if cf == 0 {
                continue;
            }
            for tg in 0..=gdeg {
                for bg in 0..=tg {
                    let cg = g[mono_index(tg, bg)];
                    if cg == 0 {
                        continue;
                    }
                    let idx = mono_index(tf + tg, bf + bg);
                    out[idx] = (out[idx] + cf * cg) % p;
                }
            }
        }
    }
    out
}

/// Degree-by-degree spot check of I^(2r) ⊆ M^r·I^r at one random
/// configuration: for each t ≤ t_max the kernel of the order-2r·mᵢ
/// conditions is compared against the span of (monomials of degree ≤ r) ×
/// (degree-(t−r) part of I^r). Containment at the sampled configuration is
/// evidence, not proof; a failure is a red flag to investigate.
pub fn truncated_containment_check(
    mults: &MultiplicitySequence,
    r: u64,
    prime: u64,
    t_max: u64,
    seed: u64,
) -> Result<TruncatedReport, OracleError> {
    if r == 0 {
        return Err(OracleError::ZeroParameter);
    }
    validate_prime(prime)?;
    let scale2r = 2 * r;
    let top_mult = mults.largest().saturating_mul(scale2r);
    if prime <= t_max.max(top_mult) {
        return Err(OracleError::PrimeTooSmall { p: prime, d: t_max.max(top_mult) });
    }
    let n_top = checked_cols(t_max)?;
    if n_top > 2_000 || r > 8 {
        return Err(OracleError::InstanceTooLarge(format!(
            "truncated check with {n_top} monomials, r = {r}"
        )));
    }
    let config = sample_config(mults.s(), prime, rng::substream(seed, 0));

    let t_us = t_max as usize;
    let r_us = r as usize;

    // graded pieces of I at the configuration, as kernel bases
    let mut simple: Vec<Vec<Vec<u64>>> = Vec::with_capacity(t_us + 1);
    for g in 0..=t_us {
        let cm = build_conditions(g as u64, mults.mults(), &config)?;
        simple.push(cm.matrix.kernel_basis());
    }

    // powers: w[j][g] echelon basis of the degree-≤g part of I^(j+1)
    let budget = t_us.saturating_sub(r_us);
    let mut prev: Vec<Vec<Vec<u64>>> = simple[..=budget.min(t_us)].to_vec();
    for _ in 1..r_us {
        let mut next: Vec<Vec<Vec<u64>>> = Vec::with_capacity(budget + 1);
        for g in 0..=budget {
            let mut ech = Echelon::new(prime, mono_index(g, g) + 1);
            for split in 0..=g {
                let (ga, gb) = (split, g - split);
                for w in &prev[ga] {
                    for v in &simple[gb] {
                        let prod = poly_mul(prime, w, ga, v, gb);
                        ech.insert(prod);
                    }
                }
            }
            next.push(basis_of(&ech));
        }
        prev = next;
    }
    let power_r = prev;

    let mut per_degree = Vec::with_capacity(t_us + 1);
    let mut all_contained = true;
    for t in 0..=t_us {
        let n_t = mono_index(t, t) + 1;
        // span of monomial·u over monomials of degree ≤ r
        let mut ech = Echelon::new(prime, n_t);
        if t >= r_us {
            let g = t - r_us;
            for u in &power_r[g.min(budget)] {
                for mono_t in 0..=r_us {
                    for mono_b in 0..=mono_t {
                        let mono_a = mono_t - mono_b;
                        if g + mono_t > t {
                            continue;
                        }
                        let mut shifted = vec![0u64; n_t];
                        for ut in 0..=g {
                            for ub in 0..=ut {
                                let c = u[mono_index(ut, ub)];
                                if c != 0 {
                                    let idx = mono_index(ut + mono_a + mono_b, ub + mono_b);
                                    shifted[idx] = (shifted[idx] + c) % prime;
                                }
                            }
                        }
                        ech.insert(shifted);
                    }
                }
            }
        }
        // degree-≤t part of the symbolic power
        let scaled: Vec<u64> = mults.mults().iter().map(|&m| m * scale2r).collect();
        let cm = build_conditions(t as u64, &scaled, &config)?;
        let sym = cm.matrix.kernel_basis();
        let contained = sym.iter().all(|v| ech.contains(v));
        all_contained &= contained;
        per_degree.push(DegreeContainment {
            t: t as u64,
            dim_symbolic: sym.len(),
            dim_product: ech.rank(),
            contained,
        });
    }
    Ok(TruncatedReport {
        r,
        t_max,
        prime,
        seed,
        per_degree,
        all_contained,
    })
}

fn basis_of(ech: &Echelon) -> Vec<Vec<u64>> {
    ech.basis_rows().to_vec()
}

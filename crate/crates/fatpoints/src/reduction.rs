//! The m-reduction procedure on integer sequences, the chain driver, and
//! replayable certificates.
//!
//! One reduction with parameter m acts on the last m entries a₁,…,a_m of a
//! positive sequence. Walking k = m,…,1 it picks a reducer r_k from the pool
//! Z_k ⊆ {1,…,m} (r_k = a_k when a_k < m and a_k ≤ max(Z_k), otherwise
//! r_k = max(Z_k)), subtracts it (c_k = a_k − r_k) and removes it from the
//! pool. If the chosen reducer was already consumed the procedure stops and
//! the sequence is not m-reducible. A successful reduction drops the size by
//! exactly m(m+1)/2.
//!
//! Chains apply a list of parameters in order, deleting trailing zeros
//! between steps, and record every step so a verdict built on top of them
//! can be replayed and checked independently.

use crate::seq::IntSequence;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("reduction parameter m must be positive")]
    NonPositiveParameter,
    #[error("entry at position {position} is zero; reductions operate on positive sequences (strip trailing zeros first)")]
    ZeroEntry { position: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("sequence is {0}-reducible; nothing to classify")]
    Reducible(u64),
    #[error(transparent)]
    Input(#[from] ReductionError),
}

/// Why a reduction stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    /// Fewer than m entries.
    TooShort,
    /// A reducer was requested twice; the tail is too flat.
    FlatTail,
}

/// Diagnostics for a failed reduction.
///
/// For a `FlatTail` stop at loop index k′ the `witness` pair (k, ℓ) is
/// 1-indexed into the whole input and satisfies r−m+1 ≤ k < ℓ ≤ r,
/// b_k ≤ b_ℓ and b_k < m, where ℓ is the position whose step consumed the
/// reducer that position k asked for again.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionFailure {
    pub reason: FailureReason,
    pub stop_index: Option<u64>,
    pub witness: Option<(u64, u64)>,
    pub blocking_reducer: Option<u64>,
    /// Reducers assigned before the stop, as (a-block position, value),
    /// ascending by position.
    pub partial_reducers: Vec<(u64, u64)>,
}

/// One successful reduction step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub m: u64,
    #[serde(skip)]
    pub input: IntSequence,
    /// (a-block position k, reducer r_k), 1-indexed, ascending by k.
    pub reducers: Vec<(u64, u64)>,
    pub output: IntSequence,
}

impl ReductionStep {
    /// Reducer values in position order r₁,…,r_m.
    pub fn reducer_values(&self) -> Vec<u64> {
        self.reducers.iter().map(|&(_, r)| r).collect()
    }
}

/// Full trace of a chain of reductions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    pub initial: IntSequence,
    pub steps: Vec<ReductionStep>,
    #[serde(rename = "final")]
    pub final_seq: IntSequence,
    pub final_size: u128,
}

impl ReductionCertificate {
    /// Re-checks the whole trace: step inputs chain together, every step's
    /// reducers are distinct values in {1,…,m} at the right positions, the
    /// per-step size drop is m(m+1)/2, and the final size matches.
    pub fn validate(&self) -> Result<(), String> {
        let mut current = self.initial.clone();
        let mut drop_total: u128 = 0;
        for (j, step) in self.steps.iter().enumerate() {
            if step.input != current {
                return Err(format!("step {}: input does not chain", j + 1));
            }
            let m = step.m;
            if step.reducers.len() != m as usize {
                return Err(format!("step {}: expected {} reducers", j + 1, m));
            }
            let mut seen = vec![false; m as usize + 1];
            for (idx, &(k, r)) in step.reducers.iter().enumerate() {
                if k != idx as u64 + 1 {
                    return Err(format!("step {}: reducer positions not 1..m", j + 1));
                }
                if r == 0 || r > m || seen[r as usize] {
                    return Err(format!("step {}: bad reducer {r}", j + 1));
                }
                seen[r as usize] = true;
            }
            let n = step.input.len();
            let mut expect = step.input.entries().to_vec();
            for &(k, r) in &step.reducers {
                let pos = n - m as usize + k as usize - 1;
                expect[pos] = expect[pos]
                    .checked_sub(r)
                    .ok_or_else(|| format!("step {}: reducer exceeds entry", j + 1))?;
            }
            if expect != step.output.entries() {
                return Err(format!("step {}: output mismatch", j + 1));
            }
            let drop = (m as u128) * (m as u128 + 1) / 2;
            if step.input.size() - step.output.size() != drop {
                return Err(format!("step {}: size drop is not m(m+1)/2", j + 1));
            }
            drop_total += drop;
            current = step.output.stripped();
        }
        if current != self.final_seq {
            return Err("final sequence mismatch".into());
        }
        if self.initial.size() - drop_total != self.final_size {
            return Err("final size mismatch".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum ReduceOutcome {
    Reduced(ReductionStep),
    Failed(ReductionFailure),
}

/// Applies one m-reduction to a sequence of positive integers.
///
/// Trailing-zero stripping is the chain driver's job; any zero entry here is
/// rejected (zeros cannot occur mid-sequence in chains started from a
/// staircase, so one is always a driver bug).
pub fn reduce_once(seq: &IntSequence, m: u64) -> Result<ReduceOutcome, ReductionError> {
    if m == 0 {
        return Err(ReductionError::NonPositiveParameter);
    }
    if let Some(pos) = seq.entries().iter().position(|&e| e == 0) {
        return Err(ReductionError::ZeroEntry { position: pos + 1 });
    }
    let n = seq.len();
    if (n as u64) < m {
        return Ok(ReduceOutcome::Failed(ReductionFailure {
            reason: FailureReason::TooShort,
            stop_index: None,
            witness: None,
            blocking_reducer: None,
            partial_reducers: Vec::new(),
        }));
    }
    let m_us = m as usize;
    let a = &seq.entries()[n - m_us..];

    let mut present = vec![true; m_us + 1];
    let mut z = m; // max of the current pool; lazily advanced downward
    let mut used_at = vec![0u64; m_us + 1]; // reducer value -> loop index k that consumed it
    let mut reducers = vec![0u64; m_us];
    let mut c = vec![0u64; m_us];

    for k in (1..=m_us).rev() {
        while !present[z as usize] {
            z -= 1;
        }
        let a_k = a[k - 1];
        let r_k = if a_k < m && a_k <= z { a_k } else { z };
        c[k - 1] = a_k - r_k;
        if !present[r_k as usize] {
            // Z_{k-1} = Z_k: the reducer was consumed at an earlier loop index.
            let l_prime = used_at[r_k as usize];
            let full = |i: u64| n as u64 - m + i;
            let partial = ((k + 1)..=m_us)
                .map(|i| (i as u64, reducers[i - 1]))
                .collect();
            return Ok(ReduceOutcome::Failed(ReductionFailure {
                reason: FailureReason::FlatTail,
                stop_index: Some(k as u64),
                witness: Some((full(k as u64), full(l_prime))),
                blocking_reducer: Some(r_k),
                partial_reducers: partial,
            }));
        }
        present[r_k as usize] = false;
        used_at[r_k as usize] = k as u64;
        reducers[k - 1] = r_k;
    }

    let mut out = seq.entries()[..n - m_us].to_vec();
    out.extend_from_slice(&c);
    Ok(ReduceOutcome::Reduced(ReductionStep {
        m,
        input: seq.clone(),
        reducers: (1..=m_us).map(|k| (k as u64, reducers[k - 1])).collect(),
        output: IntSequence::new(out),
    }))
}

/// A chain that stopped, with the 1-based index of the failing step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainFailure {
    pub step_index: usize,
    pub failure: ReductionFailure,
    pub completed_steps: Vec<ReductionStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum ChainOutcome {
    Complete(ReductionCertificate),
    Failed(ChainFailure),
}

/// Applies the reductions `ms` in order, deleting trailing zeros between
/// steps. Returns the full certificate or the first failure.
pub fn reduce_chain(initial: &IntSequence, ms: &[u64]) -> Result<ChainOutcome, ReductionError> {
    let mut current = initial.clone();
    let mut steps = Vec::with_capacity(ms.len());
    for (j, &m) in ms.iter().enumerate() {
        match reduce_once(&current, m)? {
            ReduceOutcome::Reduced(step) => {
                current = step.output.stripped();
                steps.push(step);
            }
            ReduceOutcome::Failed(failure) => {
                return Ok(ChainOutcome::Failed(ChainFailure {
                    step_index: j + 1,
                    failure,
                    completed_steps: steps,
                }))
            }
        }
    }
    let final_size = current.size();
    Ok(ChainOutcome::Complete(ReductionCertificate {
        initial: initial.clone(),
        steps,
        final_seq: current,
        final_size,
    }))
}

/// Labels a failing (seq, m) pair with the reason and, for flat tails, the
/// witness pair. Calling this on a reducible sequence is a contract error.
pub fn classify_failure(seq: &IntSequence, m: u64) -> Result<ReductionFailure, ClassifyError> {
    match reduce_once(seq, m)? {
        ReduceOutcome::Failed(f) => Ok(f),
        ReduceOutcome::Reduced(_) => Err(ClassifyError::Reducible(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> IntSequence {
        IntSequence::from(v.to_vec())
    }

    fn reduced(s: &[u64], m: u64) -> ReductionStep {
        match reduce_once(&seq(s), m).unwrap() {
            ReduceOutcome::Reduced(step) => step,
            ReduceOutcome::Failed(f) => panic!("expected success, got {f:?}"),
        }
    }

    fn failed(s: &[u64], m: u64) -> ReductionFailure {
        match reduce_once(&seq(s), m).unwrap() {
            ReduceOutcome::Failed(f) => f,
            ReduceOutcome::Reduced(st) => panic!("expected failure, got {st:?}"),
        }
    }

    #[test]
    fn row_a() {
        let step = reduced(&[5, 5, 5], 3);
        assert_eq!(step.reducer_values(), vec![1, 2, 3]);
        assert_eq!(step.output, seq(&[4, 3, 2]));
    }

    #[test]
    fn row_b() {
        let step = reduced(&[5, 5, 3, 1], 4);
        assert_eq!(step.reducer_values(), vec![2, 4, 3, 1]);
        assert_eq!(step.output, seq(&[3, 1, 0, 0]));
    }

    #[test]
    fn row_c() {
        let step = reduced(&[4, 1, 3], 3);
        assert_eq!(step.reducer_values(), vec![2, 1, 3]);
        assert_eq!(step.output, seq(&[2, 0, 0]));
    }

    #[test]
    fn row_d_stops() {
        let f = failed(&[4, 2, 2], 3);
        assert_eq!(f.reason, FailureReason::FlatTail);
        assert_eq!(f.stop_index, Some(2)); // Z₁ = Z₂
        assert_eq!(f.blocking_reducer, Some(2));
        assert_eq!(f.partial_reducers, vec![(3, 2)]);
        assert_eq!(f.witness, Some((2, 3)));
    }

    #[test]
    fn four_reduction_of_23452() {
        let step = reduced(&[2, 3, 4, 5, 2], 4);
        assert_eq!(step.output.stripped(), seq(&[2, 2, 1, 1]));
    }

    #[test]
    fn non_reducible_examples_repeat_reducers() {
        let f = failed(&[1, 2, 3, 3], 4); // r₄ = r₃ = 3
        assert_eq!(f.reason, FailureReason::FlatTail);
        assert_eq!(f.blocking_reducer, Some(3));
        assert_eq!(f.stop_index, Some(3));
        assert_eq!(f.witness, Some((3, 4)));

        let f = failed(&[3, 2, 4, 2], 4); // r₂ = r₄ = 2
        assert_eq!(f.blocking_reducer, Some(2));
        assert_eq!(f.stop_index, Some(2));
        assert_eq!(f.witness, Some((2, 4)));
    }

    #[test]
    fn too_short() {
        let f = failed(&[1, 2], 4);
        assert_eq!(f.reason, FailureReason::TooShort);
        assert_eq!(f.witness, None);
    }

    #[test]
    fn zero_entries_rejected() {
        assert_eq!(
            reduce_once(&seq(&[3, 0, 2]), 2),
            Err(ReductionError::ZeroEntry { position: 2 })
        );
        assert_eq!(
            reduce_once(&seq(&[1, 2, 0]), 1),
            Err(ReductionError::ZeroEntry { position: 3 })
        );
        assert_eq!(reduce_once(&seq(&[1]), 0), Err(ReductionError::NonPositiveParameter));
    }

    #[test]
    fn chain_traces_the_worked_example() {
        let initial = IntSequence::from_iter(1..=10);
        let outcome = reduce_chain(&initial, &[4, 4, 4, 3, 3, 3, 3]).unwrap();
        let cert = match outcome {
            ChainOutcome::Complete(c) => c,
            ChainOutcome::Failed(f) => panic!("chain failed: {f:?}"),
        };
        let states: Vec<&[u64]> = vec![
            &[1, 2, 3, 4, 5, 6, 6, 6, 6, 6],
            &[1, 2, 3, 4, 5, 6, 5, 4, 3, 2],
            &[1, 2, 3, 4, 5, 6, 4, 0, 0, 0],
            &[1, 2, 3, 4, 4, 4, 1],
            &[1, 2, 3, 4, 2, 1, 0],
            &[1, 2, 3, 1, 0, 0],
            &[1, 0, 0, 0],
        ];
        for (step, want) in cert.steps.iter().zip(states.iter()) {
            assert_eq!(step.output.entries(), *want);
        }
        let reducer_rows: Vec<Vec<u64>> = vec![
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 4],
            vec![1, 4, 3, 2],
            vec![1, 2, 3],
            vec![2, 3, 1],
            vec![3, 2, 1],
            vec![2, 3, 1],
        ];
        for (step, want) in cert.steps.iter().zip(reducer_rows.iter()) {
            assert_eq!(&step.reducer_values(), want);
        }
        assert_eq!(cert.final_seq, seq(&[1]));
        assert_eq!(cert.final_size, 1);
        cert.validate().unwrap();
    }

    #[test]
    fn chain_failure_is_positional() {
        // five 2-reductions on (1,...,5): states (1,2,3,3,3), (1,2,3,2,1),
        // (1,2,3), (1,1,1), then the fifth step reuses reducer 1.
        let outcome = reduce_chain(&IntSequence::from_iter(1..=5), &[2, 2, 2, 2, 2]).unwrap();
        let fail = match outcome {
            ChainOutcome::Failed(f) => f,
            ChainOutcome::Complete(c) => panic!("expected failure, got {c:?}"),
        };
        assert_eq!(fail.step_index, 5);
        assert_eq!(fail.failure.reason, FailureReason::FlatTail);
        assert_eq!(fail.failure.blocking_reducer, Some(1));
        assert_eq!(fail.completed_steps.len(), 4);
        assert_eq!(fail.completed_steps[0].output, seq(&[1, 2, 3, 3, 3]));
        assert_eq!(fail.completed_steps[1].output, seq(&[1, 2, 3, 2, 1]));
        assert_eq!(fail.completed_steps[2].output.stripped(), seq(&[1, 2, 3]));
        assert_eq!(fail.completed_steps[3].output, seq(&[1, 1, 1]));
        assert_eq!(fail.failure.witness, Some((2, 3)));
    }

    #[test]
    fn single_1_reduction_decrements_last() {
        for d in 0u64..8 {
            let initial = IntSequence::from_iter(1..=d + 1);
            match reduce_chain(&initial, &[1]).unwrap() {
                ChainOutcome::Complete(cert) => {
                    let mut want: Vec<u64> = (1..=d + 1).collect();
                    *want.last_mut().unwrap() -= 1;
                    assert_eq!(cert.steps[0].output.entries(), &want[..]);
                }
                ChainOutcome::Failed(f) => panic!("m=1 reduction failed: {f:?}"),
            }
        }
    }

    #[test]
    fn classify_contract() {
        assert!(matches!(
            classify_failure(&seq(&[1, 2]), 4),
            Ok(ReductionFailure { reason: FailureReason::TooShort, .. })
        ));
        let w = classify_failure(&seq(&[4, 2, 2]), 3).unwrap();
        assert_eq!(w.witness, Some((2, 3)));
        let w = classify_failure(&seq(&[1, 2, 3, 3]), 4).unwrap();
        assert_eq!(w.witness, Some((3, 4)));
        assert!(matches!(
            classify_failure(&seq(&[5, 5, 5]), 3),
            Err(ClassifyError::Reducible(3))
        ));
    }

    // Exhaustive audit of the flat-tail witness contract on small inputs:
    // for every failing pair the witness (k, ℓ) satisfies
    // r−m+1 ≤ k < ℓ ≤ r, b_k ≤ b_ℓ, b_k < m.
    #[test]
    fn witness_contract_exhaustive_small() {
        fn check(entries: &[u64], m: u64) {
            if let Ok(ReduceOutcome::Failed(f)) = reduce_once(&IntSequence::from(entries.to_vec()), m) {
                let r = entries.len() as u64;
                match f.reason {
                    FailureReason::TooShort => assert!(r < m),
                    FailureReason::FlatTail => {
                        let (k, l) = f.witness.expect("flat tail carries a witness");
                        assert!(r >= m);
                        assert!(r - m < k && k < l && l <= r);
                        let bk = entries[(k - 1) as usize];
                        let bl = entries[(l - 1) as usize];
                        assert!(bk <= bl && bk < m, "witness violated for {entries:?} m={m}");
                    }
                }
            }
        }
        let mut stack: Vec<Vec<u64>> = vec![vec![]];
        while let Some(cur) = stack.pop() {
            if !cur.is_empty() {
                for m in 1..=6 {
                    check(&cur, m);
                }
            }
            if cur.len() < 6 {
                for e in 1..=6 {
                    let mut next = cur.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
    }
}

//! Finite integer sequences and multiplicity sequences.
//!
//! [`IntSequence`] is the state the reduction procedure operates on (entries
//! may be zero); [`MultiplicitySequence`] is a non-empty, descending list of
//! positive point multiplicities. Both parse from comma-separated text where
//! each token may be a plain value, a repeat `a^b` (`a` repeated `b` times)
//! or an inclusive range `lo..hi`.

use num_bigint::BigUint;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("multiplicity sequence must be non-empty")]
    Empty,
    #[error("multiplicity must be positive, found 0")]
    ZeroMultiplicity,
    #[error("cannot parse `{token}` as an integer, repeat a^b or range lo..hi")]
    BadToken { token: String },
    #[error("repeat count in `{token}` must be positive")]
    ZeroRepeat { token: String },
    #[error("sequence literal `{0}` is too large")]
    TooLarge(String),
}

/// A finite sequence of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntSequence(Vec<u64>);

impl IntSequence {
    pub fn new(entries: Vec<u64>) -> Self {
        IntSequence(entries)
    }

    pub fn empty() -> Self {
        IntSequence(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the entries.
    pub fn size(&self) -> u128 {
        self.0.iter().map(|&e| e as u128).sum()
    }

    /// True iff `self` is no longer than `other` and entrywise `≤` on the
    /// shared prefix.
    pub fn dominated_by(&self, other: &IntSequence) -> bool {
        self.len() <= other.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Copy with trailing zeros removed.
    pub fn stripped(&self) -> IntSequence {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        IntSequence(v)
    }

    pub fn parse(text: &str) -> Result<Self, SeqError> {
        Ok(IntSequence(parse_tokens(text)?))
    }
}

impl From<Vec<u64>> for IntSequence {
    fn from(v: Vec<u64>) -> Self {
        IntSequence(v)
    }
}

impl FromIterator<u64> for IntSequence {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        IntSequence(iter.into_iter().collect())
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// Point multiplicities m₁ ≥ m₂ ≥ … ≥ m_s ≥ 1, s ≥ 1.
///
/// Construction sorts descending and rejects zeros, so every downstream
/// criterion can assume ordered positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiplicitySequence(Vec<u64>);

impl MultiplicitySequence {
    pub fn new(mut mults: Vec<u64>) -> Result<Self, SeqError> {
        if mults.is_empty() {
            return Err(SeqError::Empty);
        }
        if mults.contains(&0) {
            return Err(SeqError::ZeroMultiplicity);
        }
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Ok(MultiplicitySequence(mults))
    }

    pub fn parse(text: &str) -> Result<Self, SeqError> {
        Self::new(parse_tokens(text)?)
    }

    pub fn mults(&self) -> &[u64] {
        &self.0
    }

    /// Number of points.
    pub fn s(&self) -> usize {
        self.0.len()
    }

    /// 1-indexed multiplicity mᵢ.
    pub fn nth(&self, i: usize) -> Option<u64> {
        if i == 0 {
            None
        } else {
            self.0.get(i - 1).copied()
        }
    }

    pub fn largest(&self) -> u64 {
        self.0[0]
    }

    pub fn smallest(&self) -> u64 {
        *self.0.last().unwrap()
    }

    /// Σ mᵢ
    pub fn sum(&self) -> BigUint {
        self.0.iter().map(|&m| BigUint::from(m)).sum()
    }

    /// Σ mᵢ²
    pub fn sum_squares(&self) -> BigUint {
        self.0
            .iter()
            .map(|&m| BigUint::from(m) * BigUint::from(m))
            .sum()
    }

    /// Σ mᵢ(mᵢ+1)
    pub fn sum_m_m_plus_1(&self) -> BigUint {
        self.0
            .iter()
            .map(|&m| BigUint::from(m) * (BigUint::from(m) + 1u32))
            .sum()
    }

    pub fn all_equal(&self) -> bool {
        self.0[0] == self.0[self.0.len() - 1]
    }

    /// Compressed `a^b` rendering, e.g. `8^9,1^103`.
    pub fn to_compressed(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            if !out.is_empty() {
                out.push(',');
            }
            let run = j - i;
            if run == 1 {
                out.push_str(&v.to_string());
            } else {
                out.push_str(&format!("{v}^{run}"));
            }
            i = j;
        }
        out
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

// Hard cap on expanded literal length so `1..2^40` does not OOM the parser.
const MAX_PARSED_LEN: u64 = 10_000_000;

fn parse_tokens(text: &str) -> Result<Vec<u64>, SeqError> {
    let mut out: Vec<u64> = Vec::new();
    for raw in text.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            continue;
        }
        if let Some((lo, hi)) = token.split_once("..") {
            let lo: u64 = lo
                .trim()
                .parse()
                .map_err(|_| SeqError::BadToken { token: token.into() })?;
            let hi: u64 = hi
                .trim()
                .parse()
                .map_err(|_| SeqError::BadToken { token: token.into() })?;
            let span = lo.abs_diff(hi) as u128 + 1;
            if span > MAX_PARSED_LEN as u128 || out.len() as u128 + span > MAX_PARSED_LEN as u128 {
                return Err(SeqError::TooLarge(token.into()));
            }
            if lo <= hi {
                out.extend(lo..=hi);
            } else {
                out.extend((hi..=lo).rev());
            }
        } else if let Some((val, count)) = token.split_once('^') {
            let val: u64 = val
                .trim()
                .parse()
                .map_err(|_| SeqError::BadToken { token: token.into() })?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| SeqError::BadToken { token: token.into() })?;
            if count == 0 {
                return Err(SeqError::ZeroRepeat { token: token.into() });
            }
            if count > MAX_PARSED_LEN || out.len() as u64 + count > MAX_PARSED_LEN {
                return Err(SeqError::TooLarge(token.into()));
            }
            out.extend(std::iter::repeat_n(val, count as usize));
        } else {
            let val: u64 = token
                .parse()
                .map_err(|_| SeqError::BadToken { token: token.into() })?;
            out.push(val);
        }
    }
    Ok(out)
}

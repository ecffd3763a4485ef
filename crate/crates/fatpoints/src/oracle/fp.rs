//! Dense linear algebra over a prime field F_p, p < 2³¹.
//!
//! Ranks and kernels are computed by ordinary Gaussian elimination, which is
//! exact over a finite field. The incremental [`Echelon`] form doubles as a
//! rank accumulator and a span-membership test.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} out of range (need 2 < p < 2^31)")]
    PrimeOutOfRange(u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p // safe: a, b < p < 2^31
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn mr_witness(n: u64, mut d: u64, r: u32, a: u64) -> bool {
    let mut x = {
        // n < 2^31 here, but keep the square safe anyway
        let mut acc: u128 = 1;
        let mut base: u128 = (a % n) as u128;
        while d > 0 {
            if d & 1 == 1 {
                acc = acc * base % n as u128;
            }
            base = base * base % n as u128;
            d >>= 1;
        }
        acc as u64
    };
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..r {
        x = ((x as u128 * x as u128) % n as u128) as u64;
        if x == n - 1 {
            return false;
        }
    }
    true
}

/// Deterministic Miller–Rabin for n < 2⁶⁴.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    ![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .any(|&a| mr_witness(n, d, r, a))
}

pub fn validate_prime(p: u64) -> Result<(), FpError> {
    if p <= 2 || p >= 1 << 31 {
        return Err(FpError::PrimeOutOfRange(p));
    }
    if !is_prime(p) {
        return Err(FpError::NotPrime(p));
    }
    Ok(())
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.into_iter().map(|v| v % p));
        }
        FpMat { p, rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.p, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        // reduced row echelon form
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.row(i)[c] != 0) else {
                continue;
            };
            m.data.swap_chunks(pr, r, m.cols);
            let inv = invmod(m.row(r)[c], p);
            for j in c..m.cols {
                let v = mulmod(m.row(r)[j], inv, p);
                m.row_mut(r)[j] = v;
            }
            for i in 0..m.rows {
                if i != r && m.row(i)[c] != 0 {
                    let f = m.row(i)[c];
                    for j in c..m.cols {
                        let sub = mulmod(f, m.row(r)[j], p);
                        let v = (m.row(i)[j] + p - sub) % p;
                        m.row_mut(i)[j] = v;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; m.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::with_capacity(m.cols - pivot_cols.len());
        for f in 0..m.cols {
            if pivot_set[f] {
                continue;
            }
            let mut vec = vec![0u64; m.cols];
            vec[f] = 1;
            for (row_idx, &pc) in pivot_cols.iter().enumerate() {
                let coeff = m.row(row_idx)[f];
                if coeff != 0 {
                    vec[pc] = p - coeff;
                }
            }
            basis.push(vec);
        }
        basis
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (left, right) = self.split_at_mut(hi * width);
        left[lo * width..(lo + 1) * width].swap_with_slice(&mut right[..width]);
    }
}

/// Incrementally maintained row echelon basis with unit pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>, // pivot column of rows[i], strictly increasing order not required
}

impl Echelon {
    pub fn new(p: u64, cols: usize) -> Self {
        Echelon { p, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &pc) in self.rows.iter().zip(self.pivots.iter()) {
            let f = v[pc];
            if f != 0 {
                for j in 0..self.cols {
                    if row[j] != 0 {
                        let sub = mulmod(f, row[j], self.p);
                        v[j] = (v[j] + self.p - sub) % self.p;
                    }
                }
            }
        }
    }

    /// Inserts a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        for x in v.iter_mut() {
            *x %= self.p;
        }
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = invmod(v[pc], self.p);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv, self.p);
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// True iff the vector lies in the current span.
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// The accumulated basis rows.
    pub fn basis_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(65537));
        assert!(is_prime(2147483647));
        assert!(!is_prime(1));
        assert!(!is_prime(65536));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(validate_prime(65537).is_ok());
        assert!(validate_prime(4).is_err());
        assert!(validate_prime(1 << 31).is_err());
    }

    #[test]
    fn rank_examples() {
        let p = 65537;
        let id3 = FpMat::from_rows(p, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(id3.rank(), 3);
        let zero = FpMat::zero(p, 4, 5);
        assert_eq!(zero.rank(), 0);
        let dup = FpMat::from_rows(
            p,
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![0, 1, 1]],
        );
        assert_eq!(dup.rank(), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let p = 101;
        let m = FpMat::from_rows(p, vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, 7]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 4 - m.rank());
        for v in &basis {
            for i in 0..m.rows {
                let dot: u64 = m
                    .row(i)
                    .iter()
                    .zip(v.iter())
                    .map(|(&a, &b)| a * b % p)
                    .sum::<u64>()
                    % p;
                assert_eq!(dot, 0);
            }
        }
        // kernel vectors are independent
        let mut ech = Echelon::new(p, 4);
        for v in basis {
            assert!(ech.insert(v));
        }
    }

    #[test]
    fn echelon_membership() {
        let p = 13;
        let mut ech = Echelon::new(p, 3);
        assert!(ech.insert(vec![1, 2, 3]));
        assert!(!ech.insert(vec![2, 4, 6]));
        assert!(ech.insert(vec![0, 0, 5]));
        assert!(ech.contains(&[1, 2, 8]));
        assert!(!ech.contains(&[0, 1, 0]));
        assert_eq!(ech.rank(), 2);
    }
}

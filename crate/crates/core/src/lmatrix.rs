//! The summation index of the γ formula: strictly upper triangular
//! nonnegative integer matrices `L` with `Σ_{q>p} l[p][q] ≤ α[p+1]`.
//!
//! Indices here are 0-based: row `p` ranges over `0..d-1` and its entries are
//! `l[p][p+1..d]`, bounded in sum by `α[p+1]`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// One summand index of the γ formula, tied to the partition it was built for.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LMatrix {
    alpha: Partition,
    // Row-major strictly upper triangle: row p holds d-1-p entries.
    entries: Vec<u32>,
}

fn row_offset(d: usize, p: usize) -> usize {
    // Σ_{r<p} (d-1-r)
    p * (d - 1) - p * p.saturating_sub(1) / 2
}

impl LMatrix {
    /// The all-zero matrix, always valid.
    pub fn zero(alpha: &Partition) -> Self {
        let d = alpha.len();
        LMatrix { alpha: alpha.clone(), entries: alloc::vec![0; d * (d - 1) / 2] }
    }

    /// Builds from the strictly-upper rows: `rows[p]` lists `l[p][p+1..d]`.
    pub fn from_rows(alpha: &Partition, rows: &[Vec<u32>]) -> Result<Self> {
        let d = alpha.len();
        let invalid = |reason: alloc::string::String| Error::InvalidLMatrix { alpha: alpha.clone(), reason };
        if rows.len() != d - 1 {
            return Err(invalid(format!("expected {} rows, got {}", d - 1, rows.len())));
        }
        let mut entries = Vec::with_capacity(d * (d - 1) / 2);
        for (p, row) in rows.iter().enumerate() {
            if row.len() != d - 1 - p {
                return Err(invalid(format!("row {p} has {} entries, expected {}", row.len(), d - 1 - p)));
            }
            let sum: u64 = row.iter().map(|&x| u64::from(x)).sum();
            if sum > u64::from(alpha.parts()[p + 1]) {
                return Err(invalid(format!("row {p} sums to {sum}, bound is {}", alpha.parts()[p + 1])));
            }
            entries.extend_from_slice(row);
        }
        Ok(LMatrix { alpha: alpha.clone(), entries })
    }

    pub fn alpha(&self) -> &Partition {
        &self.alpha
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// `l[p][q]`; zero on and below the diagonal.
    pub fn entry(&self, p: usize, q: usize) -> u32 {
        let d = self.order();
        assert!(p < d && q < d, "index out of range");
        if q <= p {
            return 0;
        }
        self.entries[row_offset(d, p) + (q - p - 1)]
    }

    /// `Σ_{q>p} l[p][q]`.
    pub fn row_sum(&self, p: usize) -> u32 {
        (p + 1..self.order()).map(|q| self.entry(p, q)).sum()
    }

    /// `Σ_{r<q} l[r][q]`.
    pub fn column_sum(&self, q: usize) -> u32 {
        (0..q).map(|p| self.entry(p, q)).sum()
    }

    /// Re-checks the row-sum constraints against the stored partition.
    pub fn is_valid(&self) -> bool {
        (0..self.order().saturating_sub(1)).all(|p| self.row_sum(p) <= self.alpha.parts()[p + 1])
    }
}

/// Full `d × d` grid, zeros included.
impl fmt::Display for LMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.order();
        let width = self.entries.iter().map(|e| count_digits(*e)).max().unwrap_or(1);
        for p in 0..d {
            if p > 0 {
                writeln!(f)?;
            }
            for q in 0..d {
                if q > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", self.entry(p, q))?;
            }
        }
        Ok(())
    }
}

fn count_digits(mut x: u32) -> usize {
    let mut n = 1;
    while x >= 10 {
        x /= 10;
        n += 1;
    }
    n
}

impl fmt::Debug for LMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LMatrix[{:?}; {:?}]", self.alpha, self.entries)
    }
}

/// `∏_{p=1}^{d-1} C(α_{p+1} + d - p, d - p)` (1-based), the number of
/// matrices [`enumerate_l`] yields.
pub fn count_l(alpha: &Partition) -> BigUint {
    let d = alpha.len() as u64;
    let parts = alpha.parts();
    (1..d).fold(BigUint::one(), |acc, p| {
        let bound = u64::from(parts[p as usize]);
        acc * binomial(bound + d - p, (d - p) as i64)
    })
}

/// All admissible values of one row, in lexicographic order.
#[derive(Debug, Clone)]
pub(crate) struct RowOptions {
    pub(crate) width: usize,
    // `len() * width` entries.
    pub(crate) values: Vec<u32>,
    pub(crate) sums: Vec<u32>,
}

impl RowOptions {
    fn new(width: usize, bound: u32) -> Self {
        let mut opts = RowOptions { width, values: Vec::new(), sums: Vec::new() };
        let mut buf = alloc::vec![0u32; width];
        opts.fill(&mut buf, 0, bound, 0);
        opts
    }

    fn fill(&mut self, buf: &mut [u32], pos: usize, remaining: u32, sum: u32) {
        if pos == buf.len() {
            self.values.extend_from_slice(buf);
            self.sums.push(sum);
            return;
        }
        for v in 0..=remaining {
            buf[pos] = v;
            self.fill(buf, pos + 1, remaining - v, sum + v);
        }
        buf[pos] = 0;
    }

    pub(crate) fn len(&self) -> usize {
        self.sums.len()
    }

    pub(crate) fn row(&self, idx: usize) -> &[u32] {
        &self.values[idx * self.width..(idx + 1) * self.width]
    }
}

/// Per-row option tables for a partition, plus a mixed-radix odometer over
/// them (last row fastest).
#[derive(Debug, Clone)]
pub(crate) struct LSpace {
    pub(crate) d: usize,
    pub(crate) rows: Vec<RowOptions>,
}

impl LSpace {
    pub(crate) fn new(alpha: &Partition) -> Self {
        let d = alpha.len();
        let rows = (0..d - 1).map(|p| RowOptions::new(d - 1 - p, alpha.parts()[p + 1])).collect();
        LSpace { d, rows }
    }

    /// Number of matrices, if it fits in a `u64`.
    pub(crate) fn len(&self) -> Option<u64> {
        self.rows.iter().try_fold(1u64, |acc, r| acc.checked_mul(r.len() as u64))
    }

    /// Odometer position of the `index`-th matrix.
    pub(crate) fn digits_at(&self, mut index: u64) -> Option<Vec<usize>> {
        let mut digits = alloc::vec![0usize; self.rows.len()];
        for (p, row) in self.rows.iter().enumerate().rev() {
            let radix = row.len() as u64;
            digits[p] = (index % radix) as usize;
            index /= radix;
        }
        (index == 0).then_some(digits)
    }

    /// Steps the odometer; `false` once it wraps around.
    pub(crate) fn advance(&self, digits: &mut [usize]) -> bool {
        for p in (0..digits.len()).rev() {
            digits[p] += 1;
            if digits[p] < self.rows[p].len() {
                return true;
            }
            digits[p] = 0;
        }
        false
    }

    /// Row sums `R_i` and column sums `C_i` of the matrix at `digits`.
    #[inline]
    pub(crate) fn sums(&self, digits: &[usize], row_sums: &mut [i64], col_sums: &mut [i64]) {
        row_sums.fill(0);
        col_sums.fill(0);
        for (p, (&idx, row)) in digits.iter().zip(&self.rows).enumerate() {
            row_sums[p] = i64::from(row.sums[idx]);
            for (off, &v) in row.row(idx).iter().enumerate() {
                col_sums[p + 1 + off] += i64::from(v);
            }
        }
    }

    fn materialize(&self, alpha: &Partition, digits: &[usize]) -> LMatrix {
        let mut entries = Vec::with_capacity(self.d * (self.d - 1) / 2);
        for (&idx, row) in digits.iter().zip(&self.rows) {
            entries.extend_from_slice(row.row(idx));
        }
        LMatrix { alpha: alpha.clone(), entries }
    }
}

/// Stream of every admissible `L` for `alpha`, each exactly once.
///
/// Rows are taken in order `p = 0..d-1`; a row's entries run through their
/// admissible values lexicographically, and rows combine like an odometer with
/// the last row turning fastest. For `d = 1` there is exactly one (empty)
/// matrix.
#[derive(Debug, Clone)]
pub struct LMatrices {
    alpha: Partition,
    space: LSpace,
    digits: Option<Vec<usize>>,
}

impl LMatrices {
    /// Restart the enumeration at position `index` (0-based). Past the end
    /// yields an empty stream.
    pub fn starting_at(alpha: &Partition, index: u64) -> Self {
        let space = LSpace::new(alpha);
        let digits = space.digits_at(index);
        LMatrices { alpha: alpha.clone(), space, digits }
    }
}

impl Iterator for LMatrices {
    type Item = LMatrix;

    fn next(&mut self) -> Option<LMatrix> {
        let digits = self.digits.as_mut()?;
        let out = self.space.materialize(&self.alpha, digits);
        if !self.space.advance(digits) {
            self.digits = None;
        }
        Some(out)
    }
}

pub fn enumerate_l(alpha: &Partition) -> LMatrices {
    LMatrices::starting_at(alpha, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_row_partition_has_one_empty_matrix() {
        let all: Vec<_> = enumerate_l(&p(&[5])).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].order(), 1);
        assert_eq!(count_l(&p(&[5])), BigUint::one());
    }

    #[test]
    fn two_rows() {
        for a in 0..6 {
            for b in 0..=a {
                let alpha = p(&[a, b]);
                let values: Vec<_> = enumerate_l(&alpha).map(|l| l.entry(0, 1)).collect();
                assert_eq!(values, (0..=b).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn example_3_2_1() {
        let alpha = p(&[3, 2, 1]);
        let all: Vec<_> = enumerate_l(&alpha).collect();
        assert_eq!(all.len(), 12);
        assert_eq!(count_l(&alpha), BigUint::from(12u32));
        // Row 0 lexicographic on (l01, l02), row 1 fastest.
        assert_eq!(all[0], LMatrix::zero(&alpha));
        assert_eq!(all[1], LMatrix::from_rows(&alpha, &[vec![0, 0], vec![1]]).unwrap());
        assert_eq!(all[2], LMatrix::from_rows(&alpha, &[vec![0, 1], vec![0]]).unwrap());
        assert_eq!(all[11], LMatrix::from_rows(&alpha, &[vec![2, 0], vec![1]]).unwrap());
        assert!(all.iter().all(LMatrix::is_valid));
    }

    #[test]
    fn closed_form_count() {
        assert_eq!(count_l(&p(&[6, 6, 6, 6, 6])), BigUint::from(3_457_440u32));
    }

    #[test]
    fn restart_matches_suffix() {
        let alpha = p(&[4, 3, 2, 1]);
        let all: Vec<_> = enumerate_l(&alpha).collect();
        for start in [0u64, 1, 7, 100, all.len() as u64 - 1] {
            let tail: Vec<_> = LMatrices::starting_at(&alpha, start).collect();
            assert_eq!(tail, all[start as usize..]);
        }
        assert_eq!(LMatrices::starting_at(&alpha, all.len() as u64).count(), 0);
    }

    #[test]
    fn from_rows_validation() {
        let alpha = p(&[3, 2, 1]);
        assert!(LMatrix::from_rows(&alpha, &[vec![2, 1], vec![0]]).is_err());
        assert!(LMatrix::from_rows(&alpha, &[vec![0, 0], vec![2]]).is_err());
        assert!(LMatrix::from_rows(&alpha, &[vec![0, 0]]).is_err());
        assert!(LMatrix::from_rows(&alpha, &[vec![0], vec![0]]).is_err());
    }

    #[test]
    fn grid_rendering() {
        let alpha = p(&[3, 2, 1]);
        let l = LMatrix::from_rows(&alpha, &[vec![2, 0], vec![1]]).unwrap();
        assert_eq!(alloc::format!("{l}"), "0 2 0\n0 0 1\n0 0 0");
        assert_eq!(l.row_sum(0), 2);
        assert_eq!(l.column_sum(2), 1);
    }
}

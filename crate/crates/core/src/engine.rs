//! The γ coefficients and the CSM classes built from them.
//!
//! For `β ≤ α` of length `d`,
//!
//! ```text
//! γ(α, β) = Σ_L det[ C(α_i − R_i, β_j + i − j + C_i − R_i) ]_{i,j}
//! ```
//!
//! where `R_i = Σ_{q>i} l[i][q]`, `C_i = Σ_{p<i} l[p][i]` and `L` runs over
//! [`enumerate_l`]. Individual determinants can be negative; only the sum is
//! expected to be nonnegative, and nothing here clamps it.
//!
//! For a whole table (fixed `α`, many `β`) the per-`L` data `α_i − R_i` and
//! `i + C_i − R_i` does not depend on `β`, so [`CellPlan`] walks the `L`
//! space once and evaluates every requested `β` against each `L`.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial::{BinomialTable, SmallBinomials};
use crate::error::{Error, Result};
use crate::expansion::SchubertExpansion;
use crate::lmatrix::{enumerate_l, LMatrices, LMatrix, LSpace};
use crate::matrix::{det_exact, det_small, IntMatrix};
use crate::partition::{check_same_len, Partition};

fn check_contained(alpha: &Partition, beta: &Partition) -> Result<()> {
    if !beta.is_subpartition(alpha)? {
        return Err(Error::NotSubpartition { beta: beta.clone(), alpha: alpha.clone() });
    }
    Ok(())
}

/// The binomial matrix of the summand indexed by `l`.
pub fn build_matrix(alpha: &Partition, beta: &Partition, l: &LMatrix) -> Result<IntMatrix> {
    check_same_len(alpha, beta)?;
    check_contained(alpha, beta)?;
    if l.alpha() != alpha {
        return Err(Error::LMatrixMismatch { expected: alpha.clone(), found: l.alpha().clone() });
    }
    if !l.is_valid() {
        return Err(Error::InvalidLMatrix { alpha: alpha.clone(), reason: "row sum exceeds bound".into() });
    }
    let mut table = BinomialTable::new();
    Ok(build_with(&mut table, alpha, beta, l))
}

fn build_with(table: &mut BinomialTable, alpha: &Partition, beta: &Partition, l: &LMatrix) -> IntMatrix {
    let d = alpha.len();
    let rows: Vec<(u64, i64)> = (0..d)
        .map(|i| {
            let r = i64::from(l.row_sum(i));
            let c = i64::from(l.column_sum(i));
            let top = i64::from(alpha.parts()[i]) - r;
            debug_assert!(top >= 0);
            (top as u64, i as i64 + c - r)
        })
        .collect();
    IntMatrix::from_fn(d, |i, j| {
        let (top, shift) = rows[i];
        let bottom = i64::from(beta.parts()[j]) - j as i64 + shift;
        BigInt::from(table.binomial(top, bottom))
    })
}

/// One summand of γ: the index matrix, its binomial matrix and determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTerm {
    pub l: LMatrix,
    pub matrix: IntMatrix,
    pub det: BigInt,
}

/// Every summand of `γ(α, β)` in [`enumerate_l`] order.
pub fn gamma_terms(alpha: &Partition, beta: &Partition) -> Result<GammaTerms> {
    check_same_len(alpha, beta)?;
    check_contained(alpha, beta)?;
    Ok(GammaTerms { alpha: alpha.clone(), beta: beta.clone(), ls: enumerate_l(alpha), table: BinomialTable::new() })
}

#[derive(Debug, Clone)]
pub struct GammaTerms {
    alpha: Partition,
    beta: Partition,
    ls: LMatrices,
    table: BinomialTable,
}

impl Iterator for GammaTerms {
    type Item = GammaTerm;

    fn next(&mut self) -> Option<GammaTerm> {
        let l = self.ls.next()?;
        let matrix = build_with(&mut self.table, &self.alpha, &self.beta, &l);
        let det = det_exact(&matrix);
        Some(GammaTerm { l, matrix, det })
    }
}

/// Precomputed `L` space for one `α`, reusable across `β` and across ranges of
/// the enumeration (so callers can split the work between threads).
#[derive(Debug, Clone)]
pub struct CellPlan {
    alpha: Partition,
    space: LSpace,
    small: Option<SmallBinomials>,
}

impl CellPlan {
    pub fn new(alpha: &Partition) -> Self {
        CellPlan {
            alpha: alpha.clone(),
            space: LSpace::new(alpha),
            small: SmallBinomials::new(alpha.largest_part()),
        }
    }

    pub fn alpha(&self) -> &Partition {
        &self.alpha
    }

    /// Number of summands per coefficient, when it fits in a `u64`.
    pub fn term_count(&self) -> Option<u64> {
        self.space.len()
    }

    /// Partial sums over the `L` with enumeration positions in `range`, one
    /// per entry of `betas`. Summing the results over a cover of
    /// `0..term_count()` by disjoint ranges gives the γ values.
    pub fn partial_sums(&self, betas: &[Partition], range: Range<u64>) -> Result<Vec<BigInt>> {
        for beta in betas {
            check_same_len(&self.alpha, beta)?;
            check_contained(&self.alpha, beta)?;
        }
        let mut sums: Vec<Accumulator> = (0..betas.len()).map(|_| Accumulator::default()).collect();
        if range.is_empty() {
            return Ok(sums.into_iter().map(Accumulator::finish).collect());
        }
        let Some(mut digits) = self.space.digits_at(range.start) else {
            return Ok(sums.into_iter().map(Accumulator::finish).collect());
        };

        let d = self.alpha.len();
        let alpha = self.alpha.parts();
        let beta_cols: Vec<Vec<i64>> = betas
            .iter()
            .map(|b| b.parts().iter().enumerate().map(|(j, &x)| i64::from(x) - j as i64).collect())
            .collect();
        let mut row_sums = alloc::vec![0i64; d];
        let mut col_sums = alloc::vec![0i64; d];
        let mut tops = alloc::vec![0i64; d];
        let mut shifts = alloc::vec![0i64; d];
        let mut buf = alloc::vec![0i128; d * d];
        let mut big_table = BinomialTable::new();

        let mut remaining = range.end - range.start;
        loop {
            self.space.sums(&digits, &mut row_sums, &mut col_sums);
            for i in 0..d {
                tops[i] = i64::from(alpha[i]) - row_sums[i];
                shifts[i] = i as i64 + col_sums[i] - row_sums[i];
            }
            for (cols, acc) in beta_cols.iter().zip(sums.iter_mut()) {
                match &self.small {
                    Some(small) => {
                        for i in 0..d {
                            for j in 0..d {
                                buf[i * d + j] = small.get(tops[i], cols[j] + shifts[i]);
                            }
                        }
                        match det_small(d, &mut buf) {
                            Some(v) => acc.add_small(v),
                            None => {
                                let m = IntMatrix::from_fn(d, |i, j| {
                                    BigInt::from(small.get(tops[i], cols[j] + shifts[i]))
                                });
                                acc.add_big(det_exact(&m));
                            }
                        }
                    }
                    None => {
                        let m = IntMatrix::from_fn(d, |i, j| {
                            BigInt::from(big_table.binomial(tops[i] as u64, cols[j] + shifts[i]))
                        });
                        acc.add_big(det_exact(&m));
                    }
                }
            }
            remaining -= 1;
            if remaining == 0 || !self.space.advance(&mut digits) {
                break;
            }
        }
        Ok(sums.into_iter().map(Accumulator::finish).collect())
    }

    /// Full γ values for each `β`, single threaded.
    pub fn coefficients(&self, betas: &[Partition]) -> Result<Vec<BigInt>> {
        self.partial_sums(betas, 0..self.term_count().unwrap_or(u64::MAX))
    }
}

#[derive(Debug, Default)]
struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    #[inline]
    fn add_small(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn add_big(&mut self, v: BigInt) {
        self.big += v;
    }

    fn finish(self) -> BigInt {
        self.big + self.small
    }
}

/// `γ(α, β)`. Errors unless `β ≤ α` with equal lengths.
pub fn gamma(alpha: &Partition, beta: &Partition) -> Result<BigInt> {
    let mut values = cell_coefficients(alpha, core::slice::from_ref(beta))?;
    Ok(values.pop().expect("one beta in, one value out"))
}

/// `γ(α, β)` for each `β` in `betas`, sharing one pass over the `L` space.
pub fn cell_coefficients(alpha: &Partition, betas: &[Partition]) -> Result<Vec<BigInt>> {
    CellPlan::new(alpha).coefficients(betas)
}

/// Builds an expansion over all `β ≤ α` from their coefficients.
pub fn cell_from_coefficients(alpha: &Partition, betas: Vec<Partition>, values: Vec<BigInt>) -> Result<SchubertExpansion> {
    SchubertExpansion::from_terms(alpha.clone(), betas.into_iter().zip(values).filter(|(_, v)| !v.is_zero()))
}

/// `c_SM(S(α)°) = Σ_{β ≤ α} γ(α, β) [S(β)]`.
pub fn csm_cell(alpha: &Partition) -> SchubertExpansion {
    let betas: Vec<_> = alpha.subpartitions().collect();
    let values = cell_coefficients(alpha, &betas).expect("subpartitions are contained in alpha");
    cell_from_coefficients(alpha, betas, values).expect("subpartitions are contained in alpha")
}

/// `c_SM(S(α)) = Σ_{β ≤ α} c_SM(S(β)°)`.
pub fn csm_variety(alpha: &Partition) -> SchubertExpansion {
    let cells: Vec<_> = alpha.subpartitions().map(|beta| csm_cell(&beta)).collect();
    csm_variety_from_cells(alpha, &cells).expect("cells come from subpartitions")
}

/// Sums precomputed cell classes into the class of the variety `S(α)`.
/// `cells` must hold `c_SM(S(β)°)` for each `β ≤ α`; each is re-keyed into
/// the Chow group of `S(α)`.
pub fn csm_variety_from_cells<'a>(
    alpha: &Partition,
    cells: impl IntoIterator<Item = &'a SchubertExpansion>,
) -> Result<SchubertExpansion> {
    let mut total = SchubertExpansion::zero(alpha.clone());
    for cell in cells {
        total.add_expansion(cell)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn first_worked_matrix() {
        let alpha = p(&[3, 2, 1]);
        let m = build_matrix(&alpha, &p(&[2, 0, 0]), &LMatrix::zero(&alpha)).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![3, 0, 0], vec![0, 1, 0], vec![0, 1, 1]]));
    }

    #[test]
    fn fourth_worked_matrix() {
        let alpha = p(&[3, 2, 1]);
        let l = LMatrix::from_rows(&alpha, &[vec![2, 0], vec![0]]).unwrap();
        let m = build_matrix(&alpha, &p(&[2, 0, 0]), &l).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 2], vec![0, 1, 1]]));
    }

    #[test]
    fn build_matrix_preconditions() {
        let alpha = p(&[3, 2, 1]);
        let l = LMatrix::zero(&alpha);
        assert!(matches!(build_matrix(&alpha, &p(&[3, 3, 0]), &l), Err(Error::NotSubpartition { .. })));
        assert!(matches!(build_matrix(&alpha, &p(&[2, 0]), &l), Err(Error::LengthMismatch { .. })));
        let other = LMatrix::zero(&p(&[3, 2, 2]));
        assert!(matches!(build_matrix(&alpha, &p(&[2, 0, 0]), &other), Err(Error::LMatrixMismatch { .. })));
    }

    #[test]
    fn single_part_is_binomial() {
        let alpha = p(&[7]);
        for b in 0..=7 {
            let beta = p(&[b]);
            let m = build_matrix(&alpha, &beta, &LMatrix::zero(&alpha)).unwrap();
            assert_eq!(m.order(), 1);
            assert_eq!(*m.get(0, 0), BigInt::from(crate::binomial(7, i64::from(b))));
            assert_eq!(gamma(&alpha, &beta).unwrap(), BigInt::from(crate::binomial(7, i64::from(b))));
        }
    }

    #[test]
    fn worked_example_value() {
        assert_eq!(gamma(&p(&[3, 2, 1]), &p(&[2, 0, 0])).unwrap(), BigInt::from(11));
        let dets: Vec<_> = gamma_terms(&p(&[3, 2, 1]), &p(&[2, 0, 0])).unwrap().map(|t| t.det).collect();
        assert_eq!(dets.len(), 12);
        assert_eq!(dets.iter().sum::<BigInt>(), BigInt::from(11));
    }

    #[test]
    fn gamma_rejects_uncontained() {
        assert!(matches!(gamma(&p(&[2, 1]), &p(&[2, 2])), Err(Error::NotSubpartition { .. })));
        assert!(gamma_terms(&p(&[2, 1]), &p(&[3, 0])).is_err());
    }

    #[test]
    fn ranges_cover_the_sum() {
        let alpha = p(&[4, 3, 2, 1]);
        let plan = CellPlan::new(&alpha);
        let betas: Vec<_> = alpha.subpartitions().collect();
        let whole = plan.coefficients(&betas).unwrap();
        let n = plan.term_count().unwrap();
        let mut pieces = vec![BigInt::zero(); betas.len()];
        for r in [0..1, 1..17, 17..n / 2, n / 2..n, n..n + 3] {
            for (acc, v) in pieces.iter_mut().zip(plan.partial_sums(&betas, r).unwrap()) {
                *acc += v;
            }
        }
        assert_eq!(pieces, whole);
    }

    #[test]
    fn accumulator_spills_on_overflow() {
        let mut acc = Accumulator::default();
        acc.add_small(i128::MAX);
        acc.add_small(i128::MAX);
        acc.add_small(-1);
        assert_eq!(acc.finish(), BigInt::from(i128::MAX) * 2 - 1);
    }

    #[test]
    fn big_entries_take_the_slow_path() {
        // α_1 beyond the i128 Pascal table.
        let alpha = p(&[140, 1]);
        let beta = p(&[70, 0]);
        let fast = gamma(&alpha, &beta).unwrap();
        let slow: BigInt = gamma_terms(&alpha, &beta).unwrap().map(|t| t.det).sum();
        assert_eq!(fast, slow);
    }
}

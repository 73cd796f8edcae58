//! Dense square integer matrices and exact determinants.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A square matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Panics if `order == 0`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        IntMatrix { order, entries }
    }

    /// Panics unless `rows` is square and nonempty.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "matrix must be square");
        Self::from_fn(order, |i, j| rows[i][j].clone().into())
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.order)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.order {
            self.entries.swap(a * self.order + j, b * self.order + j);
        }
    }

    pub fn det(&self) -> BigInt {
        det_exact(self)
    }
}

/// One row per line, entries right aligned.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use alloc::string::ToString;
        let cells: Vec<_> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.order).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Exact determinant: cofactor expansion up to order 4, fraction-free
/// (Bareiss) elimination from order 5 on.
pub fn det_exact(m: &IntMatrix) -> BigInt {
    if m.order <= 4 {
        let cols: Vec<usize> = (0..m.order).collect();
        cofactor(m, 0, &cols)
    } else {
        bareiss(m.order, m.entries.clone())
    }
}

fn cofactor(m: &IntMatrix, row: usize, cols: &[usize]) -> BigInt {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = BigInt::zero();
    let mut rest = Vec::with_capacity(cols.len() - 1);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(cols.iter().copied().filter(|&x| x != c));
        let term = entry * cofactor(m, row + 1, &rest);
        if pos % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn bareiss(n: usize, mut a: Vec<BigInt>) -> BigInt {
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Determinant in `i128` for the summation fast path. `None` on overflow.
/// `a` is a scratch buffer holding the matrix row major; it is clobbered.
#[inline]
pub(crate) fn det_small(n: usize, a: &mut [i128]) -> Option<i128> {
    match n {
        1 => Some(a[0]),
        2 => a[0].checked_mul(a[3])?.checked_sub(a[1].checked_mul(a[2])?),
        3 => det3(a, [0, 1, 2], [0, 1, 2], 3),
        4 => {
            let mut acc: i128 = 0;
            for c in 0..4 {
                if a[c] == 0 {
                    continue;
                }
                let cols = match c {
                    0 => [1, 2, 3],
                    1 => [0, 2, 3],
                    2 => [0, 1, 3],
                    _ => [0, 1, 2],
                };
                let minor = det3(a, [1, 2, 3], cols, 4)?;
                let term = a[c].checked_mul(minor)?;
                acc = if c % 2 == 0 { acc.checked_add(term)? } else { acc.checked_sub(term)? };
            }
            Some(acc)
        }
        _ => bareiss_small(n, a),
    }
}

#[inline]
fn det3(a: &[i128], r: [usize; 3], c: [usize; 3], n: usize) -> Option<i128> {
    let e = |i: usize, j: usize| a[r[i] * n + c[j]];
    let m0 = e(1, 1).checked_mul(e(2, 2))?.checked_sub(e(1, 2).checked_mul(e(2, 1))?)?;
    let m1 = e(1, 0).checked_mul(e(2, 2))?.checked_sub(e(1, 2).checked_mul(e(2, 0))?)?;
    let m2 = e(1, 0).checked_mul(e(2, 1))?.checked_sub(e(1, 1).checked_mul(e(2, 0))?)?;
    e(0, 0)
        .checked_mul(m0)?
        .checked_sub(e(0, 1).checked_mul(m1)?)?
        .checked_add(e(0, 2).checked_mul(m2)?)
}

fn bareiss_small(n: usize, a: &mut [i128]) -> Option<i128> {
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j].checked_mul(pivot)?.checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1];
    Some(if negate { -det } else { det })
}

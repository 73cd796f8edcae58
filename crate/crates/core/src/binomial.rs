//! Binomial coefficients with the convention `C(n, k) = 0` outside `0 ≤ k ≤ n`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, exact. Zero whenever `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    // acc * (n - i) is always divisible by i + 1 after i steps.
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Pascal's triangle grown on demand.
///
/// Growth takes `&mut self`; lookups take `&self`, so a table that has been
/// grown up front can be shared read-only between threads. Alternatively each
/// worker keeps its own.
#[derive(Debug, Clone, Default)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table already holding rows `0..=max_n`.
    pub fn with_rows(max_n: u64) -> Self {
        let mut table = Self::new();
        table.ensure(max_n);
        table
    }

    /// Largest `n` with a stored row, if any.
    pub fn max_n(&self) -> Option<u64> {
        self.rows.len().checked_sub(1).map(|n| n as u64)
    }

    pub fn ensure(&mut self, max_n: u64) {
        while (self.rows.len() as u64) <= max_n {
            let row = match self.rows.last() {
                None => alloc::vec![BigUint::one()],
                Some(prev) => {
                    let mut row = Vec::with_capacity(prev.len() + 1);
                    row.push(BigUint::one());
                    for w in prev.windows(2) {
                        row.push(&w[0] + &w[1]);
                    }
                    row.push(BigUint::one());
                    row
                }
            };
            self.rows.push(row);
        }
    }

    /// Lookup in the grown part of the table. `None` if row `n` is missing.
    pub fn get(&self, n: u64, k: i64) -> Option<BigUint> {
        let row = self.rows.get(usize::try_from(n).ok()?)?;
        if k < 0 {
            return Some(BigUint::zero());
        }
        Some(row.get(k as usize).cloned().unwrap_or_default())
    }

    /// Lookup, growing the table first if needed.
    pub fn binomial(&mut self, n: u64, k: i64) -> BigUint {
        self.ensure(n);
        self.get(n, k).expect("row was just ensured")
    }
}

/// Pascal's triangle in `i128`, for the engine's fast path. Only built when
/// every entry fits.
#[derive(Debug, Clone)]
pub(crate) struct SmallBinomials {
    width: usize,
    values: Vec<i128>,
}

impl SmallBinomials {
    /// Largest `n` for which every `C(n, k)` fits in an `i128`.
    pub(crate) const MAX_N: u32 = 127;

    pub(crate) fn new(max_n: u32) -> Option<Self> {
        if max_n > Self::MAX_N {
            return None;
        }
        let width = max_n as usize + 1;
        let mut values = alloc::vec![0i128; width * width];
        for n in 0..width {
            values[n * width] = 1;
            for k in 1..=n {
                values[n * width + k] = values[(n - 1) * width + k - 1] + values[(n - 1) * width + k];
            }
        }
        Some(SmallBinomials { width, values })
    }

    #[inline]
    pub(crate) fn get(&self, n: i64, k: i64) -> i128 {
        if k < 0 || k > n {
            return 0;
        }
        self.values[n as usize * self.width + k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_factorials(n: u64, k: u64) -> BigUint {
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, x| acc * x);
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn examples() {
        assert_eq!(binomial(3, 2), BigUint::from(3u32));
        assert_eq!(binomial(3, -1), BigUint::zero());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn matches_factorials() {
        for n in 0..=40u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k as i64), by_factorials(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn symmetry_and_pascal_up_to_60() {
        let mut table = BinomialTable::new();
        for n in 0..=60u64 {
            for k in 0..=n as i64 {
                assert_eq!(table.binomial(n, k), table.binomial(n, n as i64 - k));
                if n > 0 {
                    let lhs = table.binomial(n, k);
                    let rhs = table.binomial(n - 1, k - 1) + table.binomial(n - 1, k);
                    assert_eq!(lhs, rhs, "Pascal at ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn table_agrees_with_direct() {
        let table = BinomialTable::with_rows(70);
        assert_eq!(table.max_n(), Some(70));
        for n in 0..=70u64 {
            for k in -2..=n as i64 + 2 {
                assert_eq!(table.get(n, k).unwrap(), binomial(n, k));
            }
        }
        assert_eq!(table.get(71, 0), None);
    }

    #[test]
    fn large_values_are_exact() {
        // C(200, 100) has 59 decimal digits.
        let c = binomial(200, 100);
        assert_eq!(alloc::string::ToString::to_string(&c).len(), 59);
        assert_eq!(c, by_factorials(200, 100));
    }

    #[test]
    fn small_table_fits_at_its_limit() {
        let small = SmallBinomials::new(SmallBinomials::MAX_N).unwrap();
        let n = SmallBinomials::MAX_N as i64;
        assert_eq!(BigUint::try_from(small.get(n, n / 2)).unwrap(), binomial(n as u64, n / 2));
        assert_eq!(small.get(5, -1), 0);
        assert_eq!(small.get(5, 6), 0);
        assert!(SmallBinomials::new(SmallBinomials::MAX_N + 1).is_none());
    }
}

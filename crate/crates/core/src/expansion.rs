//! Elements of the Chow group of a Schubert variety, written in the basis of
//! Schubert classes `[S(β)]`, `β ≤ base`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq)]
pub struct SchubertExpansion {
    base: Partition,
    // No zero coefficients; every key is ≤ base.
    terms: BTreeMap<Partition, BigInt>,
}

impl SchubertExpansion {
    pub fn zero(base: Partition) -> Self {
        SchubertExpansion { base, terms: BTreeMap::new() }
    }

    pub fn from_terms(base: Partition, terms: impl IntoIterator<Item = (Partition, BigInt)>) -> Result<Self> {
        let mut out = Self::zero(base);
        for (beta, coeff) in terms {
            out.add_term(beta, coeff)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, beta: Partition, coeff: BigInt) -> Result<()> {
        if !beta.is_subpartition(&self.base)? {
            return Err(Error::NotSubpartition { beta, alpha: self.base.clone() });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.entry(beta) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
        Ok(())
    }

    /// Adds `other` termwise. Its base must be contained in ours.
    pub fn add_expansion(&mut self, other: &SchubertExpansion) -> Result<()> {
        if !other.base.is_subpartition(&self.base)? {
            return Err(Error::NotSubpartition { beta: other.base.clone(), alpha: self.base.clone() });
        }
        for (beta, coeff) in &other.terms {
            self.add_term(beta.clone(), coeff.clone())?;
        }
        Ok(())
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    /// Coefficient of `[S(β)]`, zero when absent.
    pub fn coefficient(&self, beta: &Partition) -> BigInt {
        self.terms.get(beta).cloned().unwrap_or_default()
    }

    /// Terms in colexicographic order of `β`.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    /// Terms by `|β|` descending, colexicographic within a degree.
    pub fn graded_terms(&self) -> Vec<(&Partition, &BigInt)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| b.0.cell_dimension().cmp(&a.0.cell_dimension()).then_with(|| a.0.cmp(b.0)));
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `k`-dimensional part: terms with `|β| = k`.
    pub fn component(&self, k: u64) -> Result<SchubertExpansion> {
        let max = self.base.cell_dimension();
        if k > max {
            return Err(Error::ComponentOutOfRange { k, max });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(beta, _)| beta.cell_dimension() == k)
            .map(|(b, c)| (b.clone(), c.clone()))
            .collect();
        Ok(SchubertExpansion { base: self.base.clone(), terms })
    }

    /// The coefficient of the point class; for a CSM class this is the Euler
    /// characteristic.
    pub fn degree(&self) -> BigInt {
        self.coefficient(&Partition::zero(self.base.len()))
    }

    pub fn min_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().min()
    }
}

impl fmt::Debug for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchubertExpansion").field("base", &self.base).field("terms", &self.terms).finish()
    }
}

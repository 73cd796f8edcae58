//! Partitions indexing Schubert cells, the containment order and
//! enumeration of the cells inside a Schubert variety.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing tuple of nonnegative parts of fixed length `d`.
///
/// The length is part of the identity: `(3,2)` and `(3,2,0)` index cells in
/// different Grassmannians and compare unequal.
///
/// Ordering is by length first, then colexicographic (last part most
/// significant). This is the order [`Subpartitions`] yields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(join(&parts)));
        }
        Ok(Partition { parts })
    }

    /// The zero partition of length `d`, the class of a point.
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "partition length must be positive");
        Partition { parts: alloc::vec![0; d] }
    }

    /// `(n, n, …, n)` of length `d`; the whole Grassmannian in a `d × n` box.
    pub fn full_box(d: usize, n: u32) -> Self {
        assert!(d >= 1, "partition length must be positive");
        Partition { parts: alloc::vec![n; d] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn largest_part(&self) -> u32 {
        self.parts[0]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Dimension of the Schubert cell, `α_1 + ⋯ + α_d`.
    pub fn cell_dimension(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// `self ≤ other` termwise.
    pub fn is_subpartition(&self, other: &Partition) -> Result<bool> {
        check_same_len(self, other)?;
        Ok(self.parts.iter().zip(&other.parts).all(|(b, a)| b <= a))
    }

    /// Same partition with one extra trailing zero part.
    pub fn padded(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.push(0);
        Partition { parts }
    }

    pub fn subpartitions(&self) -> Subpartitions {
        Subpartitions::new(self)
    }
}

pub(crate) fn check_same_len(a: &Partition, b: &Partition) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

fn join(parts: &[u32]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&p.to_string());
    }
    out
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.parts.iter().rev().cmp(other.parts.iter().rev()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.parts))
    }
}

/// Parses `"3,2,1"` or `"3 2 1"` (any mix of commas and whitespace).
impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse { text: text.to_string(), reason: reason.to_string() };
        let parts = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| parse_err("parts must be nonnegative integers")))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(parse_err("no parts"));
        }
        Partition::new(parts).map_err(|e| parse_err(&e.to_string()))
    }
}

/// All `β ≤ α` in colexicographic order: the first part varies fastest and
/// the last part slowest, starting from the zero partition.
#[derive(Debug, Clone)]
pub struct Subpartitions {
    bound: Vec<u32>,
    current: Option<Vec<u32>>,
}

impl Subpartitions {
    fn new(alpha: &Partition) -> Self {
        Subpartitions { bound: alpha.parts.clone(), current: Some(alloc::vec![0; alpha.len()]) }
    }
}

impl Iterator for Subpartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.as_mut()?;
        let out = Partition { parts: current.clone() };

        // Advance: bump the first position that can grow, reset everything
        // before it to the smallest value compatible with the new part.
        let d = current.len();
        let mut advanced = false;
        for i in 0..d {
            let cap = if i == 0 { self.bound[0] } else { self.bound[i].min(current[i - 1]) };
            if current[i] < cap {
                current[i] += 1;
                let v = current[i];
                for slot in current[..i].iter_mut() {
                    *slot = v;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

//! Coefficient-level checks of the positivity theorem and its companions,
//! run per partition or over every partition in a `d × n` box.
//!
//! Failures are data: a sweep always runs to the end and reports every
//! violation it saw.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use csm_core::{count_l, csm_variety_from_cells, enumerate_l, gamma_terms, Partition, SchubertExpansion};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{CacheError, SweepCache};
use crate::parallel::thread_pool;
use crate::serde_util;

/// One named property checked for each partition `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Check {
    /// `γ(α, β) ≥ 0` for every `β ≤ α`.
    #[serde(rename = "positivity")]
    Positivity,
    /// `γ(α, 0) = 1`: the Euler characteristic of a cell.
    #[serde(rename = "degree-one")]
    DegreeOne,
    /// `γ(α, α) = 1`: the top component is the fundamental class.
    #[serde(rename = "leading-one")]
    LeadingOne,
    /// The number of summands equals the closed-form count of `L`.
    #[serde(rename = "term-count")]
    TermCount,
    /// `deg c_SM(S(α))` equals the number of cells `β ≤ α`.
    #[serde(rename = "variety-degree")]
    VarietyDegree,
}

impl Check {
    pub const ALL: [Check; 5] =
        [Check::Positivity, Check::DegreeOne, Check::LeadingOne, Check::TermCount, Check::VarietyDegree];

    pub fn name(self) -> &'static str {
        match self {
            Check::Positivity => "positivity",
            Check::DegreeOne => "degree-one",
            Check::LeadingOne => "leading-one",
            Check::TermCount => "term-count",
            Check::VarietyDegree => "variety-degree",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}; expected one of positivity, degree-one, leading-one, term-count, variety-degree"))
    }
}

pub type CheckSet = BTreeSet<Check>;

pub fn all_checks() -> CheckSet {
    Check::ALL.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    #[serde(with = "serde_util::partition")]
    pub alpha: Partition,
    /// The offending coefficient's index, when the check is about one.
    #[serde(with = "serde_util::opt_partition")]
    pub beta: Option<Partition>,
    #[serde(with = "serde_util::bigint")]
    pub value: BigInt,
    pub check: Check,
}

/// Summary of a verification run. Merging reports is associative and
/// commutative, so the aggregate does not depend on scheduling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub d: usize,
    /// Largest allowed part.
    pub box_bound: u32,
    pub checks: CheckSet,
    pub alphas_checked: u64,
    /// Number of `(α, β)` pairs with `β ≤ α` whose coefficient was examined.
    pub pairs_checked: u64,
    #[serde(with = "serde_util::opt_bigint")]
    pub min_coefficient: Option<BigInt>,
    pub failures: Vec<Failure>,
    pub check_passes: BTreeMap<Check, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SweepReport {
    pub fn empty(d: usize, box_bound: u32, checks: &CheckSet) -> Self {
        SweepReport {
            d,
            box_bound,
            checks: checks.clone(),
            alphas_checked: 0,
            pairs_checked: 0,
            min_coefficient: None,
            failures: Vec::new(),
            check_passes: checks.iter().map(|&c| (c, 0)).collect(),
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds `other` into `self`. Elapsed times add up.
    pub fn merge(&mut self, other: &SweepReport) {
        self.alphas_checked += other.alphas_checked;
        self.pairs_checked += other.pairs_checked;
        self.min_coefficient = match (self.min_coefficient.take(), &other.min_coefficient) {
            (Some(a), Some(b)) => Some(a.min(b.clone())),
            (a, b) => a.or_else(|| b.clone()),
        };
        self.failures.extend(other.failures.iter().cloned());
        self.failures.sort();
        for (check, count) in &other.check_passes {
            *self.check_passes.entry(*check).or_default() += count;
        }
        self.elapsed_ms = match (self.elapsed_ms, other.elapsed_ms) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0) + b.unwrap_or(0)),
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes") + "\n"
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let names: Vec<_> = self.checks.iter().map(|c| c.name()).collect();
        out += &format!("sweep d={} n={} checks={}\n", self.d, self.box_bound, names.join(","));
        out += &format!("partitions checked: {}\n", self.alphas_checked);
        out += &format!("pairs checked: {}\n", self.pairs_checked);
        if let Some(min) = &self.min_coefficient {
            out += &format!("min coefficient: {min}\n");
        }
        for (check, count) in &self.check_passes {
            out += &format!("{check}: {count} passed\n");
        }
        out += &format!("failures: {}\n", self.failures.len());
        for f in &self.failures {
            let beta = f.beta.as_ref().map(|b| format!(" beta=({b})")).unwrap_or_default();
            out += &format!("  {} alpha=({}){} value={}\n", f.check, f.alpha, beta, f.value);
        }
        if let Some(ms) = self.elapsed_ms {
            out += &format!("elapsed: {ms} ms\n");
        }
        out
    }
}

/// Runs the enabled checks for one `α`, given the cell classes of every
/// `β ≤ α` (including `α` itself).
pub fn check_with_cells<'a>(
    alpha: &Partition,
    checks: &CheckSet,
    cell_of: impl Fn(&Partition) -> &'a SchubertExpansion,
) -> SweepReport {
    let mut report = SweepReport::empty(alpha.len(), alpha.largest_part(), checks);
    report.alphas_checked = 1;
    let cell = cell_of(alpha);
    let fail = |report: &mut SweepReport, beta: Option<Partition>, value: BigInt, check: Check| {
        report.failures.push(Failure { alpha: alpha.clone(), beta, value, check });
    };
    let pass = |report: &mut SweepReport, check: Check| {
        *report.check_passes.entry(check).or_default() += 1;
    };

    let betas: Vec<Partition> = alpha.subpartitions().collect();
    for beta in &betas {
        let value = cell.coefficient(beta);
        report.pairs_checked += 1;
        if report.min_coefficient.as_ref().is_none_or(|m| value < *m) {
            report.min_coefficient = Some(value.clone());
        }
        if checks.contains(&Check::Positivity) {
            if value < BigInt::zero() {
                fail(&mut report, Some(beta.clone()), value, Check::Positivity);
            } else {
                pass(&mut report, Check::Positivity);
            }
        }
    }

    let expect_one = |report: &mut SweepReport, beta: Partition, check: Check| {
        let value = cell.coefficient(&beta);
        if value.is_one() {
            pass(report, check);
        } else {
            fail(report, Some(beta), value, check);
        }
    };
    if checks.contains(&Check::DegreeOne) {
        expect_one(&mut report, Partition::zero(alpha.len()), Check::DegreeOne);
    }
    if checks.contains(&Check::LeadingOne) {
        expect_one(&mut report, alpha.clone(), Check::LeadingOne);
    }
    if checks.contains(&Check::TermCount) {
        let listed = BigUint::from(enumerate_l(alpha).count());
        if listed == count_l(alpha) {
            pass(&mut report, Check::TermCount);
        } else {
            fail(&mut report, None, listed.into(), Check::TermCount);
        }
    }
    if checks.contains(&Check::VarietyDegree) {
        let variety = csm_variety_from_cells(alpha, betas.iter().map(&cell_of)).expect("cells are below alpha");
        let degree = variety.degree();
        if degree == BigInt::from(betas.len()) {
            pass(&mut report, Check::VarietyDegree);
        } else {
            fail(&mut report, None, degree, Check::VarietyDegree);
        }
    }
    report
}

/// All checks in `checks` for a single `α`, computing the cells it needs.
pub fn check_invariants(alpha: &Partition, checks: &CheckSet) -> SweepReport {
    let start = Instant::now();
    let cells: BTreeMap<Partition, SchubertExpansion> =
        alpha.subpartitions().map(|b| (b.clone(), csm_core::csm_cell(&b))).collect();
    let mut report = check_with_cells(alpha, checks, |b| &cells[b]);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    report
}

/// Options for [`sweep_box`].
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub d: usize,
    pub n: u32,
    pub checks: CheckSet,
    /// Worker threads; `0` for one per core.
    pub jobs: usize,
    /// Leave `elapsed_ms` unset so that reports compare byte for byte.
    pub deterministic: bool,
}

impl SweepConfig {
    pub fn new(d: usize, n: u32) -> Self {
        SweepConfig { d, n, checks: all_checks(), jobs: 0, deterministic: false }
    }
}

/// Checks every `α` of length `d` with parts at most `n`.
pub fn sweep_box(config: &SweepConfig) -> SweepReport {
    sweep_box_cached(config, None).expect("no cache, no cache errors")
}

/// [`sweep_box`] that skips partitions already recorded in `cache` and
/// appends a record for each newly finished one.
pub fn sweep_box_cached(config: &SweepConfig, mut cache: Option<&mut SweepCache>) -> Result<SweepReport, CacheError> {
    assert!(config.d >= 1, "d must be at least 1");
    let start = Instant::now();
    let alphas: Vec<Partition> = Partition::full_box(config.d, config.n).subpartitions().collect();

    let mut done: BTreeMap<Partition, SweepReport> = match cache.as_deref() {
        Some(c) => c.completed(config.d, &config.checks),
        None => BTreeMap::new(),
    };
    done.retain(|alpha, _| alphas.contains(alpha));
    let todo: Vec<Partition> = alphas.iter().filter(|a| !done.contains_key(a)).cloned().collect();

    let needed: BTreeSet<Partition> = todo.iter().flat_map(|a| a.subpartitions()).collect();
    let needed: Vec<Partition> = needed.into_iter().collect();

    let pool = thread_pool(config.jobs);
    let cells: BTreeMap<Partition, SchubertExpansion> =
        pool.install(|| needed.par_iter().map(|b| (b.clone(), csm_core::csm_cell(b))).collect());

    let (tx, rx) = std::sync::mpsc::channel::<(Partition, SweepReport)>();
    let mut cache_error = None;
    std::thread::scope(|scope| {
        let cells = &cells;
        let todo = &todo;
        let pool = &pool;
        scope.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, alpha| {
                    let t = Instant::now();
                    let mut report = check_with_cells(alpha, &config.checks, |b| &cells[b]);
                    report.elapsed_ms = Some(t.elapsed().as_millis() as u64);
                    let _ = tx.send((alpha.clone(), report));
                })
            })
        });
        for (alpha, report) in rx {
            if let Some(cache) = cache.as_deref_mut() {
                if cache_error.is_none() {
                    if let Err(e) = cache.record(config.d, &config.checks, &alpha, &report) {
                        cache_error = Some(e);
                    }
                }
            }
            done.insert(alpha, report);
        }
    });
    if let Some(e) = cache_error {
        return Err(e);
    }

    let mut total = SweepReport::empty(config.d, config.n, &config.checks);
    for alpha in &alphas {
        total.merge(&done[alpha]);
    }
    total.elapsed_ms = (!config.deterministic).then(|| start.elapsed().as_millis() as u64);
    Ok(total)
}

/// `γ(α, β)` summed from [`gamma_terms`] in reverse enumeration order. An
/// independent second evaluation for cross-checking the fast path.
pub fn gamma_reverse_oracle(alpha: &Partition, beta: &Partition) -> csm_core::Result<BigInt> {
    let terms: Vec<_> = gamma_terms(alpha, beta)?.collect();
    Ok(terms.into_iter().rev().map(|t| t.det).sum())
}

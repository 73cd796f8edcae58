//! The published twelve-summand decomposition of `γ((3,2,1), (2,0,0)) = 11`
//! and the self-check built on it.

use csm_core::{
    binomial, build_matrix, count_l, det_exact, enumerate_l, gamma, gamma_terms, IntMatrix, Partition,
};
use num_bigint::{BigInt, BigUint};

pub const ALPHA: [u32; 3] = [3, 2, 1];
pub const BETA: [u32; 3] = [2, 0, 0];
pub const GAMMA: i64 = 11;

/// The binomial matrices of the twelve summands, in published order.
pub const MATRICES: [[[i64; 3]; 3]; 12] = [
    [[3, 0, 0], [0, 1, 0], [0, 1, 1]],
    [[2, 0, 0], [0, 2, 1], [0, 1, 1]],
    [[2, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 2], [0, 1, 1]],
    [[1, 0, 0], [0, 2, 1], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
    [[3, 0, 0], [0, 0, 0], [0, 0, 1]],
    [[2, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[2, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
];

/// Their determinants, in the same order.
pub const DETERMINANTS: [i64; 12] = [3, 2, 2, -1, 2, 0, 0, 2, 0, 1, 0, 0];

pub fn alpha() -> Partition {
    Partition::new(ALPHA.to_vec()).expect("valid")
}

pub fn beta() -> Partition {
    Partition::new(BETA.to_vec()).expect("valid")
}

pub fn published_matrices() -> Vec<IntMatrix> {
    MATRICES.iter().map(|m| IntMatrix::from_rows(&m.map(|r| r.to_vec()))).collect()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn matrix_key(m: &IntMatrix) -> Vec<BigInt> {
    m.rows().flatten().cloned().collect()
}

/// Outcome of one self-check case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn case(name: &'static str, passed: bool, detail: impl Into<String>) -> CaseResult {
    CaseResult { name, passed, detail: detail.into() }
}

pub fn selfcheck() -> Vec<CaseResult> {
    let (alpha, beta) = (alpha(), beta());
    let mut out = Vec::new();

    let g = gamma(&alpha, &beta).expect("beta below alpha");
    out.push(case("worked-example-gamma", g == BigInt::from(GAMMA), format!("gamma = {g}")));

    let terms: Vec<_> = gamma_terms(&alpha, &beta).expect("beta below alpha").collect();
    let dets = sorted(terms.iter().map(|t| t.det.clone()).collect::<Vec<_>>());
    let want = sorted(DETERMINANTS.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    out.push(case("worked-example-determinants", dets == want, format!("{} terms", terms.len())));

    let built = sorted(terms.iter().map(|t| matrix_key(&t.matrix)).collect::<Vec<_>>());
    let published = sorted(published_matrices().iter().map(matrix_key).collect::<Vec<_>>());
    out.push(case("worked-example-matrices", built == published, "multiset of binomial matrices"));

    let fourth = det_exact(&published_matrices()[3]);
    out.push(case("fourth-matrix-determinant", fourth == BigInt::from(-1), format!("det = {fourth}")));

    let zero_l = enumerate_l(&alpha).next().expect("at least one L");
    let first = build_matrix(&alpha, &beta, &zero_l).expect("valid inputs");
    out.push(case("first-matrix", first == published_matrices()[0], "L = 0"));

    let count = count_l(&alpha);
    out.push(case("term-count", count == BigUint::from(12u32), format!("count = {count}")));

    let single_part = (0..=12u32).all(|a| {
        let alpha = Partition::new(vec![a]).expect("valid");
        (0..=a).all(|b| {
            let beta = Partition::new(vec![b]).expect("valid");
            gamma(&alpha, &beta).ok() == Some(BigInt::from(binomial(a.into(), b.into())))
        })
    });
    out.push(case("single-part-binomials", single_part, "a <= 12"));

    out
}

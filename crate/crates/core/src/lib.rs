//! Exact Chern–Schwartz–MacPherson class coefficients of Schubert cells and
//! Schubert varieties in Grassmannians.
//!
//! The coefficient `γ(α, β)` of `[S(β)]` in `c_SM(S(α)°)` is computed as a sum
//! of binomial determinants over strictly upper triangular matrices `L`
//! whose row sums are bounded by the shifted parts of `α`. Everything is exact:
//! binomials and determinants are arbitrary precision, with an `i128` fast path
//! in the summation loop that spills into big integers on overflow.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature only adds
//! `std::error::Error` plumbing through `thiserror`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod binomial;
pub mod engine;
mod error;
pub mod expansion;
pub mod lmatrix;
pub mod matrix;
pub mod partition;

pub use binomial::{binomial, BinomialTable};
pub use engine::{
    build_matrix, cell_coefficients, csm_cell, csm_variety, csm_variety_from_cells, gamma,
    gamma_terms, CellPlan, GammaTerm,
};
pub use error::{Error, Result};
pub use expansion::SchubertExpansion;
pub use lmatrix::{count_l, enumerate_l, LMatrices, LMatrix};
pub use matrix::{det_exact, IntMatrix};
pub use partition::{Partition, Subpartitions};

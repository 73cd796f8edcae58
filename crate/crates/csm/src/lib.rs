//! Verification sweeps, table formats, a resumable sweep cache and the `csm`
//! command line, on top of [`csm_core`].

pub mod cache;
pub mod cli;
pub mod golden;
pub mod parallel;
mod serde_util;
pub mod table;
pub mod verify;

pub use cache::{CacheError, SweepCache};
pub use table::{TableDocument, TableKind};
pub use verify::{check_invariants, sweep_box, Check, CheckSet, Failure, SweepReport};

/// Version string recorded in table metadata and cache keys.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

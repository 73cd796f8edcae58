//! Splitting one cell table across worker threads.

use csm_core::engine::cell_from_coefficients;
use csm_core::{CellPlan, Partition, SchubertExpansion};
use num_bigint::BigInt;
use rayon::prelude::*;

/// A pool with `jobs` threads; `0` means rayon's default.
pub fn thread_pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("failed to start worker threads")
}

/// `c_SM(S(α)°)` with the `L` enumeration cut into contiguous ranges that are
/// summed on `pool`. Identical to [`csm_core::csm_cell`].
pub fn csm_cell_in(pool: &rayon::ThreadPool, alpha: &Partition) -> SchubertExpansion {
    let plan = CellPlan::new(alpha);
    let betas: Vec<Partition> = alpha.subpartitions().collect();
    let Some(total) = plan.term_count() else {
        // More terms than a u64 can index; nothing to split.
        return csm_core::csm_cell(alpha);
    };
    let chunks = (pool.current_num_threads() as u64 * 8).clamp(1, total.max(1));
    let step = total.div_ceil(chunks);
    let ranges: Vec<_> = (0..chunks).map(|c| c * step..((c + 1) * step).min(total)).collect();

    let sums = pool.install(|| {
        ranges
            .into_par_iter()
            .map(|r| plan.partial_sums(&betas, r).expect("subpartitions are contained in alpha"))
            .reduce(
                || vec![BigInt::default(); betas.len()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    });
    cell_from_coefficients(alpha, betas, sums).expect("subpartitions are contained in alpha")
}

pub fn csm_cell_parallel(alpha: &Partition, jobs: usize) -> SchubertExpansion {
    csm_cell_in(&thread_pool(jobs), alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_sequential() {
        for alpha in ["3,2,1", "4,4,2,1", "5", "0,0"] {
            let alpha: Partition = alpha.parse().unwrap();
            for jobs in [1, 3, 8] {
                assert_eq!(csm_cell_parallel(&alpha, jobs), csm_core::csm_cell(&alpha));
            }
        }
    }
}

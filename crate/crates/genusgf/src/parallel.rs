//! Runs oracle shards on scoped threads.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use genusgf_core::oracle::{
    hypermap_result, hypermap_shard, map_result, map_shard, MapEnumeration, OracleResult, Tally,
};

/// Worker count: `requested` if given, else the machine's parallelism.
pub fn effective_jobs(requested: Option<usize>) -> usize {
    requested
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

/// Evaluates `shard(0..count)` on at most `jobs` threads and merges tallies.
fn run_shards<F>(count: usize, jobs: usize, shard: F) -> genusgf_core::Result<Tally>
where
    F: Fn(usize) -> genusgf_core::Result<Tally> + Sync,
{
    let next = AtomicUsize::new(0);
    let total = Mutex::new(Ok(Tally::default()));
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, count.max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let part = shard(i);
                let mut total = total
                    .lock()
                    .expect("no worker panics while holding the lock");
                match (&mut *total, part) {
                    (Ok(t), Ok(p)) => t.merge(&p),
                    (Ok(_), Err(e)) => *total = Err(e),
                    (Err(_), _) => break,
                }
            });
        }
    });
    total.into_inner().expect("workers finished")
}

pub fn rooted_hypermaps(n: usize, jobs: usize) -> genusgf_core::Result<OracleResult> {
    let tally = run_shards(n, jobs, |first| hypermap_shard(n, first))?;
    hypermap_result(n, &tally)
}

pub fn rooted_maps(
    n: usize,
    mode: MapEnumeration,
    jobs: usize,
) -> genusgf_core::Result<OracleResult> {
    let tally = run_shards(2 * n, jobs, |first| map_shard(n, first, mode))?;
    map_result(n, &tally, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use genusgf_core::oracle::{count_rooted_hypermaps, count_rooted_maps};

    #[test]
    fn threads_agree_with_sequential() {
        for jobs in [1, 3] {
            assert_eq!(
                rooted_hypermaps(5, jobs).unwrap(),
                count_rooted_hypermaps(5).unwrap()
            );
            assert_eq!(
                rooted_maps(3, MapEnumeration::Full, jobs).unwrap(),
                count_rooted_maps(3, MapEnumeration::Full).unwrap()
            );
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(rooted_hypermaps(9, 2).is_err());
    }
}

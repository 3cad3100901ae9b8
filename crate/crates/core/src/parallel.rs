//! Deterministic chunked scans over an index range.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::Result;

pub(crate) fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Splits `0..total` into contiguous chunks, runs `job` on each from a pool
/// of `workers` threads, and returns the results in chunk order.
///
/// Callers reduce with min, max or sums, so the answer does not depend on
/// how the range was cut.
pub(crate) fn run_chunks<T, F>(total: u64, workers: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> Result<T> + Sync,
{
    if total == 0 {
        return Ok(Vec::new());
    }
    let workers = workers.max(1);
    let chunks = (workers as u64 * 8).min(total);
    let size = total.div_ceil(chunks);
    let ranges: Vec<Range<u64>> = (0..chunks)
        .map(|c| c * size..((c + 1) * size).min(total))
        .filter(|r| !r.is_empty())
        .collect();
    if workers == 1 {
        return ranges.into_iter().map(&job).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<T>>>> = ranges.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers.min(ranges.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= ranges.len() {
                    break;
                }
                let out = job(ranges[i].clone());
                *slots[i].lock().expect("slot lock") = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot lock").expect("every chunk ran"))
        .collect()
}

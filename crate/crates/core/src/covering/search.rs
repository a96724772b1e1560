//! Partitioned max-reduction over the ambient index space `[0, modulus^len)`.
//!
//! Words are indexed in mixed radix with the first coordinate most significant,
//! so index order is lexicographic order. The space is split into contiguous
//! ranges, one per thread; each range reports its largest value and the first
//! index attaining it. Merging by (largest value, then smallest index) gives a
//! result that does not depend on the split.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

/// How often a scanning thread polls the shared stop signal.
const POLL_MASK: u64 = 0xFFF;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ChunkBest {
    pub value: u32,
    pub index: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub value: u32,
    pub index: u64,
    /// Words a sequential lexicographic scan would have visited.
    pub examined: u64,
}

/// Earliest index at which some range reached the theoretical ceiling.
pub(crate) struct StopSignal(AtomicU64);

impl StopSignal {
    fn new() -> Self {
        Self(AtomicU64::new(u64::MAX))
    }

    pub fn record(&self, index: u64) {
        self.0.fetch_min(index, Ordering::Relaxed);
    }

    /// A range starting at `start` is irrelevant once an earlier range hit the ceiling.
    #[inline]
    pub fn should_stop(&self, start: u64, offset: u64) -> bool {
        offset & POLL_MASK == 0 && self.0.load(Ordering::Relaxed) < start
    }

    fn earliest(&self) -> Option<u64> {
        match self.0.load(Ordering::Relaxed) {
            u64::MAX => None,
            i => Some(i),
        }
    }
}

/// Writes the digits of `index` (most significant first).
pub(crate) fn decode(mut index: u64, modulus: u32, digits: &mut [u32]) {
    let m = modulus as u64;
    for d in digits.iter_mut().rev() {
        *d = (index % m) as u32;
        index /= m;
    }
}

/// Odometer step; returns the most significant position that changed.
#[inline]
pub(crate) fn advance(digits: &mut [u32], modulus: u32) -> usize {
    let mut pos = digits.len();
    while pos > 0 {
        pos -= 1;
        digits[pos] += 1;
        if digits[pos] < modulus {
            return pos;
        }
        digits[pos] = 0;
    }
    0
}

pub(crate) fn split(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut start = 0;
    (0..parts)
        .map(|i| {
            let len = base + u64::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Runs `scan` over `threads` contiguous ranges of `[0, total)` and merges.
///
/// `scan` must return the first index in its range attaining its maximum, and must
/// call [`StopSignal::record`] and return as soon as it reaches the ceiling.
pub(crate) fn partitioned_max<F>(total: u64, threads: usize, scan: F) -> Option<Outcome>
where
    F: Fn(Range<u64>, &StopSignal) -> Option<ChunkBest> + Sync,
{
    let stop = StopSignal::new();
    let ranges = split(total, threads);
    let results: Vec<Option<ChunkBest>> = if ranges.len() == 1 {
        vec![scan(ranges[0].clone(), &stop)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .iter()
                .cloned()
                .map(|r| {
                    let (scan, stop) = (&scan, &stop);
                    s.spawn(move || scan(r, stop))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search thread panicked"))
                .collect()
        })
    };

    let mut best: Option<ChunkBest> = None;
    for r in results.into_iter().flatten() {
        match best {
            Some(b) if r.value < b.value || (r.value == b.value && r.index >= b.index) => {}
            _ => best = Some(r),
        }
    }
    best.map(|b| Outcome {
        value: b.value,
        index: b.index,
        examined: stop.earliest().map_or(total, |i| i + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_covers_range() {
        for total in [0u64, 1, 7, 100] {
            for parts in [1, 3, 8, 200] {
                let ranges = split(total, parts);
                assert_eq!(ranges.first().unwrap().start, 0);
                assert_eq!(ranges.last().unwrap().end, total);
                for w in ranges.windows(2) {
                    assert_eq!(w[0].end, w[1].start);
                }
            }
        }
    }

    #[test]
    fn odometer_matches_decode() {
        let mut digits = vec![0u32; 3];
        let mut check = vec![0u32; 3];
        for i in 0..27u64 {
            decode(i, 3, &mut check);
            assert_eq!(digits, check);
            let pos = advance(&mut digits, 3);
            if i + 1 < 27 {
                decode(i + 1, 3, &mut check);
                let first_diff = (0..3).find(|&j| digits[j] != check[j]);
                assert_eq!(first_diff, None);
                let mut prev = vec![0; 3];
                decode(i, 3, &mut prev);
                assert_eq!((0..3).find(|&j| prev[j] != digits[j]), Some(pos));
            }
        }
    }

    fn scan_values(
        values: &[u32],
        ceiling: u32,
    ) -> impl Fn(Range<u64>, &StopSignal) -> Option<ChunkBest> + Sync + '_ {
        move |range: Range<u64>, stop: &StopSignal| {
            let start = range.start;
            let mut best: Option<ChunkBest> = None;
            for i in range {
                if stop.should_stop(start, i - start) {
                    break;
                }
                let v = values[i as usize];
                if best.is_none_or(|b| v > b.value) {
                    best = Some(ChunkBest { value: v, index: i });
                    if v == ceiling {
                        stop.record(i);
                        break;
                    }
                }
            }
            best
        }
    }

    #[test]
    fn merge_is_split_independent() {
        let values: Vec<u32> = (0..5000u32).map(|i| (i * 7919) % 97).collect();
        let reference =
            partitioned_max(values.len() as u64, 1, scan_values(&values, 1000)).unwrap();
        assert_eq!(reference.value, 96);
        assert_eq!(reference.examined, 5000);
        for threads in [2, 3, 8, 64] {
            assert_eq!(
                partitioned_max(values.len() as u64, threads, scan_values(&values, 1000)).unwrap(),
                reference
            );
        }
        // With a reachable ceiling the count is the sequential stopping point.
        let reference = partitioned_max(values.len() as u64, 1, scan_values(&values, 96)).unwrap();
        assert_eq!(reference.examined, reference.index + 1);
        for threads in [2, 5, 16] {
            assert_eq!(
                partitioned_max(values.len() as u64, threads, scan_values(&values, 96)).unwrap(),
                reference
            );
        }
    }
}

//! Exact covering radii.
//!
//! Two routes compute the radius of a code over `Z_{p^2}`: a direct max-min scan
//! of the ambient space and the largest coset-leader weight. Both report the
//! lexicographically smallest deep hole. A third route scans the Gray image over
//! `Z_p^{pn}` under the Hamming metric; for `p = 2` the Gray map is a bijective
//! isometry and that radius equals the Lee radius, while for larger `p` the image
//! misses most of `Z_p^{pn}` and the Hamming radius can only be larger.

mod bounds;
pub(crate) mod search;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::{ambient_size, weight_table, Limits, LinearCode, WordSet};
use crate::error::{Error, Result};
use crate::ring::{Metric, RingContext, Word};

pub use bounds::{
    external_distance_bound, lee_ball_volume, lee_ball_volume_oracle, lee_weight_spectrum,
    sphere_covering_bound, BoundInputs, BoundKind, BoundReport, BoundValue, SphereVariant,
};
use search::{advance, decode, partitioned_max, ChunkBest, StopSignal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    CosetLeader,
    GrayImage,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::CosetLeader => "coset_leader",
            Method::GrayImage => "gray_image",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "cosets" | "coset_leader" => Ok(Method::CosetLeader),
            "gray" | "gray_image" => Ok(Method::GrayImage),
            other => Err(Error::invalid(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringResult {
    pub radius: u32,
    /// Lexicographically smallest word at distance `radius` from the code.
    pub witness: Word,
    pub method: Method,
    pub metric: Metric,
    pub words_examined: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub threads: usize,
    pub limits: Limits,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            limits: Limits::default(),
        }
    }
}

impl SearchOptions {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads: threads.max(1),
            ..Self::default()
        }
    }
}

/// Largest distance any word of the given shape can have from anything.
fn ceiling(ctx: &RingContext, metric: Metric, len: usize) -> u32 {
    match metric {
        Metric::Hamming => len as u32,
        Metric::Lee => ctx.p() * len as u32,
    }
}

/// Precomputed state shared by both scans.
struct Kernel {
    modulus: u32,
    len: usize,
    count: usize,
    /// Codeword-major layout: `rows[c * len + l]`.
    rows: Vec<u32>,
    /// Coordinate-major layout: `cols[l * count + c]`.
    cols: Vec<u32>,
    weights: Vec<u32>,
    ceiling: u32,
}

impl Kernel {
    fn new(code: &WordSet, metric: Metric, ctx: &RingContext) -> Result<Self> {
        if code.is_empty() {
            return Err(Error::invalid("covering radius of an empty code"));
        }
        let weights = weight_table(ctx, code.modulus(), metric)?;
        let (len, count) = (code.word_len(), code.size());
        let rows = code.flat().to_vec();
        let mut cols = vec![0u32; len * count];
        for (c, w) in code.iter().enumerate() {
            for (l, &x) in w.iter().enumerate() {
                cols[l * count + c] = x;
            }
        }
        Ok(Self {
            modulus: code.modulus(),
            len,
            count,
            rows,
            cols,
            weights,
            ceiling: ceiling(ctx, metric, len),
        })
    }

    #[inline]
    fn diff_weight(&self, a: u32, b: u32) -> u32 {
        let d = if a >= b { a - b } else { a + self.modulus - b };
        self.weights[d as usize]
    }

    #[inline]
    fn sum_weight(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        let s = if s >= self.modulus {
            s - self.modulus
        } else {
            s
        };
        self.weights[s as usize]
    }

    /// Recomputes prefix distances `partial[l * count + c] = d(u[..=l], c[..=l])`
    /// for levels `from..len`.
    fn refresh(&self, digits: &[u32], partial: &mut [u32], from: usize) {
        let m = self.count;
        for l in from..self.len {
            let a = digits[l];
            let col = &self.cols[l * m..(l + 1) * m];
            if l == 0 {
                for (dst, &b) in partial[..m].iter_mut().zip(col) {
                    *dst = self.diff_weight(a, b);
                }
            } else {
                let (prev, cur) = partial[(l - 1) * m..(l + 1) * m].split_at_mut(m);
                for ((dst, &pv), &b) in cur.iter_mut().zip(prev.iter()).zip(col) {
                    *dst = pv + self.diff_weight(a, b);
                }
            }
        }
    }

    /// Direct scan: for each word, the minimum distance to the code.
    fn scan_exhaustive(&self, range: Range<u64>, stop: &StopSignal) -> Option<ChunkBest> {
        if range.is_empty() {
            return None;
        }
        let (start, end) = (range.start, range.end);
        let mut digits = vec![0u32; self.len];
        decode(start, self.modulus, &mut digits);
        let mut partial = vec![0u32; self.len * self.count];
        self.refresh(&digits, &mut partial, 0);
        let last = (self.len - 1) * self.count;

        let mut best: Option<ChunkBest> = None;
        for idx in start..end {
            if stop.should_stop(start, idx - start) {
                break;
            }
            // Once the running minimum is no better than `best`, the word cannot improve it.
            let floor = best.map_or(0, |b| b.value);
            let mut dmin = u32::MAX;
            for &v in &partial[last..last + self.count] {
                if v < dmin {
                    dmin = v;
                    if dmin <= floor {
                        break;
                    }
                }
            }
            if best.is_none_or(|b| dmin > b.value) {
                best = Some(ChunkBest {
                    value: dmin,
                    index: idx,
                });
                if dmin == self.ceiling {
                    stop.record(idx);
                    break;
                }
            }
            if idx + 1 < end {
                let pos = advance(&mut digits, self.modulus);
                self.refresh(&digits, &mut partial, pos);
            }
        }
        best
    }

    /// Coset scan: visits each coset once through its lexicographically smallest
    /// element and takes the minimum weight over the coset.
    fn scan_cosets(
        &self,
        leads: &[(usize, u32)],
        range: Range<u64>,
        stop: &StopSignal,
    ) -> (Option<ChunkBest>, u64) {
        if range.is_empty() {
            return (None, 0);
        }
        let (start, end) = (range.start, range.end);
        let mut digits = vec![0u32; self.len];
        decode(start, self.modulus, &mut digits);
        let mut best: Option<ChunkBest> = None;
        let mut cosets = 0u64;
        for idx in start..end {
            if stop.should_stop(start, idx - start) {
                break;
            }
            // u is the smallest element of u + C iff, for every nonzero c, adding c
            // does not wrap at c's first nonzero coordinate.
            let canonical = leads.iter().all(|&(pos, limit)| digits[pos] < limit);
            if canonical {
                cosets += 1;
                let floor = best.map_or(0, |b| b.value);
                let mut leader = u32::MAX;
                for c in 0..self.count {
                    let row = &self.rows[c * self.len..(c + 1) * self.len];
                    let mut w = 0u32;
                    for (&a, &b) in digits.iter().zip(row) {
                        w += self.sum_weight(a, b);
                        if w >= leader {
                            break;
                        }
                    }
                    if w < leader {
                        leader = w;
                        if leader <= floor {
                            break;
                        }
                    }
                }
                if best.is_none_or(|b| leader > b.value) {
                    best = Some(ChunkBest {
                        value: leader,
                        index: idx,
                    });
                    if leader == self.ceiling {
                        stop.record(idx);
                        break;
                    }
                }
            }
            if idx + 1 < end {
                advance(&mut digits, self.modulus);
            }
        }
        (best, cosets)
    }

    fn word_at(&self, index: u64) -> Word {
        let mut digits = vec![0u32; self.len];
        decode(index, self.modulus, &mut digits);
        Word::from_raw(self.modulus, digits)
    }
}

/// Exact covering radius by scanning every ambient word. Accepts nonlinear codes.
pub fn covering_radius_exhaustive(
    code: &WordSet,
    metric: Metric,
    ctx: &RingContext,
    opts: &SearchOptions,
) -> Result<CoveringResult> {
    let kernel = Kernel::new(code, metric, ctx)?;
    let total = opts.limits.check_search(
        "exhaustive search",
        ambient_size(code.modulus(), code.word_len()),
    )?;
    let outcome = partitioned_max(total, opts.threads, |r, s| kernel.scan_exhaustive(r, s))
        .expect("the ambient space is nonempty");
    Ok(CoveringResult {
        radius: outcome.value,
        witness: kernel.word_at(outcome.index),
        method: Method::Exhaustive,
        metric,
        words_examined: outcome.examined,
    })
}

/// Exact covering radius as the largest coset-leader weight. Requires an additive
/// subgroup; anything else is rejected as nonlinear.
pub fn covering_radius_cosets(
    code: &WordSet,
    metric: Metric,
    ctx: &RingContext,
    opts: &SearchOptions,
) -> Result<CoveringResult> {
    let kernel = Kernel::new(code, metric, ctx)?;
    let total = opts.limits.check_search(
        "coset enumeration",
        ambient_size(code.modulus(), code.word_len()),
    )?;
    if !code.is_additive_subgroup() {
        return Err(Error::NonLinear);
    }
    let leads: Vec<(usize, u32)> = code
        .iter()
        .filter_map(|w| {
            w.iter()
                .position(|&x| x != 0)
                .map(|pos| (pos, code.modulus() - w[pos]))
        })
        .collect();

    let counted = std::sync::atomic::AtomicU64::new(0);
    let outcome = partitioned_max(total, opts.threads, |r, s| {
        let (best, cosets) = kernel.scan_cosets(&leads, r, s);
        counted.fetch_add(cosets, std::sync::atomic::Ordering::Relaxed);
        best
    })
    .expect("the ambient space is nonempty");
    if outcome.examined == total {
        debug_assert_eq!(
            counted.into_inner(),
            total / code.size() as u64,
            "every coset has exactly one canonical representative"
        );
    }
    Ok(CoveringResult {
        radius: outcome.value,
        witness: kernel.word_at(outcome.index),
        method: Method::CosetLeader,
        metric,
        words_examined: outcome.examined,
    })
}

/// Hamming covering radius of the Gray image over `Z_p^{pn}`. Never below the Lee
/// radius of `code`, and equal to it when `p = 2`. The witness lives in the Gray space.
pub fn covering_radius_gray(code: &LinearCode, opts: &SearchOptions) -> Result<CoveringResult> {
    let ctx = code.ctx();
    let image_len = code.n() * ctx.p() as usize;
    opts.limits
        .check_search("Gray-image search", ambient_size(ctx.p(), image_len))?;
    let image = code.gray_image();
    let mut result = covering_radius_exhaustive(&image, Metric::Hamming, ctx, opts)?;
    result.method = Method::GrayImage;
    Ok(result)
}

/// Dispatches on `method`. The Gray route only accepts `Metric::Lee`, the metric it
/// stands in for, and returns the Hamming radius of the image.
pub fn covering_radius(
    code: &LinearCode,
    metric: Metric,
    method: Method,
    opts: &SearchOptions,
) -> Result<CoveringResult> {
    match method {
        Method::Exhaustive => covering_radius_exhaustive(code.words(), metric, code.ctx(), opts),
        Method::CosetLeader => covering_radius_cosets(code.words(), metric, code.ctx(), opts),
        Method::GrayImage => {
            if metric != Metric::Lee {
                return Err(Error::invalid(
                    "the Gray-image method computes the Lee radius only",
                ));
            }
            covering_radius_gray(code, opts)
        }
    }
}

/// Minimum distance from `word` to any member of `code`.
pub fn distance_to_code(
    word: &Word,
    code: &WordSet,
    metric: Metric,
    ctx: &RingContext,
) -> Result<u32> {
    if word.modulus() != code.modulus() {
        return Err(Error::ModulusMismatch {
            expected: code.modulus(),
            found: word.modulus(),
        });
    }
    if word.len() != code.word_len() {
        return Err(Error::LengthMismatch {
            left: code.word_len(),
            right: word.len(),
        });
    }
    let weights = weight_table(ctx, code.modulus(), metric)?;
    let m = code.modulus();
    code.iter()
        .map(|c| {
            word.entries()
                .iter()
                .zip(c)
                .map(|(&a, &b)| weights[((a + m - b) % m) as usize])
                .sum()
        })
        .min()
        .ok_or_else(|| Error::invalid("distance to an empty code"))
}

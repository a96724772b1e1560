//! Linear codes over `Z_{p^2}`, held as fully enumerated, sorted codeword sets.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Metric, RingContext, Word};

/// Environment variable overriding [`Limits::search_cap`].
pub const MAX_WORDS_ENV: &str = "ZP2CODE_MAX_WORDS";

/// Enumeration caps. Exceeding a cap is always an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cap on the `p^{2k}` coefficient vectors behind a span.
    pub span_cap: u64,
    /// Cap on ambient words visited by searches and dual enumeration.
    pub search_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            span_cap: 1 << 24,
            search_cap: 1 << 27,
        }
    }
}

impl Limits {
    /// Defaults, with the search cap taken from [`MAX_WORDS_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        if let Ok(raw) = std::env::var(MAX_WORDS_ENV) {
            limits.search_cap = raw.trim().parse().map_err(|_| {
                Error::invalid(format!("{MAX_WORDS_ENV} must be an integer, got `{raw}`"))
            })?;
        }
        Ok(limits)
    }

    pub(crate) fn check_search(&self, what: &'static str, needed: u128) -> Result<u64> {
        check_cap(what, needed, self.search_cap)
    }

    pub(crate) fn check_span(&self, needed: u128) -> Result<u64> {
        check_cap("span", needed, self.span_cap)
    }
}

fn check_cap(what: &'static str, needed: u128, cap: u64) -> Result<u64> {
    if needed > cap as u128 {
        Err(Error::ResourceLimit { what, needed, cap })
    } else {
        Ok(needed as u64)
    }
}

/// `modulus^len`, saturating at `u128::MAX`.
pub fn ambient_size(modulus: u32, len: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..len {
        acc = match acc.checked_mul(modulus as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

/// Deduplicated, lexicographically sorted words of one length over one modulus,
/// stored flat. Codes over `Z_{p^2}` and their Gray images over `Z_p` both use it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordSet {
    modulus: u32,
    len: usize,
    data: Vec<u32>,
}

impl WordSet {
    pub fn new(
        modulus: u32,
        len: usize,
        words: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid("modulus must be at least 2"));
        }
        if len == 0 {
            return Err(Error::invalid("word length must be positive"));
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for w in words {
            if w.len() != len {
                return Err(Error::LengthMismatch {
                    left: len,
                    right: w.len(),
                });
            }
            if let Some(&bad) = w.iter().find(|&&e| e >= modulus) {
                return Err(Error::invalid(format!(
                    "entry {bad} is outside [0, {modulus})"
                )));
            }
            rows.push(w);
        }
        Ok(Self::from_rows_unchecked(modulus, len, rows))
    }

    pub(crate) fn from_rows_unchecked(modulus: u32, len: usize, mut rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(len > 0);
        rows.sort_unstable();
        rows.dedup();
        let data = rows.into_iter().flatten().collect();
        Self { modulus, len, data }
    }

    pub fn from_words(words: &[Word]) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::invalid("cannot infer modulus of an empty word list"))?;
        let modulus = first.modulus();
        if let Some(w) = words.iter().find(|w| w.modulus() != modulus) {
            return Err(Error::ModulusMismatch {
                expected: modulus,
                found: w.modulus(),
            });
        }
        Self::new(
            modulus,
            first.len(),
            words.iter().map(|w| w.entries().to_vec()),
        )
    }

    /// All `Z_modulus`-combinations of `rows`.
    pub fn span(modulus: u32, len: usize, rows: &[Vec<u32>], limits: &Limits) -> Result<Self> {
        if len == 0 {
            return Err(Error::invalid("word length must be positive"));
        }
        limits.check_span(ambient_size(modulus, rows.len()))?;
        let mut current: HashSet<Vec<u32>> = HashSet::new();
        current.insert(vec![0; len]);
        for row in rows {
            if row.len() != len {
                return Err(Error::LengthMismatch {
                    left: len,
                    right: row.len(),
                });
            }
            let mut next: HashSet<Vec<u32>> = HashSet::with_capacity(current.len() * 2);
            for base in &current {
                let mut acc = base.clone();
                for _ in 0..modulus {
                    if !next.insert(acc.clone()) {
                        // The multiples of `row` cycle; once one repeats, the rest do too.
                        break;
                    }
                    for (a, &r) in acc.iter_mut().zip(row) {
                        *a = ((*a as u64 + r as u64) % modulus as u64) as u32;
                    }
                }
            }
            current = next;
        }
        Ok(Self::from_rows_unchecked(
            modulus,
            len,
            current.into_iter().collect(),
        ))
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Word length.
    #[inline]
    pub fn word_len(&self) -> usize {
        self.len
    }

    /// Number of words.
    #[inline]
    pub fn size(&self) -> usize {
        self.data.len() / self.len
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.data.chunks_exact(self.len)
    }

    pub fn flat(&self) -> &[u32] {
        &self.data
    }

    pub fn to_words(&self) -> Vec<Word> {
        self.iter()
            .map(|w| Word::from_raw(self.modulus, w.to_vec()))
            .collect()
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        if word.len() != self.len {
            return false;
        }
        let (mut lo, mut hi) = (0usize, self.size());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(word) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// True iff the set is an additive subgroup of `Z_modulus^len`.
    pub fn is_additive_subgroup(&self) -> bool {
        if !self.contains(&vec![0; self.len]) {
            return false;
        }
        let m = self.modulus as u64;
        let mut sum = vec![0u32; self.len];
        for a in self.iter() {
            for b in self.iter() {
                for ((s, &x), &y) in sum.iter_mut().zip(a).zip(b) {
                    *s = ((x as u64 + y as u64) % m) as u32;
                }
                if !self.contains(&sum) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimum-weight and weight census helpers share this.
    pub(crate) fn weight_of(&self, word: &[u32], table: &[u32]) -> u32 {
        word.iter().map(|&x| table[x as usize]).sum()
    }
}

/// Per-residue weight table for a metric over a given modulus.
pub(crate) fn weight_table(ctx: &RingContext, modulus: u32, metric: Metric) -> Result<Vec<u32>> {
    match metric {
        Metric::Hamming => Ok((0..modulus).map(|x| u32::from(x != 0)).collect()),
        Metric::Lee => {
            if modulus != ctx.q() {
                return Err(Error::ModulusMismatch {
                    expected: ctx.q(),
                    found: modulus,
                });
            }
            Ok(ctx.lee_table())
        }
    }
}

/// Rows of residues over `Z_{p^2}` that generate a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    ctx: RingContext,
    n: usize,
    rows: Vec<Word>,
}

impl GeneratorMatrix {
    pub fn new(ctx: RingContext, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::invalid("generator matrix needs at least one row"))?;
        if n == 0 {
            return Err(Error::invalid("generator matrix needs at least one column"));
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::LengthMismatch {
                        left: n,
                        right: r.len(),
                    });
                }
                Word::new(ctx.q(), r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ctx, n, rows })
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    /// Number of rows.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns, the code length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub(crate) fn raw_rows(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|r| r.entries().to_vec()).collect()
    }

    /// Parses the text format: `p`, then `k n`, then `k` rows of `n` residues.
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let numbers = |line: usize, s: &str| -> Result<Vec<u64>> {
            s.split_whitespace()
                .map(|t| {
                    t.parse::<u64>().map_err(|_| {
                        parse_err(line, format!("`{t}` is not a non-negative integer"))
                    })
                })
                .collect()
        };

        let (line, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing prime p".into()))?;
        let p = match numbers(line, header)?.as_slice() {
            [p] => *p,
            _ => return Err(parse_err(line, "expected a single prime p".into())),
        };
        let p = u32::try_from(p).map_err(|_| parse_err(line, format!("p = {p} is too large")))?;
        let ctx = RingContext::new(p).map_err(|e| parse_err(line, e.to_string()))?;

        let (line, dims) = lines
            .next()
            .ok_or_else(|| parse_err(line, "missing `k n` line".into()))?;
        let (k, n) = match numbers(line, dims)?.as_slice() {
            [k, n] => (*k as usize, *n as usize),
            _ => return Err(parse_err(line, "expected `k n`".into())),
        };
        if k == 0 || n == 0 {
            return Err(parse_err(line, "k and n must be positive".into()));
        }

        let mut rows = Vec::with_capacity(k);
        let mut last = line;
        for i in 0..k {
            let (line, text) = lines
                .next()
                .ok_or_else(|| parse_err(last, format!("expected {k} rows, found {i}")))?;
            last = line;
            let row = numbers(line, text)?;
            if row.len() != n {
                return Err(parse_err(
                    line,
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            if let Some(bad) = row.iter().find(|&&x| x >= ctx.q() as u64) {
                return Err(parse_err(
                    line,
                    format!("residue {bad} is outside [0, {})", ctx.q()),
                ));
            }
            rows.push(row.into_iter().map(|x| x as u32).collect());
        }
        if let Some((line, _)) = lines.next() {
            return Err(parse_err(
                line,
                format!("unexpected content after {k} rows"),
            ));
        }
        Self::new(ctx, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.ctx.p());
        let _ = writeln!(out, "{} {}", self.k(), self.n);
        for r in &self.rows {
            let cells: Vec<String> = r.entries().iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

/// Census of codeword weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub metric: Metric,
    pub counts: BTreeMap<u32, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, weight: u32) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// Distinct nonzero weights that occur.
    pub fn nonzero_weights(&self) -> Vec<u32> {
        self.counts.keys().copied().filter(|&w| w != 0).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeType {
    Alpha,
    Beta,
}

/// `(n, M, d_H, d_L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: usize,
    pub size: u64,
    pub d_hamming: u32,
    pub d_lee: u32,
}

/// An additive subgroup of `Z_{p^2}^n` with a generating matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    ctx: RingContext,
    words: WordSet,
    generator: GeneratorMatrix,
}

impl LinearCode {
    pub fn span(generator: &GeneratorMatrix, limits: &Limits) -> Result<Self> {
        let ctx = *generator.ctx();
        let words = WordSet::span(ctx.q(), generator.n(), &generator.raw_rows(), limits)?;
        let code = Self {
            ctx,
            words,
            generator: generator.clone(),
        };
        code.verify_closure(limits)?;
        Ok(code)
    }

    /// Wraps a word set that is already known to be a subgroup, deriving a
    /// generating set greedily in lexicographic order.
    pub fn from_subgroup(ctx: RingContext, words: WordSet, limits: &Limits) -> Result<Self> {
        if words.modulus() != ctx.q() {
            return Err(Error::ModulusMismatch {
                expected: ctx.q(),
                found: words.modulus(),
            });
        }
        if words.word_len() == 0 {
            return Err(Error::invalid("code length must be positive"));
        }
        let n = words.word_len();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut spanned: HashSet<Vec<u32>> = HashSet::from([vec![0; n]]);
        for w in words.iter() {
            if spanned.contains(w) {
                continue;
            }
            gens.push(w.to_vec());
            let ws = WordSet::span(
                ctx.q(),
                n,
                &gens,
                &Limits {
                    span_cap: u64::MAX,
                    ..*limits
                },
            )?;
            if ws.size() > words.size() {
                return Err(Error::NonLinear);
            }
            spanned = ws.iter().map(<[u32]>::to_vec).collect();
        }
        if gens.is_empty() {
            gens.push(vec![0; n]);
        }
        if spanned.len() != words.size() {
            return Err(Error::NonLinear);
        }
        let generator = GeneratorMatrix::new(ctx, gens)?;
        let code = Self {
            ctx,
            words,
            generator,
        };
        code.verify_closure(limits)?;
        Ok(code)
    }

    /// Exhaustive closure check when `M^2` fits under the span cap.
    fn verify_closure(&self, limits: &Limits) -> Result<()> {
        let m = self.words.size() as u128;
        if m * m <= limits.span_cap as u128 && !self.words.is_additive_subgroup() {
            return Err(Error::NonLinear);
        }
        Ok(())
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.words.word_len()
    }

    /// Cardinality `M`.
    pub fn size(&self) -> usize {
        self.words.size()
    }

    pub fn words(&self) -> &WordSet {
        &self.words
    }

    pub fn codewords(&self) -> Vec<Word> {
        self.words.to_words()
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.modulus() == self.ctx.q() && self.words.contains(w.entries())
    }

    pub fn is_ambient(&self) -> bool {
        ambient_size(self.ctx.q(), self.n()) == self.size() as u128
    }

    /// All ambient words orthogonal to every generator row.
    pub fn dual(&self, limits: &Limits) -> Result<LinearCode> {
        let n = self.n();
        let q = self.ctx.q() as u64;
        let total = limits.check_search("dual enumeration", ambient_size(self.ctx.q(), n))?;
        let rows = self.generator.raw_rows();
        let mut found = Vec::new();
        let mut x = vec![0u32; n];
        for _ in 0..total {
            let orthogonal = rows.iter().all(|r| {
                r.iter()
                    .zip(&x)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % q
                    == 0
            });
            if orthogonal {
                found.push(x.clone());
            }
            // Odometer with the last coordinate fastest keeps `found` sorted.
            for d in x.iter_mut().rev() {
                *d += 1;
                if u64::from(*d) < q {
                    break;
                }
                *d = 0;
            }
        }
        let words = WordSet::from_rows_unchecked(self.ctx.q(), n, found);
        let product = self.size() as u128 * words.size() as u128;
        assert_eq!(
            product,
            ambient_size(self.ctx.q(), n),
            "|C| * |dual C| must equal p^(2n)"
        );
        LinearCode::from_subgroup(self.ctx, words, limits)
    }

    pub fn weight_distribution(&self, metric: Metric) -> WeightDistribution {
        let table = weight_table(&self.ctx, self.ctx.q(), metric).expect("code is over Z_{p^2}");
        let mut counts = BTreeMap::new();
        for w in self.words.iter() {
            *counts.entry(self.words.weight_of(w, &table)).or_insert(0) += 1;
        }
        WeightDistribution { metric, counts }
    }

    /// Minimum nonzero weight, which equals the minimum distance of a linear code.
    pub fn min_distance(&self, metric: Metric) -> Result<u32> {
        if self.size() < 2 {
            return Err(Error::UndefinedDistance(self.size()));
        }
        let table = weight_table(&self.ctx, self.ctx.q(), metric)?;
        Ok(self
            .words
            .iter()
            .map(|w| self.words.weight_of(w, &table))
            .filter(|&w| w != 0)
            .min()
            .expect("a code with two words has a nonzero word"))
    }

    pub fn parameters(&self) -> Result<CodeParameters> {
        Ok(CodeParameters {
            n: self.n(),
            size: self.size() as u64,
            d_hamming: self.min_distance(Metric::Hamming)?,
            d_lee: self.min_distance(Metric::Lee)?,
        })
    }

    /// Type alpha when `d_H = ceil(d_L / p)`, beta when `d_H` is larger.
    pub fn classify_type(&self) -> Result<CodeType> {
        let d_h = self.min_distance(Metric::Hamming)?;
        let d_l = self.min_distance(Metric::Lee)?;
        let bound = d_l.div_ceil(self.ctx.p());
        match d_h.cmp(&bound) {
            std::cmp::Ordering::Equal => Ok(CodeType::Alpha),
            std::cmp::Ordering::Greater => Ok(CodeType::Beta),
            std::cmp::Ordering::Less => Err(Error::ClassificationAnomaly { d_h, bound }),
        }
    }

    /// Image of every codeword under the Gray map; a word set over `Z_p` of length `pn`.
    pub fn gray_image(&self) -> WordSet {
        let rows = self
            .words
            .iter()
            .map(|w| self.ctx.gray_entries(w))
            .collect();
        WordSet::from_rows_unchecked(self.ctx.p(), self.n() * self.ctx.p() as usize, rows)
    }
}

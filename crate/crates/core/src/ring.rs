//! Arithmetic over `Z_{p^2}`: Lee and Hamming weights, distances and the Gray map
//! into `Z_p^p`.
//!
//! Residues are always stored canonically in `[0, modulus)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted, so that `p^2` fits in a `u32`.
pub const MAX_PRIME: u32 = 65_521;

/// Deterministic trial division.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ring `Z_{p^2}` for a validated prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RingContext {
    p: u32,
    q: u32,
}

impl RingContext {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::invalid(format!("p must be at least 2, got {p}")));
        }
        if p > MAX_PRIME {
            return Err(Error::invalid(format!("p = {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("p = {p} is not prime")));
        }
        Ok(Self { p, q: p * p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// The ring order `p^2`.
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    fn check_residue(&self, x: u32) -> Result<()> {
        if x >= self.q {
            return Err(Error::invalid(format!(
                "residue {x} is outside [0, {})",
                self.q
            )));
        }
        Ok(())
    }

    /// `x` is a unit iff it is coprime to `p`.
    pub fn is_unit(&self, x: u32) -> bool {
        x < self.q && !x.is_multiple_of(self.p)
    }

    /// Nonzero multiples of `p`.
    pub fn is_zero_divisor(&self, x: u32) -> bool {
        x < self.q && x != 0 && x.is_multiple_of(self.p)
    }

    #[inline]
    pub(crate) fn lee_unchecked(&self, x: u32) -> u32 {
        if x <= self.p {
            x
        } else if x <= self.q - self.p {
            self.p
        } else {
            self.q - x
        }
    }

    /// Lee weight of a single residue: `x` on `[0, p]`, `p` on `[p+1, p^2-p]`,
    /// `p^2 - x` above.
    pub fn lee_weight(&self, x: u32) -> Result<u32> {
        self.check_residue(x)?;
        Ok(self.lee_unchecked(x))
    }

    /// Lee weight of every residue, indexed by residue.
    pub fn lee_table(&self) -> Vec<u32> {
        (0..self.q).map(|x| self.lee_unchecked(x)).collect()
    }

    fn check_ring_word(&self, w: &Word) -> Result<()> {
        if w.modulus != self.q {
            return Err(Error::ModulusMismatch {
                expected: self.q,
                found: w.modulus,
            });
        }
        Ok(())
    }

    pub fn lee_weight_word(&self, w: &Word) -> Result<u32> {
        self.check_ring_word(w)?;
        Ok(w.entries.iter().map(|&x| self.lee_unchecked(x)).sum())
    }

    pub fn weight(&self, w: &Word, metric: Metric) -> Result<u32> {
        match metric {
            Metric::Hamming => Ok(w.hamming_weight()),
            Metric::Lee => self.lee_weight_word(w),
        }
    }

    /// Weight of `u - v` under `metric`. Lee distance needs both words over `Z_{p^2}`.
    pub fn distance(&self, u: &Word, v: &Word, metric: Metric) -> Result<u32> {
        let diff = u.sub(v)?;
        self.weight(&diff, metric)
    }

    /// Gray image of one residue. Writing `x = kp + j` with `0 <= j < p`, the image is
    /// `j` copies of `k+1 mod p` followed by `p-j` copies of `k`.
    pub fn gray_element(&self, x: u32) -> Result<Word> {
        self.check_residue(x)?;
        let mut out = Vec::with_capacity(self.p as usize);
        self.push_gray(x, &mut out);
        Ok(Word {
            modulus: self.p,
            entries: out,
        })
    }

    #[inline]
    fn push_gray(&self, x: u32, out: &mut Vec<u32>) {
        let (k, j) = (x / self.p, x % self.p);
        let hi = (k + 1) % self.p;
        out.extend(std::iter::repeat_n(hi, j as usize));
        out.extend(std::iter::repeat_n(k, (self.p - j) as usize));
    }

    /// Coordinatewise Gray map `Z_{p^2}^n -> Z_p^{pn}`.
    pub fn gray_word(&self, w: &Word) -> Result<Word> {
        self.check_ring_word(w)?;
        Ok(Word {
            modulus: self.p,
            entries: self.gray_entries(&w.entries),
        })
    }

    pub(crate) fn gray_entries(&self, entries: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(entries.len() * self.p as usize);
        for &x in entries {
            self.push_gray(x, &mut out);
        }
        out
    }
}

/// Distance used for weights, distances and covering radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Lee,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Hamming, Metric::Lee];

    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Lee => "lee",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hamming" => Ok(Metric::Hamming),
            "lee" => Ok(Metric::Lee),
            other => Err(Error::invalid(format!("unknown metric `{other}`"))),
        }
    }
}

/// A fixed-length vector of canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    modulus: u32,
    entries: Vec<u32>,
}

impl Word {
    /// Fails if any entry is not already a canonical residue.
    pub fn new(modulus: u32, entries: Vec<u32>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= modulus) {
            return Err(Error::invalid(format!(
                "entry {bad} is outside [0, {modulus})"
            )));
        }
        Ok(Self { modulus, entries })
    }

    /// Reduces arbitrary integers into canonical residues.
    pub fn reduced(modulus: u32, entries: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        let m = i64::from(modulus);
        Ok(Self {
            modulus,
            entries: entries
                .into_iter()
                .map(|e| e.rem_euclid(m) as u32)
                .collect(),
        })
    }

    pub fn zero(modulus: u32, len: usize) -> Self {
        Self {
            modulus,
            entries: vec![0; len],
        }
    }

    pub(crate) fn from_raw(modulus: u32, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < modulus));
        Self { modulus, entries }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn hamming_weight(&self) -> u32 {
        self.entries.iter().filter(|&&e| e != 0).count() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                expected: self.modulus,
                found: other.modulus,
            });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let m = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((a as u64 + b as u64) % m as u64) as u32)
            .collect();
        Ok(Word::from_raw(m, entries))
    }

    pub fn sub(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let m = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| if a >= b { a - b } else { m - (b - a) })
            .collect();
        Ok(Word::from_raw(m, entries))
    }

    pub fn scale(&self, a: u32) -> Word {
        let m = self.modulus as u64;
        let a = a as u64 % m;
        let entries = self
            .entries
            .iter()
            .map(|&e| ((e as u64 * a) % m) as u32)
            .collect();
        Word::from_raw(self.modulus, entries)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

//! Lee ball volumes and covering-radius bounds.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::code::{ambient_size, Limits, LinearCode};
use crate::error::{Error, Result};
use crate::ring::{Metric, RingContext, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    SphereCoveringPaper,
    SphereCoveringExactBall,
    ExternalDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundValue {
    Radius(u32),
    Unsatisfiable,
}

impl BoundValue {
    pub fn radius(&self) -> Option<u32> {
        match self {
            BoundValue::Radius(r) => Some(*r),
            BoundValue::Unsatisfiable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub p: u32,
    pub n: usize,
    pub code_size: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_lee_weights: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: BoundValue,
    pub inputs: BoundInputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereVariant {
    /// `p^{pn} / M <= sum_{i <= r} C(pn, i)`, verbatim.
    Paper,
    /// `p^{2n} / M <= |Lee ball of radius r|`.
    ExactBall,
}

/// Number of words of `Z_{p^2}^n` at each Lee weight `0..=pn`.
///
/// One coordinate contributes weight 0 once, each of `1..p` twice and `p` for the
/// remaining `p^2 - 2p + 1` residues; `n` coordinates convolve that spectrum.
pub fn lee_weight_spectrum(ctx: &RingContext, n: usize) -> Vec<BigUint> {
    let p = ctx.p() as usize;
    let mut single = vec![BigUint::from(2u32); p + 1];
    single[0] = BigUint::from(1u32);
    single[p] = BigUint::from(ctx.q() - 2 * ctx.p() + 1);

    let mut acc = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::default(); acc.len() + p];
        for (i, a) in acc.iter().enumerate() {
            for (j, s) in single.iter().enumerate() {
                next[i + j] += a * s;
            }
        }
        acc = next;
    }
    acc
}

/// Size of a Lee ball of radius `r` in `Z_{p^2}^n`.
pub fn lee_ball_volume(ctx: &RingContext, n: usize, r: u32) -> BigUint {
    lee_weight_spectrum(ctx, n)
        .into_iter()
        .take(r as usize + 1)
        .sum()
}

/// Ball size by enumerating every word of `Z_{p^2}^n` around `center`.
pub fn lee_ball_volume_oracle(
    ctx: &RingContext,
    center: &Word,
    r: u32,
    limits: &Limits,
) -> Result<u64> {
    if center.modulus() != ctx.q() {
        return Err(Error::ModulusMismatch {
            expected: ctx.q(),
            found: center.modulus(),
        });
    }
    let n = center.len();
    let total = limits.check_search("ball enumeration", ambient_size(ctx.q(), n))?;
    let mut word = vec![0u32; n];
    let mut inside = 0u64;
    for _ in 0..total {
        let v = Word::from_raw(ctx.q(), word.clone());
        if ctx.distance(&v, center, Metric::Lee)? <= r {
            inside += 1;
        }
        for d in word.iter_mut().rev() {
            *d += 1;
            if *d < ctx.q() {
                break;
            }
            *d = 0;
        }
    }
    Ok(inside)
}

fn binomial_row(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::from(1u32)];
    for i in 0..m {
        let next = &row[i] * BigUint::from(m - i) / BigUint::from(i + 1);
        row.push(next);
    }
    row
}

/// Smallest radius consistent with a sphere-covering count for a code of size `code_size`.
pub fn sphere_covering_bound(
    ctx: &RingContext,
    n: usize,
    code_size: u64,
    variant: SphereVariant,
) -> Result<BoundReport> {
    if code_size == 0 {
        return Err(Error::invalid("code size must be at least 1"));
    }
    if n == 0 {
        return Err(Error::invalid("code length must be positive"));
    }
    let m = BigUint::from(code_size);
    let pn = ctx.p() as usize * n;
    let (kind, ambient, volumes) = match variant {
        SphereVariant::Paper => (
            BoundKind::SphereCoveringPaper,
            BigUint::from(ctx.p()).pow(pn as u32),
            binomial_row(pn),
        ),
        SphereVariant::ExactBall => (
            BoundKind::SphereCoveringExactBall,
            BigUint::from(ctx.q()).pow(n as u32),
            lee_weight_spectrum(ctx, n),
        ),
    };
    // ambient / M <= V(r)  <=>  ambient <= M * V(r), with no rounding.
    let mut cumulative = BigUint::default();
    let mut value = BoundValue::Unsatisfiable;
    for (r, v) in volumes.iter().enumerate() {
        cumulative += v;
        if ambient <= &m * &cumulative {
            value = BoundValue::Radius(r as u32);
            break;
        }
    }
    Ok(BoundReport {
        kind,
        value,
        inputs: BoundInputs {
            p: ctx.p(),
            n,
            code_size,
            dual_lee_weights: None,
        },
    })
}

/// Number of distinct nonzero Lee weights in the dual code.
pub fn external_distance_bound(code: &LinearCode, limits: &Limits) -> Result<BoundReport> {
    let dual = code.dual(limits)?;
    let weights = dual.weight_distribution(Metric::Lee).nonzero_weights();
    Ok(BoundReport {
        kind: BoundKind::ExternalDistance,
        value: BoundValue::Radius(weights.len() as u32),
        inputs: BoundInputs {
            p: code.ctx().p(),
            n: code.n(),
            code_size: code.size() as u64,
            dual_lee_weights: Some(weights),
        },
    })
}

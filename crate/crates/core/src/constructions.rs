//! Builders for the repetition and block-repetition families, the Cartesian
//! product and the stacked `[[0 | G1], [G0 | A]]` construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::code::{ambient_size, GeneratorMatrix, Limits, LinearCode, WordSet};
use crate::error::{Error, Result};
use crate::ring::{is_prime, RingContext};

fn one() -> u32 {
    1
}

/// A code family and its parameters; the record format used by the CLI, the
/// audit configuration and counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructionSpec {
    UnitRep {
        p: u32,
        n: usize,
        #[serde(default = "one")]
        u: u32,
    },
    ZeroDivRep {
        p: u32,
        n: usize,
        /// Defaults to `p`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z: Option<u32>,
    },
    BrFull {
        p: u32,
        n: usize,
    },
    BrDropLast {
        p: u32,
        n: usize,
    },
    BrMixed {
        p: u32,
        m: usize,
        n: usize,
    },
    Cartesian {
        left: Box<ConstructionSpec>,
        right: Box<ConstructionSpec>,
    },
    Stacked {
        lower: Box<ConstructionSpec>,
        upper: Box<ConstructionSpec>,
        /// `k0 x n1` block under `G1`; zero when omitted.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<Vec<Vec<u32>>>,
    },
    Matrix {
        p: u32,
        rows: Vec<Vec<u32>>,
    },
    /// `k x n` generator with entries drawn uniformly from a seeded ChaCha8 stream.
    Random {
        p: u32,
        n: usize,
        k: usize,
        seed: u64,
    },
}

impl ConstructionSpec {
    pub fn p(&self) -> u32 {
        match self {
            ConstructionSpec::UnitRep { p, .. }
            | ConstructionSpec::ZeroDivRep { p, .. }
            | ConstructionSpec::BrFull { p, .. }
            | ConstructionSpec::BrDropLast { p, .. }
            | ConstructionSpec::BrMixed { p, .. }
            | ConstructionSpec::Matrix { p, .. }
            | ConstructionSpec::Random { p, .. } => *p,
            ConstructionSpec::Cartesian { left, .. } => left.p(),
            ConstructionSpec::Stacked { lower, .. } => lower.p(),
        }
    }

    /// Code length, without building anything.
    pub fn length(&self) -> usize {
        let p = self.p() as usize;
        match self {
            ConstructionSpec::UnitRep { n, .. }
            | ConstructionSpec::ZeroDivRep { n, .. }
            | ConstructionSpec::Random { n, .. } => *n,
            ConstructionSpec::BrFull { n, .. } => (p * p - 1) * n,
            ConstructionSpec::BrDropLast { n, .. } => (p * p).saturating_sub(2) * n,
            ConstructionSpec::BrMixed { m, n, .. } => m + (p - 1) * n,
            ConstructionSpec::Matrix { rows, .. } => rows.first().map_or(0, Vec::len),
            ConstructionSpec::Cartesian { left, right } => left.length() + right.length(),
            ConstructionSpec::Stacked { lower, upper, .. } => lower.length() + upper.length(),
        }
    }

    pub fn generator(&self) -> Result<GeneratorMatrix> {
        let ctx = RingContext::new(self.p())?;
        match self {
            ConstructionSpec::UnitRep { n, u, .. } => Ok(unit_repetition_matrix(&ctx, *n, *u)?),
            ConstructionSpec::ZeroDivRep { n, z, p } => {
                zero_divisor_repetition_matrix(&ctx, *n, z.unwrap_or(*p))
            }
            ConstructionSpec::BrFull { n, .. } => {
                block_matrix(&ctx, &(1..ctx.q()).collect::<Vec<_>>(), *n)
            }
            ConstructionSpec::BrDropLast { n, .. } => {
                block_matrix(&ctx, &(1..ctx.q() - 1).collect::<Vec<_>>(), *n)
            }
            ConstructionSpec::BrMixed { m, n, .. } => block_mixed_matrix(&ctx, *m, *n),
            ConstructionSpec::Matrix { rows, .. } => GeneratorMatrix::new(ctx, rows.clone()),
            ConstructionSpec::Random { n, k, seed, .. } => random_matrix(&ctx, *n, *k, *seed),
            ConstructionSpec::Cartesian { left, right } => {
                let (g1, g2) = (left.generator()?, right.generator()?);
                cartesian_matrix(&g1, &g2)
            }
            ConstructionSpec::Stacked { lower, upper, a } => {
                let (g0, g1) = (lower.generator()?, upper.generator()?);
                stacked_matrix(&g0, &g1, a.as_deref())
            }
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<LinearCode> {
        LinearCode::span(&self.generator()?, limits)
    }
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::invalid("block length n must be at least 1"))
    } else {
        Ok(())
    }
}

fn unit_repetition_matrix(ctx: &RingContext, n: usize, u: u32) -> Result<GeneratorMatrix> {
    check_length(n)?;
    if !ctx.is_unit(u) {
        return Err(Error::invalid(format!(
            "{u} is not a unit of Z_{}",
            ctx.q()
        )));
    }
    GeneratorMatrix::new(*ctx, vec![vec![u; n]])
}

fn zero_divisor_repetition_matrix(ctx: &RingContext, n: usize, z: u32) -> Result<GeneratorMatrix> {
    check_length(n)?;
    if !ctx.is_zero_divisor(z) {
        return Err(Error::invalid(format!(
            "{z} is not a nonzero zero-divisor of Z_{}",
            ctx.q()
        )));
    }
    GeneratorMatrix::new(*ctx, vec![vec![z; n]])
}

/// One row made of `n` copies of each symbol in turn.
fn block_matrix(ctx: &RingContext, symbols: &[u32], n: usize) -> Result<GeneratorMatrix> {
    check_length(n)?;
    let row = symbols
        .iter()
        .flat_map(|&s| std::iter::repeat_n(s, n))
        .collect();
    GeneratorMatrix::new(*ctx, vec![row])
}

fn block_mixed_matrix(ctx: &RingContext, m: usize, n: usize) -> Result<GeneratorMatrix> {
    if m == 0 {
        return Err(Error::invalid("unit block length m must be at least 1"));
    }
    check_length(n)?;
    let mut row = vec![1u32; m];
    for k in 1..ctx.p() {
        row.extend(std::iter::repeat_n(k * ctx.p(), n));
    }
    GeneratorMatrix::new(*ctx, vec![row])
}

fn random_matrix(ctx: &RingContext, n: usize, k: usize, seed: u64) -> Result<GeneratorMatrix> {
    check_length(n)?;
    if k == 0 {
        return Err(Error::invalid("row count k must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..ctx.q())).collect())
        .collect();
    GeneratorMatrix::new(*ctx, rows)
}

fn cartesian_matrix(g1: &GeneratorMatrix, g2: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    if g1.ctx() != g2.ctx() {
        return Err(Error::invalid(
            "Cartesian product of codes over different rings",
        ));
    }
    let (n1, n2) = (g1.n(), g2.n());
    let mut rows = Vec::with_capacity(g1.k() + g2.k());
    for r in g1.rows() {
        let mut row = r.entries().to_vec();
        row.resize(n1 + n2, 0);
        rows.push(row);
    }
    for r in g2.rows() {
        let mut row = vec![0; n1];
        row.extend_from_slice(r.entries());
        rows.push(row);
    }
    GeneratorMatrix::new(*g1.ctx(), rows)
}

fn stacked_matrix(
    g0: &GeneratorMatrix,
    g1: &GeneratorMatrix,
    a: Option<&[Vec<u32>]>,
) -> Result<GeneratorMatrix> {
    if g0.ctx() != g1.ctx() {
        return Err(Error::invalid("stacked construction over different rings"));
    }
    let (n0, n1) = (g0.n(), g1.n());
    let zero_a = vec![vec![0u32; n1]; g0.k()];
    let a = a.unwrap_or(&zero_a);
    if a.len() != g0.k() {
        return Err(Error::LengthMismatch {
            left: g0.k(),
            right: a.len(),
        });
    }
    if let Some(bad) = a.iter().find(|r| r.len() != n1) {
        return Err(Error::LengthMismatch {
            left: n1,
            right: bad.len(),
        });
    }
    let mut rows = Vec::with_capacity(g0.k() + g1.k());
    for r in g1.rows() {
        let mut row = vec![0; n0];
        row.extend_from_slice(r.entries());
        rows.push(row);
    }
    for (r, extra) in g0.rows().iter().zip(a) {
        let mut row = r.entries().to_vec();
        row.extend_from_slice(extra);
        rows.push(row);
    }
    GeneratorMatrix::new(*g0.ctx(), rows)
}

/// Span of `(u, ..., u)` for a unit `u`.
pub fn unit_repetition(ctx: &RingContext, n: usize, u: u32, limits: &Limits) -> Result<LinearCode> {
    LinearCode::span(&unit_repetition_matrix(ctx, n, u)?, limits)
}

/// Span of `(z, ..., z)` for a zero-divisor `z in {p, 2p, ..., (p-1)p}`.
pub fn zero_divisor_repetition(
    ctx: &RingContext,
    n: usize,
    z: u32,
    limits: &Limits,
) -> Result<LinearCode> {
    LinearCode::span(&zero_divisor_repetition_matrix(ctx, n, z)?, limits)
}

/// Blocks `1^n 2^n ... (p^2-1)^n`.
pub fn block_repetition_full(ctx: &RingContext, n: usize, limits: &Limits) -> Result<LinearCode> {
    ConstructionSpec::BrFull { p: ctx.p(), n }.build(limits)
}

/// Blocks `1^n 2^n ... (p^2-2)^n`.
pub fn block_repetition_drop_last(
    ctx: &RingContext,
    n: usize,
    limits: &Limits,
) -> Result<LinearCode> {
    ConstructionSpec::BrDropLast { p: ctx.p(), n }.build(limits)
}

/// Blocks `1^m p^n (2p)^n ... ((p-1)p)^n`.
pub fn block_repetition_mixed(
    ctx: &RingContext,
    m: usize,
    n: usize,
    limits: &Limits,
) -> Result<LinearCode> {
    LinearCode::span(&block_mixed_matrix(ctx, m, n)?, limits)
}

/// `{(c1 | c2)}`.
pub fn cartesian_product(c1: &LinearCode, c2: &LinearCode, limits: &Limits) -> Result<LinearCode> {
    let g = cartesian_matrix(c1.generator(), c2.generator())?;
    let code = LinearCode::span(&g, limits)?;
    debug_assert_eq!(code.size(), c1.size() * c2.size());
    Ok(code)
}

/// Span of `[[0 | G1], [G0 | A]]`; `A` defaults to zero.
pub fn stacked_construction(
    g0: &GeneratorMatrix,
    g1: &GeneratorMatrix,
    a: Option<&[Vec<u32>]>,
    limits: &Limits,
) -> Result<LinearCode> {
    LinearCode::span(&stacked_matrix(g0, g1, a)?, limits)
}

fn check_field(q: u32, n: usize) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::invalid(format!("q = {q} must be prime")));
    }
    check_length(n)
}

/// Closed form `ceil(n(q-1)/q)` quoted for the length-`n` repetition code over `F_q`.
pub fn field_repetition_radius(q: u32, n: usize) -> Result<u32> {
    check_field(q, n)?;
    let q = q as u64;
    Ok((n as u64 * (q - 1)).div_ceil(q) as u32)
}

/// Closed form `ceil(n(q-1)^2/q)` quoted for the block repetition code
/// `1^n 2^n ... (q-1)^n` over `F_q`.
pub fn field_block_repetition_radius(q: u32, n: usize) -> Result<u32> {
    check_field(q, n)?;
    let q = q as u64;
    Ok((n as u64 * (q - 1) * (q - 1)).div_ceil(q) as u32)
}

/// `{(a, ..., a) : a in Z_q}` for prime `q`.
pub fn field_repetition_code(q: u32, n: usize) -> Result<WordSet> {
    check_field(q, n)?;
    WordSet::new(q, n, (0..q).map(|a| vec![a; n]))
}

/// Scalar multiples of `1^n 2^n ... (q-1)^n` over `Z_q`, prime `q`.
pub fn field_block_repetition_code(q: u32, n: usize, limits: &Limits) -> Result<WordSet> {
    check_field(q, n)?;
    let row: Vec<u32> = (1..q).flat_map(|s| std::iter::repeat_n(s, n)).collect();
    if row.is_empty() {
        return Err(Error::invalid("q = 2 with n = 0 has no coordinates"));
    }
    let len = row.len();
    limits.check_span(ambient_size(q, 1))?;
    WordSet::span(q, len, &[row], limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{covering_radius, covering_radius_exhaustive, Method, SearchOptions};
    use crate::ring::Metric;
    use std::collections::BTreeMap;

    fn ring(p: u32) -> RingContext {
        RingContext::new(p).unwrap()
    }

    fn l() -> Limits {
        Limits::default()
    }

    fn listed(c: &LinearCode) -> Vec<Vec<u32>> {
        c.words().iter().map(<[u32]>::to_vec).collect()
    }

    fn radius(c: &LinearCode, metric: Metric) -> u32 {
        covering_radius(
            c,
            metric,
            Method::Exhaustive,
            &SearchOptions::with_threads(1),
        )
        .unwrap()
        .radius
    }

    #[test]
    fn repetition_examples() {
        let c = unit_repetition(&ring(2), 2, 1, &l()).unwrap();
        assert_eq!(
            listed(&c),
            vec![vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]
        );
        assert!(unit_repetition(&ring(2), 1, 3, &l()).unwrap().is_ambient());
        let c = unit_repetition(&ring(3), 1, 2, &l()).unwrap();
        assert_eq!(c.size(), 9);
        assert!(unit_repetition(&ring(3), 2, 3, &l()).is_err());

        let c = zero_divisor_repetition(&ring(2), 2, 2, &l()).unwrap();
        assert_eq!(listed(&c), vec![vec![0, 0], vec![2, 2]]);
        let c3 = zero_divisor_repetition(&ring(3), 1, 3, &l()).unwrap();
        assert_eq!(listed(&c3), vec![vec![0], vec![3], vec![6]]);
        let c6 = zero_divisor_repetition(&ring(3), 1, 6, &l()).unwrap();
        assert_eq!(c6.words(), c3.words());
        assert!(zero_divisor_repetition(&ring(3), 1, 4, &l()).is_err());
        assert!(zero_divisor_repetition(&ring(3), 1, 0, &l()).is_err());
        assert!(zero_divisor_repetition(&ring(3), 0, 3, &l()).is_err());
    }

    #[test]
    fn repetition_parameters() {
        for p in [2, 3, 5] {
            let ctx = ring(p);
            for n in 1..=3 {
                for u in (1..ctx.q()).filter(|&u| ctx.is_unit(u)) {
                    let c = unit_repetition(&ctx, n, u, &l()).unwrap();
                    let params = c.parameters().unwrap();
                    assert_eq!(
                        (params.n, params.size, params.d_hamming, params.d_lee),
                        (n, (p * p) as u64, n as u32, n as u32)
                    );
                }
                for k in 1..p {
                    let c = zero_divisor_repetition(&ctx, n, k * p, &l()).unwrap();
                    let params = c.parameters().unwrap();
                    assert_eq!(
                        (params.size, params.d_hamming, params.d_lee),
                        (p as u64, n as u32, p * n as u32)
                    );
                    assert_eq!(c.classify_type().unwrap(), crate::code::CodeType::Alpha);
                }
            }
        }
    }

    #[test]
    fn block_full_examples() {
        let c = block_repetition_full(&ring(2), 1, &l()).unwrap();
        assert_eq!(c.generator().rows()[0].entries(), &[1, 2, 3]);
        assert_eq!(c.size(), 4);
        assert_eq!(
            c.weight_distribution(Metric::Lee).counts,
            BTreeMap::from([(0, 1), (4, 3)])
        );
        let c = block_repetition_full(&ring(2), 2, &l()).unwrap();
        assert_eq!((c.n(), c.size()), (6, 4));
    }

    #[test]
    fn block_full_weight_distributions() {
        for p in [2u32, 3] {
            for n in [1u32, 2] {
                let c = block_repetition_full(&ring(p), n as usize, &l()).unwrap();
                let (q, nn) = (p as u64 * p as u64, n);
                assert_eq!(c.size() as u64, q);
                assert_eq!(
                    c.weight_distribution(Metric::Lee).counts,
                    BTreeMap::from([(0, 1), (p * p * (p - 1) * nn, q - 1)])
                );
                assert_eq!(
                    c.weight_distribution(Metric::Hamming).counts,
                    BTreeMap::from([
                        (0, 1),
                        ((p * p - p) * nn, p as u64 - 1),
                        ((p * p - 1) * nn, q - p as u64)
                    ])
                );
            }
        }
    }

    #[test]
    fn block_drop_last_examples() {
        let c = block_repetition_drop_last(&ring(2), 1, &l()).unwrap();
        assert_eq!(
            listed(&c),
            vec![vec![0, 0], vec![1, 2], vec![2, 0], vec![3, 2]]
        );
        assert_eq!(c.min_distance(Metric::Hamming).unwrap(), 1);
        assert_eq!(c.min_distance(Metric::Lee).unwrap(), 2);
        let c = block_repetition_drop_last(&ring(3), 1, &l()).unwrap();
        assert_eq!((c.n(), c.size()), (7, 9));
    }

    #[test]
    fn block_mixed_examples() {
        let c = block_repetition_mixed(&ring(2), 1, 1, &l()).unwrap();
        assert_eq!(c.generator().rows()[0].entries(), &[1, 2]);
        assert_eq!(c.min_distance(Metric::Lee).unwrap(), 2);
        let c = block_repetition_mixed(&ring(3), 2, 1, &l()).unwrap();
        assert_eq!(c.generator().rows()[0].entries(), &[1, 1, 3, 6]);
        assert_eq!(c.size(), 9);
        // For p = 2 the mixed and drop-last families coincide when m = n.
        for n in 1..=3 {
            assert_eq!(
                block_repetition_mixed(&ring(2), n, n, &l())
                    .unwrap()
                    .words(),
                block_repetition_drop_last(&ring(2), n, &l())
                    .unwrap()
                    .words()
            );
        }
        assert!(block_repetition_mixed(&ring(2), 0, 1, &l()).is_err());
    }

    #[test]
    fn cartesian_examples() {
        let cz = zero_divisor_repetition(&ring(2), 1, 2, &l()).unwrap();
        let prod = cartesian_product(&cz, &cz, &l()).unwrap();
        assert_eq!(
            listed(&prod),
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
        assert_eq!(radius(&prod, Metric::Lee), 2);

        let zero = ConstructionSpec::Matrix {
            p: 2,
            rows: vec![vec![0]],
        }
        .build(&l())
        .unwrap();
        let prod = cartesian_product(&zero, &zero, &l()).unwrap();
        assert_eq!(radius(&prod, Metric::Hamming), 2);

        let other = zero_divisor_repetition(&ring(3), 1, 3, &l()).unwrap();
        assert!(cartesian_product(&cz, &other, &l()).is_err());
    }

    #[test]
    fn stacked_examples() {
        let g = |x: u32| GeneratorMatrix::new(ring(2), vec![vec![x]]).unwrap();
        let c = stacked_construction(&g(2), &g(2), Some(&[vec![0]]), &l()).unwrap();
        assert_eq!(
            listed(&c),
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
        assert_eq!(radius(&c, Metric::Lee), 2);

        let c = stacked_construction(&g(1), &g(1), None, &l()).unwrap();
        assert!(c.is_ambient());

        let c = stacked_construction(&g(3), &g(2), Some(&[vec![1]]), &l()).unwrap();
        assert_eq!(c.size(), 8);
        let r0 = radius(&LinearCode::span(&g(3), &l()).unwrap(), Metric::Lee);
        let r1 = radius(&LinearCode::span(&g(2), &l()).unwrap(), Metric::Lee);
        assert!(radius(&c, Metric::Lee) <= r0 + r1);

        assert!(stacked_construction(&g(3), &g(2), Some(&[vec![1, 1]]), &l()).is_err());
        assert!(stacked_construction(&g(3), &g(2), Some(&[]), &l()).is_err());
    }

    #[test]
    fn field_formulas() {
        assert_eq!(field_repetition_radius(3, 4).unwrap(), 3);
        assert_eq!(field_repetition_radius(2, 2).unwrap(), 1);
        assert_eq!(field_block_repetition_radius(2, 1).unwrap(), 1);
        assert!(field_repetition_radius(4, 2).is_err());
        assert!(field_repetition_radius(3, 0).is_err());

        let code = field_repetition_code(2, 2).unwrap();
        let ctx = ring(2);
        let r = covering_radius_exhaustive(
            &code,
            Metric::Hamming,
            &ctx,
            &SearchOptions::with_threads(1),
        )
        .unwrap();
        assert_eq!(r.radius, 1);

        let block = field_block_repetition_code(3, 2, &l()).unwrap();
        assert_eq!(block.word_len(), 4);
        assert_eq!(block.size(), 3);
        assert!(block.contains(&[2, 2, 1, 1]));
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = ConstructionSpec::Stacked {
            lower: Box::new(ConstructionSpec::Random {
                p: 3,
                n: 2,
                k: 1,
                seed: 7,
            }),
            upper: Box::new(ConstructionSpec::ZeroDivRep {
                p: 3,
                n: 1,
                z: None,
            }),
            a: None,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            serde_json::from_str::<ConstructionSpec>(&text).unwrap(),
            spec
        );
        let parsed: ConstructionSpec =
            serde_json::from_str(r#"{"family":"unit_rep","p":2,"n":3}"#).unwrap();
        assert_eq!(parsed, ConstructionSpec::UnitRep { p: 2, n: 3, u: 1 });
        assert!(serde_json::from_str::<ConstructionSpec>(r#"{"family":"nope","p":2}"#).is_err());
        assert_eq!(spec.length(), 3);
        assert_eq!(spec.build(&l()).unwrap().n(), 3);
    }

    #[test]
    fn random_is_seeded() {
        let a = ConstructionSpec::Random {
            p: 3,
            n: 4,
            k: 2,
            seed: 11,
        };
        assert_eq!(a.generator().unwrap(), a.generator().unwrap());
        let b = ConstructionSpec::Random {
            p: 3,
            n: 4,
            k: 2,
            seed: 12,
        };
        assert_ne!(a.generator().unwrap(), b.generator().unwrap());
    }

    #[test]
    fn every_family_is_linear() {
        let specs = [
            ConstructionSpec::UnitRep { p: 3, n: 2, u: 4 },
            ConstructionSpec::ZeroDivRep {
                p: 3,
                n: 3,
                z: Some(6),
            },
            ConstructionSpec::BrFull { p: 3, n: 1 },
            ConstructionSpec::BrDropLast { p: 2, n: 2 },
            ConstructionSpec::BrMixed { p: 3, m: 2, n: 2 },
            ConstructionSpec::Random {
                p: 2,
                n: 4,
                k: 2,
                seed: 3,
            },
        ];
        for s in specs {
            let c = s.build(&l()).unwrap();
            assert!(c.words().is_additive_subgroup(), "{s:?}");
            assert_eq!(c.n(), s.length());
        }
    }
}

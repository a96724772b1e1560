//! Audits of published covering-radius results.
//!
//! Each audit builds the object a result talks about, computes the exact value by
//! brute force and compares it with the claimed value or bounds. A failed claim is
//! a `contradicted` verdict carrying a counterexample that [`recheck`] can replay
//! on its own; it is never an error.

mod config;
mod params;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::code::{CodeParameters, Limits, LinearCode, WordSet};
use crate::constructions::{
    field_block_repetition_code, field_block_repetition_radius, field_repetition_code,
    field_repetition_radius, ConstructionSpec,
};
use crate::covering::{
    covering_radius, covering_radius_cosets, covering_radius_exhaustive, covering_radius_gray,
    distance_to_code, external_distance_bound, sphere_covering_bound, BoundValue, CoveringResult,
    Method, SearchOptions, SphereVariant,
};
use crate::error::{Error, Result};
use crate::ring::{Metric, RingContext, Word};

pub use config::{fixture_codes, AuditEntry, SuiteConfig};
pub use params::AuditParams;
pub use report::{run_suite, SuiteOutcome, SUITE_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Zero-divisor repetition code radius `(p-1)n`.
    ThmI,
    /// Unit repetition code radius `(p-1)n`.
    ThmJ,
    /// Bounds for the full block repetition code.
    ThmK,
    /// Bounds for the block repetition code without its last block.
    ThmL,
    /// Bounds for the mixed unit/zero-divisor block repetition code.
    ThmM,
    /// Weight distributions of the full block repetition code.
    ThmWdist,
    /// Covering radius equals the largest coset-leader weight.
    PropC,
    /// Lee radius equals the Hamming radius of the Gray image.
    PropD,
    /// Sphere-covering lower bound.
    PropE,
    /// External-distance upper bound `s(C^perp)`.
    ThmF,
    /// Subadditivity of the stacked construction.
    ThmG,
    /// Additivity over Cartesian products.
    ThmCb,
    /// Radius formulas for repetition and block repetition codes over `F_q`.
    FieldRep,
    /// Radius of the zero code, per metric.
    ZeroCode,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::ThmI,
        TheoremId::ThmJ,
        TheoremId::ThmK,
        TheoremId::ThmL,
        TheoremId::ThmM,
        TheoremId::ThmWdist,
        TheoremId::PropC,
        TheoremId::PropD,
        TheoremId::PropE,
        TheoremId::ThmF,
        TheoremId::ThmG,
        TheoremId::ThmCb,
        TheoremId::FieldRep,
        TheoremId::ZeroCode,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::ThmI => "thm_i",
            TheoremId::ThmJ => "thm_j",
            TheoremId::ThmK => "thm_k",
            TheoremId::ThmL => "thm_l",
            TheoremId::ThmM => "thm_m",
            TheoremId::ThmWdist => "thm_wdist",
            TheoremId::PropC => "prop_c",
            TheoremId::PropD => "prop_d",
            TheoremId::PropE => "prop_e",
            TheoremId::ThmF => "thm_f",
            TheoremId::ThmG => "thm_g",
            TheoremId::ThmCb => "thm_cb",
            TheoremId::FieldRep => "field_rep",
            TheoremId::ZeroCode => "zero_code",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    WithinBounds,
    Contradicted,
    Unsatisfiable,
    SkippedResource,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::WithinBounds => "within_bounds",
            Verdict::Contradicted => "contradicted",
            Verdict::Unsatisfiable => "unsatisfiable",
            Verdict::SkippedResource => "skipped_resource",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What the published result asserts for these parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Exact(u32),
    Bounds {
        lower: u32,
        upper: u32,
    },
    AtMost(u32),
    /// The radius is at least every satisfiable sphere-covering value.
    SphereCovering {
        paper: BoundValue,
        exact_ball: BoundValue,
    },
    WeightDistributions {
        hamming: BTreeMap<u32, u64>,
        lee: BTreeMap<u32, u64>,
    },
    /// The named computed quantities coincide.
    Agreement(Vec<String>),
}

/// The object a counterexample is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeRef {
    Construction(ConstructionSpec),
    /// The Gray image of a construction, searched under the Hamming metric.
    GrayImage(ConstructionSpec),
    FieldRepetition {
        q: u32,
        n: usize,
        block: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// The radius exceeds `bound`.
    RadiusAbove {
        bound: u32,
    },
    /// The radius is below `bound`.
    RadiusBelow {
        bound: u32,
    },
    /// The radius differs from `claimed`.
    RadiusDiffers {
        claimed: u32,
    },
    /// The Gray-image Hamming radius differs from the Lee radius of the source code.
    GrayTransfer {
        lee_radius: u32,
    },
    MethodsDisagree {
        exhaustive: u32,
        coset_leader: u32,
    },
    DistributionDiffers {
        hamming: BTreeMap<u32, u64>,
        lee: BTreeMap<u32, u64>,
    },
}

/// Replayable evidence against a claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub code: CodeRef,
    pub metric: Metric,
    /// Exact covering radius observed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    /// A word at distance `radius` from the code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Word>,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub parameters: Value,
    pub claimed: Claim,
    pub computed: Map<String, Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Kept out of the report body; the suite envelope carries timings.
    #[serde(skip)]
    pub runtime: std::time::Duration,
}

struct Draft {
    claimed: Option<Claim>,
    computed: Map<String, Value>,
}

impl Draft {
    fn put(&mut self, key: &str, value: impl Serialize) {
        self.computed.insert(
            key.to_owned(),
            serde_json::to_value(value).expect("plain data serializes"),
        );
    }

    fn put_radius(&mut self, r: &CoveringResult) {
        self.put("radius", r.radius);
        self.put("witness", r.witness.entries());
        self.put("method", r.method);
        self.put("words_examined", r.words_examined);
    }
}

type Finding = (Verdict, Option<Counterexample>);

/// Runs one audit. Malformed parameters are a config error; hitting a resource cap
/// yields a `skipped_resource` report.
pub fn audit(id: TheoremId, parameters: &Value, opts: &SearchOptions) -> Result<TheoremReport> {
    let typed =
        AuditParams::parse(id, parameters).map_err(|e| Error::Config(format!("{id}: {e}")))?;
    audit_typed(id, &typed, parameters, opts)
}

fn audit_typed(
    id: TheoremId,
    typed: &AuditParams,
    parameters: &Value,
    opts: &SearchOptions,
) -> Result<TheoremReport> {
    let started = std::time::Instant::now();
    let mut draft = Draft {
        claimed: None,
        computed: Map::new(),
    };
    let outcome = run_audit(typed, &mut draft, opts);
    let (verdict, counterexample) = match outcome {
        Ok(finding) => finding,
        Err(e @ Error::ResourceLimit { .. }) => {
            draft.computed.clear();
            draft.put("skipped", e.to_string());
            (Verdict::SkippedResource, None)
        }
        Err(e) => return Err(Error::Config(format!("{id}: {e}"))),
    };
    Ok(TheoremReport {
        theorem_id: id,
        parameters: parameters.clone(),
        claimed: draft
            .claimed
            .expect("every audit states its claim before computing"),
        computed: draft.computed,
        verdict,
        counterexample,
        runtime: started.elapsed(),
    })
}

fn exact_finding(claimed: u32, r: &CoveringResult, code: CodeRef) -> Finding {
    if r.radius == claimed {
        (Verdict::Confirmed, None)
    } else {
        (
            Verdict::Contradicted,
            Some(Counterexample {
                code,
                metric: r.metric,
                radius: Some(r.radius),
                witness: Some(r.witness.clone()),
                violation: Violation::RadiusDiffers { claimed },
            }),
        )
    }
}

fn bounds_finding(lower: u32, upper: u32, r: &CoveringResult, code: CodeRef) -> Finding {
    let violation = if r.radius < lower {
        Violation::RadiusBelow { bound: lower }
    } else if r.radius > upper {
        Violation::RadiusAbove { bound: upper }
    } else {
        return (Verdict::WithinBounds, None);
    };
    (
        Verdict::Contradicted,
        Some(Counterexample {
            code,
            metric: r.metric,
            radius: Some(r.radius),
            witness: Some(r.witness.clone()),
            violation,
        }),
    )
}

fn at_most_finding(bound: u32, r: &CoveringResult, code: CodeRef) -> Finding {
    bounds_finding(0, bound, r, code)
}

fn parameter_claim(draft: &mut Draft, code: &LinearCode, claimed: CodeParameters) -> Result<()> {
    let actual = code.parameters()?;
    draft.put("parameters", actual);
    draft.put("claimed_parameters", claimed);
    draft.put("parameter_claim_holds", actual == claimed);
    Ok(())
}

fn run_audit(params: &AuditParams, draft: &mut Draft, opts: &SearchOptions) -> Result<Finding> {
    let limits = &opts.limits;
    match params {
        AuditParams::ThmI(pr) => {
            let spec = ConstructionSpec::ZeroDivRep {
                p: pr.p,
                n: pr.n,
                z: Some(pr.z.unwrap_or(pr.p)),
            };
            let claimed = (pr.p - 1) * pr.n as u32;
            draft.claimed = Some(Claim::Exact(claimed));
            let code = spec.build(limits)?;
            let r = covering_radius(
                &code,
                Metric::Lee,
                pr.method.unwrap_or(Method::Exhaustive),
                opts,
            )?;
            draft.put_radius(&r);
            Ok(exact_finding(claimed, &r, CodeRef::Construction(spec)))
        }
        AuditParams::ThmJ(pr) => {
            let spec = ConstructionSpec::UnitRep {
                p: pr.p,
                n: pr.n,
                u: pr.u.unwrap_or(1),
            };
            let claimed = (pr.p - 1) * pr.n as u32;
            draft.claimed = Some(Claim::Exact(claimed));
            let code = spec.build(limits)?;
            let r = covering_radius(
                &code,
                Metric::Lee,
                pr.method.unwrap_or(Method::Exhaustive),
                opts,
            )?;
            draft.put_radius(&r);
            Ok(exact_finding(claimed, &r, CodeRef::Construction(spec)))
        }
        AuditParams::ThmK(pr) => {
            let (p, n) = (pr.p, pr.n as u32);
            let spec = ConstructionSpec::BrFull { p: pr.p, n: pr.n };
            let (lower, upper) = ((p * p * p - p * p - 1) * n, (p * p * p - p * p) * n);
            draft.claimed = Some(Claim::Bounds { lower, upper });
            let code = spec.build(limits)?;
            parameter_claim(
                draft,
                &code,
                CodeParameters {
                    n: spec.length(),
                    size: (p * p) as u64,
                    d_hamming: p * (p - 1) * n,
                    d_lee: p * p * (p - 1) * n,
                },
            )?;
            let r = covering_radius(
                &code,
                Metric::Lee,
                pr.method.unwrap_or(Method::Exhaustive),
                opts,
            )?;
            draft.put_radius(&r);
            Ok(bounds_finding(
                lower,
                upper,
                &r,
                CodeRef::Construction(spec),
            ))
        }
        AuditParams::ThmL(pr) => {
            let (p, n) = (pr.p, pr.n as u32);
            let spec = ConstructionSpec::BrDropLast { p: pr.p, n: pr.n };
            let (lower, upper) = ((p * p * p - p * p - 2) * n, (p * p * p - p * p - 1) * n);
            draft.claimed = Some(Claim::Bounds { lower, upper });
            let code = spec.build(limits)?;
            parameter_claim(
                draft,
                &code,
                CodeParameters {
                    n: spec.length(),
                    size: (p * p) as u64,
                    d_hamming: p * n,
                    d_lee: p * p * n,
                },
            )?;
            let r = covering_radius(
                &code,
                Metric::Lee,
                pr.method.unwrap_or(Method::Exhaustive),
                opts,
            )?;
            draft.put_radius(&r);
            Ok(bounds_finding(
                lower,
                upper,
                &r,
                CodeRef::Construction(spec),
            ))
        }
        AuditParams::ThmM(pr) => {
            let (p, m, n) = (pr.p, pr.m as u32, pr.n as u32);
            let spec = ConstructionSpec::BrMixed {
                p: pr.p,
                m: pr.m,
                n: pr.n,
            };
            let (lower, upper) = (m + (p * p - p - 1) * n, m + (p * p - p) * n);
            draft.claimed = Some(Claim::Bounds { lower, upper });
            let code = spec.build(limits)?;
            parameter_claim(
                draft,
                &code,
                CodeParameters {
                    n: spec.length(),
                    size: (p * p) as u64,
                    d_hamming: m,
                    d_lee: p * m,
                },
            )?;
            let r = covering_radius(
                &code,
                Metric::Lee,
                pr.method.unwrap_or(Method::Exhaustive),
                opts,
            )?;
            draft.put_radius(&r);
            Ok(bounds_finding(
                lower,
                upper,
                &r,
                CodeRef::Construction(spec),
            ))
        }
        AuditParams::ThmWdist(pr) => {
            let (p, n) = (pr.p, pr.n as u32);
            let q = (p * p) as u64;
            let hamming = BTreeMap::from([
                (0, 1),
                ((p * p - p) * n, p as u64 - 1),
                ((p * p - 1) * n, q - p as u64),
            ]);
            let lee = BTreeMap::from([(0, 1), (p * p * (p - 1) * n, q - 1)]);
            draft.claimed = Some(Claim::WeightDistributions {
                hamming: hamming.clone(),
                lee: lee.clone(),
            });
            let spec = ConstructionSpec::BrFull { p: pr.p, n: pr.n };
            let code = spec.build(limits)?;
            let got_h = code.weight_distribution(Metric::Hamming).counts;
            let got_l = code.weight_distribution(Metric::Lee).counts;
            draft.put("hamming", &got_h);
            draft.put("lee", &got_l);
            if got_h == hamming && got_l == lee {
                Ok((Verdict::Confirmed, None))
            } else {
                Ok((
                    Verdict::Contradicted,
                    Some(Counterexample {
                        code: CodeRef::Construction(spec),
                        metric: if got_l != lee {
                            Metric::Lee
                        } else {
                            Metric::Hamming
                        },
                        radius: None,
                        witness: None,
                        violation: Violation::DistributionDiffers { hamming, lee },
                    }),
                ))
            }
        }
        AuditParams::PropC(pr) => {
            draft.claimed = Some(Claim::Agreement(vec![
                "exhaustive".into(),
                "coset_leader".into(),
            ]));
            let code = pr.code.build(limits)?;
            let ex = covering_radius(&code, pr.metric, Method::Exhaustive, opts)?;
            let co = covering_radius(&code, pr.metric, Method::CosetLeader, opts)?;
            draft.put("exhaustive", ex.radius);
            draft.put("coset_leader", co.radius);
            draft.put("witness", ex.witness.entries());
            draft.put("witnesses_agree", ex.witness == co.witness);
            if ex.radius == co.radius {
                Ok((Verdict::Confirmed, None))
            } else {
                Ok((
                    Verdict::Contradicted,
                    Some(Counterexample {
                        code: CodeRef::Construction(pr.code.clone()),
                        metric: pr.metric,
                        radius: Some(ex.radius),
                        witness: Some(ex.witness),
                        violation: Violation::MethodsDisagree {
                            exhaustive: ex.radius,
                            coset_leader: co.radius,
                        },
                    }),
                ))
            }
        }
        AuditParams::PropD(pr) => {
            draft.claimed = Some(Claim::Agreement(vec![
                "lee_radius".into(),
                "gray_hamming_radius".into(),
            ]));
            let code = pr.code.build(limits)?;
            let gray = covering_radius_gray(&code, opts)?;
            let lee = covering_radius(&code, Metric::Lee, Method::Exhaustive, opts)?;
            draft.put("lee_radius", lee.radius);
            draft.put("gray_hamming_radius", gray.radius);
            draft.put("gray_witness", gray.witness.entries());
            if lee.radius == gray.radius {
                Ok((Verdict::Confirmed, None))
            } else {
                Ok((
                    Verdict::Contradicted,
                    Some(Counterexample {
                        code: CodeRef::GrayImage(pr.code.clone()),
                        metric: Metric::Hamming,
                        radius: Some(gray.radius),
                        witness: Some(gray.witness),
                        violation: Violation::GrayTransfer {
                            lee_radius: lee.radius,
                        },
                    }),
                ))
            }
        }
        AuditParams::PropE(pr) => {
            let ctx = RingContext::new(pr.code.p())?;
            let n = pr.code.length();
            let code = pr.code.build(limits)?;
            let m = code.size() as u64;
            let paper = sphere_covering_bound(&ctx, n, m, SphereVariant::Paper)?.value;
            let exact_ball = sphere_covering_bound(&ctx, n, m, SphereVariant::ExactBall)?.value;
            draft.claimed = Some(Claim::SphereCovering { paper, exact_ball });
            let r = covering_radius(&code, Metric::Lee, Method::Exhaustive, opts)?;
            draft.put_radius(&r);
            draft.put("paper_bound", paper);
            draft.put("exact_ball_bound", exact_ball);
            let spec = CodeRef::Construction(pr.code.clone());
            let ball = exact_ball
                .radius()
                .expect("the exact-ball bound is always satisfiable");
            if ball > r.radius {
                return Ok(bounds_finding(ball, u32::MAX, &r, spec));
            }
            match paper {
                BoundValue::Unsatisfiable => Ok((Verdict::Unsatisfiable, None)),
                BoundValue::Radius(b) => Ok(bounds_finding(b, u32::MAX, &r, spec)),
            }
        }
        AuditParams::ThmF(pr) => {
            let code = pr.code.build(limits)?;
            let bound = external_distance_bound(&code, limits)?;
            let s = bound.value.radius().expect("external distance is a count");
            draft.claimed = Some(Claim::AtMost(s));
            draft.put("dual_lee_weights", &bound.inputs.dual_lee_weights);
            let r = covering_radius(&code, Metric::Lee, Method::Exhaustive, opts)?;
            draft.put_radius(&r);
            Ok(at_most_finding(
                s,
                &r,
                CodeRef::Construction(pr.code.clone()),
            ))
        }
        AuditParams::ThmG(pr) => {
            let spec = ConstructionSpec::Stacked {
                lower: Box::new(pr.lower.clone()),
                upper: Box::new(pr.upper.clone()),
                a: pr.a.clone(),
            };
            let r0 = covering_radius(
                &pr.lower.build(limits)?,
                pr.metric,
                Method::Exhaustive,
                opts,
            )?
            .radius;
            let r1 = covering_radius(
                &pr.upper.build(limits)?,
                pr.metric,
                Method::Exhaustive,
                opts,
            )?
            .radius;
            draft.claimed = Some(Claim::AtMost(r0 + r1));
            draft.put("lower_radius", r0);
            draft.put("upper_radius", r1);
            let r = covering_radius(&spec.build(limits)?, pr.metric, Method::Exhaustive, opts)?;
            draft.put_radius(&r);
            Ok(at_most_finding(r0 + r1, &r, CodeRef::Construction(spec)))
        }
        AuditParams::ThmCb(pr) => {
            let spec = ConstructionSpec::Cartesian {
                left: Box::new(pr.left.clone()),
                right: Box::new(pr.right.clone()),
            };
            let r1 = covering_radius(&pr.left.build(limits)?, pr.metric, Method::Exhaustive, opts)?
                .radius;
            let r2 = covering_radius(
                &pr.right.build(limits)?,
                pr.metric,
                Method::Exhaustive,
                opts,
            )?
            .radius;
            draft.claimed = Some(Claim::Exact(r1 + r2));
            draft.put("left_radius", r1);
            draft.put("right_radius", r2);
            let r = covering_radius(&spec.build(limits)?, pr.metric, Method::Exhaustive, opts)?;
            draft.put_radius(&r);
            Ok(exact_finding(r1 + r2, &r, CodeRef::Construction(spec)))
        }
        AuditParams::FieldRep(pr) => {
            let claimed = if pr.block {
                field_block_repetition_radius(pr.q, pr.n)?
            } else {
                field_repetition_radius(pr.q, pr.n)?
            };
            draft.claimed = Some(Claim::Exact(claimed));
            let code_ref = CodeRef::FieldRepetition {
                q: pr.q,
                n: pr.n,
                block: pr.block,
            };
            let (words, ctx) = resolve(&code_ref, limits)?;
            let r = covering_radius_exhaustive(&words, Metric::Hamming, &ctx, opts)?;
            draft.put_radius(&r);
            Ok(exact_finding(claimed, &r, code_ref))
        }
        AuditParams::ZeroCode(pr) => {
            let claimed = match pr.metric {
                Metric::Hamming => pr.n as u32,
                Metric::Lee => pr.p * pr.n as u32,
            };
            draft.claimed = Some(Claim::Exact(claimed));
            draft.put(
                "reading",
                match pr.metric {
                    Metric::Hamming => "stated (radius n)",
                    Metric::Lee => "lee (radius pn)",
                },
            );
            if pr.n == 0 {
                return Err(Error::invalid("n must be at least 1"));
            }
            let spec = ConstructionSpec::Matrix {
                p: pr.p,
                rows: vec![vec![0; pr.n]],
            };
            let r = covering_radius(&spec.build(limits)?, pr.metric, Method::Exhaustive, opts)?;
            draft.put_radius(&r);
            Ok(exact_finding(claimed, &r, CodeRef::Construction(spec)))
        }
    }
}

/// The word set and ring a code reference denotes.
fn resolve(code: &CodeRef, limits: &Limits) -> Result<(WordSet, RingContext)> {
    match code {
        CodeRef::Construction(spec) => {
            let c = spec.build(limits)?;
            Ok((c.words().clone(), *c.ctx()))
        }
        CodeRef::GrayImage(spec) => {
            let c = spec.build(limits)?;
            Ok((c.gray_image(), *c.ctx()))
        }
        CodeRef::FieldRepetition { q, n, block } => {
            let words = if *block {
                field_block_repetition_code(*q, *n, limits)?
            } else {
                field_repetition_code(*q, *n)?
            };
            Ok((words, RingContext::new(*q)?))
        }
    }
}

/// Replays a counterexample from its record alone.
///
/// The witness distance is recomputed directly, and exact radii are recomputed
/// through the coset-leader route (the audits use the direct scan) whenever the
/// code is linear. Returns whether the violation still holds.
pub fn recheck(cx: &Counterexample, opts: &SearchOptions) -> Result<bool> {
    let (words, ctx) = resolve(&cx.code, &opts.limits)?;
    if let (Some(radius), Some(witness)) = (cx.radius, &cx.witness) {
        if distance_to_code(witness, &words, cx.metric, &ctx)? != radius {
            return Ok(false);
        }
    }
    let exact = |metric: Metric| -> Result<u32> {
        let r = if words.is_additive_subgroup() {
            covering_radius_cosets(&words, metric, &ctx, opts)?
        } else {
            covering_radius_exhaustive(&words, metric, &ctx, opts)?
        };
        Ok(r.radius)
    };
    Ok(match &cx.violation {
        Violation::RadiusAbove { bound } => match cx.radius {
            // A verified witness at distance `radius` is enough.
            Some(r) if cx.witness.is_some() => r > *bound,
            _ => exact(cx.metric)? > *bound,
        },
        Violation::RadiusBelow { bound } => {
            let r = exact(cx.metric)?;
            Some(r) == cx.radius && r < *bound
        }
        Violation::RadiusDiffers { claimed } => {
            let r = exact(cx.metric)?;
            Some(r) == cx.radius && r != *claimed
        }
        Violation::GrayTransfer { lee_radius } => {
            let CodeRef::GrayImage(spec) = &cx.code else {
                return Err(Error::invalid(
                    "a Gray-transfer counterexample must reference a Gray image",
                ));
            };
            let image_radius =
                covering_radius_exhaustive(&words, Metric::Hamming, &ctx, opts)?.radius;
            let source = spec.build(&opts.limits)?;
            let lee = covering_radius_cosets(source.words(), Metric::Lee, &ctx, opts)?.radius;
            lee == *lee_radius && Some(image_radius) == cx.radius && image_radius != lee
        }
        Violation::MethodsDisagree { .. } => {
            let a = covering_radius_exhaustive(&words, cx.metric, &ctx, opts)?.radius;
            let b = covering_radius_cosets(&words, cx.metric, &ctx, opts)?.radius;
            a != b
        }
        Violation::DistributionDiffers { hamming, lee } => {
            let CodeRef::Construction(spec) = &cx.code else {
                return Err(Error::invalid(
                    "a distribution counterexample must reference a construction",
                ));
            };
            let c = spec.build(&opts.limits)?;
            c.weight_distribution(Metric::Hamming).counts != *hamming
                || c.weight_distribution(Metric::Lee).counts != *lee
        }
    })
}

#[cfg(test)]
mod tests;

//! Audit suite configuration and the built-in default suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::{AuditParams, TheoremId};
use crate::code::ambient_size;
use crate::constructions::ConstructionSpec;
use crate::error::{Error, Result};

/// One block of audits. Explicit `params` run first, then every combination of
/// the `grid` axes (keys vary in sorted order, last key fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditEntry {
    pub theorem: TheoremId,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub grid: BTreeMap<String, Vec<Value>>,
}

impl AuditEntry {
    fn expand(&self) -> Vec<Value> {
        let mut out = self.params.clone();
        if !self.grid.is_empty() {
            let mut rows = vec![Map::new()];
            for (key, values) in &self.grid {
                rows = rows
                    .into_iter()
                    .flat_map(|row| {
                        values.iter().map(move |v| {
                            let mut row = row.clone();
                            row.insert(key.clone(), v.clone());
                            row
                        })
                    })
                    .collect();
            }
            out.extend(rows.into_iter().map(Value::Object));
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub audits: Vec<AuditEntry>,
}

impl SuiteConfig {
    /// Parses and validates a JSON config. Every parameter record is checked
    /// against its theorem before anything runs.
    pub fn parse(text: &str) -> Result<Self> {
        let config: SuiteConfig = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("line {} column {}: {e}", e.line(), e.column())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, entry) in self.audits.iter().enumerate() {
            for (j, value) in entry.expand().iter().enumerate() {
                let place = if j < entry.params.len() {
                    format!("audits[{i}].params[{j}]")
                } else {
                    format!("audits[{i}].grid[{}]", j - entry.params.len())
                };
                AuditParams::parse(entry.theorem, value)
                    .map_err(|e| Error::Config(format!("{place} ({}): {e}", entry.theorem)))?;
            }
        }
        Ok(())
    }

    /// Every audit in run order.
    pub fn expand(&self) -> Vec<(TheoremId, Value)> {
        self.audits
            .iter()
            .flat_map(|e| e.expand().into_iter().map(move |v| (e.theorem, v)))
            .collect()
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    /// The built-in suite: every audit at sizes that finish in seconds, plus the
    /// 43M-word full block repetition instance through the coset-leader route.
    pub fn default_suite() -> Self {
        let fixtures = fixture_codes();
        let metric_pairs = |codes: &[ConstructionSpec]| -> Vec<Value> {
            codes
                .iter()
                .flat_map(|c| ["hamming", "lee"].map(|m| json!({"code": c, "metric": m})))
                .collect()
        };
        let code_params = |codes: &[ConstructionSpec]| -> Vec<Value> {
            codes.iter().map(|c| json!({"code": c})).collect()
        };
        let gray_fixtures: Vec<ConstructionSpec> = fixtures
            .iter()
            .filter(|c| ambient_size(c.p(), c.p() as usize * c.length()) <= 1 << 20)
            .cloned()
            .collect();
        let small = |n: usize| (1..=n).map(|k| json!(k)).collect::<Vec<_>>();
        let grid = |p: u32, n: usize| {
            BTreeMap::from([("n".to_owned(), small(n)), ("p".to_owned(), vec![json!(p)])])
        };

        let rep = |p: u32, n: usize| json!({"family": "unit_rep", "p": p, "n": n});
        let zdr = |p: u32, n: usize| json!({"family": "zero_div_rep", "p": p, "n": n});
        let stacked_pairs = vec![
            json!({"lower": rep(2, 1), "upper": rep(2, 1), "metric": "lee"}),
            json!({"lower": rep(2, 2), "upper": zdr(2, 1), "metric": "lee"}),
            json!({"lower": zdr(2, 1), "upper": rep(2, 1), "a": [[1]], "metric": "lee"}),
            json!({"lower": rep(2, 2), "upper": rep(2, 1), "a": [[2]], "metric": "hamming"}),
            json!({"lower": rep(3, 1), "upper": zdr(3, 1), "metric": "lee"}),
            json!({"lower": rep(3, 1), "upper": rep(3, 1), "a": [[4]], "metric": "hamming"}),
        ];
        let product_pairs: Vec<Value> = [
            (rep(2, 1), rep(2, 1)),
            (rep(2, 2), zdr(2, 1)),
            (zdr(2, 2), json!({"family": "br_drop_last", "p": 2, "n": 1})),
            (rep(3, 1), zdr(3, 1)),
        ]
        .into_iter()
        .flat_map(|(l, r)| ["hamming", "lee"].map(|m| json!({"left": l, "right": r, "metric": m})))
        .collect();

        let mut audits = Vec::new();
        for id in [TheoremId::ThmI, TheoremId::ThmJ] {
            audits.push(AuditEntry {
                theorem: id,
                params: vec![],
                grid: grid(2, 5),
            });
            audits.push(AuditEntry {
                theorem: id,
                params: vec![],
                grid: grid(3, 3),
            });
        }
        audits.push(AuditEntry {
            theorem: TheoremId::ThmK,
            params: vec![json!({"p": 3, "n": 1, "method": "coset_leader"})],
            grid: grid(2, 2),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ThmL,
            params: vec![json!({"p": 3, "n": 1})],
            grid: grid(2, 3),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ThmM,
            params: vec![],
            grid: BTreeMap::from([
                ("m".to_owned(), small(2)),
                ("n".to_owned(), small(2)),
                ("p".to_owned(), vec![json!(2)]),
            ]),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ThmWdist,
            params: vec![],
            grid: BTreeMap::from([
                ("n".to_owned(), small(2)),
                ("p".to_owned(), vec![json!(2), json!(3)]),
            ]),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::PropC,
            params: metric_pairs(&fixtures),
            grid: BTreeMap::new(),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::PropD,
            params: code_params(&gray_fixtures),
            grid: BTreeMap::new(),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::PropE,
            params: code_params(&fixtures),
            grid: BTreeMap::new(),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ThmF,
            params: code_params(&fixtures),
            grid: BTreeMap::new(),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ThmG,
            params: stacked_pairs,
            grid: BTreeMap::new(),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ThmCb,
            params: product_pairs,
            grid: BTreeMap::new(),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::FieldRep,
            params: vec![],
            grid: BTreeMap::from([
                ("n".to_owned(), small(6)),
                ("q".to_owned(), vec![json!(2), json!(3), json!(5)]),
            ]),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::FieldRep,
            params: (1..=2)
                .map(|n| json!({"q": 5, "n": n, "block": true}))
                .collect(),
            grid: BTreeMap::from([
                ("block".to_owned(), vec![json!(true)]),
                ("n".to_owned(), small(3)),
                ("q".to_owned(), vec![json!(2), json!(3)]),
            ]),
        });
        audits.push(AuditEntry {
            theorem: TheoremId::ZeroCode,
            params: vec![],
            grid: BTreeMap::from([
                ("metric".to_owned(), vec![json!("hamming"), json!("lee")]),
                ("n".to_owned(), small(2)),
                ("p".to_owned(), vec![json!(2), json!(3)]),
            ]),
        });
        SuiteConfig { audits }
    }
}

/// Small codes from every family plus seeded random codes.
pub fn fixture_codes() -> Vec<ConstructionSpec> {
    use ConstructionSpec as S;
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(S::UnitRep { p: 2, n, u: 1 });
        out.push(S::ZeroDivRep { p: 2, n, z: None });
    }
    for n in 1..=2 {
        out.push(S::UnitRep { p: 3, n, u: 1 });
        out.push(S::ZeroDivRep { p: 3, n, z: None });
        out.push(S::BrDropLast { p: 2, n });
    }
    out.push(S::BrFull { p: 2, n: 1 });
    out.push(S::BrMixed { p: 2, m: 1, n: 1 });
    out.push(S::BrMixed { p: 2, m: 2, n: 1 });
    out.push(S::Matrix {
        p: 2,
        rows: vec![vec![1, 2, 3], vec![0, 2, 2]],
    });
    out.push(S::Matrix {
        p: 3,
        rows: vec![vec![1, 3]],
    });
    for seed in 1..=3 {
        out.push(S::Random {
            p: 2,
            n: 3,
            k: 1,
            seed,
        });
    }
    out.push(S::Random {
        p: 2,
        n: 4,
        k: 2,
        seed: 4,
    });
    out.push(S::Random {
        p: 3,
        n: 2,
        k: 1,
        seed: 5,
    });
    out
}

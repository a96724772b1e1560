//! Typed parameter records for each audit.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::TheoremId;
use crate::constructions::ConstructionSpec;
use crate::covering::Method;
use crate::ring::Metric;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroDivParams {
    pub p: u32,
    pub n: usize,
    #[serde(default)]
    pub z: Option<u32>,
    #[serde(default)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitParams {
    pub p: u32,
    pub n: usize,
    #[serde(default)]
    pub u: Option<u32>,
    #[serde(default)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockParams {
    pub p: u32,
    pub n: usize,
    #[serde(default)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedParams {
    pub p: u32,
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeParams {
    pub code: ConstructionSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeMetricParams {
    pub code: ConstructionSpec,
    pub metric: Metric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackedParams {
    pub lower: ConstructionSpec,
    pub upper: ConstructionSpec,
    #[serde(default)]
    pub a: Option<Vec<Vec<u32>>>,
    pub metric: Metric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductParams {
    pub left: ConstructionSpec,
    pub right: ConstructionSpec,
    pub metric: Metric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldParams {
    pub q: u32,
    pub n: usize,
    #[serde(default)]
    pub block: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroCodeParams {
    pub p: u32,
    pub n: usize,
    pub metric: Metric,
}

/// Parameters of one audit, checked against the theorem's record shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditParams {
    ThmI(ZeroDivParams),
    ThmJ(UnitParams),
    ThmK(BlockParams),
    ThmL(BlockParams),
    ThmM(MixedParams),
    ThmWdist(BlockParams),
    PropC(CodeMetricParams),
    PropD(CodeParams),
    PropE(CodeParams),
    ThmF(CodeParams),
    ThmG(StackedParams),
    ThmCb(ProductParams),
    FieldRep(FieldParams),
    ZeroCode(ZeroCodeParams),
}

fn typed<T: DeserializeOwned>(value: &Value) -> Result<T, String> {
    serde_json::from_value(value.clone()).map_err(|e| e.to_string())
}

impl AuditParams {
    pub fn parse(id: TheoremId, value: &Value) -> Result<Self, String> {
        Ok(match id {
            TheoremId::ThmI => AuditParams::ThmI(typed(value)?),
            TheoremId::ThmJ => AuditParams::ThmJ(typed(value)?),
            TheoremId::ThmK => AuditParams::ThmK(typed(value)?),
            TheoremId::ThmL => AuditParams::ThmL(typed(value)?),
            TheoremId::ThmM => AuditParams::ThmM(typed(value)?),
            TheoremId::ThmWdist => AuditParams::ThmWdist(typed(value)?),
            TheoremId::PropC => AuditParams::PropC(typed(value)?),
            TheoremId::PropD => AuditParams::PropD(typed(value)?),
            TheoremId::PropE => AuditParams::PropE(typed(value)?),
            TheoremId::ThmF => AuditParams::ThmF(typed(value)?),
            TheoremId::ThmG => AuditParams::ThmG(typed(value)?),
            TheoremId::ThmCb => AuditParams::ThmCb(typed(value)?),
            TheoremId::FieldRep => AuditParams::FieldRep(typed(value)?),
            TheoremId::ZeroCode => AuditParams::ZeroCode(typed(value)?),
        })
    }
}

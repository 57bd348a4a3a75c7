//! The JSON descriptor schema:
//!
//! ```json
//! {"ground": {"type": "tadic", "coefficients": "Q"},
//!  "chain": [{"type": "monomial", "gamma": "1"},
//!            {"type": "augmented", "key": "x - t", "gamma": "3"},
//!            {"type": "truncation", "key": "x"}]}
//! ```
//!
//! A `limit` step carries `"prefix": [{"key": …, "gamma": …}, …]` whose
//! family base is the valuation built by the preceding steps.

use serde::{Deserialize, Serialize};

use super::{DescriptorKind, ValuationDescriptor};
use crate::error::{Error, Result};
use crate::family::FamilyPrefix;
use crate::ground::{GroundFieldConfig, Value};
use crate::parse::parse_poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDocument {
    pub ground: GroundFieldConfig,
    pub chain: Vec<StepDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StepDocument {
    Monomial { gamma: Value },
    Augmented { key: String, gamma: Value },
    Truncation { key: String },
    Limit { prefix: Vec<MemberDocument>, key: String, gamma: Value },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberDocument {
    pub key: String,
    pub gamma: Value,
}

/// `{"base": {descriptor}, "members": [{"key", "gamma"}, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub base: DescriptorDocument,
    pub members: Vec<MemberDocument>,
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn members_to_docs(prefix: &FamilyPrefix) -> Vec<MemberDocument> {
    prefix.members().iter().map(|m| MemberDocument { key: m.key.to_string(), gamma: m.gamma.clone() }).collect()
}

impl DescriptorDocument {
    pub fn from_descriptor(v: &ValuationDescriptor) -> Self {
        let mut steps = Vec::new();
        let mut cur = v.clone();
        let ground = loop {
            let prev = match cur.kind() {
                DescriptorKind::Monomial { ground, gamma } => {
                    steps.push(StepDocument::Monomial { gamma: gamma.clone() });
                    break *ground;
                }
                DescriptorKind::Augmented { base, key, gamma } => {
                    steps.push(StepDocument::Augmented { key: key.to_string(), gamma: gamma.clone() });
                    base.clone()
                }
                DescriptorKind::Truncation { ambient, key, .. } => {
                    steps.push(StepDocument::Truncation { key: key.to_string() });
                    ambient.clone()
                }
                DescriptorKind::LimitAugmented { prefix, key, gamma } => {
                    steps.push(StepDocument::Limit {
                        prefix: members_to_docs(prefix),
                        key: key.to_string(),
                        gamma: gamma.clone(),
                    });
                    prefix.base().clone()
                }
            };
            cur = prev;
        };
        steps.reverse();
        DescriptorDocument { ground, chain: steps }
    }

    pub fn to_descriptor(&self) -> Result<ValuationDescriptor> {
        let g = &self.ground;
        let mut steps = self.chain.iter();
        let mut cur = match steps.next() {
            Some(StepDocument::Monomial { gamma }) => ValuationDescriptor::monomial(*g, gamma.clone()),
            _ => return Err(Error::Descriptor("the chain must start with a monomial step".into())),
        };
        for step in steps {
            cur = match step {
                StepDocument::Monomial { .. } => {
                    return Err(Error::Descriptor("only the first step may be monomial".into()))
                }
                StepDocument::Augmented { key, gamma } => cur.augment(parse_poly(g, key)?, gamma.clone())?,
                StepDocument::Truncation { key } => cur.truncate(parse_poly(g, key)?)?,
                StepDocument::Limit { prefix, key, gamma } => {
                    let members = prefix
                        .iter()
                        .map(|m| Ok((parse_poly(g, &m.key)?, m.gamma.clone())))
                        .collect::<Result<Vec<_>>>()?;
                    let prefix = FamilyPrefix::new(cur, members)?;
                    ValuationDescriptor::limit_augmented(prefix, parse_poly(g, key)?, gamma.clone())?
                }
            };
        }
        Ok(cur)
    }
}

impl FamilyDocument {
    pub fn from_prefix(prefix: &FamilyPrefix) -> Self {
        FamilyDocument { base: DescriptorDocument::from_descriptor(prefix.base()), members: members_to_docs(prefix) }
    }

    pub fn to_prefix(&self) -> Result<FamilyPrefix> {
        let base = self.base.to_descriptor()?;
        let g = base.restrict_to_ground();
        let members =
            self.members.iter().map(|m| Ok((parse_poly(&g, &m.key)?, m.gamma.clone()))).collect::<Result<Vec<_>>>()?;
        FamilyPrefix::new(base, members)
    }
}

impl ValuationDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DescriptorDocument = serde_json::from_str(text).map_err(json_error)?;
        doc.to_descriptor()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DescriptorDocument::from_descriptor(self)).expect("serializable")
    }
}

impl FamilyPrefix {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FamilyDocument = serde_json::from_str(text).map_err(json_error)?;
        doc.to_prefix()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyDocument::from_prefix(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = r#"{"ground":{"type":"tadic","coefficients":"Q"},
        "chain":[{"type":"monomial","gamma":"1"},
                 {"type":"augmented","key":"x - t","gamma":"3"},
                 {"type":"truncation","key":"x"}]}"#;

    #[test]
    fn descriptor_round_trip() {
        let v = ValuationDescriptor::from_json(CHAIN).unwrap();
        assert!(matches!(v.kind(), DescriptorKind::Truncation { .. }));
        let again = ValuationDescriptor::from_json(&v.to_json()).unwrap();
        assert_eq!(again, v);
    }

    #[test]
    fn limit_round_trip() {
        let text = r#"{"ground":{"type":"tadic"},"chain":[
            {"type":"monomial","gamma":"1"},
            {"type":"limit","prefix":[{"key":"x - t","gamma":"2"},{"key":"x - t - t^2","gamma":"3"}],
             "key":"x - t/(1 - t)","gamma":"4"}]}"#;
        let v = ValuationDescriptor::from_json(text).unwrap();
        assert_eq!(ValuationDescriptor::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(ValuationDescriptor::from_json("{"), Err(Error::Parse { .. })));
        let no_root = r#"{"ground":{"type":"padic","p":2},"chain":[{"type":"augmented","key":"x","gamma":"1"}]}"#;
        assert!(matches!(ValuationDescriptor::from_json(no_root), Err(Error::Descriptor(_))));
        let bad_poly = r#"{"ground":{"type":"padic","p":2},"chain":[{"type":"monomial","gamma":"1"},{"type":"augmented","key":"x + t","gamma":"2"}]}"#;
        assert!(matches!(ValuationDescriptor::from_json(bad_poly), Err(Error::Parse { .. })));
    }
}

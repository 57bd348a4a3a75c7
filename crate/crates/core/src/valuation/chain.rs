use serde::Serialize;

use super::{DescriptorKind, ValuationDescriptor};
use crate::error::{Error, Result};
use crate::family::FamilyPrefix;
use crate::ground::{GroundFieldConfig, Value};
use crate::poly::Poly;

/// A monomial valuation followed by augmentation and limit-augmentation
/// steps, each built on the previous one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacLaneChain {
    steps: Vec<ValuationDescriptor>,
}

/// Where a key in [`MacLaneChain::keys`] comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum KeySource {
    Step { step: usize },
    PrefixMember { step: usize, member: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainKey {
    pub key: Poly,
    pub source: KeySource,
}

impl MacLaneChain {
    pub fn new(ground: GroundFieldConfig, gamma: Value) -> Self {
        MacLaneChain { steps: vec![ValuationDescriptor::monomial(ground, gamma)] }
    }

    pub fn augment(&self, key: Poly, gamma: Value) -> Result<Self> {
        let next = self.top().augment(key, gamma)?;
        let mut steps = self.steps.clone();
        steps.push(next);
        Ok(MacLaneChain { steps })
    }

    /// Appends a limit step over a family whose base is the current top.
    pub fn limit(&self, members: Vec<(Poly, Value)>, key: Poly, gamma: Value) -> Result<Self> {
        let prefix = FamilyPrefix::new(self.top().clone(), members)?;
        let next = ValuationDescriptor::limit_augmented(prefix, key, gamma)?;
        let mut steps = self.steps.clone();
        steps.push(next);
        Ok(MacLaneChain { steps })
    }

    /// Recovers the chain from a descriptor built only from chain steps.
    pub fn from_descriptor(v: &ValuationDescriptor) -> Result<Self> {
        let mut steps = vec![v.clone()];
        let mut cur = v.clone();
        loop {
            let prev = match cur.kind() {
                DescriptorKind::Monomial { .. } => break,
                DescriptorKind::Augmented { base, .. } => base.clone(),
                DescriptorKind::LimitAugmented { prefix, .. } => prefix.base().clone(),
                DescriptorKind::Truncation { .. } => {
                    return Err(Error::VariantMismatch("a chain cannot contain a truncation step".into()))
                }
            };
            steps.push(prev.clone());
            cur = prev;
        }
        steps.reverse();
        Ok(MacLaneChain { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ground(&self) -> GroundFieldConfig {
        self.steps[0].restrict_to_ground()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.steps.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.steps.len() })
        }
    }

    /// The key of step `i`; step 0 has key `x`.
    pub fn key(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        match self.steps[i].kind() {
            DescriptorKind::Monomial { ground, .. } => Ok(Poly::x(ground.field())),
            _ => self.steps[i].key_of().cloned(),
        }
    }

    pub fn gamma(&self, i: usize) -> Result<Value> {
        self.check_index(i)?;
        match self.steps[i].kind() {
            DescriptorKind::Monomial { gamma, .. } => Ok(gamma.clone()),
            _ => self.steps[i].gamma_of().cloned(),
        }
    }

    /// The valuation reached after step `i`.
    pub fn valuation(&self, i: usize) -> Result<&ValuationDescriptor> {
        self.check_index(i)?;
        Ok(&self.steps[i])
    }

    pub fn prefix_valuation(&self, i: usize) -> Result<&ValuationDescriptor> {
        self.valuation(i)
    }

    pub fn top(&self) -> &ValuationDescriptor {
        self.steps.last().expect("chain has a root")
    }

    pub fn steps(&self) -> &[ValuationDescriptor] {
        &self.steps
    }

    pub fn is_limit_step(&self, i: usize) -> bool {
        self.steps.get(i).is_some_and(|s| matches!(s.kind(), DescriptorKind::LimitAugmented { .. }))
    }

    pub fn prefix_at(&self, i: usize) -> Option<&FamilyPrefix> {
        match self.steps.get(i)?.kind() {
            DescriptorKind::LimitAugmented { prefix, .. } => Some(prefix),
            _ => None,
        }
    }

    /// `ν_Q` for the key `Q` of step `i`, truncating the top valuation.
    pub fn truncation_at(&self, i: usize) -> Result<ValuationDescriptor> {
        self.top().truncate(self.key(i)?)
    }

    /// Every key in order of appearance, with family members listed before
    /// the limit key they lead to.
    pub fn keys(&self) -> Result<Vec<ChainKey>> {
        let mut out = Vec::new();
        for i in 0..self.steps.len() {
            if let Some(prefix) = self.prefix_at(i) {
                for (m, member) in prefix.members().iter().enumerate() {
                    out.push(ChainKey {
                        key: member.key.clone(),
                        source: KeySource::PrefixMember { step: i, member: m },
                    });
                }
            }
            out.push(ChainKey { key: self.key(i)?, source: KeySource::Step { step: i } });
        }
        Ok(out)
    }

    /// Keys appearing strictly after step `i`.
    pub fn keys_after(&self, i: usize) -> Result<Vec<ChainKey>> {
        self.check_index(i)?;
        Ok(self
            .keys()?
            .into_iter()
            .filter(|k| match k.source {
                KeySource::Step { step } | KeySource::PrefixMember { step, .. } => step > i,
            })
            .collect())
    }
}

//! Valuations on `K[x]` described as trees of min-formula constructions.
//!
//! Every variant evaluates `f` the same way: expand `f` in some base
//! polynomial `Q` and take `min_i (μ(fᵢ) + i·γ)` for the appropriate `μ` and
//! `γ`. Only the source of `μ` and `γ` differs.

mod chain;
mod json;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilyPrefix;
use crate::ground::{GroundFieldConfig, Value};
use crate::poly::Poly;

pub use chain::{ChainKey, KeySource, MacLaneChain};
pub use json::{DescriptorDocument, FamilyDocument, MemberDocument, StepDocument};

/// A valuation on `K[x]`, shared cheaply by reference counting.
#[derive(Clone, PartialEq, Eq)]
pub struct ValuationDescriptor(Arc<DescriptorKind>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescriptorKind {
    /// `ν_γ(Σ aᵢxⁱ) = min ν₀(aᵢ) + iγ`.
    Monomial { ground: GroundFieldConfig, gamma: Value },
    /// `[base; Q ↦ γ]`.
    Augmented { base: ValuationDescriptor, key: Poly, gamma: Value },
    /// `ν_Q(f) = min ν(fᵢ) + i·ν(Q)` over the `Q`-expansion, `ν` the ambient.
    Truncation { ambient: ValuationDescriptor, key: Poly, key_value: Value },
    /// `[ν_F; Q ↦ γ]` over a continued family prefix.
    LimitAugmented { prefix: FamilyPrefix, key: Poly, gamma: Value },
}

impl fmt::Debug for ValuationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for ValuationDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            DescriptorKind::Monomial { ground, gamma } => write!(f, "[{ground}; x -> {gamma}]"),
            DescriptorKind::Augmented { base, key, gamma } => {
                write!(f, "[{base}; {key} -> {gamma}]")
            }
            DescriptorKind::Truncation { ambient, key, .. } => write!(f, "trunc({ambient}; {key})"),
            DescriptorKind::LimitAugmented { prefix, key, gamma } => {
                write!(f, "[lim({} members over {}); {key} -> {gamma}]", prefix.len(), prefix.base())
            }
        }
    }
}

fn require_monic_key(q: &Poly) -> Result<usize> {
    match q.degree() {
        Some(d) if d >= 1 && q.is_monic() => Ok(d),
        _ => Err(Error::Precondition(format!("key {q} must be monic of degree at least 1"))),
    }
}

impl ValuationDescriptor {
    fn wrap(kind: DescriptorKind) -> Self {
        ValuationDescriptor(Arc::new(kind))
    }

    pub fn kind(&self) -> &DescriptorKind {
        &self.0
    }

    /// The monomial valuation `[ν₀; x ↦ γ]`.
    pub fn monomial(ground: GroundFieldConfig, gamma: Value) -> Self {
        Self::wrap(DescriptorKind::Monomial { ground, gamma })
    }

    /// `[self; Q ↦ γ]`, checking monicity, degree monotonicity along the
    /// chain and `γ > self(Q)`.
    pub fn augment(&self, key: Poly, gamma: Value) -> Result<Self> {
        self.check_field(&key)?;
        let d = require_monic_key(&key)?;
        if let Some(base_deg) = self.chain_key_degree() {
            if d < base_deg {
                return Err(Error::Inadmissible(format!(
                    "key {key} has degree {d}, below the previous key degree {base_deg}"
                )));
            }
        }
        if let Some(Value::Infinity) = self.step_gamma() {
            return Err(Error::Inadmissible("cannot augment past a step with infinite value".into()));
        }
        let current = self.eval(&key)?;
        if gamma <= current {
            return Err(Error::Inadmissible(format!(
                "value {gamma} for {key} does not exceed its current value {current}"
            )));
        }
        Ok(Self::wrap(DescriptorKind::Augmented { base: self.clone(), key, gamma }))
    }

    /// The min-formula extension of `self` along `q` with no admissibility
    /// checks. The result need not be a valuation.
    pub fn extension_unchecked(&self, q: Poly, gamma: Value) -> Result<Self> {
        self.check_field(&q)?;
        if q.degree().is_none_or(|d| d < 1) {
            return Err(Error::InvalidBase(format!("extension base {q} must have degree at least 1")));
        }
        Ok(Self::wrap(DescriptorKind::Augmented { base: self.clone(), key: q, gamma }))
    }

    /// The truncation `ν_Q` of `self` at a monic `Q`.
    pub fn truncate(&self, key: Poly) -> Result<Self> {
        self.check_field(&key)?;
        require_monic_key(&key)?;
        let key_value = self.eval(&key)?;
        Ok(Self::wrap(DescriptorKind::Truncation { ambient: self.clone(), key, key_value }))
    }

    /// `[ν_F; Q ↦ γ]`; requires `deg Q ≥ d(F)` and `γ > ν_α(Q)` for every
    /// prefix member.
    pub fn limit_augmented(prefix: FamilyPrefix, key: Poly, gamma: Value) -> Result<Self> {
        prefix.base().check_field(&key)?;
        let d = require_monic_key(&key)?;
        if d < prefix.degree() {
            return Err(Error::Inadmissible(format!(
                "limit key {key} has degree {d} below the family degree {}",
                prefix.degree()
            )));
        }
        for (j, m) in prefix.members().iter().enumerate() {
            let v = m.valuation.eval(&key)?;
            if gamma <= v {
                return Err(Error::Inadmissible(format!(
                    "limit value {gamma} does not exceed member {j} value {v} of {key}"
                )));
            }
        }
        Ok(Self::wrap(DescriptorKind::LimitAugmented { prefix, key, gamma }))
    }

    pub fn restrict_to_ground(&self) -> GroundFieldConfig {
        match self.kind() {
            DescriptorKind::Monomial { ground, .. } => *ground,
            DescriptorKind::Augmented { base, .. } => base.restrict_to_ground(),
            DescriptorKind::Truncation { ambient, .. } => ambient.restrict_to_ground(),
            DescriptorKind::LimitAugmented { prefix, .. } => prefix.base().restrict_to_ground(),
        }
    }

    pub fn key_of(&self) -> Result<&Poly> {
        match self.kind() {
            DescriptorKind::Monomial { .. } => Err(Error::VariantMismatch("a monomial valuation has no key".into())),
            DescriptorKind::Augmented { key, .. }
            | DescriptorKind::Truncation { key, .. }
            | DescriptorKind::LimitAugmented { key, .. } => Ok(key),
        }
    }

    /// The value assigned to the key; for a truncation this is `ν(Q)`.
    pub fn gamma_of(&self) -> Result<&Value> {
        match self.kind() {
            DescriptorKind::Monomial { .. } => {
                Err(Error::VariantMismatch("a monomial valuation has no key value".into()))
            }
            DescriptorKind::Augmented { gamma, .. } | DescriptorKind::LimitAugmented { gamma, .. } => Ok(gamma),
            DescriptorKind::Truncation { key_value, .. } => Ok(key_value),
        }
    }

    /// The value of this step's key (`x` for monomial), if it is a chain step.
    fn step_gamma(&self) -> Option<&Value> {
        match self.kind() {
            DescriptorKind::Monomial { gamma, .. }
            | DescriptorKind::Augmented { gamma, .. }
            | DescriptorKind::LimitAugmented { gamma, .. } => Some(gamma),
            DescriptorKind::Truncation { .. } => None,
        }
    }

    /// Degree of this step's key when it is a chain step; `x` counts as 1.
    fn chain_key_degree(&self) -> Option<usize> {
        match self.kind() {
            DescriptorKind::Monomial { .. } => Some(1),
            DescriptorKind::Augmented { key, .. } | DescriptorKind::LimitAugmented { key, .. } => key.degree(),
            DescriptorKind::Truncation { .. } => None,
        }
    }

    fn check_field(&self, f: &Poly) -> Result<()> {
        let expected = self.restrict_to_ground().field();
        if f.field() != expected {
            return Err(Error::FieldMismatch { expected: expected.to_string(), found: f.field().to_string() });
        }
        Ok(())
    }

    /// `ν(f)`.
    pub fn eval(&self, f: &Poly) -> Result<Value> {
        self.check_field(f)?;
        // ν(D·f) = ν₀(D) + ν(f); expanding D·f avoids rational-function arithmetic.
        if let Some((d, scaled)) = f.clear_t_denominators() {
            let shift = self.restrict_to_ground().valuation(&d);
            return Ok(match (self.eval_unchecked(&scaled)?, shift) {
                (Value::Finite(w), Value::Finite(s)) => Value::Finite(w - s),
                (w, _) => w,
            });
        }
        self.eval_unchecked(f)
    }

    fn eval_unchecked(&self, f: &Poly) -> Result<Value> {
        if f.is_zero() {
            return Ok(Value::Infinity);
        }
        match self.kind() {
            DescriptorKind::Monomial { ground, gamma } => {
                let mut best = Value::Infinity;
                for (i, a) in f.coeffs().iter().enumerate() {
                    if !a.is_zero() {
                        best = best.min(ground.valuation(a) + gamma.times(i));
                    }
                }
                Ok(best)
            }
            DescriptorKind::Augmented { base, key, gamma } => {
                min_over_expansion(f, key, gamma, |c| base.eval_unchecked(c))
            }
            DescriptorKind::Truncation { ambient, key, key_value } => {
                min_over_expansion(f, key, key_value, |c| ambient.eval_unchecked(c))
            }
            DescriptorKind::LimitAugmented { prefix, key, gamma } => {
                min_over_expansion(f, key, gamma, |c| prefix.nu_f(c))
            }
        }
    }
}

/// `min_i μ(fᵢ) + i·γ` over the `key`-expansion of a nonzero `f`.
fn min_over_expansion(
    f: &Poly,
    key: &Poly,
    gamma: &Value,
    mut mu: impl FnMut(&Poly) -> Result<Value>,
) -> Result<Value> {
    if f.degree() < key.degree() {
        return mu(f);
    }
    let expansion = f.q_expansion(key)?;
    let mut best = Value::Infinity;
    for (i, part) in expansion.parts.iter().enumerate() {
        if !part.is_zero() {
            best = best.min(mu(part)? + gamma.times(i));
        }
    }
    Ok(best)
}

/// Whether `[ν; Q₁ ↦ γ₁] ≤ [ν; Q₂ ↦ γ₂]`, decided by `γ₁ ≤ [ν; Q₂ ↦ γ₂](Q₁)`.
pub fn leq_same_degree(nu: &ValuationDescriptor, q1: &Poly, gamma1: &Value, q2: &Poly, gamma2: &Value) -> Result<bool> {
    let d1 = require_monic_key(q1)?;
    let d2 = require_monic_key(q2)?;
    if d1 != d2 {
        return Err(Error::Precondition(format!("keys {q1} and {q2} have different degrees")));
    }
    if gamma1 >= gamma2 {
        return Err(Error::Precondition(format!("expected {gamma1} < {gamma2}")));
    }
    nu.augment(q1.clone(), gamma1.clone())?;
    let nu2 = nu.augment(q2.clone(), gamma2.clone())?;
    Ok(gamma1 <= &nu2.eval(q1)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ComparisonStatus {
    Pass,
    Fail,
    HypothesisViolated,
}

/// Values and relations comparing `ν₁ = [ν; Q₁ ↦ γ₁]` with
/// `ν₂ = [ν₁; Q₂ ↦ γ₂]` for keys of equal degree.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SameDegreeComparison {
    pub nu2_of_q1: Value,
    pub nu1_of_q2: Value,
    pub gamma1: Value,
    pub nu_of_difference: Value,
    pub nu_of_q1: Value,
    pub nu_of_q2: Value,
    pub nu2_q1_eq_gamma1: bool,
    pub nu1_q2_eq_gamma1: bool,
    pub nu_difference_eq_gamma1: bool,
    pub gamma2_gt_gamma1: bool,
    pub nu_q1_eq_nu_q2: bool,
    /// Why the hypotheses fail, if they do.
    pub hypothesis_failures: Vec<String>,
    pub status: ComparisonStatus,
}

pub fn check_same_degree_comparison(
    nu: &ValuationDescriptor,
    q1: &Poly,
    gamma1: &Value,
    q2: &Poly,
    gamma2: &Value,
) -> Result<SameDegreeComparison> {
    let d1 = require_monic_key(q1)?;
    let d2 = require_monic_key(q2)?;
    if d1 != d2 {
        return Err(Error::Precondition(format!("keys {q1} and {q2} have different degrees")));
    }
    let nu1 = nu.augment(q1.clone(), gamma1.clone())?;
    let nu1_q2 = nu1.eval(q2)?;

    let mut hypothesis_failures = Vec::new();
    if crate::graded::equivalent(&nu1, q1, q2)? {
        hypothesis_failures.push(format!("{q1} and {q2} are equivalent for the first augmentation"));
    }
    if &nu1_q2 < gamma1 {
        hypothesis_failures
            .push(format!("{q2} is equivalent to the lower-degree polynomial {} and is not a key", q2 - q1));
    }
    let nu2 = match nu1.augment(q2.clone(), gamma2.clone()) {
        Ok(v) => v,
        Err(e) => {
            hypothesis_failures.push(format!("second augmentation rejected: {e}"));
            nu1.extension_unchecked(q2.clone(), gamma2.clone())?
        }
    };

    let nu2_of_q1 = nu2.eval(q1)?;
    let nu_of_difference = nu.eval(&(q2 - q1))?;
    let nu_of_q1 = nu.eval(q1)?;
    let nu_of_q2 = nu.eval(q2)?;
    let nu2_q1_eq_gamma1 = &nu2_of_q1 == gamma1;
    let nu1_q2_eq_gamma1 = &nu1_q2 == gamma1;
    let nu_difference_eq_gamma1 = &nu_of_difference == gamma1;
    let gamma2_gt_gamma1 = gamma2 > gamma1;
    let nu_q1_eq_nu_q2 = nu_of_q1 == nu_of_q2;
    let all = nu2_q1_eq_gamma1 && nu1_q2_eq_gamma1 && nu_difference_eq_gamma1 && gamma2_gt_gamma1 && nu_q1_eq_nu_q2;
    let status = if !hypothesis_failures.is_empty() {
        ComparisonStatus::HypothesisViolated
    } else if all {
        ComparisonStatus::Pass
    } else {
        ComparisonStatus::Fail
    };
    Ok(SameDegreeComparison {
        nu2_of_q1,
        nu1_of_q2: nu1_q2,
        gamma1: gamma1.clone(),
        nu_of_difference,
        nu_of_q1,
        nu_of_q2,
        nu2_q1_eq_gamma1,
        nu1_q2_eq_gamma1,
        nu_difference_eq_gamma1,
        gamma2_gt_gamma1,
        nu_q1_eq_nu_q2,
        hypothesis_failures,
        status,
    })
}

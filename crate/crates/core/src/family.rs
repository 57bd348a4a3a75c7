//! Finite prefixes of continued families of augmented valuations.
//!
//! A family `ν_α = [ν; Q_α ↦ γ_α]` with keys of one degree and increasing
//! `γ_α` either lets the value of `f` stabilize (`f ∈ C(F)`, giving `ν_F(f)`)
//! or pushes it up forever (`f ∈ Φ̄(F)`). A finite prefix can only witness
//! the first case; the second is always reported as a presumption.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::Value;
use crate::harness::{enumerate_polys, Bounds, Sampler, SuiteReport};
use crate::poly::Poly;
use crate::valuation::{leq_same_degree, MacLaneChain, ValuationDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub key: Poly,
    pub gamma: Value,
    /// `[base; key ↦ gamma]`.
    pub valuation: ValuationDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPrefix {
    base: ValuationDescriptor,
    members: Vec<FamilyMember>,
    degree: usize,
}

impl FamilyPrefix {
    /// Validates keys of a common degree, finite strictly increasing values,
    /// admissibility over `base`, and `ν_α ≤ ν_β` for consecutive members.
    pub fn new(base: ValuationDescriptor, members: Vec<(Poly, Value)>) -> Result<Self> {
        if members.len() < 2 {
            return Err(Error::Precondition("a family prefix needs at least two members".into()));
        }
        let degree = members[0].0.degree().unwrap_or(0);
        let mut built: Vec<FamilyMember> = Vec::with_capacity(members.len());
        for (j, (key, gamma)) in members.into_iter().enumerate() {
            if key.degree() != Some(degree) {
                return Err(Error::Precondition(format!(
                    "member {j} key {key} does not have the common degree {degree}"
                )));
            }
            if gamma.is_infinite() {
                return Err(Error::Precondition(format!("member {j} has infinite value")));
            }
            if let Some(prev) = built.last() {
                if gamma <= prev.gamma {
                    return Err(Error::Precondition(format!(
                        "member values must increase strictly; member {j} has {gamma} after {}",
                        prev.gamma
                    )));
                }
                if !leq_same_degree(&base, &prev.key, &prev.gamma, &key, &gamma)? {
                    return Err(Error::Precondition(format!("member {} is not bounded above by member {j}", j - 1)));
                }
            }
            let valuation = base.augment(key.clone(), gamma.clone())?;
            built.push(FamilyMember { key, gamma, valuation });
        }
        Ok(FamilyPrefix { base, members: built, degree })
    }

    pub fn base(&self) -> &ValuationDescriptor {
        &self.base
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The common key degree `d(F)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The first `n` members as a prefix in their own right.
    pub fn truncated(&self, n: usize) -> Result<FamilyPrefix> {
        if n < 2 || n > self.len() {
            return Err(Error::Precondition(format!("cannot shorten a prefix of length {} to {n}", self.len())));
        }
        Ok(FamilyPrefix { base: self.base.clone(), members: self.members[..n].to_vec(), degree: self.degree })
    }

    /// `ν_α(f)` along the prefix, stopping at the first consecutive equality.
    pub fn stabilize(&self, f: &Poly) -> Result<StabilizationResult> {
        let mut values: Vec<Value> = Vec::new();
        for (j, m) in self.members.iter().enumerate() {
            let v = m.valuation.eval(f)?;
            if values.last() == Some(&v) {
                return Ok(StabilizationResult::Stabilized { value: v, first_index: j });
            }
            values.push(v);
        }
        Ok(StabilizationResult::IncreasingThroughPrefix { values })
    }

    /// `ν_F(f)`, or `NotStabilized` when the prefix is too short to tell.
    pub fn nu_f(&self, f: &Poly) -> Result<Value> {
        match self.stabilize(f)? {
            StabilizationResult::Stabilized { value, .. } => Ok(value),
            StabilizationResult::IncreasingThroughPrefix { values } => Err(Error::NotStabilized(format!(
                "{f} increases through all {} members: {}",
                values.len(),
                values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn classify(&self, f: &Poly) -> Result<Classification> {
        Ok(match self.stabilize(f)? {
            StabilizationResult::Stabilized { value, first_index } => {
                Classification::Stable { alpha_index: first_index - 1, value }
            }
            StabilizationResult::IncreasingThroughPrefix { values } => Classification::PresumedUnbounded { values },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum StabilizationResult {
    /// `ν_{j−1}(f) = ν_j(f)` first happens at `first_index = j`.
    #[serde(rename_all = "camelCase")]
    Stabilized {
        value: Value,
        first_index: usize,
    },
    IncreasingThroughPrefix {
        values: Vec<Value>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "camelCase")]
pub enum Classification {
    /// Strictly increasing through the whole prefix: evidence, not proof,
    /// of unbounded growth.
    PresumedUnbounded { values: Vec<Value> },
    /// `alpha_index` is the first member already at the stable value.
    #[serde(rename_all = "camelCase")]
    Stable { alpha_index: usize, value: Value },
}

impl Classification {
    pub fn is_presumed_unbounded(&self) -> bool {
        matches!(self, Classification::PresumedUnbounded { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitCheckReport {
    pub key: String,
    pub gamma: Value,
    pub monic: bool,
    pub key_degree: usize,
    pub family_degree: usize,
    pub degree_at_least_family_degree: bool,
    /// `ν_α(Q)` for every member.
    pub member_values: Vec<Value>,
    pub increases_through_prefix: bool,
    /// Sampled polynomials of lower degree that also increase through the
    /// prefix; any entry refutes minimality.
    pub lower_degree_increasing: Vec<String>,
    pub lower_degree_samples: usize,
    pub minimal_among_samples: bool,
    pub gamma_exceeds_members: bool,
    /// The family condition "no maximal γ" cannot be seen on a prefix and is
    /// assumed.
    pub no_maximal_gamma_presumed: bool,
    pub pass: bool,
}

/// Prefix evidence that `Q` is a limit key for the family and that `γ` is a
/// valid limit value.
pub fn limit_check(prefix: &FamilyPrefix, key: &Poly, gamma: &Value, samples: &[Poly]) -> Result<LimitCheckReport> {
    let key_degree = key.degree().unwrap_or(0);
    let member_values = prefix.members().iter().map(|m| m.valuation.eval(key)).collect::<Result<Vec<_>>>()?;
    let increases_through_prefix = prefix.classify(key)?.is_presumed_unbounded();
    let mut lower_degree_increasing = Vec::new();
    let mut lower_degree_samples = 0;
    for f in samples {
        if f.is_zero() || f.degree_or_zero() >= key_degree {
            continue;
        }
        lower_degree_samples += 1;
        if prefix.classify(f)?.is_presumed_unbounded() {
            lower_degree_increasing.push(f.to_string());
        }
    }
    let gamma_exceeds_members = member_values.iter().all(|v| gamma > v);
    let monic = key.is_monic();
    let degree_at_least_family_degree = key_degree >= prefix.degree();
    let minimal_among_samples = lower_degree_increasing.is_empty();
    let pass = monic
        && degree_at_least_family_degree
        && increases_through_prefix
        && minimal_among_samples
        && gamma_exceeds_members;
    Ok(LimitCheckReport {
        key: key.to_string(),
        gamma: gamma.clone(),
        monic,
        key_degree,
        family_degree: prefix.degree(),
        degree_at_least_family_degree,
        member_values,
        increases_through_prefix,
        lower_degree_increasing,
        lower_degree_samples,
        minimal_among_samples,
        gamma_exceeds_members,
        no_maximal_gamma_presumed: true,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorrespondenceReport {
    pub step: usize,
    pub case: String,
    pub key: String,
    pub next_key: String,
    /// `ν(Q′)`, the value given to `Q′` over `ν_Q`.
    pub next_key_value: Value,
    pub compared: usize,
    pub mismatches: Vec<CorrespondenceMismatch>,
    /// Polynomials whose evaluation needed more family members than given.
    pub not_stabilized: Vec<String>,
    /// KP1/KP2 evidence for `Q′` over `ν_Q`.
    pub key_evidence: SuiteReport,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorrespondenceMismatch {
    pub poly: String,
    pub truncation: Value,
    pub augmented: Value,
}

/// Compares `ν_{Q′}` with `[ν_Q; Q′ ↦ ν(Q′)]` for consecutive chain keys,
/// or with the limit augmentation over the family of truncations at the
/// prefix keys when step `i + 1` is a limit step.
pub fn mlv_correspondence(
    chain: &MacLaneChain,
    i: usize,
    exhaustive: Bounds,
    sampler: &Sampler,
) -> Result<CorrespondenceReport> {
    if i + 1 >= chain.len() {
        return Err(Error::Precondition(format!("step {i} has no successor in a chain of length {}", chain.len())));
    }
    let ground = chain.ground();
    let top = chain.top();
    let q = chain.key(i)?;
    let q_next = chain.key(i + 1)?;
    let nu_q = chain.truncation_at(i)?;
    let nu_q_next = chain.truncation_at(i + 1)?;
    let next_value = top.eval(&q_next)?;

    let (case, rebuilt) = match chain.prefix_at(i + 1) {
        None => {
            if !crate::keypoly::psi_member(chain, i, &q_next)? {
                return Err(Error::Precondition(format!("{q_next} is not in the set Psi for the key {q} of step {i}")));
            }
            ("ordinary", nu_q.augment(q_next.clone(), next_value.clone())?)
        }
        Some(prefix) => {
            let members =
                prefix.members().iter().map(|m| Ok((m.key.clone(), top.eval(&m.key)?))).collect::<Result<Vec<_>>>()?;
            let family = FamilyPrefix::new(nu_q.clone(), members)?;
            ("limit", ValuationDescriptor::limit_augmented(family, q_next.clone(), next_value.clone())?)
        }
    };

    let mut polys = enumerate_polys(&ground, exhaustive.degree, exhaustive.height);
    let mut rng = sampler.rng();
    for _ in 0..sampler.trials {
        polys.push(sampler.random_poly(&mut rng, &ground, sampler.degree_bound));
    }

    let mut mismatches = Vec::new();
    let mut not_stabilized = Vec::new();
    let mut compared = 0;
    for f in &polys {
        let pair = nu_q_next.eval(f).and_then(|a| Ok((a, rebuilt.eval(f)?)));
        match pair {
            Ok((a, b)) => {
                compared += 1;
                if a != b {
                    mismatches.push(CorrespondenceMismatch { poly: f.to_string(), truncation: a, augmented: b });
                }
            }
            Err(Error::NotStabilized(msg)) => not_stabilized.push(msg),
            Err(e) => return Err(e),
        }
    }

    let key_evidence = crate::harness::check_mlv_key(&nu_q, &q_next, sampler)?;
    let pass = mismatches.is_empty() && not_stabilized.is_empty() && key_evidence.pass;
    Ok(CorrespondenceReport {
        step: i,
        case: case.to_string(),
        key: q.to_string(),
        next_key: q_next.to_string(),
        next_key_value: next_value,
        compared,
        mismatches,
        not_stabilized,
        key_evidence,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundFieldConfig;
    use crate::parse::parse_poly;

    fn qt() -> GroundFieldConfig {
        GroundFieldConfig::tadic_rationals()
    }

    fn p(s: &str) -> Poly {
        parse_poly(&qt(), s).unwrap()
    }

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    fn nu() -> ValuationDescriptor {
        ValuationDescriptor::monomial(qt(), v("1"))
    }

    fn small_prefix() -> FamilyPrefix {
        FamilyPrefix::new(nu(), vec![(p("x - t"), v("3")), (p("x - t - t^3"), v("4"))]).unwrap()
    }

    #[test]
    fn stabilization_examples() {
        let fam = small_prefix();
        assert_eq!(
            fam.stabilize(&p("x - t")).unwrap(),
            StabilizationResult::Stabilized { value: v("3"), first_index: 1 }
        );
        assert_eq!(
            fam.stabilize(&p("t^2 + 1")).unwrap(),
            StabilizationResult::Stabilized { value: v("0"), first_index: 1 }
        );
        assert_eq!(
            fam.stabilize(&p("x - t - t^3")).unwrap(),
            StabilizationResult::IncreasingThroughPrefix { values: vec![v("3"), v("4")] }
        );
        assert_eq!(fam.nu_f(&p("x - t")).unwrap(), v("3"));
        assert!(matches!(fam.nu_f(&p("x - t - t^3")), Err(Error::NotStabilized(_))));
        assert_eq!(fam.classify(&p("1")).unwrap(), Classification::Stable { alpha_index: 0, value: v("0") });
    }

    #[test]
    fn invalid_prefixes() {
        let bad_order = vec![(p("x - t"), v("4")), (p("x - t - t^3"), v("3"))];
        assert!(FamilyPrefix::new(nu(), bad_order).is_err());
        let not_monotone = vec![(p("x - t"), v("3")), (p("x - t - t^2"), v("4"))];
        assert!(FamilyPrefix::new(nu(), not_monotone).is_err());
        let mixed = vec![(p("x - t"), v("3")), (p("x^2"), v("4"))];
        assert!(FamilyPrefix::new(nu(), mixed).is_err());
        assert!(FamilyPrefix::new(nu(), vec![(p("x - t"), v("3"))]).is_err());
    }

    #[test]
    fn limit_check_examples() {
        let fam = small_prefix();
        let r = limit_check(&fam, &p("x - t"), &v("5"), &[]).unwrap();
        assert!(!r.increases_through_prefix && !r.pass);
        let r = limit_check(&fam, &p("x - t - t^3 - t^4"), &v("4"), &[]).unwrap();
        assert!(r.increases_through_prefix);
        assert!(!r.gamma_exceeds_members && !r.pass);
        let r = limit_check(&fam, &p("x - t - t^3 - t^4"), &v("9/2"), &[p("1"), p("t")]).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lower_degree_samples, 2);
    }

    #[test]
    fn limit_valuation_needs_stabilized_coefficients() {
        // Degree-2 limit key over a degree-1 family: its coefficients have
        // degree 1 and may fail to stabilize.
        let fam = small_prefix();
        let lim = ValuationDescriptor::limit_augmented(fam, p("x^2"), v("20")).unwrap();
        assert!(matches!(lim.eval(&p("x - t - t^3")), Err(Error::NotStabilized(_))));
        assert_eq!(lim.eval(&p("x - t")).unwrap(), v("3"));
        assert_eq!(lim.eval(&p("x^2")).unwrap(), v("20"));
    }
}

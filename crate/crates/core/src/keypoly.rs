//! The invariant `ε(f) = max_k (ν(f) − ν(∂_k f))/k`, the sets `α(Q)` and
//! `Ψ(Q)`, and verification of key polynomials along a chain.
//!
//! `α` and `Ψ` quantify over all of `K[x]`; here the later keys of the chain
//! stand in for that search, so both are relative to the chain.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::Value;
use crate::poly::Poly;
use crate::valuation::{MacLaneChain, ValuationDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EpsilonReport {
    pub epsilon: Value,
    /// Every `k ≥ 1` attaining the maximum.
    pub argmax: BTreeSet<usize>,
}

pub fn epsilon(v: &ValuationDescriptor, f: &Poly) -> Result<EpsilonReport> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::UndefinedEpsilon),
    };
    let nu_f = v.eval(f)?;
    let mut best: Option<Value> = None;
    let mut argmax = BTreeSet::new();
    for k in 1..=n {
        let d = f.hasse_derivative(k);
        if d.is_zero() {
            continue;
        }
        if nu_f.is_infinite() {
            argmax.insert(k);
            continue;
        }
        let Some(diff) = nu_f.checked_sub(&v.eval(&d)?) else { continue };
        let candidate = Value::Finite(diff / BigRational::from_integer(BigInt::from(k)));
        match &best {
            Some(b) if &candidate < b => {}
            Some(b) if &candidate == b => {
                argmax.insert(k);
            }
            _ => {
                best = Some(candidate);
                argmax = BTreeSet::from([k]);
            }
        }
    }
    let epsilon = if nu_f.is_infinite() {
        Value::Infinity
    } else {
        best.expect("the top Hasse derivative is a nonzero constant")
    };
    Ok(EpsilonReport { epsilon, argmax })
}

/// `α` of the key at step `i`: the degree of the first later chain key whose
/// value drops under truncation, or `None` (infinity) if none does.
pub fn alpha(chain: &MacLaneChain, i: usize) -> Result<Option<usize>> {
    let truncation = chain.truncation_at(i)?;
    let top = chain.top();
    for later in chain.keys_after(i)? {
        if truncation.eval(&later.key)? < top.eval(&later.key)? {
            return Ok(later.key.degree());
        }
    }
    Ok(None)
}

/// Whether `candidate ∈ Ψ(Q)` for the key `Q` of step `i`.
pub fn psi_member(chain: &MacLaneChain, i: usize, candidate: &Poly) -> Result<bool> {
    let a = alpha(chain, i)?.ok_or(Error::PsiEmpty(i))?;
    if !candidate.is_monic() || candidate.degree() != Some(a) {
        return Ok(false);
    }
    let truncation = chain.truncation_at(i)?;
    Ok(truncation.eval(candidate)? < chain.top().eval(candidate)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitKeyEvidence {
    /// The step whose key plays the role of `Q₋`.
    pub lower_step: usize,
    pub lower_alpha: Option<usize>,
    pub lower_degree: usize,
    /// (K1) `α(Q₋) = deg Q₋`.
    pub k1: bool,
    /// Every family member lies in `Ψ(Q₋)`.
    pub members_in_psi: bool,
    /// `ν(Q′)` for the members; (K2) evidence is strict increase.
    pub member_values: Vec<Value>,
    pub k2_increasing_on_prefix: bool,
    /// (K3) `ν_{Q′}(Q) < ν(Q)` for every member `Q′`.
    pub k3: bool,
    /// (K4) evidence: no member satisfies (K3) itself, and the key has the
    /// family degree. Only the prefix is examined.
    pub k4_evidence: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum KeyVerdict {
    /// `witness` is the step `j` with the key in `Ψ(Q_j)`; `None` for degree one.
    OrdinaryKey {
        witness: Option<usize>,
    },
    LimitKey {
        evidence: LimitKeyEvidence,
    },
    Unverified {
        reason: String,
    },
}

impl KeyVerdict {
    pub fn is_verified(&self) -> bool {
        !matches!(self, KeyVerdict::Unverified { .. })
    }
}

pub fn abstract_key_check(chain: &MacLaneChain, i: usize) -> Result<KeyVerdict> {
    let key = chain.key(i)?;
    if i == 0 {
        return Ok(KeyVerdict::OrdinaryKey { witness: None });
    }
    let lower = abstract_key_check(chain, i - 1)?;
    if !lower.is_verified() {
        return Ok(KeyVerdict::Unverified { reason: format!("the key of step {} is itself unverified", i - 1) });
    }
    match chain.prefix_at(i) {
        None => match psi_member(chain, i - 1, &key) {
            Ok(true) => Ok(KeyVerdict::OrdinaryKey { witness: Some(i - 1) }),
            Ok(false) => {
                Ok(KeyVerdict::Unverified { reason: format!("{key} is not in the set Psi of step {}", i - 1) })
            }
            Err(Error::PsiEmpty(_)) => {
                Ok(KeyVerdict::Unverified { reason: format!("the set Psi of step {} is empty", i - 1) })
            }
            Err(e) => Err(e),
        },
        Some(prefix) => {
            let top = chain.top();
            let lower_key = chain.key(i - 1)?;
            let lower_degree = lower_key.degree_or_zero();
            let lower_alpha = alpha(chain, i - 1)?;
            let k1 = lower_alpha == Some(lower_degree);
            let mut members_in_psi = true;
            let mut member_values = Vec::new();
            let mut k3 = true;
            let mut k4_evidence = key.degree() == Some(prefix.degree());
            let key_value = top.eval(&key)?;
            for m in prefix.members() {
                members_in_psi &= match psi_member(chain, i - 1, &m.key) {
                    Ok(b) => b,
                    Err(Error::PsiEmpty(_)) => false,
                    Err(e) => return Err(e),
                };
                member_values.push(top.eval(&m.key)?);
                let tr = top.truncate(m.key.clone())?;
                k3 &= tr.eval(&key)? < key_value;
                // A member never satisfies (K3) for itself: ν_{Q′}(Q′) = ν(Q′).
                k4_evidence &= tr.eval(&m.key)? == top.eval(&m.key)?;
            }
            let k2_increasing_on_prefix = member_values.windows(2).all(|w| w[0] < w[1]);
            let evidence = LimitKeyEvidence {
                lower_step: i - 1,
                lower_alpha,
                lower_degree,
                k1,
                members_in_psi,
                member_values,
                k2_increasing_on_prefix,
                k3,
                k4_evidence,
            };
            if k1 && members_in_psi && k2_increasing_on_prefix && k3 && k4_evidence {
                Ok(KeyVerdict::LimitKey { evidence })
            } else {
                Ok(KeyVerdict::Unverified { reason: format!("limit conditions fail on the prefix: {evidence:?}") })
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KeyData {
    pub key: String,
    pub degree: usize,
    pub epsilon: Value,
    pub value: Value,
    /// Value of the other key under this key's truncation.
    pub truncated_value_of_other: Value,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ImplicationCheck {
    pub name: String,
    /// `"forward"` compares `(Q, Q′)`, `"reverse"` compares `(Q′, Q)`.
    pub direction: String,
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KeyComparison {
    pub q: KeyData,
    pub q_prime: KeyData,
    pub checks: Vec<ImplicationCheck>,
    pub pass: bool,
}

/// Checks, in both orders, that lower degree forces smaller `ε`, that
/// smaller `ε` forces a drop under truncation, and that for equal degrees
/// the three strict comparisons agree.
pub fn compare_keys(v: &ValuationDescriptor, q: &Poly, q_prime: &Poly) -> Result<KeyComparison> {
    for k in [q, q_prime] {
        if !k.is_monic() || k.degree_or_zero() < 1 {
            return Err(Error::Precondition(format!("key {k} must be monic of degree at least 1")));
        }
    }
    let data = |a: &Poly, b: &Poly| -> Result<KeyData> {
        Ok(KeyData {
            key: a.to_string(),
            degree: a.degree_or_zero(),
            epsilon: epsilon(v, a)?.epsilon,
            value: v.eval(a)?,
            truncated_value_of_other: v.truncate(a.clone())?.eval(b)?,
        })
    };
    let dq = data(q, q_prime)?;
    let dp = data(q_prime, q)?;
    let mut checks = Vec::new();
    for (direction, a, b) in [("forward", &dq, &dp), ("reverse", &dp, &dq)] {
        let eps_lt = a.epsilon < b.epsilon;
        let drop = a.truncated_value_of_other < b.value;
        let val_lt = a.value < b.value;
        let deg_lt = a.degree < b.degree;
        checks.push(ImplicationCheck {
            name: "degree below implies epsilon below".into(),
            direction: direction.into(),
            applicable: deg_lt,
            holds: !deg_lt || eps_lt,
        });
        checks.push(ImplicationCheck {
            name: "epsilon below implies truncation drop".into(),
            direction: direction.into(),
            applicable: eps_lt,
            holds: !eps_lt || drop,
        });
        let same_degree = a.degree == b.degree;
        checks.push(ImplicationCheck {
            name: "equal degree: value, drop and epsilon comparisons agree".into(),
            direction: direction.into(),
            applicable: same_degree,
            holds: !same_degree || (val_lt == drop && drop == eps_lt),
        });
    }
    let pass = checks.iter().all(|c| c.holds);
    Ok(KeyComparison { q: dq, q_prime: dp, checks, pass })
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

    fn base_chain() -> MacLaneChain {
        MacLaneChain::new(qt(), v("1"))
    }

    fn chain1() -> MacLaneChain {
        base_chain().augment(p("x - t"), v("3")).unwrap()
    }

    /// Oracle for ε: brute force over `k` using the formal `k`-th
    /// derivative divided by `k!` (characteristic zero).
    fn epsilon_oracle(nu: &ValuationDescriptor, f: &Poly) -> Value {
        let n = f.degree().unwrap();
        let nf = nu.eval(f).unwrap();
        let mut d = f.clone();
        let mut fact = BigInt::from(1);
        let mut best: Option<Value> = None;
        for k in 1..=n {
            d = d.derivative();
            fact *= k;
            let inv = f.field().from_bigint(&fact).inv().unwrap();
            let hk = d.scale(&inv);
            if hk.is_zero() {
                continue;
            }
            let c =
                Value::Finite(nf.checked_sub(&nu.eval(&hk).unwrap()).unwrap() / BigRational::from_integer(k.into()));
            best = Some(best.map_or(c.clone(), |b| b.max(c)));
        }
        best.unwrap()
    }

    #[test]
    fn epsilon_examples() {
        let nu = base_chain().top().clone();
        let r = epsilon(&nu, &p("x - t")).unwrap();
        assert_eq!(r.epsilon, v("1"));
        assert_eq!(r.argmax, BTreeSet::from([1]));
        let nu1 = chain1().top().clone();
        assert_eq!(epsilon(&nu1, &p("x - t")).unwrap().epsilon, v("3"));
        let inf = nu.augment(p("x - t"), Value::Infinity).unwrap();
        let r = epsilon(&inf, &p("x - t")).unwrap();
        assert_eq!(r.epsilon, Value::Infinity);
        assert_eq!(r.argmax, BTreeSet::from([1]));
        assert_eq!(epsilon(&nu, &p("t")), Err(Error::UndefinedEpsilon));
        for f in ["x^2 - t^3", "x^3 + t*x + t^5", "(x - t)^2 + t^7*x"] {
            assert_eq!(epsilon(&nu1, &p(f)).unwrap().epsilon, epsilon_oracle(&nu1, &p(f)), "{f}");
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&chain1(), 0).unwrap(), Some(1));
        assert_eq!(alpha(&base_chain(), 0).unwrap(), None);
        let c = chain1().augment(p("(x - t)^2 + t^7"), v("15/2")).unwrap();
        assert_eq!(alpha(&c, 1).unwrap(), Some(2));
        assert!(matches!(alpha(&c, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn psi_examples() {
        let c = chain1();
        assert!(psi_member(&c, 0, &p("x - t")).unwrap());
        assert!(!psi_member(&c, 0, &p("x + 1")).unwrap());
        assert!(!psi_member(&c, 0, &p("2*x - t")).unwrap());
        assert_eq!(psi_member(&base_chain(), 0, &p("x")), Err(Error::PsiEmpty(0)));
    }

    #[test]
    fn key_verdicts() {
        assert_eq!(abstract_key_check(&base_chain(), 0).unwrap(), KeyVerdict::OrdinaryKey { witness: None });
        assert_eq!(abstract_key_check(&chain1(), 1).unwrap(), KeyVerdict::OrdinaryKey { witness: Some(0) });
        let members = (1..=5)
            .map(|n| {
                let tail: Vec<String> = (1..=n).map(|k| format!("t^{k}")).collect();
                (p(&format!("x - ({})", tail.join(" + "))), Value::from_int(n as i64 + 1))
            })
            .collect();
        let lim = base_chain().limit(members, p("x - t/(1 - t)"), v("7")).unwrap();
        let verdict = abstract_key_check(&lim, 1).unwrap();
        assert!(matches!(verdict, KeyVerdict::LimitKey { .. }), "{verdict:?}");
    }

    #[test]
    fn key_comparisons() {
        let c = chain1();
        let r = compare_keys(c.top(), &p("x"), &p("x - t")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.q.epsilon.clone(), r.q_prime.epsilon.clone()), (v("1"), v("3")));
        assert_eq!(r.q.truncated_value_of_other, v("1"));
        let same = compare_keys(c.top(), &p("x - t"), &p("x - t")).unwrap();
        assert!(same.pass);
        let c2 = c.augment(p("(x - t)^2 + t^6"), v("13/2")).unwrap();
        let r = compare_keys(c2.top(), &p("x - t"), &p("(x - t)^2 + t^6")).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.checks.iter().any(|k| k.applicable && k.name.starts_with("degree")));
    }
}

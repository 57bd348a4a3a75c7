//! Ready-made chains, families and extension configurations over each
//! supported ground field, used by the acceptance suite, the examples and
//! the CLI.

use crate::family::FamilyPrefix;
use crate::ground::{CoefficientField, GroundFieldConfig, Value};
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::valuation::{MacLaneChain, ValuationDescriptor};

fn val(s: &str) -> Value {
    s.parse().expect("fixture value")
}

fn poly(cfg: &GroundFieldConfig, s: &str) -> Poly {
    parse_poly(cfg, s).expect("fixture polynomial")
}

pub fn tadic_q() -> GroundFieldConfig {
    GroundFieldConfig::tadic_rationals()
}

pub fn tadic_gf2() -> GroundFieldConfig {
    GroundFieldConfig::tadic(CoefficientField::PrimeField(2)).expect("2 is prime")
}

pub fn padic(p: u64) -> GroundFieldConfig {
    GroundFieldConfig::padic(p).expect("fixture prime")
}

/// A named chain.
pub struct NamedChain {
    pub name: &'static str,
    pub chain: MacLaneChain,
}

fn build(cfg: GroundFieldConfig, gamma0: &str, steps: &[(&str, &str)]) -> MacLaneChain {
    let mut c = MacLaneChain::new(cfg, val(gamma0));
    for (k, g) in steps {
        c = c.augment(poly(&cfg, k), val(g)).expect("fixture step is admissible");
    }
    c
}

/// `[ν_t; x ↦ 1; x − t ↦ 3; (x − t)² + t⁶ ↦ 13/2]` over `Q(t)`.
pub fn chain_tadic_q() -> MacLaneChain {
    build(tadic_q(), "1", &[("x - t", "3"), ("(x - t)^2 + t^6", "13/2")])
}

/// `[ν₂; x ↦ 1/2; x² − 2 ↦ 3/2; (x² − 2)² + 2x(x² − 2) + 8 ↦ 7/2]` over `Q`.
pub fn chain_padic2() -> MacLaneChain {
    build(padic(2), "1/2", &[("x^2 - 2", "3/2"), ("(x^2 - 2)^2 + 2*x*(x^2 - 2) + 8", "7/2")])
}

/// `[ν_t; x ↦ 1; ψ ↦ 5/2; ψ² + t⁵ ↦ 11/2]` with `ψ = x² + tx + t²` over `F₂(t)`.
pub fn chain_tadic_gf2() -> MacLaneChain {
    build(tadic_gf2(), "1", &[("x^2 + t*x + t^2", "5/2"), ("(x^2 + t*x + t^2)^2 + t^5", "11/2")])
}

/// `[ν₃; x ↦ 1/2; x² − 3 ↦ 3/2]` over `Q`.
pub fn chain_padic3() -> MacLaneChain {
    build(padic(3), "1/2", &[("x^2 - 3", "3/2")])
}

/// The chains of length three used for the correspondence and graded suites.
pub fn standard_chains() -> Vec<NamedChain> {
    vec![
        NamedChain { name: "tadic-Q", chain: chain_tadic_q() },
        NamedChain { name: "padic-2", chain: chain_padic2() },
        NamedChain { name: "tadic-GF2", chain: chain_tadic_gf2() },
    ]
}

/// `[ν_t; x ↦ 1; limit(x − Σ_{k≤n} tᵏ ↦ n + 1, n ≤ 5), x − t/(1 − t) ↦ 7]`.
pub fn limit_chain() -> MacLaneChain {
    let cfg = tadic_q();
    let fam = family_tadic_q(5);
    let members = fam.members().iter().map(|m| (m.key.clone(), m.gamma.clone())).collect();
    MacLaneChain::new(cfg, val("1")).limit(members, poly(&cfg, "x - t/(1 - t)"), val("7")).expect("fixture limit step")
}

/// A named family prefix with a limit key that increases through it.
pub struct NamedFamily {
    pub name: &'static str,
    pub prefix: FamilyPrefix,
    pub limit_key: Poly,
}

/// Over `[ν_t; x ↦ 1]` in `Q(t)`: `Q_n = x − (t + … + tⁿ)`, `γ_n = n + 1`.
pub fn family_tadic_q(len: usize) -> FamilyPrefix {
    let cfg = tadic_q();
    let base = ValuationDescriptor::monomial(cfg, val("1"));
    let members = (1..=len)
        .map(|n| {
            let tail: Vec<String> = (1..=n).map(|k| format!("t^{k}")).collect();
            (poly(&cfg, &format!("x - ({})", tail.join(" + "))), Value::from_int(n as i64 + 1))
        })
        .collect();
    FamilyPrefix::new(base, members).expect("fixture family")
}

/// Over `[ν₂; x ↦ 0]` in `Q`: `Q_n = x − (2ⁿ − 1)`, `γ_n = n − 1/2`.
pub fn family_padic2(len: usize) -> FamilyPrefix {
    let cfg = padic(2);
    let base = ValuationDescriptor::monomial(cfg, val("0"));
    let members = (1..=len)
        .map(|n| {
            let c = (1i64 << n) - 1;
            (poly(&cfg, &format!("x - {c}")), Value::from_ratio(2 * n as i64 - 1, 2))
        })
        .collect();
    FamilyPrefix::new(base, members).expect("fixture family")
}

/// Over `[ν_t; x ↦ 1]` in `F₂(t)`: `Q_n = ψ + t³ + … + t^{n+2}`, `γ_n = n + 2`.
pub fn family_tadic_gf2(len: usize) -> FamilyPrefix {
    let cfg = tadic_gf2();
    let base = ValuationDescriptor::monomial(cfg, val("1"));
    let members = (1..=len)
        .map(|n| {
            let tail: Vec<String> = (3..=n + 2).map(|k| format!("t^{k}")).collect();
            (poly(&cfg, &format!("x^2 + t*x + t^2 + {}", tail.join(" + "))), Value::from_int(n as i64 + 2))
        })
        .collect();
    FamilyPrefix::new(base, members).expect("fixture family")
}

pub fn standard_families(len: usize) -> Vec<NamedFamily> {
    vec![
        NamedFamily { name: "tadic-Q", prefix: family_tadic_q(len), limit_key: poly(&tadic_q(), "x - t/(1 - t)") },
        NamedFamily { name: "padic-2", prefix: family_padic2(len), limit_key: poly(&padic(2), "x + 1") },
        NamedFamily {
            name: "tadic-GF2",
            prefix: family_tadic_gf2(len),
            limit_key: poly(&tadic_gf2(), "x^2 + t*x + t^2 + t^3/(1 + t)"),
        },
    ]
}

/// Inputs `(μ, q, γ)` for the min-formula extension.
pub struct ExtensionConfig {
    pub name: &'static str,
    pub base: ValuationDescriptor,
    pub q: Poly,
    pub gamma: Value,
}

/// Configurations satisfying the product and remainder hypotheses.
pub fn extension_configs() -> Vec<ExtensionConfig> {
    let qt = tadic_q();
    let nu_t = ValuationDescriptor::monomial(qt, val("1"));
    let c1 = chain_tadic_q();
    let c2 = chain_padic2();
    vec![
        ExtensionConfig {
            name: "monomial over Q(t)",
            base: ValuationDescriptor::monomial(qt, val("0")),
            q: poly(&qt, "x"),
            gamma: val("1"),
        },
        ExtensionConfig {
            name: "monomial over Q, p = 2",
            base: ValuationDescriptor::monomial(padic(2), val("0")),
            q: poly(&padic(2), "x"),
            gamma: val("1/2"),
        },
        ExtensionConfig { name: "degree-one key over Q(t)", base: nu_t, q: poly(&qt, "x - t"), gamma: val("3") },
        ExtensionConfig {
            name: "truncation at x - t, next key",
            base: c1.truncation_at(1).expect("truncation"),
            q: c1.key(2).expect("key"),
            gamma: c1.top().eval(&c1.key(2).unwrap()).expect("value"),
        },
        ExtensionConfig {
            name: "truncation at x^2 - 2, next key",
            base: c2.truncation_at(1).expect("truncation"),
            q: c2.key(2).expect("key"),
            gamma: c2.top().eval(&c2.key(2).unwrap()).expect("value"),
        },
        ExtensionConfig {
            name: "second step of the Q(t) chain",
            base: c1.valuation(1).unwrap().clone(),
            q: c1.key(2).unwrap(),
            gamma: val("13/2"),
        },
    ]
}

/// `q = (x − t)(x + t)` over `[ν_t; x ↦ 1]`: `(x − t)·(x + t) = 1·q + 0`
/// breaks the remainder hypothesis.
pub fn violating_extension_config() -> ExtensionConfig {
    let qt = tadic_q();
    ExtensionConfig {
        name: "reducible q over Q(t)",
        base: ValuationDescriptor::monomial(qt, val("1")),
        q: poly(&qt, "(x - t)*(x + t)"),
        gamma: val("3"),
    }
}

/// Monomial, augmented and truncation descriptors for one ground field.
pub fn descriptor_classes() -> Vec<(&'static str, Vec<(&'static str, ValuationDescriptor)>)> {
    let mut out = Vec::new();
    for (name, chain) in [
        ("PAdic(2)", chain_padic2()),
        ("PAdic(3)", chain_padic3()),
        ("TAdic(Q)", chain_tadic_q()),
        ("TAdic(GF(2))", chain_tadic_gf2()),
    ] {
        let monomial = chain.valuation(0).unwrap().clone();
        let augmented = chain.top().clone();
        let truncation = chain.truncation_at(1).expect("truncation at a chain key");
        out.push((name, vec![("monomial", monomial), ("augmented", augmented), ("truncation", truncation)]));
    }
    out
}

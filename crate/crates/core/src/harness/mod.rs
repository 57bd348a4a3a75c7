//! Exhaustive and seeded-random checks of the valuation-theoretic
//! statements implemented by this crate.
//!
//! Every suite enumerates all small instances first (coefficients drawn
//! from [`element_set`]) and then draws `trials` random instances from a
//! ChaCha stream seeded by the [`Sampler`]. Arithmetic is exact throughout.

pub mod fixtures;
mod suites;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ground::{CoefficientField, GroundElement, GroundFieldConfig};
use crate::poly::Poly;

pub use suites::{
    check_axioms, check_complete_set, check_graded, check_key_relations, check_lemma23, check_mlv_key, check_theorem1,
};

/// Bounds for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub degree: usize,
    pub height: u32,
}

/// Parameters of the random part of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sampler {
    pub degree_bound: usize,
    /// Bounds `|numerator|`, denominators and `t`-degrees of coefficients.
    pub height_bound: u32,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler { degree_bound: 4, height_bound: 4, trials: 200, seed: 0 }
    }
}

impl Sampler {
    pub fn new(degree_bound: usize, height_bound: u32, trials: usize, seed: u64) -> Self {
        Sampler { degree_bound: degree_bound.max(1), height_bound: height_bound.max(1), trials, seed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// A random element of height at most `height_bound`; zero about one
    /// time in eight.
    pub fn random_element(&self, rng: &mut ChaCha8Rng, cfg: &GroundFieldConfig) -> GroundElement {
        if rng.gen_ratio(1, 8) {
            return cfg.field().zero();
        }
        let h = self.height_bound as i64;
        match cfg {
            GroundFieldConfig::PAdicRationals { .. } => {
                let mut a = rng.gen_range(1..=h);
                if rng.gen_bool(0.5) {
                    a = -a;
                }
                let b = rng.gen_range(1..=h);
                GroundElement::Rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
            }
            GroundFieldConfig::TAdicRationalFunctions { coefficients } => {
                let field = cfg.field();
                let c = random_unit_coefficient(rng, *coefficients, h);
                let e = rng.gen_range(-1..=h);
                let mut a = field.monomial_in_t(c, e).expect("rational function field");
                if rng.gen_bool(0.5) {
                    // Multiply by a unit 1 + c′t.
                    let c2 = random_unit_coefficient(rng, *coefficients, h);
                    let unit = field.one().add(&field.monomial_in_t(c2, 1).unwrap());
                    a = a.mul(&unit);
                }
                if rng.gen_ratio(1, 4) {
                    let unit = field.one().add(&field.t().unwrap());
                    a = a.div(&unit).expect("1 + t is nonzero");
                }
                a
            }
        }
    }

    /// A random polynomial of degree at most `max_degree`.
    pub fn random_poly(&self, rng: &mut ChaCha8Rng, cfg: &GroundFieldConfig, max_degree: usize) -> Poly {
        let d = rng.gen_range(0..=max_degree);
        let coeffs = (0..=d).map(|_| self.random_element(rng, cfg)).collect();
        Poly::from_coeffs(cfg.field(), coeffs)
    }

    /// A random nonzero polynomial with degree below `n`.
    pub fn random_below(&self, rng: &mut ChaCha8Rng, cfg: &GroundFieldConfig, n: usize) -> Poly {
        loop {
            let f = self.random_poly(rng, cfg, n.saturating_sub(1));
            if !f.is_zero() {
                return f;
            }
        }
    }
}

fn random_unit_coefficient(rng: &mut ChaCha8Rng, k: CoefficientField, h: i64) -> i64 {
    match k {
        CoefficientField::PrimeField(p) => rng.gen_range(1..p as i64),
        CoefficientField::Rationals => {
            let c = rng.gen_range(1..=h);
            if rng.gen_bool(0.5) {
                -c
            } else {
                c
            }
        }
    }
}

/// The coefficient set `E_h` used for exhaustive enumeration.
///
/// * `Q` with `ν_p`: `0, ±1, …, ±h, ±1/2, …, ±1/h`.
/// * `k(t)`: `0` and `±tᵉ` for `0 ≤ e ≤ h` (one sign in characteristic 2).
pub fn element_set(cfg: &GroundFieldConfig, h: u32) -> Vec<GroundElement> {
    let field = cfg.field();
    let h = h as i64;
    let mut out = vec![field.zero()];
    match cfg {
        GroundFieldConfig::PAdicRationals { .. } => {
            for n in 1..=h {
                out.push(field.from_int(n));
                out.push(field.from_int(-n));
            }
            for b in 2..=h {
                let inv = field.from_int(b).inv().unwrap();
                out.push(inv.neg());
                out.push(inv);
            }
        }
        GroundFieldConfig::TAdicRationalFunctions { coefficients } => {
            for e in 0..=h {
                out.push(field.monomial_in_t(1, e).unwrap());
                if coefficients.characteristic() != 2 {
                    out.push(field.monomial_in_t(-1, e).unwrap());
                }
            }
        }
    }
    out
}

/// Every polynomial of degree at most `degree` with coefficients in `E_h`,
/// the zero polynomial included.
pub fn enumerate_polys(cfg: &GroundFieldConfig, degree: usize, h: u32) -> Vec<Poly> {
    let elems = element_set(cfg, h);
    let mut out = vec![Vec::<GroundElement>::new()];
    for _ in 0..=degree {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for prefix in &out {
            for e in &elems {
                let mut c = prefix.clone();
                c.push(e.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out.into_iter().map(|c| Poly::from_coeffs(cfg.field(), c)).collect()
}

/// Nonzero polynomials of degree below `n` from the largest `E_h` with
/// `h ≤ height` that keeps the count within `cap`.
pub fn enumerate_below(cfg: &GroundFieldConfig, n: usize, height: u32, cap: usize) -> Vec<Poly> {
    if n == 0 {
        return Vec::new();
    }
    let mut h = height.max(1);
    loop {
        let size = element_set(cfg, h).len();
        let count = size.checked_pow(n as u32).unwrap_or(usize::MAX);
        if count <= cap || h == 1 {
            if count > cap {
                return Vec::new();
            }
            return enumerate_polys(cfg, n - 1, h).into_iter().filter(|f| !f.is_zero()).collect();
        }
        h -= 1;
    }
}

/// One violated relation, with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub relation: String,
    pub inputs: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

impl FailureRecord {
    pub fn new(relation: &str, inputs: &[(&str, String)], lhs: impl ToString, rhs: impl ToString) -> Self {
        FailureRecord {
            relation: relation.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Failures kept in full; later ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    /// Instances that could not be evaluated (for instance because a family
    /// prefix was too short) or were vacuous.
    pub skipped: u64,
    pub failure_count: u64,
    pub failures: Vec<FailureRecord>,
    /// Witnesses that a hypothesis of the checked statement fails.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hypothesis_violations: Vec<FailureRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: 0,
            skipped: 0,
            failure_count: 0,
            failures: Vec::new(),
            hypothesis_violations: Vec::new(),
            expectation: None,
            notes: Vec::new(),
            pass: true,
        }
    }

    /// Records one check of `holds`, building the failure lazily.
    pub fn check(&mut self, holds: bool, failure: impl FnOnce() -> FailureRecord) {
        self.checks += 1;
        if !holds {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(failure());
            }
            self.pass = false;
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn hypothesis_violation(&mut self, record: FailureRecord) {
        if self.hypothesis_violations.len() < MAX_RECORDED_FAILURES {
            self.hypothesis_violations.push(record);
        }
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.skipped += other.skipped;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
        self.hypothesis_violations.extend(other.hypothesis_violations);
        self.notes.extend(other.notes);
        self.pass &= other.pass;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

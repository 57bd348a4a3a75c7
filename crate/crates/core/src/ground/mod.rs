//! Exact values in `Q ∪ {∞}` and the two supported valued ground fields:
//! `(Q, ν_p)` and `(k(t), ν_t)` with `k = Q` or `k = F_p`.

mod tpoly;
mod value;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use tpoly::{is_prime, CoefficientField, RationalFunction, TPoly};
pub use value::{format_rational, parse_rational, Value};

use crate::error::{Error, Result};

/// The choice of valued field `(K, ν₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroundFieldConfig {
    /// `K = Q` with the `p`-adic valuation.
    PAdicRationals { p: u64 },
    /// `K = k(t)` with the `t`-adic valuation.
    TAdicRationalFunctions { coefficients: CoefficientField },
}

/// The arithmetic field `K` alone, forgetting the valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    RationalFunctions(CoefficientField),
}

impl GroundFieldConfig {
    pub fn padic(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(GroundFieldConfig::PAdicRationals { p })
        } else {
            Err(Error::InvalidGround(format!("{p} is not prime")))
        }
    }

    pub fn tadic(coefficients: CoefficientField) -> Result<Self> {
        if let CoefficientField::PrimeField(p) = coefficients {
            CoefficientField::prime_field(p)?;
        }
        Ok(GroundFieldConfig::TAdicRationalFunctions { coefficients })
    }

    /// `Q(t)` with the `t`-adic valuation.
    pub fn tadic_rationals() -> Self {
        GroundFieldConfig::TAdicRationalFunctions { coefficients: CoefficientField::Rationals }
    }

    pub fn field(&self) -> Field {
        match self {
            GroundFieldConfig::PAdicRationals { .. } => Field::Rationals,
            GroundFieldConfig::TAdicRationalFunctions { coefficients } => Field::RationalFunctions(*coefficients),
        }
    }

    /// `ν₀(a)`. Panics if `a` does not belong to this field; use
    /// [`ground_valuation`] for a checked variant.
    pub fn valuation(&self, a: &GroundElement) -> Value {
        match (self, a) {
            (GroundFieldConfig::PAdicRationals { p }, GroundElement::Rational(q)) => {
                if q.is_zero() {
                    return Value::Infinity;
                }
                let p = BigInt::from(*p);
                let v = padic_order(q.numer(), &p) - padic_order(q.denom(), &p);
                Value::from_int(v)
            }
            (GroundFieldConfig::TAdicRationalFunctions { .. }, GroundElement::RationalFunction(r)) => {
                r.t_order().map_or(Value::Infinity, Value::from_int)
            }
            _ => panic!("element {a} does not belong to {self}"),
        }
    }
}

fn padic_order(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

impl fmt::Display for GroundFieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundFieldConfig::PAdicRationals { p } => write!(f, "PAdic({p})"),
            GroundFieldConfig::TAdicRationalFunctions { coefficients } => {
                write!(f, "TAdic({coefficients})")
            }
        }
    }
}

/// Parses the display form: `PAdic(p)`, `TAdic(Q)` or `TAdic(GF(p))`.
impl std::str::FromStr for GroundFieldConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGround(format!("expected PAdic(p), TAdic(Q) or TAdic(GF(p)), found {s:?}"));
        let s = s.trim();
        let prime = |text: &str| text.trim().parse::<u64>().map_err(|_| bad());
        if let Some(inner) = s.strip_prefix("PAdic(").and_then(|r| r.strip_suffix(')')) {
            return GroundFieldConfig::padic(prime(inner)?);
        }
        let inner = s.strip_prefix("TAdic(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        if inner.trim() == "Q" {
            return Ok(GroundFieldConfig::tadic_rationals());
        }
        let p = inner.trim().strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        GroundFieldConfig::tadic(CoefficientField::prime_field(prime(p)?)?)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::RationalFunctions(k) => write!(f, "{k}(t)"),
        }
    }
}

/// JSON form: `{"type":"padic","p":2}` or `{"type":"tadic","coefficients":"Q"|"GF(p)"}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum GroundDoc {
    Padic {
        p: u64,
    },
    Tadic {
        #[serde(default = "default_coefficients")]
        coefficients: String,
    },
}

fn default_coefficients() -> String {
    "Q".to_string()
}

impl Serialize for GroundFieldConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = match self {
            GroundFieldConfig::PAdicRationals { p } => GroundDoc::Padic { p: *p },
            GroundFieldConfig::TAdicRationalFunctions { coefficients } => {
                GroundDoc::Tadic { coefficients: coefficients.to_string() }
            }
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroundFieldConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match GroundDoc::deserialize(d)? {
            GroundDoc::Padic { p } => GroundFieldConfig::padic(p).map_err(D::Error::custom),
            GroundDoc::Tadic { coefficients } => {
                let c = coefficients.trim();
                let field = if c == "Q" {
                    CoefficientField::Rationals
                } else if let Some(p) = c.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
                    let p = p.trim().parse::<u64>().map_err(D::Error::custom)?;
                    CoefficientField::prime_field(p).map_err(D::Error::custom)?
                } else {
                    return Err(D::Error::custom(format!("unknown coefficient field {c:?}")));
                };
                GroundFieldConfig::tadic(field).map_err(D::Error::custom)
            }
        }
    }
}

/// An element of `K`, always in canonical (reduced) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroundElement {
    Rational(BigRational),
    RationalFunction(RationalFunction),
}

impl Field {
    pub fn zero(&self) -> GroundElement {
        match self {
            Field::Rationals => GroundElement::Rational(BigRational::zero()),
            Field::RationalFunctions(k) => GroundElement::RationalFunction(RationalFunction::zero(*k)),
        }
    }

    pub fn one(&self) -> GroundElement {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_int(&self, n: i64) -> GroundElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> GroundElement {
        match self {
            Field::Rationals => GroundElement::Rational(BigRational::from_integer(n.clone())),
            Field::RationalFunctions(k) => GroundElement::RationalFunction(RationalFunction::from_poly(
                TPoly::from_coeffs(*k, vec![k.from_bigint(n)]),
            )),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<GroundElement> {
        match self {
            Field::Rationals => Ok(GroundElement::Rational(q.clone())),
            Field::RationalFunctions(k) => Ok(GroundElement::RationalFunction(RationalFunction::from_poly(
                TPoly::from_coeffs(*k, vec![k.from_rational(q)?]),
            ))),
        }
    }

    /// The element `t`; only exists in rational function fields.
    pub fn t(&self) -> Option<GroundElement> {
        match self {
            Field::Rationals => None,
            Field::RationalFunctions(k) => {
                Some(GroundElement::RationalFunction(RationalFunction::from_poly(TPoly::t(*k))))
            }
        }
    }

    /// `c·t^e` for an integer `c` (possibly negative `e`).
    pub fn monomial_in_t(&self, c: i64, e: i64) -> Option<GroundElement> {
        let Field::RationalFunctions(k) = self else { return None };
        let c = k.from_bigint(&BigInt::from(c));
        let mut coeffs = vec![BigRational::zero(); e.unsigned_abs() as usize + 1];
        let r = if e >= 0 {
            coeffs[e as usize] = c;
            RationalFunction::from_poly(TPoly::from_coeffs(*k, coeffs))
        } else {
            coeffs[e.unsigned_abs() as usize] = BigRational::one();
            let den = TPoly::from_coeffs(*k, coeffs);
            RationalFunction::new(TPoly::from_coeffs(*k, vec![c]), den).ok()?
        };
        Some(GroundElement::RationalFunction(r))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::RationalFunctions(k) => k.characteristic(),
        }
    }
}

impl GroundElement {
    pub fn field(&self) -> Field {
        match self {
            GroundElement::Rational(_) => Field::Rationals,
            GroundElement::RationalFunction(r) => Field::RationalFunctions(r.field()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroundElement::Rational(q) => q.is_zero(),
            GroundElement::RationalFunction(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            GroundElement::Rational(q) => q.is_one(),
            GroundElement::RationalFunction(r) => r.is_one(),
        }
    }

    fn mismatch(&self, other: &Self) -> ! {
        panic!("ground field mismatch: {} vs {}", self.field(), other.field())
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (GroundElement::Rational(a), GroundElement::Rational(b)) => GroundElement::Rational(a + b),
            (GroundElement::RationalFunction(a), GroundElement::RationalFunction(b)) => {
                GroundElement::RationalFunction(a.add(b))
            }
            _ => self.mismatch(other),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (GroundElement::Rational(a), GroundElement::Rational(b)) => GroundElement::Rational(a - b),
            (GroundElement::RationalFunction(a), GroundElement::RationalFunction(b)) => {
                GroundElement::RationalFunction(a.sub(b))
            }
            _ => self.mismatch(other),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GroundElement::Rational(a), GroundElement::Rational(b)) => GroundElement::Rational(a * b),
            (GroundElement::RationalFunction(a), GroundElement::RationalFunction(b)) => {
                GroundElement::RationalFunction(a.mul(b))
            }
            _ => self.mismatch(other),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            GroundElement::Rational(a) => GroundElement::Rational(-a),
            GroundElement::RationalFunction(a) => GroundElement::RationalFunction(a.neg()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            GroundElement::Rational(a) if a.is_zero() => None,
            GroundElement::Rational(a) => Some(GroundElement::Rational(a.recip())),
            GroundElement::RationalFunction(a) => a.inv().map(GroundElement::RationalFunction),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    /// Whether the text form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            GroundElement::Rational(_) => false,
            GroundElement::RationalFunction(r) => r.is_compound(),
        }
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundElement::Rational(q) => f.write_str(&format_rational(q)),
            GroundElement::RationalFunction(r) => f.write_str(&r.to_text()),
        }
    }
}

/// Checked `ν₀(a)`.
pub fn ground_valuation(cfg: &GroundFieldConfig, a: &GroundElement) -> Result<Value> {
    if a.field() != cfg.field() {
        return Err(Error::FieldMismatch { expected: cfg.field().to_string(), found: a.field().to_string() });
    }
    Ok(cfg.valuation(a))
}

/// Joins `(coefficient text, exponent)` pairs into `c0 + c1*v + c2*v^2` form.
/// Coefficients that need grouping must arrive already parenthesized.
pub(crate) fn join_terms(terms: &[(String, usize)], var: &str) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (coef, exp)) in terms.iter().enumerate() {
        let power = match exp {
            0 => String::new(),
            1 => var.to_string(),
            e => format!("{var}^{e}"),
        };
        let term = if *exp == 0 {
            coef.clone()
        } else if coef == "1" {
            power
        } else if coef == "-1" {
            format!("-{power}")
        } else {
            format!("{coef}*{power}")
        };
        if k == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Q ∪ {∞}`, the codomain of every valuation in this crate.
///
/// `Finite` is declared first so the derived ordering puts `Infinity` above
/// every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(BigRational),
    Infinity,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Value::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Value::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Value::Finite(q) => Some(q),
            Value::Infinity => None,
        }
    }

    pub fn min(self, other: Value) -> Value {
        std::cmp::min(self, other)
    }

    pub fn compare(&self, other: &Value) -> Ordering {
        self.cmp(other)
    }

    /// Multiplies by a rational factor.
    ///
    /// # Panics
    /// If the value is `Infinity` and the factor is not positive.
    pub fn scale(&self, factor: &BigRational) -> Value {
        match self {
            Value::Finite(q) => Value::Finite(q * factor),
            Value::Infinity => {
                assert!(factor.is_positive(), "infinity scaled by a non-positive factor");
                Value::Infinity
            }
        }
    }

    /// `n·self` as an empty-sum-aware multiple: `0·γ = 0` even for `γ = ∞`,
    /// matching the `i = 0` term of every min formula.
    pub fn times(&self, n: usize) -> Value {
        if n == 0 {
            return Value::zero();
        }
        match self {
            Value::Finite(q) => Value::Finite(q * BigRational::from_integer(BigInt::from(n))),
            Value::Infinity => Value::Infinity,
        }
    }

    /// `self − other` when both are finite.
    pub fn checked_sub(&self, other: &Value) -> Option<BigRational> {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Some(a - b),
            _ => None,
        }
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinity,
        }
    }
}

impl<'a> Add<&'a Value> for &'a Value {
    type Output = Value;
    fn add(self, rhs: &'a Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinity,
        }
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Finite(q)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::from_int(n)
    }
}

/// Formats a rational as `num/den`, or `num` when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num`, `num/den`, with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidElement(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidElement(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(q) => f.write_str(&format_rational(q)),
            Value::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Infinity" | "∞" => Ok(Value::Infinity),
            other => parse_rational(other).map(Value::Finite),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_ops_examples() {
        let three_halves = Value::from_ratio(3, 2);
        assert_eq!(three_halves.clone() + Value::Infinity, Value::Infinity);
        assert_eq!(Value::from_int(2).min(Value::from_int(3)), Value::from_int(2));
        assert_eq!(Value::from_int(3).scale(&BigRational::new(1.into(), 2.into())), three_halves);
        assert_eq!(Value::Infinity.min(Value::from_int(-5)), Value::from_int(-5));
        assert!(Value::Infinity > Value::from_int(1_000_000));
    }

    #[test]
    fn times_zero_is_zero_even_for_infinity() {
        assert_eq!(Value::Infinity.times(0), Value::zero());
        assert_eq!(Value::Infinity.times(2), Value::Infinity);
        assert_eq!(Value::from_ratio(1, 3).times(3), Value::from_int(1));
    }

    #[test]
    fn text_round_trip() {
        for s in ["inf", "3/2", "-7", "0", "-1/9"] {
            let v: Value = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("6/4".parse::<Value>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<Value>().is_err());
        assert!("abc".parse::<Value>().is_err());
    }

    #[test]
    #[should_panic]
    fn scaling_infinity_by_zero_panics() {
        Value::Infinity.scale(&BigRational::zero());
    }
}

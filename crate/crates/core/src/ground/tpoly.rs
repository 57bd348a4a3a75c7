//! Polynomials in `t` and reduced fractions of them over `Q` or `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::value::format_rational;
use crate::error::{Error, Result};

/// Coefficient field of the rational function field `k(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

impl CoefficientField {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientField::PrimeField(p))
        } else {
            Err(Error::InvalidGround(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    /// Maps an integer into the field (least nonnegative residue mod p).
    pub fn from_bigint(&self, n: &BigInt) -> BigRational {
        match self {
            CoefficientField::Rationals => BigRational::from_integer(n.clone()),
            CoefficientField::PrimeField(p) => BigRational::from_integer(n.mod_floor(&BigInt::from(*p))),
        }
    }

    /// Maps a rational into the field; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        match self {
            CoefficientField::Rationals => Ok(q.clone()),
            CoefficientField::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den_inv = mod_inverse(&q.denom().mod_floor(&p), &p).ok_or_else(|| {
                    Error::InvalidElement(format!("{} is not defined modulo {p}", format_rational(q)))
                })?;
                Ok(BigRational::from_integer((q.numer() * den_inv).mod_floor(&p)))
            }
        }
    }

    fn norm(&self, q: BigRational) -> BigRational {
        match self {
            CoefficientField::Rationals => q,
            CoefficientField::PrimeField(p) => {
                debug_assert!(q.is_integer());
                BigRational::from_integer(q.to_integer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a + b)
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a - b)
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.norm(a * b)
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        self.norm(-a)
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        match self {
            CoefficientField::Rationals => a.recip(),
            CoefficientField::PrimeField(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&a.to_integer(), &p).expect("inverse of zero"))
            }
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => f.write_str("Q"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// Integer numerators over the lcm of the denominators.
fn integer_form(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |l, c| if c.denom().is_one() { l } else { l.lcm(c.denom()) });
    let ints = coeffs
        .iter()
        .map(|c| if c.denom().is_one() { c.numer() * &den } else { c.numer() * (&den / c.denom()) })
        .collect();
    (ints, den)
}

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else {
        None
    }
}

/// Dense polynomial in `t`; `coeffs[i]` is the coefficient of `t^i`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPoly {
    field: CoefficientField,
    coeffs: Vec<BigRational>,
}

impl TPoly {
    pub fn zero(field: CoefficientField) -> Self {
        TPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: CoefficientField) -> Self {
        TPoly { field, coeffs: vec![BigRational::one()] }
    }

    pub fn t(field: CoefficientField) -> Self {
        TPoly { field, coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    /// Builds from coefficients already lying in `field`.
    pub fn from_coeffs(field: CoefficientField, coeffs: Vec<BigRational>) -> Self {
        let mut p = TPoly { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> TPoly {
        if c.is_zero() {
            return TPoly::zero(self.field);
        }
        TPoly::from_coeffs(self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                self.field.add(a, b)
            })
            .collect();
        TPoly::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> TPoly {
        TPoly { field: self.field, coeffs: self.coeffs.iter().map(|a| self.field.neg(a)).collect() }
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                self.field.sub(a, b)
            })
            .collect();
        TPoly::from_coeffs(self.field, coeffs)
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero(self.field);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        // Convolve integer numerators over a common denominator, reducing once per coefficient.
        let (a, da) = integer_form(&self.coeffs);
        let (b, db) = integer_form(&other.coeffs);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let out = out.into_iter().map(|c| self.field.norm(BigRational::new(c, den.clone()))).collect();
        TPoly::from_coeffs(self.field, out)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &TPoly) -> (TPoly, TPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = self.field.inv(divisor.leading().unwrap());
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (TPoly::zero(self.field), self.clone());
        };
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let q = self.field.mul(c, &lead_inv);
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let prod = self.field.mul(&q, b);
                rem[k + j] = self.field.sub(&rem[k + j], &prod);
            }
            quot[k] = q;
        }
        (TPoly::from_coeffs(self.field, quot), TPoly::from_coeffs(self.field, rem))
    }

    pub fn monic(&self) -> TPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&self.field.inv(l)),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        // Monic remainders keep coefficient growth in check over Q.
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return TPoly::one(self.field);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return TPoly::one(self.field);
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<(String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (format_rational(c), i))
            .collect();
        super::join_terms(&terms, "t")
    }

    /// Number of terms, used to decide on parenthesization when nested.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: TPoly,
    den: TPoly,
}

impl RationalFunction {
    pub fn zero(field: CoefficientField) -> Self {
        RationalFunction { num: TPoly::zero(field), den: TPoly::one(field) }
    }

    pub fn from_poly(num: TPoly) -> Self {
        let field = num.field();
        RationalFunction { num, den: TPoly::one(field) }
    }

    /// Reduces `num/den` to canonical form.
    pub fn new(num: TPoly, den: TPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch { expected: num.field().to_string(), found: den.field().to_string() });
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: TPoly, den: TPoly) -> Self {
        let field = num.field();
        if num.is_zero() {
            return RationalFunction::zero(field);
        }
        if den.degree() == Some(0) {
            let inv = field.inv(den.leading().unwrap());
            return RationalFunction { num: num.scale(&inv), den: TPoly::one(field) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lead_inv = field.inv(den.leading().unwrap());
        RationalFunction { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    pub fn field(&self) -> CoefficientField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `ord_t(num) − ord_t(den)`; `None` for zero.
    pub fn t_order(&self) -> Option<i64> {
        let n = self.num.order()? as i64;
        let d = self.den.order().expect("denominator is nonzero") as i64;
        Some(n - d)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction { num: self.num.add(&other.num), den: self.den.clone() };
        }
        // With g = gcd(d1, d2), only common factors of the sum and g can cancel.
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RationalFunction::zero(self.field());
            }
            return RationalFunction { num, den: self.den.mul(&other.den) };
        }
        let d1 = self.den.div_rem(&g).0;
        let d2 = other.den.div_rem(&g).0;
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        if num.is_zero() {
            return RationalFunction::zero(self.field());
        }
        let den = d1.mul(&other.den);
        let h = num.gcd(&g);
        if h.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction { num: num.div_rem(&h).0, den: den.div_rem(&h).0 }
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero(self.field());
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction { num: self.num.mul(&other.num), den: self.den.clone() };
        }
        // Cross-cancel first so the final reduction works on smaller inputs.
        let one = || TPoly::one(self.field());
        let g1 = if other.den.is_one() { one() } else { self.num.gcd(&other.den) };
        let g2 = if self.den.is_one() { one() } else { other.num.gcd(&self.den) };
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_rem(&g1).0 };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_rem(&g1).0 };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_rem(&g2).0 };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_rem(&g2).0 };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lead_inv = self.field().inv(den.leading().unwrap());
        RationalFunction { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }

    /// Whether the text form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.term_count() > 1
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

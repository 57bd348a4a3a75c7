//! Dense univariate polynomials over a ground field `K`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ground::{join_terms, Field, GroundElement, RationalFunction, TPoly};

/// A polynomial in `K[x]`, stored densely from the constant term upwards.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has an
/// empty vector and `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<GroundElement>,
}

/// `f = Σ parts[i]·baseⁱ` with `deg parts[i] < deg base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub base: Poly,
    pub parts: Vec<Poly>,
}

impl QExpansion {
    pub fn reconstruct(&self) -> Poly {
        let mut acc = Poly::zero(self.base.field);
        for part in self.parts.iter().rev() {
            acc = &(&acc * &self.base) + part;
        }
        acc
    }
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Poly::constant(field.one())
    }

    pub fn x(field: Field) -> Self {
        Poly::monomial(field.one(), 1)
    }

    pub fn constant(c: GroundElement) -> Self {
        Poly::from_coeffs(c.field(), vec![c])
    }

    /// `c·xⁿ`.
    pub fn monomial(c: GroundElement, n: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(field, coeffs)
    }

    /// Builds a polynomial from coefficients `c0, c1, …`; trailing zeros are dropped.
    ///
    /// Panics if a coefficient lies outside `field`.
    pub fn from_coeffs(field: Field, mut coeffs: Vec<GroundElement>) -> Self {
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient {c} is not in {field}");
        }
        while coeffs.last().is_some_and(GroundElement::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[GroundElement] {
        &self.coeffs
    }

    /// Coefficient of `xⁱ`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> GroundElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; handy for bounds.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&GroundElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(GroundElement::is_one)
    }

    pub fn scale(&self, c: &GroundElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly { field: self.field, coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn monic(&self) -> Option<Poly> {
        let inv = self.lc()?.inv()?;
        Some(self.scale(&inv))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `f = quotient·q + remainder` with `deg remainder < deg q`.
    pub fn euclid_divide(&self, q: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(q);
        let dq = q.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = q.coeffs[dq].inv().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dq];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dq].mul(&inv_lc);
            if c.is_zero() {
                continue;
            }
            for (j, b) in q.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] = rem[k + j].sub(&c.mul(b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dq);
        Ok((Poly::from_coeffs(self.field, quot), Poly::from_coeffs(self.field, rem)))
    }

    /// The `base`-adic expansion by iterated Euclidean division. Non-monic
    /// bases are accepted.
    pub fn q_expansion(&self, base: &Poly) -> Result<QExpansion> {
        self.check_field(base);
        match base.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::InvalidBase(format!("expansion base {base} must have degree at least 1"))),
        }
        let mut parts = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.euclid_divide(base)?;
            parts.push(r);
            rest = q;
        }
        Ok(QExpansion { base: base.clone(), parts })
    }

    /// The order-`k` Hasse derivative: `∂_k(xⁿ) = C(n,k)·x^{n−k}`.
    pub fn hasse_derivative(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Poly::zero(self.field);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - k);
        // C(n, k) for n = k, k+1, …, updated via C(n+1,k) = C(n,k)·(n+1)/(n+1−k).
        let mut binom = BigInt::one();
        for n in k..self.coeffs.len() {
            if n > k {
                binom = binom * BigInt::from(n) / BigInt::from(n - k);
            }
            out.push(self.coeffs[n].mul(&self.field.from_bigint(&binom)));
        }
        Poly::from_coeffs(self.field, out)
    }

    /// The ordinary formal derivative.
    pub fn derivative(&self) -> Poly {
        self.hasse_derivative(1)
    }

    /// Evaluates at a ground element by Horner's rule.
    pub fn eval_at(&self, a: &GroundElement) -> GroundElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(c);
        }
        acc
    }

    /// Coefficients as strings in the ground text encoding.
    /// `(D, D·f)` with `D ∈ k[t]` the monic lcm of the coefficient
    /// denominators, when some coefficient is not a polynomial in `t`.
    pub(crate) fn clear_t_denominators(&self) -> Option<(GroundElement, Poly)> {
        let mut lcm: Option<TPoly> = None;
        for c in &self.coeffs {
            if let GroundElement::RationalFunction(rf) = c {
                if rf.is_polynomial() {
                    continue;
                }
                let d = rf.denominator();
                lcm = Some(match lcm {
                    None => d.clone(),
                    Some(l) => {
                        let g = l.gcd(d);
                        l.mul(&d.div_rem(&g).0)
                    }
                });
            }
        }
        let d = GroundElement::RationalFunction(RationalFunction::from_poly(lcm?));
        let scaled = self.scale(&d);
        Some((d, scaled))
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    fn check_field(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let text = c.to_string();
                let text = if i > 0 && c.is_compound() { format!("({text})") } else { text };
                (text, i)
            })
            .collect();
        f.write_str(&join_terms(&terms, "x"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.check_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(GroundElement::neg).collect() }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{CoefficientField, GroundFieldConfig};
    use crate::parse::parse_poly;
    use proptest::prelude::*;

    fn qt() -> GroundFieldConfig {
        GroundFieldConfig::tadic_rationals()
    }

    fn p(cfg: &GroundFieldConfig, s: &str) -> Poly {
        parse_poly(cfg, s).unwrap()
    }

    #[test]
    fn division_examples() {
        let g = qt();
        let (q, r) = p(&g, "x^2 + 1").euclid_divide(&p(&g, "x")).unwrap();
        assert_eq!((q, r), (p(&g, "x"), p(&g, "1")));
        let (q, r) = p(&g, "x - t").euclid_divide(&p(&g, "x - t - t^2")).unwrap();
        assert_eq!((q, r), (p(&g, "1"), p(&g, "t^2")));
        let (q, r) = p(&g, "0").euclid_divide(&p(&g, "x")).unwrap();
        assert!(q.is_zero() && r.is_zero());
        assert_eq!(p(&g, "x").euclid_divide(&p(&g, "0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn expansion_examples() {
        let g = qt();
        let e = p(&g, "x^2 + 1").q_expansion(&p(&g, "x")).unwrap();
        assert_eq!(e.parts, vec![p(&g, "1"), p(&g, "0"), p(&g, "1")]);
        let e = p(&g, "x - t").q_expansion(&p(&g, "x - t - t^2")).unwrap();
        assert_eq!(e.parts, vec![p(&g, "t^2"), p(&g, "1")]);
        assert!(matches!(p(&g, "x").q_expansion(&p(&g, "t")), Err(Error::InvalidBase(_))));
    }

    #[test]
    fn expansion_of_shifted_square() {
        let g = qt();
        let q = p(&g, "x - t");
        let t3 = p(&g, "t^3");
        let f = &(&q * &q) + &(&t3 * &q);
        let e = f.q_expansion(&q).unwrap();
        assert_eq!(e.parts, vec![Poly::zero(g.field()), t3, Poly::one(g.field())]);
        // Oracle: expand directly in the monomial basis.
        assert_eq!(e.reconstruct(), p(&g, "x^2 - 2*t*x + t^2 + t^3*x - t^4"));
    }

    #[test]
    fn non_monic_base() {
        let g = GroundFieldConfig::padic(3).unwrap();
        let f = p(&g, "x^3 - 5*x + 7");
        let e = f.q_expansion(&p(&g, "2*x + 1")).unwrap();
        assert_eq!(e.reconstruct(), f);
        assert!(e.parts.iter().all(|c| c.degree_or_zero() < 1));
    }

    #[test]
    fn hasse_examples() {
        let g = qt();
        assert_eq!(p(&g, "x^2").hasse_derivative(1), p(&g, "2*x"));
        assert_eq!(p(&g, "x^2").hasse_derivative(2), p(&g, "1"));
        assert_eq!(p(&g, "x^3 + x").hasse_derivative(2), p(&g, "3*x"));
        assert!(p(&g, "x^3 + x").hasse_derivative(4).is_zero());
    }

    #[test]
    fn hasse_in_characteristic_two() {
        let g = GroundFieldConfig::tadic(CoefficientField::PrimeField(2)).unwrap();
        // C(4,2) = 6 ≡ 0, C(4,1) = 4 ≡ 0, C(3,2) = 3 ≡ 1.
        assert!(p(&g, "x^4").hasse_derivative(1).is_zero());
        assert!(p(&g, "x^4").hasse_derivative(2).is_zero());
        assert_eq!(p(&g, "x^3").hasse_derivative(2), p(&g, "x"));
        assert_eq!(p(&g, "x^4").hasse_derivative(4), p(&g, "1"));
    }

    #[test]
    fn display_forms() {
        let g = qt();
        assert_eq!(p(&g, "x^2 - 2*x + 1").to_string(), "1 - 2*x + x^2");
        assert_eq!(p(&g, "x/(1 + t)").to_string(), "((1)/(1 + t))*x");
        assert_eq!(p(&g, "0").to_string(), "0");
    }

    fn small_poly(cfg: GroundFieldConfig, max_deg: usize) -> impl Strategy<Value = Poly> {
        let field = cfg.field();
        prop::collection::vec((-4i64..=4, 0i64..=2), 0..=max_deg + 1).prop_map(move |cs| {
            let coeffs = cs
                .into_iter()
                .map(|(c, e)| match field.monomial_in_t(c, e) {
                    Some(a) => a,
                    None => field.from_int(c),
                })
                .collect();
            Poly::from_coeffs(field, coeffs)
        })
    }

    fn factorial(k: usize) -> BigInt {
        (1..=k).map(BigInt::from).product()
    }

    fn formal_derivative(f: &Poly) -> Poly {
        let field = f.field();
        let coeffs = f.coeffs().iter().enumerate().skip(1).map(|(n, c)| c.mul(&field.from_int(n as i64))).collect();
        Poly::from_coeffs(field, coeffs)
    }

    proptest! {
        #[test]
        fn expansion_reconstructs(f in small_poly(qt(), 6), q in small_poly(qt(), 3)) {
            prop_assume!(q.degree().is_some_and(|d| d >= 1));
            let q = q.monic().unwrap();
            let e = f.q_expansion(&q).unwrap();
            prop_assert_eq!(e.reconstruct(), f.clone());
            for part in &e.parts {
                prop_assert!(part.degree().is_none_or(|d| d < q.degree().unwrap()));
            }
            if !f.is_zero() {
                prop_assert!(!e.parts.last().unwrap().is_zero());
            }
        }

        #[test]
        fn hasse_product_rule(f in small_poly(qt(), 4), g in small_poly(qt(), 4), k in 0usize..6) {
            let lhs = (&f * &g).hasse_derivative(k);
            let mut rhs = Poly::zero(f.field());
            for i in 0..=k {
                rhs = &rhs + &(&f.hasse_derivative(i) * &g.hasse_derivative(k - i));
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hasse_matches_divided_derivative(f in small_poly(qt(), 6), k in 0usize..6) {
            let mut d = f.clone();
            for _ in 0..k {
                d = formal_derivative(&d);
            }
            let kf = f.field().from_bigint(&factorial(k));
            prop_assert_eq!(f.hasse_derivative(k).scale(&kf), d);
        }

        #[test]
        fn top_hasse_is_leading_coefficient(
            f in small_poly(GroundFieldConfig::tadic(CoefficientField::PrimeField(3)).unwrap(), 6)
        ) {
            prop_assume!(!f.is_zero());
            let d = f.degree().unwrap();
            prop_assert_eq!(f.hasse_derivative(d), Poly::constant(f.lc().unwrap().clone()));
        }
    }
}

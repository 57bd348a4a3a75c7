//! Initial forms for truncations: `in_Q(f) = Σ_{i ∈ S_Q(f)} in_Q(fᵢ)·yⁱ` in
//! `gr_Q(K[x]) = R_Q[y]` with `y = in_Q(Q)`.
//!
//! Forms are stored through representatives: the support `S_Q(f)` and the
//! expansion coefficients `fᵢ`, which are canonical since `deg fᵢ < deg Q`.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ground::Value;
use crate::poly::Poly;
use crate::valuation::{MacLaneChain, ValuationDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncInitialForm {
    pub key: Poly,
    /// `ν_Q(f)`.
    pub value: Value,
    /// `ν(Q)`.
    pub key_value: Value,
    /// `S_Q(f)`, ascending.
    pub support: Vec<usize>,
    /// `(i, fᵢ)` for `i ∈ S_Q(f)`.
    pub terms: Vec<(usize, Poly)>,
}

impl TruncInitialForm {
    /// A product of forms whose leading parts cancelled has empty support.
    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// `Σ fᵢ Qⁱ` over the support.
    pub fn representative(&self) -> Poly {
        let mut acc = Poly::zero(self.key.field());
        for (i, c) in &self.terms {
            acc = &acc + &(c * &self.key.pow(*i as u32));
        }
        acc
    }
}

impl Serialize for TruncInitialForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            exponent: usize,
            coefficient: String,
        }
        let terms: Vec<Term> =
            self.terms.iter().map(|(i, c)| Term { exponent: *i, coefficient: c.to_string() }).collect();
        let mut st = s.serialize_struct("TruncInitialForm", 5)?;
        st.serialize_field("key", &self.key.to_string())?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("keyValue", &self.key_value)?;
        st.serialize_field("support", &self.support)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

fn require_key(q: &Poly) -> Result<()> {
    if q.is_monic() && q.degree_or_zero() >= 1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("key {q} must be monic of degree at least 1")))
    }
}

/// `in_Q(f)` for the truncation of `ambient` at `Q`.
pub fn initial_form(ambient: &ValuationDescriptor, key: &Poly, f: &Poly) -> Result<TruncInitialForm> {
    require_key(key)?;
    if f.is_zero() {
        return Err(Error::NoInitialForm);
    }
    let key_value = ambient.eval(key)?;
    let expansion = f.q_expansion(key)?;
    let mut term_values = Vec::new();
    for (i, part) in expansion.parts.iter().enumerate() {
        if !part.is_zero() {
            term_values.push((i, ambient.eval(part)? + key_value.times(i)));
        }
    }
    let value = term_values.iter().map(|(_, w)| w.clone()).min().expect("f is nonzero");
    let mut support = Vec::new();
    let mut terms = Vec::new();
    for (i, w) in term_values {
        if w == value {
            support.push(i);
            terms.push((i, expansion.parts[i].clone()));
        }
    }
    Ok(TruncInitialForm { key: key.clone(), value, key_value, support, terms })
}

/// `f ∼_ν g`: equal, or of equal finite value `w` with `ν(f − g) > w`.
pub fn equivalent(v: &ValuationDescriptor, f: &Poly, g: &Poly) -> Result<bool> {
    if f == g {
        return Ok(true);
    }
    let vf = v.eval(f)?;
    if vf.is_infinite() || vf != v.eval(g)? {
        return Ok(false);
    }
    Ok(v.eval(&(f - g))? > vf)
}

/// `y | in_Q(f)`.
pub fn y_divides(ambient: &ValuationDescriptor, key: &Poly, f: &Poly) -> Result<bool> {
    Ok(!initial_form(ambient, key, f)?.support.contains(&0))
}

/// `in_Q(Q′) | in_Q(f)` for `Q` the key of step `i` and `Q′ ∈ Ψ(Q)`,
/// decided as `ν_Q(f) < ν(f)`.
pub fn inq_prime_divides(chain: &MacLaneChain, i: usize, q_prime: &Poly, f: &Poly) -> Result<bool> {
    if !crate::keypoly::psi_member(chain, i, q_prime)? {
        return Err(Error::Precondition(format!("{q_prime} is not in the set Psi for step {i}")));
    }
    Ok(chain.truncation_at(i)?.eval(f)? < chain.top().eval(f)?)
}

/// `in_Q(f)·in_Q(g)` computed termwise: each `fᵢgⱼ` is reduced to its
/// remainder mod `Q`, remainders are summed by exponent and exponents whose
/// value rose through cancellation are dropped.
pub fn multiply_initial_forms(
    ambient: &ValuationDescriptor,
    key: &Poly,
    a: &TruncInitialForm,
    b: &TruncInitialForm,
) -> Result<TruncInitialForm> {
    if &a.key != key || &b.key != key {
        return Err(Error::Precondition("initial forms belong to different keys".into()));
    }
    let key_value = ambient.eval(key)?;
    if a.key_value != key_value || b.key_value != key_value {
        return Err(Error::Precondition("initial forms belong to a different valuation".into()));
    }
    let value = &a.value + &b.value;
    let mut sums: BTreeMap<usize, Poly> = BTreeMap::new();
    for (i, fi) in &a.terms {
        for (j, gj) in &b.terms {
            let (_, r) = (fi * gj).euclid_divide(key)?;
            let slot = sums.entry(i + j).or_insert_with(|| Poly::zero(key.field()));
            *slot = &*slot + &r;
        }
    }
    let mut support = Vec::new();
    let mut terms = Vec::new();
    for (k, c) in sums {
        if c.is_zero() {
            continue;
        }
        if ambient.eval(&c)? + key_value.times(k) == value {
            support.push(k);
            terms.push((k, c));
        }
    }
    Ok(TruncInitialForm { key: key.clone(), value, key_value, support, terms })
}

/// Equality in `gr_Q`: same value and `ν_Q(rep F − rep G) > value`.
pub fn same_form(ambient: &ValuationDescriptor, a: &TruncInitialForm, b: &TruncInitialForm) -> Result<bool> {
    if a.key != b.key || a.value != b.value || a.support != b.support {
        return Ok(false);
    }
    let truncation = ambient.truncate(a.key.clone())?;
    let diff = &a.representative() - &b.representative();
    Ok(truncation.eval(&diff)? > a.value)
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

    fn chain1() -> MacLaneChain {
        MacLaneChain::new(qt(), v("1")).augment(p("x - t"), v("3")).unwrap()
    }

    #[test]
    fn initial_form_examples() {
        let nu1 = chain1().top().clone();
        let q = p("x - t");
        let f = initial_form(&nu1, &q, &p("(x - t)^2")).unwrap();
        assert_eq!((f.support.clone(), f.value.clone()), (vec![2], v("6")));
        assert_eq!(f.terms, vec![(2, p("1"))]);
        let f = initial_form(&nu1, &q, &p("t^3*(x - t) + (x - t)^2")).unwrap();
        assert_eq!((f.support, f.value), (vec![1, 2], v("6")));
        let f = initial_form(&nu1, &q, &p("t*(x - t) + (x - t)^2")).unwrap();
        assert_eq!((f.support, f.value), (vec![1], v("4")));
        assert_eq!(initial_form(&nu1, &q, &p("0")), Err(Error::NoInitialForm));
    }

    #[test]
    fn equivalence_examples() {
        let nu = MacLaneChain::new(qt(), v("1")).top().clone();
        let nu1 = chain1().top().clone();
        let (q1, q2) = (p("x - t"), p("x - t - t^2"));
        assert!(equivalent(&nu1, &q1, &q1).unwrap());
        assert!(!equivalent(&nu1, &q2, &q1).unwrap());
        assert!(equivalent(&nu, &q1, &q2).unwrap());
    }

    #[test]
    fn y_divisibility() {
        let nu1 = chain1().top().clone();
        let q = p("x - t");
        assert!(y_divides(&nu1, &q, &q).unwrap());
        assert!(!y_divides(&nu1, &q, &p("t^2 + 1")).unwrap());
        assert!(y_divides(&nu1, &q, &p("t^3*(x - t) + (x - t)^2")).unwrap());
    }

    #[test]
    fn drop_divisibility() {
        let c = chain1();
        let qp = p("x - t");
        assert!(inq_prime_divides(&c, 0, &qp, &p("x - t")).unwrap());
        assert!(!inq_prime_divides(&c, 0, &qp, &p("x + 1")).unwrap());
        assert!(inq_prime_divides(&c, 0, &qp, &p("(x - t)^2")).unwrap());
        assert!(inq_prime_divides(&c, 0, &p("x + 1"), &p("x")).is_err());
    }

    #[test]
    fn products_of_forms() {
        let nu1 = chain1().top().clone();
        let q = p("x - t");
        let y = initial_form(&nu1, &q, &q).unwrap();
        let yy = multiply_initial_forms(&nu1, &q, &y, &y).unwrap();
        assert_eq!((yy.support.clone(), yy.value.clone()), (vec![2], v("6")));
        let f = p("t^3*(x - t) + (x - t)^2");
        let ff = initial_form(&nu1, &q, &f).unwrap();
        let prod = multiply_initial_forms(&nu1, &q, &ff, &y).unwrap();
        assert_eq!((prod.support.clone(), prod.value.clone()), (vec![2, 3], v("9")));
        let direct = initial_form(&nu1, &q, &(&f * &q)).unwrap();
        assert!(same_form(&nu1, &prod, &direct).unwrap());
    }

    #[test]
    fn product_below_key_degree() {
        // Over a degree-2 key, products of linear forms reduce mod the key.
        let c = chain1().augment(p("(x - t)^2 + t^6"), v("13/2")).unwrap();
        let top = c.top().clone();
        let q = p("(x - t)^2 + t^6");
        let (f, g) = (p("x + t^2"), p("x - t + t^4"));
        let ff = initial_form(&top, &q, &f).unwrap();
        let gg = initial_form(&top, &q, &g).unwrap();
        let prod = multiply_initial_forms(&top, &q, &ff, &gg).unwrap();
        let (_, r) = (&f * &g).euclid_divide(&q).unwrap();
        assert_eq!(prod.terms, vec![(0, r)]);
        assert!(same_form(&top, &prod, &initial_form(&top, &q, &(&f * &g)).unwrap()).unwrap());
    }
}

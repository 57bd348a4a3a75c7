use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{element_set, enumerate_below, enumerate_polys, FailureRecord, Sampler, SuiteReport};
use crate::error::{Error, Result};
use crate::graded::{equivalent, initial_form, multiply_initial_forms, same_form, y_divides};
use crate::ground::{GroundElement, GroundFieldConfig, Value};
use crate::keypoly::{abstract_key_check, compare_keys, epsilon, psi_member};
use crate::poly::Poly;
use crate::valuation::{DescriptorKind, KeySource, MacLaneChain, ValuationDescriptor};

/// Cap on exhaustive enumerations of polynomials below a key degree.
const BELOW_CAP: usize = 400;

/// `Ok(None)` when `f` cannot be evaluated because a family prefix is too short.
fn eval_opt(v: &ValuationDescriptor, f: &Poly) -> Result<Option<Value>> {
    match v.eval(f) {
        Ok(w) => Ok(Some(w)),
        Err(Error::NotStabilized(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn require_monic(q: &Poly) -> Result<usize> {
    match q.degree() {
        Some(n) if n >= 1 && q.is_monic() => Ok(n),
        _ => Err(Error::Precondition(format!("{q} must be monic of degree at least 1"))),
    }
}

fn require_verified(chain: &MacLaneChain, i: usize) -> Result<Poly> {
    let verdict = abstract_key_check(chain, i)?;
    if !verdict.is_verified() {
        return Err(Error::Precondition(format!("the key of step {i} is not verified: {verdict:?}")));
    }
    chain.key(i)
}

/// The uniformizer `p` or `t`.
fn uniformizer(cfg: &GroundFieldConfig) -> GroundElement {
    match cfg {
        GroundFieldConfig::PAdicRationals { p } => cfg.field().from_int(*p as i64),
        GroundFieldConfig::TAdicRationalFunctions { .. } => cfg.field().t().expect("t-adic field"),
    }
}

fn element_pow(a: &GroundElement, n: u64) -> GroundElement {
    let mut acc = a.field().one();
    for _ in 0..n {
        acc = acc.mul(a);
    }
    acc
}

fn ordered_pairs<T>(items: &[T]) -> impl Iterator<Item = (&T, &T)> {
    (0..items.len()).flat_map(move |i| (i..items.len()).map(move |j| (&items[i], &items[j])))
}

/// V1 and V2 on one pair, with the values of `f` and `g` known.
fn axiom_pair(r: &mut SuiteReport, v: &ValuationDescriptor, f: &Poly, g: &Poly, vf: &Value, vg: &Value) -> Result<()> {
    let Some(vfg) = eval_opt(v, &(f * g))? else {
        r.skip();
        return Ok(());
    };
    let expected = vf + vg;
    r.check(vfg == expected, || {
        FailureRecord::new("V1", &[("f", f.to_string()), ("g", g.to_string())], &vfg, &expected)
    });
    let Some(vsum) = eval_opt(v, &(f + g))? else {
        r.skip();
        return Ok(());
    };
    let floor = vf.clone().min(vg.clone());
    r.check(vsum >= floor, || FailureRecord::new("V2", &[("f", f.to_string()), ("g", g.to_string())], &vsum, &floor));
    Ok(())
}

/// V1/V2 over all pairs of degree ≤ 2 and height ≤ 2, then random pairs.
fn axioms_v1_v2(r: &mut SuiteReport, v: &ValuationDescriptor, s: &Sampler) -> Result<()> {
    let ground = v.restrict_to_ground();
    let polys = enumerate_polys(&ground, 2, 2);
    let mut values = Vec::with_capacity(polys.len());
    for f in &polys {
        values.push(eval_opt(v, f)?);
    }
    for i in 0..polys.len() {
        for j in i..polys.len() {
            match (&values[i], &values[j]) {
                (Some(a), Some(b)) => axiom_pair(r, v, &polys[i], &polys[j], a, b)?,
                _ => r.skip(),
            }
        }
    }
    let mut rng = s.rng();
    for _ in 0..s.trials {
        let f = s.random_poly(&mut rng, &ground, s.degree_bound);
        let g = s.random_poly(&mut rng, &ground, s.degree_bound);
        match (eval_opt(v, &f)?, eval_opt(v, &g)?) {
            (Some(a), Some(b)) => axiom_pair(r, v, &f, &g, &a, &b)?,
            _ => r.skip(),
        }
    }
    Ok(())
}

/// `None` when every truncation inside `v` is at a verified chain key.
fn truncation_expectation(v: &ValuationDescriptor) -> Result<Option<String>> {
    match v.kind() {
        DescriptorKind::Monomial { .. } => Ok(None),
        DescriptorKind::Augmented { base, .. } => truncation_expectation(base),
        DescriptorKind::LimitAugmented { prefix, .. } => truncation_expectation(prefix.base()),
        DescriptorKind::Truncation { ambient, key, .. } => {
            if let Some(e) = truncation_expectation(ambient)? {
                return Ok(Some(e));
            }
            let verified = match MacLaneChain::from_descriptor(ambient) {
                Ok(chain) => {
                    let mut found = false;
                    for j in 0..chain.len() {
                        if &chain.key(j)? == key && abstract_key_check(&chain, j)?.is_verified() {
                            found = true;
                            break;
                        }
                    }
                    found
                }
                Err(_) => false,
            };
            Ok((!verified)
                .then(|| format!("expected: axioms not guaranteed ({key} is not a verified key of the ambient chain)")))
        }
    }
}

/// V3 directly, V1/V2 exhaustively at degree ≤ 2, height ≤ 2 and on
/// `s.trials` random pairs.
pub fn check_axioms(v: &ValuationDescriptor, s: &Sampler) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("axioms");
    r.expectation = truncation_expectation(v)?;
    let field = v.restrict_to_ground().field();
    let one = Poly::one(field);
    let zero = Poly::zero(field);
    let v1 = v.eval(&one)?;
    r.check(v1 == Value::zero(), || FailureRecord::new("V3", &[("f", "1".into())], &v1, "0"));
    let v0 = v.eval(&zero)?;
    r.check(v0.is_infinite(), || FailureRecord::new("V3", &[("f", "0".into())], &v0, "inf"));
    axioms_v1_v2(&mut r, v, s)?;
    Ok(r)
}

/// Checks the product hypothesis (i) and remainder hypothesis (ii) on pairs
/// below `deg q`; if neither fails, checks V1/V2 for the min-formula
/// extension `μ′`.
pub fn check_theorem1(base: &ValuationDescriptor, q: &Poly, gamma: &Value, s: &Sampler) -> Result<SuiteReport> {
    let n = require_monic(q)?;
    let ground = base.restrict_to_ground();
    let mut r = SuiteReport::new("theorem1");
    let mut pairs: Vec<(Poly, Poly)> = Vec::new();
    let small = enumerate_below(&ground, n, 2, BELOW_CAP);
    for (f, g) in ordered_pairs(&small) {
        pairs.push((f.clone(), g.clone()));
    }
    let mut rng = s.rng();
    for _ in 0..s.trials {
        pairs.push((s.random_below(&mut rng, &ground, n), s.random_below(&mut rng, &ground, n)));
    }
    let mut violations = 0u64;
    for (f, g) in &pairs {
        let inputs = [("f", f.to_string()), ("g", g.to_string()), ("q", q.to_string())];
        let mf = base.eval(f)?;
        let mg = base.eval(g)?;
        let fg = f * g;
        let mfg = base.eval(&fg)?;
        let sum = &mf + &mg;
        if mfg != sum {
            violations += 1;
            r.hypothesis_violation(FailureRecord::new("(i)", &inputs, &mfg, &sum));
            continue;
        }
        let (a, c) = fg.euclid_divide(q)?;
        let mc = base.eval(&c)?;
        let bound = base.eval(&a)? + gamma.clone();
        if mc != mfg || mfg >= bound {
            violations += 1;
            r.hypothesis_violation(FailureRecord::new(
                "(ii)",
                &inputs,
                format!("mu(c) = {mc}, mu(fg) = {mfg}"),
                format!("mu(a) + gamma = {bound}"),
            ));
        }
    }
    r.notes.push(format!("hypotheses checked on {} pairs below degree {n}", pairs.len()));
    if violations > 0 {
        r.notes.push(format!("{violations} hypothesis violations; implication not tested"));
        return Ok(r);
    }
    let extension = base.extension_unchecked(q.clone(), gamma.clone())?;
    axioms_v1_v2(&mut r, &extension, s)?;
    Ok(r)
}

/// Products of up to three random polynomials below degree `n`.
fn random_tuple(s: &Sampler, rng: &mut ChaCha8Rng, ground: &GroundFieldConfig, n: usize) -> Vec<Poly> {
    let len = rng.gen_range(1..=3);
    (0..len).map(|_| s.random_below(rng, ground, n)).collect()
}

/// The derivative bound `ν(∂_k(fg)) > ν(fg) − kε(Q)` and the remainder
/// relation `ν(r) = ν(∏hᵢ) < ν(qQ)` for the key `Q` of step `i`, against the top
/// valuation of the chain.
pub fn check_lemma23(chain: &MacLaneChain, i: usize, s: &Sampler) -> Result<SuiteReport> {
    let q = require_verified(chain, i)?;
    let n = q.degree_or_zero();
    let nu = chain.top();
    let ground = chain.ground();
    let eps = epsilon(nu, &q)?.epsilon;
    let mut r = SuiteReport::new("lemma23");
    let small = enumerate_below(&ground, n, 2, BELOW_CAP);
    let mut tuples: Vec<Vec<Poly>> = ordered_pairs(&small).map(|(f, g)| vec![f.clone(), g.clone()]).collect();
    let mut rng = s.rng();
    for _ in 0..s.trials {
        tuples.push(random_tuple(s, &mut rng, &ground, n));
    }
    for hs in &tuples {
        let prod = hs.iter().fold(Poly::one(ground.field()), |acc, h| &acc * h);
        let inputs: Vec<(&str, String)> = hs.iter().map(|h| ("h", h.to_string())).collect();
        let vprod = nu.eval(&prod)?;
        if hs.len() == 2 {
            lemma23_i(&mut r, nu, &prod, &vprod, &eps, &inputs)?;
        }
        let (a, rem) = prod.euclid_divide(&q)?;
        if rem.is_zero() {
            r.skip();
            continue;
        }
        let vr = nu.eval(&rem)?;
        let vaq = nu.eval(&(&a * &q))?;
        r.check(vr == vprod && vprod < vaq, || {
            FailureRecord::new(
                "remainder of a product",
                &inputs,
                format!("nu(r) = {vr}, nu(prod) = {vprod}"),
                format!("nu(aQ) = {vaq}"),
            )
        });
    }
    Ok(r)
}

fn lemma23_i(
    r: &mut SuiteReport,
    nu: &ValuationDescriptor,
    prod: &Poly,
    vprod: &Value,
    eps: &Value,
    inputs: &[(&str, String)],
) -> Result<()> {
    let (Value::Finite(w), Value::Finite(e)) = (vprod, eps) else {
        r.skip();
        return Ok(());
    };
    for k in 1..=prod.degree_or_zero() {
        let d = prod.hasse_derivative(k);
        if d.is_zero() {
            continue;
        }
        let lhs = nu.eval(&d)?;
        let rhs = Value::Finite(w - e * num_rational::BigRational::from_integer(BigInt::from(k)));
        r.check(lhs > rhs, || {
            let mut inputs = inputs.to_vec();
            inputs.push(("k", k.to_string()));
            FailureRecord::new("derivative bound", &inputs, &lhs, &rhs)
        });
    }
    Ok(())
}

/// A perturbation `δ` with `ν_Q(δ) > ν_Q(f)`.
fn perturbation(
    tr: &ValuationDescriptor,
    s: &Sampler,
    rng: &mut ChaCha8Rng,
    ground: &GroundFieldConfig,
    vf: &Value,
) -> Result<Option<Poly>> {
    let base = s.random_poly(rng, ground, s.degree_bound);
    if base.is_zero() {
        return Ok(None);
    }
    let (Value::Finite(a), Value::Finite(b)) = (vf, &tr.eval(&base)?) else {
        return Ok(None);
    };
    // ν(π) = 1 for both supported ground fields.
    let m = (a - b).floor().to_integer() + BigInt::from(1);
    let m = m.max(BigInt::from(0)).to_u64().unwrap_or(0);
    Ok(Some(base.scale(&element_pow(&uniformizer(ground), m))))
}

/// Drop test for `Q′ ∈ Ψ(Q)`: `in_Q(Q′) | in_Q(f)` iff `ν_Q(f) < ν(f)`.
fn drops(tr: &ValuationDescriptor, top: &ValuationDescriptor, f: &Poly) -> Result<bool> {
    Ok(tr.eval(f)? < top.eval(f)?)
}

/// The graded-algebra invariants for the key of step `i`.
pub fn check_graded(chain: &MacLaneChain, i: usize, s: &Sampler) -> Result<SuiteReport> {
    let q = require_verified(chain, i)?;
    let n = q.degree_or_zero();
    let top = chain.top();
    let tr = chain.truncation_at(i)?;
    let ground = chain.ground();
    let q_next = match chain.key(i + 1) {
        Ok(k) => match psi_member(chain, i, &k) {
            Ok(true) => Some(k),
            Ok(false) | Err(Error::PsiEmpty(_)) => None,
            Err(e) => return Err(e),
        },
        Err(_) => None,
    };
    let mut r = SuiteReport::new("graded");
    if q_next.is_none() {
        r.notes.push(format!("no later key in Psi of step {i}; prime-ideal checks skipped"));
    }
    let mut pairs: Vec<(Poly, Poly)> = vec![(q.clone(), q.clone())];
    let small = enumerate_below(&ground, n, 2, BELOW_CAP);
    pairs.extend(ordered_pairs(&small).map(|(f, g)| (f.clone(), g.clone())));
    let mut rng = s.rng();
    for _ in 0..s.trials {
        let f = s.random_poly(&mut rng, &ground, s.degree_bound);
        let g = s.random_poly(&mut rng, &ground, s.degree_bound);
        if !f.is_zero() && !g.is_zero() {
            pairs.push((f, g));
        }
    }
    for (f, g) in &pairs {
        let inputs = [("f", f.to_string()), ("g", g.to_string()), ("Q", q.to_string())];
        let fg = f * g;
        let ff = initial_form(top, &q, f)?;
        let gg = initial_form(top, &q, g)?;
        let direct = initial_form(top, &q, &fg)?;
        let prod = multiply_initial_forms(top, &q, &ff, &gg)?;
        r.check(same_form(top, &prod, &direct)?, || {
            FailureRecord::new(
                "in(f)in(g) = in(fg)",
                &inputs,
                format!("{:?}", prod.support),
                format!("{:?}", direct.support),
            )
        });
        r.check(!prod.is_zero(), || FailureRecord::new("domain", &inputs, "in(f)in(g) = 0", "nonzero"));
        let (yf, yg, yfg) = (!ff.support.contains(&0), !gg.support.contains(&0), !direct.support.contains(&0));
        if yfg {
            r.check(yf || yg, || FailureRecord::new("y prime", &inputs, "y | in(fg)", "y | in(f) or y | in(g)"));
        }
        if q_next.is_some() && drops(&tr, top, &fg)? {
            let (df, dg) = (drops(&tr, top, f)?, drops(&tr, top, g)?);
            r.check(df || dg, || {
                FailureRecord::new("I_Q prime", &inputs, "in(Q') | in(fg)", "in(Q') | in(f) or in(Q') | in(g)")
            });
        }
        // Congruence: perturb f and g inside their ν_Q-classes.
        let vf = tr.eval(f)?;
        let vg = tr.eval(g)?;
        let (Some(df), Some(dg)) =
            (perturbation(&tr, s, &mut rng, &ground, &vf)?, perturbation(&tr, s, &mut rng, &ground, &vg)?)
        else {
            r.skip();
            continue;
        };
        let (f2, g2) = (f + &df, g + &dg);
        if !equivalent(&tr, f, &f2)? || !equivalent(&tr, g, &g2)? {
            r.skip();
            continue;
        }
        let fg2 = &f2 * &g2;
        r.check(equivalent(&tr, &fg, &fg2)?, || {
            let mut inputs = inputs.to_vec();
            inputs.push(("f'", f2.to_string()));
            inputs.push(("g'", g2.to_string()));
            FailureRecord::new("congruence", &inputs, "fg", "not equivalent to f'g'")
        });
    }
    if let Some(qp) = &q_next {
        for _ in 0..s.trials {
            let h = s.random_poly(&mut rng, &ground, s.degree_bound);
            if h.is_zero() {
                continue;
            }
            let m = qp * &h;
            r.check(drops(&tr, top, &m)?, || {
                FailureRecord::new(
                    "multiple of Q' drops",
                    &[("Q'", qp.to_string()), ("h", h.to_string())],
                    "no drop",
                    "drop",
                )
            });
            let f = &m + &s.random_below(&mut rng, &ground, qp.degree_or_zero());
            let (quo, _) = f.euclid_divide(qp)?;
            if !quo.is_zero() && equivalent(&tr, &f, &(&quo * qp))? {
                r.check(drops(&tr, top, &f)?, || {
                    FailureRecord::new(
                        "equivalent to a multiple of Q' drops",
                        &[("f", f.to_string())],
                        "no drop",
                        "drop",
                    )
                });
            }
        }
    }
    irreducibility(&mut r, &q, &ground, s, &mut rng)?;
    Ok(r)
}

/// No monic linear `x − c` with `c` in the sampled coefficient sets divides `Q`.
fn irreducibility(
    r: &mut SuiteReport,
    q: &Poly,
    ground: &GroundFieldConfig,
    s: &Sampler,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    if q.degree_or_zero() < 2 {
        return Ok(());
    }
    let x = Poly::x(ground.field());
    let mut roots = element_set(ground, s.height_bound.min(8));
    for _ in 0..s.trials {
        roots.push(s.random_element(rng, ground));
    }
    for c in roots {
        let value = q.eval_at(&c);
        r.check(!value.is_zero(), || {
            FailureRecord::new(
                "key is irreducible",
                &[("Q", q.to_string()), ("factor", (&x - &Poly::constant(c.clone())).to_string())],
                "Q(c) = 0",
                "nonzero",
            )
        });
    }
    Ok(())
}

/// Every sampled `f` has a chain key `Q` with `deg Q ≤ deg f` and
/// `ν_Q(f) = ν(f)`.
pub fn check_complete_set(chain: &MacLaneChain, s: &Sampler) -> Result<SuiteReport> {
    let top = chain.top();
    let ground = chain.ground();
    let mut truncations = Vec::new();
    for k in chain.keys()? {
        truncations.push((k.key.degree_or_zero(), top.truncate(k.key.clone())?, k.key));
    }
    let mut r = SuiteReport::new("complete-set");
    let mut polys = enumerate_polys(&ground, 2, 2);
    let mut rng = s.rng();
    for _ in 0..s.trials {
        polys.push(s.random_poly(&mut rng, &ground, s.degree_bound));
    }
    for f in &polys {
        let Some(d) = f.degree() else {
            r.skip();
            continue;
        };
        if d == 0 {
            r.check(true, || unreachable!());
            continue;
        }
        let Some(vf) = eval_opt(top, f)? else {
            r.skip();
            continue;
        };
        let mut witnessed = false;
        for (deg, tr, _) in &truncations {
            if *deg <= d && eval_opt(tr, f)?.as_ref() == Some(&vf) {
                witnessed = true;
                break;
            }
        }
        r.check(witnessed, || FailureRecord::new("complete set", &[("f", f.to_string())], "no witness", &vf));
    }
    Ok(r)
}

enum Divisibility {
    /// `v` is the truncation at `Q` itself: `y | in_Q(f)`.
    Y { ambient: ValuationDescriptor },
    /// `v = ν_{Q₀}` with `Q` dropping: `ν_{Q₀}(f) < ν(f)`.
    Drop { ambient: ValuationDescriptor },
    /// `f ∼_v Q·(f quo Q)`; a failed search means "no witness within bound".
    Search,
}

impl Divisibility {
    fn new(v: &ValuationDescriptor, q: &Poly) -> Result<Self> {
        if let DescriptorKind::Truncation { ambient, key, .. } = v.kind() {
            if key == q {
                return Ok(Divisibility::Y { ambient: ambient.clone() });
            }
            if eval_opt(v, q)? < eval_opt(ambient, q)? {
                return Ok(Divisibility::Drop { ambient: ambient.clone() });
            }
        }
        Ok(Divisibility::Search)
    }

    fn divides(&self, v: &ValuationDescriptor, q: &Poly, f: &Poly) -> Result<bool> {
        match self {
            Divisibility::Y { ambient } => y_divides(ambient, q, f),
            Divisibility::Drop { ambient } => Ok(v.eval(f)? < ambient.eval(f)?),
            Divisibility::Search => {
                let (quo, _) = f.euclid_divide(q)?;
                equivalent(v, f, &(&quo * q))
            }
        }
    }
}

/// (KP1), (KP2) and `ν(f) ≤ min{ν(aQ), ν(r)}` for `Q` over `v`.
pub fn check_mlv_key(v: &ValuationDescriptor, q: &Poly, s: &Sampler) -> Result<SuiteReport> {
    let n = require_monic(q)?;
    let ground = v.restrict_to_ground();
    let mut r = SuiteReport::new("mlv-key");
    let mut rng = s.rng();

    // KP2: no f below deg Q is equivalent to a multiple Qh.
    let small = enumerate_below(&ground, n, s.height_bound.min(2), BELOW_CAP);
    let hs: Vec<Poly> = enumerate_polys(&ground, 1, 1).into_iter().filter(|h| !h.is_zero()).collect();
    let kp2 = |r: &mut SuiteReport, f: &Poly, h: &Poly| -> Result<()> {
        let qh = q * h;
        let eq = match (eval_opt(v, f)?, eval_opt(v, &qh)?) {
            (Some(_), Some(_)) => equivalent(v, f, &qh)?,
            _ => {
                r.skip();
                return Ok(());
            }
        };
        r.check(!eq, || {
            FailureRecord::new(
                "KP2",
                &[("f", f.to_string()), ("h", h.to_string()), ("Q", q.to_string())],
                "f ~ Qh",
                "deg f >= deg Q",
            )
        });
        Ok(())
    };
    for f in &small {
        for h in &hs {
            kp2(&mut r, f, h)?;
        }
    }
    for _ in 0..s.trials {
        let f = s.random_below(&mut rng, &ground, n);
        let h = s.random_poly(&mut rng, &ground, s.degree_bound);
        if !h.is_zero() {
            kp2(&mut r, &f, &h)?;
        }
    }

    // KP1: Q |_v fg forces a one-sided divisor.
    let div = Divisibility::new(v, q)?;
    let x = Poly::x(ground.field());
    let mut pairs: Vec<(Poly, Poly)> = Vec::new();
    let mut roots = element_set(&ground, s.height_bound.min(4));
    for _ in 0..s.trials / 10 {
        roots.push(s.random_element(&mut rng, &ground));
    }
    for c in roots {
        let a = &x - &Poly::constant(c);
        let (b, _) = q.euclid_divide(&a)?;
        if !b.is_zero() {
            pairs.push((a, b));
        }
    }
    for _ in 0..s.trials {
        let f = s.random_poly(&mut rng, &ground, s.degree_bound);
        let g = s.random_poly(&mut rng, &ground, s.degree_bound);
        if !f.is_zero() && !g.is_zero() {
            pairs.push((f, g));
        }
    }
    for (f, g) in &pairs {
        let fg = f * g;
        if [f, g, &fg].iter().any(|p| matches!(v.eval(p), Err(Error::NotStabilized(_)))) {
            r.skip();
            continue;
        }
        if !div.divides(v, q, &fg)? {
            r.skip();
            continue;
        }
        let one_sided = div.divides(v, q, f)? || div.divides(v, q, g)?;
        r.check(one_sided, || {
            FailureRecord::new(
                "KP1",
                &[("f", f.to_string()), ("g", g.to_string()), ("Q", q.to_string())],
                "Q | fg",
                "no divisor of f or g within bound",
            )
        });
    }

    // ν(f) ≤ min(ν(aQ), ν(r)) on q-expansions f = aQ + r.
    for _ in 0..s.trials {
        let f = s.random_poly(&mut rng, &ground, s.degree_bound.max(n + 1));
        let (a, rem) = f.euclid_divide(q)?;
        let (Some(vf), Some(va), Some(vr)) = (eval_opt(v, &f)?, eval_opt(v, &(&a * q))?, eval_opt(v, &rem)?) else {
            r.skip();
            continue;
        };
        let floor = va.min(vr);
        r.check(vf <= floor, || {
            FailureRecord::new("nu(f) <= min(nu(aQ), nu(r))", &[("f", f.to_string())], &vf, &floor)
        });
    }
    Ok(r)
}

/// `compare_keys` on every ordered pair of verified chain keys, and agreement of
/// truncations along increasing `ε`.
pub fn check_key_relations(chain: &MacLaneChain, s: &Sampler) -> Result<SuiteReport> {
    let top = chain.top();
    let ground = chain.ground();
    let mut keys: Vec<Poly> = Vec::new();
    for k in chain.keys()? {
        let step = match k.source {
            KeySource::Step { step } => step,
            KeySource::PrefixMember { step, .. } => step,
        };
        if abstract_key_check(chain, step)?.is_verified() && !keys.contains(&k.key) {
            keys.push(k.key);
        }
    }
    let mut r = SuiteReport::new("key-relations");
    for a in &keys {
        for b in &keys {
            if a == b {
                continue;
            }
            let cmp = compare_keys(top, a, b)?;
            for c in cmp.checks.iter().filter(|c| c.applicable) {
                r.check(c.holds, || {
                    FailureRecord::new(&c.name, &[("Q", a.to_string()), ("Q'", b.to_string())], &c.direction, "holds")
                });
            }
        }
    }
    let mut eps = Vec::new();
    for k in &keys {
        eps.push((epsilon(top, k)?.epsilon, top.truncate(k.clone())?, k.clone()));
    }
    let mut polys = enumerate_polys(&ground, 2, 2);
    let mut rng = s.rng();
    for _ in 0..s.trials {
        polys.push(s.random_poly(&mut rng, &ground, s.degree_bound));
    }
    for f in polys.iter().filter(|f| !f.is_zero()) {
        let Some(vf) = eval_opt(top, f)? else {
            r.skip();
            continue;
        };
        let mut agrees = Vec::with_capacity(eps.len());
        for (_, tr, _) in &eps {
            agrees.push(eval_opt(tr, f)?.as_ref() == Some(&vf));
        }
        for (ia, (ea, _, qa)) in eps.iter().enumerate() {
            if !agrees[ia] {
                continue;
            }
            for (ib, (eb, _, qb)) in eps.iter().enumerate() {
                if ia != ib && ea <= eb {
                    r.check(agrees[ib], || {
                        FailureRecord::new(
                            "epsilon agreement",
                            &[("f", f.to_string()), ("Q", qa.to_string()), ("Q'", qb.to_string())],
                            "nu_Q(f) = nu(f)",
                            "nu_Q'(f) != nu(f)",
                        )
                    });
                }
            }
        }
    }
    Ok(r)
}

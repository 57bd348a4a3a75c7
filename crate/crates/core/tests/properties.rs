use proptest::prelude::*;
use valkey::graded::{equivalent, initial_form, multiply_initial_forms, same_form};
use valkey::ground::{ground_valuation, GroundElement, GroundFieldConfig, Value};
use valkey::harness::fixtures::{chain_padic2, chain_tadic_q, family_tadic_q};
use valkey::harness::Sampler;
use valkey::parse::parse_poly;
use valkey::poly::Poly;
use valkey::valuation::{MacLaneChain, ValuationDescriptor};

fn qt() -> GroundFieldConfig {
    GroundFieldConfig::tadic_rationals()
}

fn q2() -> GroundFieldConfig {
    GroundFieldConfig::padic(2).unwrap()
}

/// `c·t^e / (1 + k·t)`.
fn qt_element() -> impl Strategy<Value = GroundElement> {
    (-4i64..=4, 0i64..=3, 0i64..=2).prop_map(|(c, e, k)| {
        let field = qt().field();
        let t = field.t().unwrap();
        let den = field.one().add(&t.mul(&field.from_int(k)));
        field.monomial_in_t(c, e).unwrap().div(&den).unwrap()
    })
}

/// `n / d` with small `n`, `d`.
fn q2_element() -> impl Strategy<Value = GroundElement> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| {
        let field = q2().field();
        field.from_int(n).div(&field.from_int(d)).unwrap()
    })
}

fn poly_from(cfg: GroundFieldConfig, coeffs: Vec<GroundElement>) -> Poly {
    Poly::from_coeffs(cfg.field(), coeffs)
}

fn qt_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(qt_element(), 0..=max_deg + 1).prop_map(|cs| poly_from(qt(), cs))
}

fn q2_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(q2_element(), 0..=max_deg + 1).prop_map(|cs| poly_from(q2(), cs))
}

fn axioms(v: &ValuationDescriptor, f: &Poly, g: &Poly) -> Result<(), TestCaseError> {
    let (vf, vg) = (v.eval(f).unwrap(), v.eval(g).unwrap());
    prop_assert_eq!(v.eval(&(f * g)).unwrap(), &vf + &vg);
    let vs = v.eval(&(f + g)).unwrap();
    prop_assert!(vs >= vf.clone().min(vg.clone()));
    if vf != vg {
        prop_assert_eq!(vs, vf.min(vg));
    }
    Ok(())
}

fn monotone(chain: &MacLaneChain, f: &Poly) -> Result<(), TestCaseError> {
    let values: Vec<Value> = chain.steps().iter().map(|s| s.eval(f).unwrap()).collect();
    for w in values.windows(2) {
        prop_assert!(w[0] <= w[1], "{:?}", values);
    }
    Ok(())
}

fn dominated(chain: &MacLaneChain, f: &Poly) -> Result<(), TestCaseError> {
    let top = chain.top();
    let vf = top.eval(f).unwrap();
    for i in 0..chain.len() {
        let q = chain.key(i).unwrap();
        let vq = top.truncate(q.clone()).unwrap().eval(f).unwrap();
        prop_assert!(vq <= vf);
        if f.degree_or_zero() < q.degree_or_zero() {
            prop_assert_eq!(vq, vf.clone());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chain_tops_are_valuations_over_q_t(f in qt_poly(4), g in qt_poly(4)) {
        axioms(chain_tadic_q().top(), &f, &g)?;
    }

    #[test]
    fn chain_tops_are_valuations_over_q(f in q2_poly(4), g in q2_poly(4)) {
        axioms(chain_padic2().top(), &f, &g)?;
    }

    #[test]
    fn scaling_by_a_constant_adds_its_value(f in qt_poly(4), a in qt_element()) {
        let v = chain_tadic_q().top().clone();
        let scaled = &Poly::constant(a.clone()) * &f;
        let va = ground_valuation(&qt(), &a).unwrap();
        prop_assert_eq!(v.eval(&scaled).unwrap(), &va + &v.eval(&f).unwrap());
    }

    #[test]
    fn chain_steps_increase(f in qt_poly(5), g in q2_poly(5)) {
        monotone(&chain_tadic_q(), &f)?;
        monotone(&chain_padic2(), &g)?;
    }

    #[test]
    fn truncations_are_dominated(f in qt_poly(4), g in q2_poly(5)) {
        dominated(&chain_tadic_q(), &f)?;
        dominated(&chain_padic2(), &g)?;
    }

    #[test]
    fn initial_forms_multiply(f in qt_poly(3), g in qt_poly(3), step in 0usize..3) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let chain = chain_tadic_q();
        let top = chain.top();
        let q = chain.key(step).unwrap();
        let (inf, ing) = (initial_form(top, &q, &f).unwrap(), initial_form(top, &q, &g).unwrap());
        let prod = multiply_initial_forms(top, &q, &inf, &ing).unwrap();
        prop_assert!(!prod.is_zero());
        prop_assert!(same_form(top, &prod, &initial_form(top, &q, &(&f * &g)).unwrap()).unwrap());
    }

    #[test]
    fn equivalence_is_a_congruence(f in qt_poly(3), g in qt_poly(3), df in qt_poly(3), dg in qt_poly(3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let v = chain_tadic_q().top().clone();
        // Coefficients have nonnegative t-valuation, so ν(t^30·d) ≥ 30.
        prop_assume!(v.eval(&f).unwrap() < Value::from(30) && v.eval(&g).unwrap() < Value::from(30));
        let t30 = Poly::constant(qt().field().monomial_in_t(1, 30).unwrap());
        let lift = |h: &Poly, d: &Poly| h + &(&t30 * d);
        let (f2, g2) = (lift(&f, &df), lift(&g, &dg));
        prop_assert!(equivalent(&v, &f, &f2).unwrap());
        prop_assert!(equivalent(&v, &g, &g2).unwrap());
        prop_assert!(equivalent(&v, &(&f * &g), &(&f2 * &g2)).unwrap());
    }

    #[test]
    fn early_stop_is_sound(f in qt_poly(1)) {
        let short = family_tadic_q(4);
        let long = family_tadic_q(8);
        if let Ok(w) = short.nu_f(&f) {
            prop_assert_eq!(long.nu_f(&f).unwrap(), w);
        }
    }

    #[test]
    fn nu_f_is_multiplicative(f in qt_poly(1), g in qt_poly(1)) {
        let fam = family_tadic_q(6);
        if let (Ok(a), Ok(b), Ok(c)) = (fam.nu_f(&f), fam.nu_f(&g), fam.nu_f(&(&f * &g))) {
            prop_assert_eq!(c, &a + &b);
        }
    }

    #[test]
    fn descriptors_round_trip_through_json(
        g0 in 0i64..4,
        c in -3i64..=3,
        e in 1i64..4,
        bump in 1i64..5,
        f in qt_poly(3),
    ) {
        let field = qt().field();
        let base = ValuationDescriptor::monomial(qt(), Value::from(g0));
        let key = &Poly::x(field) - &Poly::constant(field.monomial_in_t(c, e).unwrap());
        let gamma = base.eval(&key).unwrap() + Value::from(bump);
        let v = base.augment(key.clone(), gamma).unwrap();
        let tr = v.truncate(key).unwrap();
        for d in [v, tr] {
            let back = ValuationDescriptor::from_json(&d.to_json()).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(back.eval(&f).unwrap(), d.eval(&f).unwrap());
        }
    }

    #[test]
    fn printed_polynomials_reparse(f in qt_poly(5), g in q2_poly(5)) {
        prop_assert_eq!(parse_poly(&qt(), &f.to_string()).unwrap(), f);
        prop_assert_eq!(parse_poly(&q2(), &g.to_string()).unwrap(), g);
    }

    #[test]
    fn sampler_streams_are_seeded(seed in any::<u64>()) {
        let s = Sampler::new(4, 3, 1, seed);
        let draw = || {
            let mut rng = s.rng();
            (0..5).map(|_| s.random_poly(&mut rng, &qt(), 4)).collect::<Vec<_>>()
        };
        prop_assert_eq!(draw(), draw());
    }
}

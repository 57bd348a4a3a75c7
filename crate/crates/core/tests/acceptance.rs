//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use valkey::family::{mlv_correspondence, Classification, FamilyPrefix, StabilizationResult};
use valkey::ground::{GroundFieldConfig, Value};
use valkey::harness::fixtures::{self, NamedChain};
use valkey::harness::{
    check_axioms, check_complete_set, check_graded, check_key_relations, check_lemma23, check_mlv_key, check_theorem1,
    enumerate_polys, Bounds, Sampler, SuiteReport,
};
use valkey::parse::parse_poly;
use valkey::poly::Poly;
use valkey::valuation::{leq_same_degree, MacLaneChain, ValuationDescriptor};

const SEED: u64 = 20_240_517;
/// Criterion 1 time limit.
const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
/// Criterion 2 time limit.
const AXIOMS_LIMIT: Duration = Duration::from_secs(120);
/// Random pairs per descriptor in criterion 2; degree ≤ 6, height ≤ 8.
const AXIOM_TRIALS: usize = 10_000;
/// Random instances per configuration or chain in criteria 3 to 5.
const SUITE_TRIALS: usize = 1_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: u32, title: &str, run: impl FnOnce() -> Outcome, limit: Option<Duration>) -> bool {
    let start = Instant::now();
    let mut out = run();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed >= limit {
            out.pass = false;
            out.detail.push_str(&format!("; exceeded {:.0?}", limit));
        }
    }
    let tag = if out.pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id}. {title}: {} ({:.2?})", out.detail, elapsed);
    out.pass
}

fn summarize(reports: &[(String, SuiteReport)]) -> Outcome {
    let checks: u64 = reports.iter().map(|(_, r)| r.checks).sum();
    let failing: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !r.pass)
        .map(|(name, r)| format!("{name}: {} failures, first {:?}", r.failure_count, r.failures.first()))
        .collect();
    let pass = failing.is_empty() && reports.iter().all(|(_, r)| r.checks > 0);
    let detail = if failing.is_empty() {
        format!("{} reports, {checks} checks, 0 failures", reports.len())
    } else {
        failing.join("; ")
    };
    Outcome { pass, detail }
}

fn qt() -> GroundFieldConfig {
    fixtures::tadic_q()
}

fn p(s: &str) -> Poly {
    parse_poly(&qt(), s).unwrap()
}

fn val(s: &str) -> Value {
    s.parse().unwrap()
}

fn criterion1() -> Outcome {
    let nu = ValuationDescriptor::monomial(qt(), val("1"));
    let (q1, q2) = (p("x - t"), p("x - t - t^2"));
    let nu1 = nu.augment(q1.clone(), val("3")).unwrap();
    let nu2 = nu.augment(q2.clone(), val("4")).unwrap();
    let a = nu2.eval(&q1).unwrap();
    let b = nu1.eval(&q1).unwrap();
    let c = nu.eval(&(&q2 - &q1)).unwrap();
    let leq = leq_same_degree(&nu, &q1, &val("3"), &q2, &val("4")).unwrap();
    Outcome {
        pass: a == val("2") && b == val("3") && c == val("2") && !leq,
        detail: format!("nu2(Q1) = {a}, nu1(Q1) = {b}, nu(Q2 - Q1) = {c}, leq_same_degree = {leq}"),
    }
}

fn criterion2() -> Outcome {
    let s = Sampler::new(6, 8, AXIOM_TRIALS, SEED);
    let mut reports = Vec::new();
    for (ground, classes) in fixtures::descriptor_classes() {
        for (class, v) in classes {
            let r = check_axioms(&v, &s).unwrap();
            let expectation_ok = r.expectation.is_none();
            let mut r = r;
            r.pass &= expectation_ok;
            reports.push((format!("{ground} {class}"), r));
        }
    }
    summarize(&reports)
}

fn criterion3() -> Outcome {
    let s = Sampler::new(6, 8, SUITE_TRIALS, SEED);
    let mut reports = Vec::new();
    for cfg in fixtures::extension_configs() {
        let mut r = check_theorem1(&cfg.base, &cfg.q, &cfg.gamma, &s).unwrap();
        r.pass &= r.hypothesis_violations.is_empty();
        reports.push((cfg.name.to_string(), r));
    }
    let mut out = summarize(&reports);
    let bad = fixtures::violating_extension_config();
    let r = check_theorem1(&bad.base, &bad.q, &bad.gamma, &s).unwrap();
    let witness = r.hypothesis_violations.iter().find(|w| w.relation == "(ii)");
    out.pass &= witness.is_some() && r.checks == 0;
    out.detail.push_str(&format!(
        "; violating configuration: {} witnesses, first {:?}",
        r.hypothesis_violations.len(),
        witness.map(|w| &w.inputs)
    ));
    out
}

fn criterion4() -> Outcome {
    let s = Sampler::new(4, 3, SUITE_TRIALS, SEED);
    let bounds = Bounds { degree: 4, height: 3 };
    let mut compared = 0;
    let mut failures = Vec::new();
    for NamedChain { name, chain } in fixtures::standard_chains() {
        for i in 0..chain.len() - 1 {
            let r = mlv_correspondence(&chain, i, bounds, &s).unwrap();
            compared += r.compared;
            if !r.pass || r.compared < 1000 {
                failures.push(format!(
                    "{name} step {i}: {} mismatches, {} unstabilized, key evidence pass = {}",
                    r.mismatches.len(),
                    r.not_stabilized.len(),
                    r.key_evidence.pass
                ));
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("3 chains, {compared} polynomials compared, 0 mismatches")
        } else {
            failures.join("; ")
        },
    }
}

fn per_step(
    suite: impl Fn(&MacLaneChain, usize, &Sampler) -> valkey::Result<SuiteReport>,
    s: &Sampler,
) -> Vec<(String, SuiteReport)> {
    let mut out = Vec::new();
    for NamedChain { name, chain } in fixtures::standard_chains() {
        for i in 0..chain.len() {
            out.push((format!("{name} step {i}"), suite(&chain, i, s).unwrap()));
        }
    }
    out
}

fn criterion5() -> Outcome {
    let s = Sampler::new(4, 3, SUITE_TRIALS, SEED);
    summarize(&per_step(check_graded, &s))
}

fn criterion6() -> Outcome {
    let s = Sampler::new(6, 8, AXIOM_TRIALS, SEED);
    let mut reports = per_step(check_lemma23, &s);
    for NamedChain { name, chain } in fixtures::standard_chains() {
        reports.push((format!("{name} key relations"), check_key_relations(&chain, &s).unwrap()));
        reports.push((format!("{name} complete set"), check_complete_set(&chain, &s).unwrap()));
    }
    summarize(&reports)
}

fn agree(short: &StabilizationResult, long: &StabilizationResult, short_len: usize) -> bool {
    match (short, long) {
        (
            StabilizationResult::Stabilized { value: a, first_index: i },
            StabilizationResult::Stabilized { value: b, first_index: j },
        ) => a == b && i == j,
        (StabilizationResult::IncreasingThroughPrefix { .. }, StabilizationResult::Stabilized { first_index, .. }) => {
            *first_index >= short_len
        }
        (StabilizationResult::IncreasingThroughPrefix { .. }, StabilizationResult::IncreasingThroughPrefix { .. }) => {
            true
        }
        _ => false,
    }
}

fn criterion7() -> Outcome {
    let s = Sampler::new(3, 3, SUITE_TRIALS, SEED);
    let long: Vec<FamilyPrefix> =
        vec![fixtures::family_tadic_q(10), fixtures::family_padic2(10), fixtures::family_tadic_gf2(10)];
    let mut failures = Vec::new();
    let (mut compared, mut products, mut unbounded) = (0, 0, 0);
    for (fam, long) in fixtures::standard_families(5).into_iter().zip(long) {
        let prefix = &fam.prefix;
        let ground = prefix.base().restrict_to_ground();
        for f in enumerate_polys(&ground, 3, 2).iter().filter(|f| !f.is_zero()) {
            let a = prefix.stabilize(f).unwrap();
            let b = long.stabilize(f).unwrap();
            compared += 1;
            if !agree(&a, &b, prefix.len()) {
                failures.push(format!("{}: {f}: {a:?} vs {b:?}", fam.name));
            }
        }
        let mut rng = s.rng();
        let mut samples: Vec<Poly> = vec![fam.limit_key.clone()];
        samples.extend(prefix.members().iter().map(|m| m.key.clone()));
        for _ in 0..s.trials {
            let f = s.random_poly(&mut rng, &ground, s.degree_bound);
            if !f.is_zero() {
                samples.push(f);
            }
        }
        for (k, f) in samples.iter().enumerate() {
            let g = &samples[(k * 7 + 3) % samples.len()];
            let fg = f * g;
            products += 1;
            if let (Ok(a), Ok(b), Ok(c)) = (prefix.nu_f(f), prefix.nu_f(g), prefix.nu_f(&fg)) {
                if c != &a + &b {
                    failures.push(format!("{}: nu_F({f} * {g}) = {c}, sum {}", fam.name, &a + &b));
                }
            }
            let cf = prefix.classify(f).unwrap();
            let cg = prefix.classify(g).unwrap();
            let cfg = prefix.classify(&fg).unwrap();
            if cfg.is_presumed_unbounded() {
                unbounded += 1;
                if !cf.is_presumed_unbounded() && !cg.is_presumed_unbounded() {
                    failures.push(format!("{}: {f} * {g} increasing, factors stable", fam.name));
                }
            }
            if let Classification::Stable { .. } = cfg {
                if cf.is_presumed_unbounded() || cg.is_presumed_unbounded() {
                    failures.push(format!("{}: {f} * {g} stable with an increasing factor", fam.name));
                }
            }
        }
    }
    Outcome {
        pass: failures.is_empty() && unbounded > 0,
        detail: if failures.is_empty() {
            format!("3 families, {compared} early-stop comparisons, {products} products ({unbounded} increasing), 0 failures")
        } else {
            format!("{} failures, first {}", failures.len(), failures[0])
        },
    }
}

fn criterion8() -> Outcome {
    let s = Sampler::new(4, 4, 200, SEED);
    let chain = fixtures::chain_padic2();
    let runs = |_: ()| -> Vec<String> {
        vec![
            check_axioms(chain.top(), &s).unwrap().to_json(),
            check_graded(&chain, 1, &s).unwrap().to_json(),
            check_lemma23(&chain, 2, &s).unwrap().to_json(),
            check_complete_set(&chain, &s).unwrap().to_json(),
            check_key_relations(&chain, &s).unwrap().to_json(),
            check_mlv_key(&chain.truncation_at(1).unwrap(), &chain.key(2).unwrap(), &s).unwrap().to_json(),
            {
                let cfg = &fixtures::extension_configs()[2];
                check_theorem1(&cfg.base, &cfg.q, &cfg.gamma, &s).unwrap().to_json()
            },
        ]
    };
    let (a, b) = (runs(()), runs(()));
    let identical = a == b;
    Outcome { pass: identical, detail: format!("{} suites rerun, byte-identical = {identical}", a.len()) }
}

fn main() -> ExitCode {
    println!("acceptance run, seed {SEED}");
    let results = [
        report(1, "worked example", criterion1, Some(EXAMPLE_LIMIT)),
        report(2, "valuation axioms", criterion2, Some(AXIOMS_LIMIT)),
        report(3, "min-formula extension criterion", criterion3, None),
        report(4, "truncation and augmentation correspondence", criterion4, None),
        report(5, "graded algebra", criterion5, None),
        report(6, "key polynomials", criterion6, None),
        report(7, "stabilization", criterion7, None),
        report(8, "determinism", criterion8, None),
    ];
    let passed = results.iter().filter(|b| **b).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

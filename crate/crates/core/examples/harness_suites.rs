//! Property suites over the standard chains, with a failing truncation for
//! contrast.
//!
//! Run with `cargo run --release --example harness_suites`.

use valkey::harness::fixtures::{chain_tadic_q, violating_extension_config};
use valkey::harness::{check_axioms, check_graded, check_lemma23, check_mlv_key, check_theorem1, Sampler, SuiteReport};
use valkey::parse::parse_poly;

fn show(r: &SuiteReport) {
    println!("{:<12} checks {:>6}  failures {:>3}  pass {}", r.suite, r.checks, r.failure_count, r.pass);
    if let Some(e) = &r.expectation {
        println!("             {e}");
    }
    for w in r.failures.iter().chain(&r.hypothesis_violations).take(2) {
        println!("             {} {:?}: {} vs {}", w.relation, w.inputs, w.lhs, w.rhs);
    }
}

fn main() -> valkey::Result<()> {
    let s = Sampler::new(4, 3, 200, 42);
    let chain = chain_tadic_q();
    show(&check_axioms(chain.top(), &s)?);
    show(&check_lemma23(&chain, 2, &s)?);
    show(&check_graded(&chain, 1, &s)?);

    let c = violating_extension_config();
    show(&check_theorem1(&c.base, &c.q, &c.gamma, &s)?);

    let k = chain.ground();
    let tr = chain.top().truncate(parse_poly(&k, "(x - t)*(x + 1)")?)?;
    show(&check_axioms(&tr, &s)?);
    show(&check_mlv_key(chain.valuation(0)?, &parse_poly(&k, "(x - t)*(x - 2*t)")?, &s)?);
    Ok(())
}

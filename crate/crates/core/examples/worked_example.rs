//! Two augmentations of `[ν_t; x ↦ 1]` over `Q(t)` that are not comparable.
//!
//! Run with `cargo run --example worked_example`.

use valkey::ground::{GroundFieldConfig, Value};
use valkey::parse::parse_poly;
use valkey::valuation::{check_same_degree_comparison, leq_same_degree, ValuationDescriptor};

fn main() -> valkey::Result<()> {
    let k = GroundFieldConfig::tadic_rationals();
    let nu = ValuationDescriptor::monomial(k, Value::from(1));
    let q1 = parse_poly(&k, "x - t")?;
    let q2 = parse_poly(&k, "x - t - t^2")?;
    let nu1 = nu.augment(q1.clone(), Value::from(3))?;
    let nu2 = nu.augment(q2.clone(), Value::from(4))?;

    println!("nu1 = {nu1}");
    println!("nu2 = {nu2}");
    println!("nu1(Q1)      = {}", nu1.eval(&q1)?);
    println!("nu2(Q1)      = {}", nu2.eval(&q1)?);
    println!("nu(Q2 - Q1)  = {}", nu.eval(&(&q2 - &q1))?);
    println!("nu1 <= nu2 ? {}", leq_same_degree(&nu, &q1, &Value::from(3), &q2, &Value::from(4))?);

    let report = check_same_degree_comparison(&nu, &q1, &Value::from(3), &q2, &Value::from(4))?;
    println!("comparison: {:?}", report.status);
    for reason in &report.hypothesis_failures {
        println!("  {reason}");
    }
    Ok(())
}

//! Stabilization, classification and the limit valuation of a family prefix.
//!
//! Run with `cargo run --example families`.

use valkey::family::limit_check;
use valkey::harness::fixtures::standard_families;
use valkey::harness::{enumerate_polys, Sampler};
use valkey::parse::parse_poly;
use valkey::valuation::ValuationDescriptor;

fn json(c: &impl serde::Serialize) -> String {
    serde_json::to_string(c).expect("serializable")
}

fn main() -> valkey::Result<()> {
    for family in standard_families(6) {
        let k = family.prefix.base().restrict_to_ground();
        println!("{} (degree {}, {} members)", family.name, family.prefix.degree(), family.prefix.len());
        for text in ["x", "x + 1", "x^2 + t"] {
            let Ok(f) = parse_poly(&k, text) else { continue };
            println!("  {text}: {}", json(&family.prefix.classify(&f)?));
        }
        println!("  limit key {}: {}", family.limit_key, json(&family.prefix.classify(&family.limit_key)?));

        let samples: Vec<_> = enumerate_polys(&k, family.prefix.degree().saturating_sub(1), 2);
        let gamma = family.prefix.members().last().unwrap().gamma.clone() + valkey::ground::Value::from(1);
        let evidence = limit_check(&family.prefix, &family.limit_key, &gamma, &samples)?;
        println!("  limit check at gamma = {gamma}: pass = {}", evidence.pass);

        let limit = ValuationDescriptor::limit_augmented(family.prefix.clone(), family.limit_key.clone(), gamma)?;
        let s = Sampler::new(3, 2, 3, 1);
        let mut rng = s.rng();
        for _ in 0..3 {
            let f = s.random_poly(&mut rng, &k, family.prefix.degree() + 1);
            match limit.eval(&f) {
                Ok(v) => println!("  nu({f}) = {v}"),
                Err(e) => println!("  nu({f}): {e}"),
            }
        }
    }
    Ok(())
}

//! Euclidean division, `q`-adic expansions and Hasse derivatives.
//!
//! Run with `cargo run --example expansions`.

use valkey::ground::GroundFieldConfig;
use valkey::parse::parse_poly;

fn main() -> valkey::Result<()> {
    let k = GroundFieldConfig::tadic_rationals();
    let f = parse_poly(&k, "x^5 + t*x^2 - 1/(1 - t)")?;
    let q = parse_poly(&k, "x^2 - t")?;

    let (quo, rem) = f.euclid_divide(&q)?;
    println!("f = ({quo})*({q}) + ({rem})");

    let expansion = f.q_expansion(&q)?;
    for (i, part) in expansion.parts.iter().enumerate() {
        println!("  f_{i} = {part}");
    }
    assert_eq!(expansion.reconstruct(), f);

    for k in 0..=5 {
        println!("  d_{k} f = {}", f.hasse_derivative(k));
    }
    Ok(())
}

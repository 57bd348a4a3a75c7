//! Elements and valuations of the supported ground fields.
//!
//! Run with `cargo run --example ground_fields`.

use valkey::ground::{ground_valuation, CoefficientField, GroundFieldConfig};
use valkey::parse::parse_element;

fn main() -> valkey::Result<()> {
    let fields = [
        (GroundFieldConfig::padic(2)?, vec!["12", "3/8", "-5/6"]),
        (GroundFieldConfig::padic(5)?, vec!["50", "1/25", "7"]),
        (GroundFieldConfig::tadic_rationals(), vec!["t^3 + t^4", "1/(t^2 - t^3)", "2 + t"]),
        (GroundFieldConfig::tadic(CoefficientField::PrimeField(3))?, vec!["t^2*(1 + t)", "3*t + 1", "1/t"]),
    ];
    for (cfg, elements) in fields {
        println!("{cfg}");
        for text in elements {
            let a = parse_element(&cfg, text)?;
            println!("  v({a}) = {}", ground_valuation(&cfg, &a)?);
        }
    }
    Ok(())
}

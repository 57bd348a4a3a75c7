//! Drives the command-line interface in process and re-parses its output.
//!
//! Run with `cargo run --example cli_roundtrip`.

use valkey::cli::run;
use valkey::ground::GroundFieldConfig;
use valkey::parse::parse_poly;

fn call(args: &[&str]) -> serde_json::Value {
    let mut argv = vec!["valkey".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let out = run(argv);
    println!("$ valkey {}\n{} (exit {})", args.join(" "), out.stdout, out.status);
    serde_json::from_str(&out.stdout).expect("one JSON document")
}

fn main() {
    let chain = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/nu2_chain.json");
    let short = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/short_limit.json");
    call(&["eval", "-d", chain, "-f", "x - t"]);
    let doc = call(&["expand", "-q", "x - t", "-f", "x^2 + 1"]);
    let k = GroundFieldConfig::tadic_rationals();
    for part in doc["parts"].as_array().unwrap() {
        let p = parse_poly(&k, part.as_str().unwrap()).unwrap();
        println!("re-parsed part: {p}");
    }
    call(&["check", "axioms", "-d", chain, "--trials", "50", "--seed", "7"]);
    call(&["eval", "-d", short, "-f", "x - t - t^3"]);
    call(&["eval", "-d", chain, "-f", "x +* t"]);
}

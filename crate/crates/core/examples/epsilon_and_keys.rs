//! `ε`, `α`, `Ψ`, key verification and key comparisons along a chain.
//!
//! Run with `cargo run --example epsilon_and_keys`.

use valkey::harness::fixtures::chain_tadic_q;
use valkey::keypoly::{abstract_key_check, alpha, compare_keys, epsilon, psi_member};

fn main() -> valkey::Result<()> {
    let chain = chain_tadic_q();
    let top = chain.top();
    println!("chain: {top}");
    for i in 0..chain.len() {
        let q = chain.key(i)?;
        let eps = epsilon(top, &q)?;
        let a = alpha(&chain, i)?.map_or("inf".to_string(), |d| d.to_string());
        println!("step {i}: Q = {q}");
        println!("  eps(Q) = {} attained at k in {:?}", eps.epsilon, eps.argmax);
        println!("  alpha(Q) = {a}");
        println!("  verdict: {:?}", abstract_key_check(&chain, i)?);
        if i + 1 < chain.len() {
            println!("  next key in Psi(Q): {}", psi_member(&chain, i, &chain.key(i + 1)?)?);
        }
    }
    let cmp = compare_keys(top, &chain.key(1)?, &chain.key(2)?)?;
    println!("compare {} with {}: pass = {}", chain.key(1)?, chain.key(2)?, cmp.pass);
    for c in cmp.checks.iter().filter(|c| c.applicable) {
        println!("  {}: {} ({})", c.name, c.holds, c.direction);
    }
    Ok(())
}

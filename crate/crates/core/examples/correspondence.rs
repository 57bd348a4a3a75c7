//! Truncations at consecutive chain keys against the augmented valuations
//! they should equal.
//!
//! Run with `cargo run --release --example correspondence`.

use valkey::family::mlv_correspondence;
use valkey::harness::fixtures::{limit_chain, standard_chains};
use valkey::harness::{Bounds, Sampler};

fn main() -> valkey::Result<()> {
    let bounds = Bounds { degree: 3, height: 2 };
    let sampler = Sampler::new(4, 3, 100, 7);
    let mut chains: Vec<_> = standard_chains().into_iter().map(|c| (c.name, c.chain)).collect();
    chains.push(("limit", limit_chain()));
    for (name, chain) in chains {
        for i in 0..chain.len() - 1 {
            let r = mlv_correspondence(&chain, i, bounds, &sampler)?;
            println!(
                "{name} step {i} ({}): {} vs [{}; {} -> {}] compared {} pass = {}",
                r.case, r.key, r.key, r.next_key, r.next_key_value, r.compared, r.pass
            );
        }
    }
    Ok(())
}

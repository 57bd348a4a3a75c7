//! Initial forms in the graded algebra of a truncation, and the
//! divisibility predicates built on them.
//!
//! Run with `cargo run --example initial_forms`.

use valkey::graded::{equivalent, initial_form, inq_prime_divides, multiply_initial_forms, same_form, y_divides};
use valkey::harness::fixtures::chain_tadic_q;
use valkey::parse::parse_poly;

fn main() -> valkey::Result<()> {
    let chain = chain_tadic_q();
    let top = chain.top();
    let k = chain.ground();
    let q = chain.key(1)?;
    let q_next = chain.key(2)?;
    let f = parse_poly(&k, "x^2 + t*x")?;
    let g = parse_poly(&k, "x - t + t^3")?;

    let (inf, ing) = (initial_form(top, &q, &f)?, initial_form(top, &q, &g)?);
    println!("in_Q(f): value {}, support {:?}", inf.value, inf.support);
    println!("in_Q(g): value {}, support {:?}", ing.value, ing.support);
    let prod = multiply_initial_forms(top, &q, &inf, &ing)?;
    let direct = initial_form(top, &q, &(&f * &g))?;
    println!("in(f)in(g) = in(fg): {}", same_form(top, &prod, &direct)?);

    println!("y | in_Q(g): {}", y_divides(top, &q, &g)?);
    println!("in_Q(Q') | in_Q(Q'*g): {}", inq_prime_divides(&chain, 1, &q_next, &(&q_next * &g))?);
    println!("in_Q(Q') | in_Q(f): {}", inq_prime_divides(&chain, 1, &q_next, &f)?);

    let g2 = &g + &parse_poly(&k, "t^9")?;
    println!("g ~ g + t^9: {}", equivalent(top, &g, &g2)?);
    Ok(())
}

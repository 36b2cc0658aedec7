//! n = P*Q with P = 1 mod M(x), Q = -1 mod M(x), both prime, and its checked chain.
//!
//!     cargo run --release --example extremal_witness -- 25

use phipsi::witness::{construct_witness, WitnessConfig, WitnessMode};

fn main() -> phipsi::Result<()> {
    let x: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let w = construct_witness(x, WitnessMode::Exact, &WitnessConfig::default())?;
    println!("M({x}) = {}", w.m.value());
    println!("P = {} (k={}), Q = {} (k={})", w.p, w.k_p, w.q, w.k_q);
    println!("n = {}", w.n);
    println!("psi(P-1)/(P-1) = {} >= {}", w.lhs_34, w.rhs_34);
    println!("phi(Q+1)/(Q+1) = {} <= {}", w.lhs_36, w.rhs_36);
    if let Some(i) = &w.i_value {
        println!("I(n) = {} ~ {:.6}", i, i.to_f64());
    }
    println!("mode={} all checks hold: {}", w.mode, w.checks.all_hold());
    Ok(())
}

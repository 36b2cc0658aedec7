//! Membership of n in the sets A, B and D1..D3 for a fixed x.

use phipsi::experiments::{classify_d, h_stat, in_set_a, in_set_b, HKind};
use phipsi::FactorContext;

fn main() -> phipsi::Result<()> {
    let x = 1_000_000;
    let ctx = FactorContext::new(x)?;
    let t = (x as f64).ln().ln();
    for n in [1_024u64, 510_510, 700_000, 999_983] {
        let d = classify_d(n, x, &ctx)?;
        println!(
            "n={n:<7} A={} B={} D1={} D2={} D3={} h_phi={:.4} h_psi={:.4}",
            in_set_a(n, x, 1.0, &ctx)?,
            in_set_b(n, x, &ctx)?,
            d.in_d1,
            d.in_d2,
            d.in_d3,
            h_stat(n, HKind::Phi, t, &ctx)?.to_f64(),
            h_stat(n, HKind::Psi, t, &ctx)?.to_f64(),
        );
    }
    Ok(())
}

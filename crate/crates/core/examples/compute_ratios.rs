//! I(n) and K(n) for a handful of n, exactly and as floats.
//!
//!     cargo run --example compute_ratios -- 3599 720720

use phipsi::FactorContext;

fn main() -> phipsi::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ns = if args.is_empty() { vec![1, 2, 3599, 30030, 720720] } else { args };
    let ctx = FactorContext::without_table();
    for n in ns {
        let c = ctx.compositions(n)?;
        println!(
            "n={n:<10} phi={} psi={} I={} ({:.6}) K={} ({:.6})",
            c.phi_n.value(),
            c.psi_n.value(),
            c.i(),
            c.i().to_f64(),
            c.k(),
            c.k().to_f64()
        );
    }
    Ok(())
}

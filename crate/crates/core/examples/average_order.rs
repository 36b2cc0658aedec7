//! Deterministic sweep with checkpoints; prints the summary CSV and diagnostics.
//!
//!     cargo run --release --example average_order -- 1000000

use phipsi::experiments::{sweep_report, SweepConfig};

fn main() -> phipsi::Result<()> {
    let x: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let checkpoints: Vec<u64> = [1_000, 10_000, 100_000, 1_000_000]
        .into_iter()
        .filter(|&c| c < x)
        .chain([x])
        .collect();
    let report = sweep_report(x, &checkpoints, &SweepConfig::default())?;
    print!("{}", report.to_csv());
    let d = &report.diagnostics;
    println!("c0({}) = {:.10}", d.c0_cutoff, d.c0);
    for e in &d.extremes {
        println!("{:<16} min {:.6} at {:<8} max {:.6} at {}", e.name, e.min, e.argmin, e.max, e.argmax);
    }
    println!("|B| = {:?}, |D1|,|D2|,|D3| = {:?},{:?},{:?}", d.count_in_b, d.count_in_d1, d.count_in_d2, d.count_in_d3);
    Ok(())
}

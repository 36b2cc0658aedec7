//! Histogram of I and K normalized by L (log3)^2, over sqrt(x) < n <= x.

use phipsi::experiments::{density_histogram, SweepConfig};

fn main() -> phipsi::Result<()> {
    let x: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let h = density_histogram(x, &SweepConfig::default())?;
    println!("# {} samples", h.samples);
    print!("{}", h.to_csv());
    Ok(())
}

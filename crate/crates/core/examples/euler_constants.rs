//! gamma, (6/pi^2) e^{2 gamma} and the product c0 at growing cutoffs.

use phipsi::constants::{c0, euler_gamma, leading_constant, six_over_pi_squared};

fn main() -> phipsi::Result<()> {
    println!("gamma        = {:.16}", euler_gamma());
    println!("6/pi^2       = {:.16}", six_over_pi_squared());
    println!("leading L    = {:.16}", leading_constant());
    for cutoff in [1_000, 100_000, 10_000_000] {
        let c = c0(cutoff)?;
        let (lo, hi) = c.interval();
        println!("c0({cutoff:>8}) = {:.12}  in [{lo:.12}, {hi:.12}]", c.value);
    }
    Ok(())
}

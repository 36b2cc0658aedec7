//! Partial products over p <= x of (1 - 1/p)^{-1} and (1 + 1/p) against their predictions.

use phipsi::constants::{mertens_minus, mertens_plus, six_over_pi_squared};

fn main() -> phipsi::Result<()> {
    for x in [1_000u64, 100_000, 1_000_000] {
        let m = mertens_minus(x)?;
        let p = mertens_plus(x)?;
        println!(
            "x={x:>8}  minus={:.8} ratio={:.6}  plus={:.8} ratio={:.6}  product/(6/pi^2)={:.8}",
            m.product.value,
            m.ratio(),
            p.product.value,
            p.ratio(),
            m.product.value * p.product.value / six_over_pi_squared()
        );
    }
    Ok(())
}

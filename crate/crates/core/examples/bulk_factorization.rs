//! Segmented smallest-prime-factor table and factorizations from it.

use phipsi::sieve::{primes_in, SpfTable};

fn main() -> phipsi::Result<()> {
    let table = SpfTable::build_segmented(2, 1_000_001, 1 << 16, u64::MAX)?;
    for n in [360, 999_983, 1_000_000] {
        let f = table.factorize(n)?;
        println!("{n} = {:?}  omega={}", f.to_u64_pairs().unwrap(), f.omega());
    }
    let pi = primes_in(2, 1_000_001).count();
    println!("pi(1e6) = {pi}");
    Ok(())
}

//! S(x, m) = sum of 1/q over primes q <= x with m | q + 1, and the least such primes.

use phipsi::experiments::prog_recip_sum;
use phipsi::witness::{least_prime_in_progression, DEFAULT_ROUNDS};
use num_bigint::BigUint;

fn main() -> phipsi::Result<()> {
    for m in [3u64, 4, 12, 60] {
        let s = prog_recip_sum(10_000_000, m)?;
        let q = least_prime_in_progression(&BigUint::from(m), &BigUint::from(m - 1), DEFAULT_ROUNDS)?;
        println!("m={m:<3} S={:.8} normalized={:.6} least q={}", s.sum, s.normalized, q.prime);
    }
    Ok(())
}

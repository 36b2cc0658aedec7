//! phi(n)/psi(n) = sum over d | n of a_d, with a_d = mu^2(d) prod_{p|d} -2/(p+1).

use phipsi::arith::{coefficient_divisor_sum, dirichlet_coeff, divisors, phi, psi};
use phipsi::{ExactRatio, FactorContext, SignedExactRatio};

fn main() -> phipsi::Result<()> {
    let ctx = FactorContext::new(1000)?;
    let f = ctx.factor(60);
    for d in divisors(&f) {
        println!("a_{:<3} = {}", d.value(), dirichlet_coeff(&d));
    }
    let sum = coefficient_divisor_sum(&f);
    let want = SignedExactRatio::from(ExactRatio::new(phi(&f), psi(&f))?);
    println!("sum = {sum}, phi/psi = {want}, equal: {}", sum == want);
    let bad = (1..=1000).filter(|&n| {
        let f = ctx.factor(n);
        coefficient_divisor_sum(&f) != SignedExactRatio::from(ExactRatio::new(phi(&f), psi(&f)).unwrap())
    });
    println!("mismatches for n <= 1000: {}", bad.count());
    Ok(())
}

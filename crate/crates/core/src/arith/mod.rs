//! Exact φ, ψ, their compositions, `I(n)`, `K(n)`, `ω(n)` and the Dirichlet
//! coefficients `a_d` with `φ(n)/ψ(n) = Σ_{d|n} a_d`.
//!
//! Composed values are never obtained by factoring `φ(n)` or `ψ(n)` from
//! scratch. Instead the factorization of `φ(n) = ∏ p^{a−1}(p−1)` is assembled
//! from the factorizations of the shifted primes `p − 1` (and `p + 1` for ψ),
//! all of which are at most `n + 1`.

mod context;
mod ratio;

use std::collections::HashMap;

use num_bigint::{BigUint, Sign};
use num_traits::One;

pub use context::{Compositions, FactorContext};
pub use ratio::{ExactRatio, SignedExactRatio};
pub(crate) use ratio::ratio_to_f64;

use crate::error::{Error, Result};
use crate::sieve::Factorization;

/// Factorizations of `p ∓ 1`, keyed by the prime `p`.
pub type ShiftedFactors = HashMap<BigUint, Factorization>;

/// Euler's totient `∏ p^{a−1}(p − 1)`.
pub fn phi(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .fold(BigUint::one(), |acc, (p, a)| acc * p.pow(a - 1) * (p - 1u32))
}

/// Dedekind's `ψ = ∏ p^{a−1}(p + 1)`.
pub fn psi(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .fold(BigUint::one(), |acc, (p, a)| acc * p.pow(a - 1) * (p + 1u32))
}

/// Factorization of `φ(n)` from that of `n` and of every `p − 1`, `p | n`.
pub fn phi_factored(f: &Factorization, shifted_down: &ShiftedFactors) -> Result<Factorization> {
    merge_shifted(f, shifted_down, "p - 1")
}

/// Factorization of `ψ(n)` from that of `n` and of every `p + 1`, `p | n`.
pub fn psi_factored(f: &Factorization, shifted_up: &ShiftedFactors) -> Result<Factorization> {
    merge_shifted(f, shifted_up, "p + 1")
}

fn merge_shifted(f: &Factorization, shifted: &ShiftedFactors, what: &str) -> Result<Factorization> {
    let mut acc = Factorization::from_unsorted(
        f.factors()
            .iter()
            .filter(|(_, a)| *a > 1)
            .map(|(p, a)| (p.clone(), a - 1)),
    );
    for p in f.primes() {
        let s = shifted
            .get(p)
            .ok_or_else(|| Error::argument(format!("missing factorization of {what} for p = {p}")))?;
        acc = acc.mul(s);
    }
    Ok(acc)
}

/// `ψ(m)/φ(m) = ∏_{p|m} (p+1)/(p−1)` for a known factorization of `m`.
pub fn psi_over_phi(f: &Factorization) -> ExactRatio {
    f.primes()
        .map(|p| ExactRatio::new(p + 1u32, p - 1u32).expect("p ≥ 2"))
        .product()
}

/// `φ(m)/m = ∏_{p|m} (1 − 1/p)`.
pub fn phi_over_identity(f: &Factorization) -> ExactRatio {
    f.primes()
        .map(|p| ExactRatio::new(p - 1u32, p.clone()).expect("p ≥ 2"))
        .product()
}

/// `ψ(m)/m = ∏_{p|m} (1 + 1/p)`.
pub fn psi_over_identity(f: &Factorization) -> ExactRatio {
    f.primes()
        .map(|p| ExactRatio::new(p + 1u32, p.clone()).expect("p ≥ 2"))
        .product()
}

/// `I(n) = ψ(φ(n)) / φ(ψ(n))`.
pub fn ratio_i(n: u64, ctx: &FactorContext) -> Result<ExactRatio> {
    Ok(ctx.compositions(n)?.i())
}

/// `K(n) = ψ(φ(n)) / φ(φ(n)) = ∏_{p|φ(n)} (p+1)/(p−1)`.
pub fn ratio_k(n: u64, ctx: &FactorContext) -> Result<ExactRatio> {
    Ok(ctx.compositions(n)?.k())
}

/// Number of distinct prime factors.
pub fn omega(f: &Factorization) -> usize {
    f.omega()
}

/// `a_d = μ²(d) ∏_{p|d} −2/(p+1)`.
pub fn dirichlet_coeff(d: &Factorization) -> SignedExactRatio {
    if !d.is_squarefree() {
        return SignedExactRatio::zero();
    }
    let magnitude: ExactRatio = d
        .primes()
        .map(|p| ExactRatio::new(2u32, p + 1u32).expect("p ≥ 2"))
        .product();
    let sign = if d.omega() % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    SignedExactRatio::from_parts(sign, &magnitude)
}

/// Every divisor of the number with factorization `f`, in no particular order.
pub fn divisors(f: &Factorization) -> Vec<Factorization> {
    let mut out = vec![Factorization::one()];
    for (p, a) in f.factors() {
        let mut next = Vec::with_capacity(out.len() * (*a as usize + 1));
        for d in &out {
            next.push(d.clone());
            for e in 1..=*a {
                let pe = Factorization::from_factors(vec![(p.clone(), e)]).expect("prime power");
                next.push(d.mul(&pe));
            }
        }
        out = next;
    }
    out
}

/// `Σ_{d|n} a_d`, which equals `φ(n)/ψ(n)`.
pub fn coefficient_divisor_sum(f: &Factorization) -> SignedExactRatio {
    divisors(f).iter().map(dirichlet_coeff).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(pairs: &[(u64, u32)]) -> Factorization {
        Factorization::from_u64_pairs(pairs)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn phi_psi_examples() {
        assert_eq!(phi(&Factorization::one()), big(1));
        assert_eq!(psi(&Factorization::one()), big(1));
        assert_eq!(phi(&fac(&[(2, 2), (3, 1)])), big(4));
        assert_eq!(psi(&fac(&[(2, 2), (3, 1)])), big(24));
        for p in [2u64, 3, 61, 1_000_003] {
            assert_eq!(phi(&fac(&[(p, 1)])), big(p - 1));
            assert_eq!(psi(&fac(&[(p, 1)])), big(p + 1));
        }
    }

    #[test]
    fn factored_merges() {
        let mut down = ShiftedFactors::new();
        down.insert(big(59), fac(&[(2, 1), (29, 1)]));
        down.insert(big(61), fac(&[(2, 2), (3, 1), (5, 1)]));
        let n = fac(&[(59, 1), (61, 1)]);
        let phi_n = phi_factored(&n, &down).unwrap();
        assert_eq!(phi_n.to_u64_pairs().unwrap(), vec![(2, 3), (3, 1), (5, 1), (29, 1)]);
        assert_eq!(phi_n.value(), &big(3480));

        let mut up = ShiftedFactors::new();
        up.insert(big(59), fac(&[(2, 2), (3, 1), (5, 1)]));
        up.insert(big(61), fac(&[(2, 1), (31, 1)]));
        let psi_n = psi_factored(&n, &up).unwrap();
        assert_eq!(psi_n.to_u64_pairs().unwrap(), vec![(2, 3), (3, 1), (5, 1), (31, 1)]);

        assert!(psi_factored(&Factorization::one(), &ShiftedFactors::new()).unwrap().is_one());
        let mut two = ShiftedFactors::new();
        two.insert(big(2), Factorization::one());
        assert!(phi_factored(&fac(&[(2, 1)]), &two).unwrap().is_one());
        let mut twelve = ShiftedFactors::new();
        twelve.insert(big(2), Factorization::one());
        twelve.insert(big(3), fac(&[(2, 1)]));
        assert_eq!(
            phi_factored(&fac(&[(2, 2), (3, 1)]), &twelve).unwrap().to_u64_pairs().unwrap(),
            vec![(2, 2)]
        );
    }

    #[test]
    fn factored_reports_missing_entries() {
        let err = phi_factored(&fac(&[(7, 1)]), &ShiftedFactors::new()).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&Factorization::one()), 0);
        assert_eq!(omega(&fac(&[(2, 2), (3, 1)])), 2);
        let primorial = fac(&[(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1)]);
        assert_eq!(primorial.value(), &big(510_510));
        assert_eq!(omega(&primorial), 7);
    }

    #[test]
    fn dirichlet_coeff_examples() {
        let one = dirichlet_coeff(&Factorization::one());
        assert_eq!(one.sign(), Sign::Plus);
        assert_eq!(one.magnitude(), ExactRatio::one());
        assert!(dirichlet_coeff(&fac(&[(2, 2)])).is_zero());
        let six = dirichlet_coeff(&fac(&[(2, 1), (3, 1)]));
        assert_eq!(six.sign(), Sign::Plus);
        assert_eq!(six.magnitude(), ExactRatio::new(1u32, 3u32).unwrap());
        let two = dirichlet_coeff(&fac(&[(2, 1)]));
        assert_eq!(two.sign(), Sign::Minus);
        assert_eq!(two.magnitude(), ExactRatio::new(2u32, 3u32).unwrap());
    }

    #[test]
    fn divisor_sum_identity_on_small_cases() {
        for pairs in [&[][..], &[(2, 1)], &[(2, 3), (3, 2), (5, 1)], &[(7, 2), (11, 1)]] {
            let f = fac(pairs);
            let want = ExactRatio::new(phi(&f), psi(&f)).unwrap();
            assert_eq!(coefficient_divisor_sum(&f), SignedExactRatio::from(want));
        }
        assert_eq!(divisors(&fac(&[(2, 3), (3, 2)])).len(), 12);
    }
}

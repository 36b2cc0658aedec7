mod common;

use common::{naive_compositions, naive_phi, naive_psi, trial_factor};
use num_bigint::BigUint;
use phipsi::arith::{coefficient_divisor_sum, phi, psi, psi_over_phi, ExactRatio, SignedExactRatio};
use phipsi::sieve::{lcm_one_to, SpfTable};
use phipsi::witness::{factor_big, is_prime_u64, is_probable_prime};
use phipsi::FactorContext;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn sieve_matches_trial_division_to_1e5() {
    let table = SpfTable::build(2, 100_001).unwrap();
    for n in 2..=100_000u64 {
        let got: Vec<(u64, u32)> = table.factor_small(n).unwrap().into_vec();
        assert_eq!(got, trial_factor(n), "n = {n}");
    }
}

#[test]
fn factorize_reproduces_input() {
    let table = SpfTable::build(2, 20_001).unwrap();
    for n in 2..=20_000u64 {
        assert_eq!(table.factorize(n).unwrap().value(), &big(n));
    }
}

#[test]
fn compositions_match_naive_on_a_stride() {
    let ctx = FactorContext::new(100_000).unwrap();
    for n in (1..=100_000u64).step_by(97) {
        let c = ctx.compositions(n).unwrap();
        let want = naive_compositions(n);
        let got = [
            c.phi_n.value().clone(),
            c.psi_n.value().clone(),
            c.phi_phi.clone(),
            c.psi_phi.clone(),
            c.phi_psi.clone(),
        ];
        assert_eq!(got, want.map(big), "n = {n}");
    }
}

#[test]
fn known_values() {
    let ctx = FactorContext::new(4_000).unwrap();
    let c = ctx.compositions(3599).unwrap();
    assert_eq!(c.phi_n.value(), &big(3480));
    assert_eq!(c.psi_n.value(), &big(3720));
    assert_eq!(c.psi_phi, big(8640));
    assert_eq!(c.phi_psi, big(960));
    assert_eq!(c.i(), 9);
    assert_eq!(ctx.compositions(2).unwrap().i(), ExactRatio::new(1u32, 2u32).unwrap());
    assert_eq!(ctx.compositions(10).unwrap().k(), 3);
    let table = SpfTable::build(999_980, 999_990).unwrap();
    assert_eq!(table.factor_small(999_982).unwrap().into_vec(), vec![(2, 1), (79, 1), (6329, 1)]);
    assert_eq!(
        table.factor_small(999_984).unwrap().into_vec(),
        vec![(2, 4), (3, 1), (83, 1), (251, 1)]
    );
    assert_eq!(table.is_prime(999_983), Some(true));
}

#[test]
fn divisor_sum_identity_to_1e4() {
    let table = SpfTable::build(2, 10_001).unwrap();
    for n in 2..=10_000u64 {
        let f = table.factorize(n).unwrap();
        let want = ExactRatio::new(phi(&f), psi(&f)).unwrap();
        assert_eq!(coefficient_divisor_sum(&f), SignedExactRatio::from(want), "n = {n}");
    }
}

#[test]
fn k_is_a_product_over_primes_of_phi() {
    let ctx = FactorContext::new(10_000).unwrap();
    for n in 1..=10_000u64 {
        let c = ctx.compositions(n).unwrap();
        assert_eq!(c.k(), psi_over_phi(&c.phi_n), "n = {n}");
    }
}

#[test]
fn k_over_i_identity_to_1e4() {
    let ctx = FactorContext::new(10_000).unwrap();
    for n in 1..=10_000u64 {
        let c = ctx.compositions(n).unwrap();
        let lhs = &c.k() / &c.i();
        let rhs = ExactRatio::new(c.phi_psi.clone(), c.phi_phi.clone()).unwrap();
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn lcm_divisibility_to_50() {
    for x in 1..=50u64 {
        let m = lcm_one_to(x);
        for k in 1..=x {
            assert_eq!(m.value() % k, big(0), "k = {k} does not divide M({x})");
        }
        for p in (x + 1..=200).filter(|&p| is_prime_u64(p)) {
            assert_ne!(m.value() % p, big(0));
        }
    }
    assert_eq!(lcm_one_to(10).value(), &big(2520));
}

#[test]
fn primality_fixtures() {
    let p = (BigUint::from(1u32) << 64u32) + 13u32;
    assert!(is_probable_prime(&p, 40));
    assert!(is_probable_prime(&big(61), 40));
    assert!(!is_probable_prime(&big(3599), 40));
}

#[test]
fn factor_big_fixtures() {
    let hint = phipsi::Factorization::from_u64_pairs(&[(2, 2), (3, 1), (5, 1)]);
    let f = factor_big(&big(3480), Some(&hint)).unwrap();
    assert_eq!(f.to_u64_pairs().unwrap(), vec![(2, 3), (3, 1), (5, 1), (29, 1)]);
    for n in [1u64, 2, 97, 3599, 600_851_475_143, 9_999_999_967] {
        let f = factor_big(&big(n), None).unwrap();
        assert_eq!(f.to_u64_pairs().unwrap(), trial_factor(n));
    }
}

#[test]
fn sandwich_to_1e4() {
    for n in 1..=10_000u64 {
        let (f, s) = (naive_phi(n), naive_psi(n));
        assert!(f <= n && n <= s);
        assert_eq!(f == n, n == 1);
        assert_eq!(s == n, n == 1);
    }
}

use num_bigint::BigUint;
use phipsi::witness::{construct_witness, WitnessConfig, WitnessMode};
use phipsi::ExactRatio;

/// `(x, M(x), P, Q)` from an exhaustive progression scan.
const TABLE: [(u64, u64, u64, u64); 13] = [
    (2, 2, 3, 3),
    (3, 6, 7, 5),
    (4, 12, 13, 11),
    (5, 60, 61, 59),
    (7, 420, 421, 419),
    (8, 840, 2521, 839),
    (9, 2520, 2521, 5039),
    (11, 27720, 55441, 55439),
    (13, 360360, 4324321, 1081079),
    (16, 720720, 4324321, 1441439),
    (17, 12252240, 85765681, 24504479),
    (19, 232792560, 232792561, 232792559),
    (23, 5354228880, 10708457761, 5354228879),
];

#[test]
fn least_primes_match_scan() {
    let cfg = WitnessConfig::default();
    for (x, m, p, q) in TABLE {
        let w = construct_witness(x, WitnessMode::Exact, &cfg).unwrap();
        assert_eq!(w.m.value(), &BigUint::from(m), "x = {x}");
        assert_eq!(w.p, BigUint::from(p), "x = {x}");
        assert_eq!(w.q, BigUint::from(q), "x = {x}");
        assert!(w.checks.all_hold(), "x = {x}");
    }
}

#[test]
fn larger_witnesses() {
    let cfg = WitnessConfig::default();
    for (x, p, q) in [
        (25, 26_771_144_401u64, 53_542_288_799u64),
        (30, 18_632_716_502_401, 2_329_089_562_799),
        (40, 53_429_314_570_632_001, 80_143_971_855_947_999),
    ] {
        let w = construct_witness(x, WitnessMode::Exact, &cfg).unwrap();
        assert_eq!((w.p.clone(), w.q.clone()), (BigUint::from(p), BigUint::from(q)));
        assert_eq!(w.mode, WitnessMode::Exact);
        assert!(w.checks.all_hold());
    }
}

#[test]
fn exact_identity_behind_the_chain() {
    let cfg = WitnessConfig::default();
    for x in 2..=20 {
        let w = construct_witness(x, WitnessMode::Exact, &cfg).unwrap();
        let i = w.i_value.clone().unwrap();
        assert_eq!(&i * &w.diagnostics.psi_over_phi_n, &w.lhs_34 / &w.lhs_36);
        assert!(w.diagnostics.log_n_below_23x);
    }
}

#[test]
fn beyond_cap_runs_bound_only() {
    let w = construct_witness(45, WitnessMode::Exact, &WitnessConfig::default()).unwrap();
    assert_eq!(w.mode, WitnessMode::BoundOnly);
    assert!(w.failed_stage.is_some());
    assert!(w.checks.all_hold());
    assert_eq!(w.lhs_36, w.rhs_36);
    assert!(w.rhs_36 < ExactRatio::one());
}

//! Acceptance criteria, one test each. Every test writes a single
//! `criterion N: PASS|FAIL ...` line straight to stdout so the verdicts are
//! visible without `--nocapture`.

mod common;

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use common::naive_compositions;
use num_bigint::BigUint;
use phipsi::arith::{coefficient_divisor_sum, phi, psi, ExactRatio, SignedExactRatio};
use phipsi::constants::{c0, mertens_minus, mertens_plus, six_over_pi_squared};
use phipsi::experiments::{sweep, SweepConfig};
use phipsi::sieve::SpfTable;
use phipsi::witness::{construct_witness, WitnessConfig, WitnessMode};
use phipsi::FactorContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {n}: {verdict} {detail}").unwrap();
    out.flush().unwrap();
    assert!(pass, "criterion {n} failed: {detail}");
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn r(n: u64, d: u64) -> ExactRatio {
    ExactRatio::new(n, d).unwrap()
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let ctx = FactorContext::new(100_000).unwrap();
    let mut failures = 0;
    for n in 1..=100_000u64 {
        let c = ctx.compositions(n).unwrap();
        let got = [
            c.phi_n.value().clone(),
            c.psi_n.value().clone(),
            c.phi_phi.clone(),
            c.psi_phi.clone(),
            c.phi_psi.clone(),
        ];
        failures += (got != naive_compositions(n).map(big)) as u32;
    }
    let elapsed = start.elapsed();
    report(
        1,
        failures == 0 && elapsed < Duration::from_secs(30),
        format!("mismatches={failures} over n<=1e5, elapsed={elapsed:.2?} (limit 30s)"),
    );
}

#[test]
fn criterion_02_divisor_sum_identity() {
    let table = SpfTable::build(2, 10_001).unwrap();
    let mut failures = 0;
    for n in 1..=10_000u64 {
        let f = if n == 1 {
            phipsi::Factorization::one()
        } else {
            table.factorize(n).unwrap()
        };
        let want = SignedExactRatio::from(ExactRatio::new(phi(&f), psi(&f)).unwrap());
        failures += (coefficient_divisor_sum(&f) != want) as u32;
    }
    report(2, failures == 0, format!("failures={failures} over n<=1e4"));
}

#[test]
fn criterion_03_constant_c0() {
    let a = c0(1_000_000).unwrap();
    let b = c0(10_000_000).unwrap();
    let gap = (a.value.ln() - b.value.ln()).abs();
    let agree = gap <= a.tail_bound + b.tail_bound;
    let two_places = |v: f64| (v * 100.0).round() / 100.0 == 0.47;
    report(
        3,
        agree && two_places(a.value) && two_places(b.value),
        format!(
            "c0(1e6)={:.10} c0(1e7)={:.10} |log gap|={gap:.3e} <= tails {:.3e}",
            a.value,
            b.value,
            a.tail_bound + b.tail_bound
        ),
    );
}

#[test]
fn criterion_04_mean_phi_over_psi() {
    let start = Instant::now();
    let row = sweep(1_000_000, &[], &SweepConfig::default()).unwrap()[0];
    let elapsed = start.elapsed();
    let target = c0(10_000_000).unwrap().value;
    let diff = (row.mean_phi_over_psi - target).abs();
    report(
        4,
        diff <= 5e-4 && elapsed < Duration::from_secs(60),
        format!(
            "mean={:.10} c0(1e7)={target:.10} diff={diff:.3e} (limit 5e-4), elapsed={elapsed:.2?} (limit 60s)",
            row.mean_phi_over_psi
        ),
    );
}

#[test]
fn criterion_05_mertens_products() {
    let x = 1_000_000u64;
    let band = 2.0 / (x as f64).ln();
    let minus = mertens_minus(x).unwrap();
    let plus = mertens_plus(x).unwrap();
    let in_band = |v: f64| (1.0 - band..=1.0 + band).contains(&v);
    let product = minus.product.value * plus.product.value;
    let gap = (product - six_over_pi_squared()).abs();
    report(
        5,
        in_band(minus.ratio()) && in_band(plus.ratio()) && gap <= 1e-5,
        format!(
            "minus ratio={:.6} plus ratio={:.6} band=±{band:.4}; product gap to 6/pi^2={gap:.3e}",
            minus.ratio(),
            plus.ratio()
        ),
    );
}

#[test]
fn criterion_06_witness() {
    let cfg = WitnessConfig::default();
    let w = construct_witness(5, WitnessMode::Exact, &cfg).unwrap();
    let fixture = w.m.value() == &big(60)
        && w.p == big(61)
        && w.q == big(59)
        && w.n == big(3599)
        && w.i_value == Some(r(9, 1))
        && w.lhs_34 == r(8640, 3480)
        && w.lhs_34 >= r(12, 5)
        && w.rhs_34 == r(12, 5)
        && w.lhs_36 == r(960, 3720)
        && w.lhs_36 <= r(4, 15)
        && w.rhs_36 == r(4, 15);
    let start = Instant::now();
    let mut broken = Vec::new();
    for x in 2..=25 {
        let w = construct_witness(x, WitnessMode::Exact, &cfg).unwrap();
        if w.mode != WitnessMode::Exact || !w.checks.all_hold() {
            broken.push(x);
        }
    }
    let elapsed = start.elapsed();
    report(
        6,
        fixture && broken.is_empty() && elapsed < Duration::from_secs(120),
        format!("x=5 fixture={fixture}; chain failures for x<=25: {broken:?}; elapsed={elapsed:.2?} (limit 120s)"),
    );
}

#[test]
fn criterion_07_sign_statistic() {
    let row = sweep(1_000_000, &[], &SweepConfig::default()).unwrap()[0];
    let golden = 935_120.0 / 1_000_000.0;
    report(
        7,
        row.frac_positive > 0.5 && row.frac_positive == golden,
        format!("frac_positive(1e6)={} golden={golden}", row.frac_positive),
    );
}

#[test]
fn criterion_08_h_statistics_decrease() {
    let rows = sweep(1_000_000, &[10_000, 100_000, 1_000_000], &SweepConfig::default()).unwrap();
    let phi: Vec<f64> = rows.iter().map(|r| r.mean_h_phi).collect();
    let psi: Vec<f64> = rows.iter().map(|r| r.mean_h_psi).collect();
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    report(
        8,
        decreasing(&phi) && decreasing(&psi),
        format!("mean_h_phi={phi:.6?} mean_h_psi={psi:.6?} at x=1e4,1e5,1e6"),
    );
}

#[test]
fn criterion_09_determinism() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_phipsi"))
            .args(["average", "--x", "100000", "--workers", workers])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    let (one, eight) = (run("1"), run("8"));
    report(
        9,
        one == eight && !one.is_empty(),
        format!("workers=1 and workers=8 outputs identical: {} ({} bytes)", one == eight, one.len()),
    );
}

#[test]
fn criterion_10_chain_identity() {
    let ctx = FactorContext::new(1_000_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=1_000_000u64);
        let c = ctx.compositions(n).unwrap();
        let (i, k) = (c.i(), c.k());
        let identity = &k / &i == ExactRatio::new(c.phi_psi.clone(), c.phi_phi.clone()).unwrap();
        let bound = k >= 1 && ((k == 1) == (n <= 2));
        if !identity || !bound {
            failures.push(n);
        }
    }
    for n in [1, 2] {
        if ctx.compositions(n).unwrap().k() != 1 {
            failures.push(n);
        }
    }
    report(10, failures.is_empty(), format!("failures over 1000 seeded n<=1e6: {failures:?}"));
}

mod common;

use common::{naive_compositions, trial_factor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use phipsi::experiments::{sweep, SummaryRow, SweepConfig};

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Per-n exact reference sweep at `x`, built only from trial division.
fn naive_row(x: u64) -> ([f64; 5], u64, u64) {
    let t = (x as f64).ln().ln();
    let (mut i, mut k, mut r, mut hp, mut hs) = (q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1));
    let (mut positive, mut in_a) = (0, 0);
    let h = |m: u64| -> BigRational {
        trial_factor(m)
            .iter()
            .filter(|&&(p, _)| p as f64 > t)
            .map(|&(p, _)| q(1, p))
            .fold(q(0, 1), |a, b| a + b)
    };
    for n in 1..=x {
        let [f, s, ff, sf, fs] = naive_compositions(n);
        i += q(sf, fs);
        k += q(sf, ff);
        r += q(f, s);
        hp += h(f);
        hs += h(s);
        positive += (sf > fs) as u64;
        // M₀ = 2 at x = 10⁴.
        in_a += (n * n > x && f % 2 == 0 && s % 2 == 0) as u64;
    }
    let mean = |v: BigRational| (v / q(x, 1)).to_f64().unwrap();
    ([mean(i), mean(k), mean(r), mean(hp), mean(hs)], positive, in_a)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

#[test]
fn sweep_matches_naive_oracle_at_1e4() {
    let x = 10_000;
    let row = sweep(x, &[], &SweepConfig::default()).unwrap()[0];
    let (means, positive, in_a) = naive_row(x);
    let got = [row.mean_i, row.mean_k, row.mean_phi_over_psi, row.mean_h_phi, row.mean_h_psi];
    for (g, w) in got.iter().zip(means) {
        assert!(close(*g, w), "{g} vs {w}");
    }
    assert_eq!(row.frac_positive, positive as f64 / x as f64);
    assert_eq!(row.frac_in_a, in_a as f64 / x as f64);
}

#[test]
fn sweep_frozen_values() {
    let rows = sweep(1_000_000, &[10_000, 100_000, 1_000_000], &SweepConfig::default()).unwrap();
    let want = [
        (8_897u64, 0.4716768681518848, 0.34782088085862084, 0.41035900961730776),
        (91_904, 0.4716808692626946, 0.3813685588017767, 0.43554560652683666),
        (935_120, 0.47168041091915974, 0.4066019301088095, 0.45472078422986084),
    ];
    for (row, (pos, r, hp, hs)) in rows.iter().zip(want) {
        assert_eq!(row.frac_positive, pos as f64 / row.x as f64);
        assert!(close(row.mean_phi_over_psi, r));
        assert!(close(row.mean_h_phi, hp));
        assert!(close(row.mean_h_psi, hs));
    }
}

#[test]
fn small_sweep_fixture() {
    let row = sweep(10, &[], &SweepConfig::default()).unwrap()[0];
    assert!((row.mean_phi_over_psi - 173.0 / 360.0).abs() < 1e-15);
    // Positive at 3, 4, 5, 7, 8, 9; n = 1 and n = 10 tie, 2 and 6 are negative.
    assert_eq!(row.frac_positive, 0.6);
    assert!(row.pred_i.is_nan() && row.frac_in_a.is_nan());
}

#[test]
fn checkpoint_rows_equal_standalone_sweeps() {
    let cfg = SweepConfig::default();
    let cps = [20u64, 1_000, 65_536, 65_537, 150_000];
    let rows = sweep(150_000, &cps, &cfg).unwrap();
    for (row, &c) in rows.iter().zip(&cps) {
        let alone: SummaryRow = sweep(c, &[], &cfg).unwrap()[0];
        assert_eq!(format!("{row:?}"), format!("{alone:?}"));
    }
}

#[test]
fn sweep_rejects_bad_checkpoints() {
    let cfg = SweepConfig::default();
    assert!(sweep(100, &[50, 20], &cfg).is_err());
    assert!(sweep(100, &[200], &cfg).is_err());
    let tight = SweepConfig {
        max_entries: 1_000,
        ..cfg
    };
    assert_eq!(sweep(10_000, &[], &tight).unwrap_err().exit_code(), 4);
}

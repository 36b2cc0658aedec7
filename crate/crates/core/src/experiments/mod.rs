//! Bulk experiments over `n ≤ x`: average orders of `I` and `K`, the mean of
//! `φ/ψ`, the sign of `ψ(φ(n)) − φ(ψ(n))`, the `h`-statistics, the sets
//! `𝒜`, `ℬ`, `D₁..D₃`, normalized densities and the progression sum `S(x, m)`.

mod density;
mod kernel;
mod sweep;

use std::f64::consts::E;

use num_traits::ToPrimitive;

pub use density::{
    density_histogram, normalized_density_sample, normalized_density_sample_at, DensityHistogram,
    HISTOGRAM_BINS,
};
pub use sweep::{
    sweep, sweep_report, Extreme, SummaryRow, SweepConfig, SweepDiagnostics, SweepReport, CSV_HEADER,
};

use crate::arith::{ExactRatio, FactorContext};
use crate::constants::iterated_log;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::sieve::{m_zero, primes_in, Factorization};
use crate::witness::factor_u64;

/// Which function `h` is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HKind {
    Phi,
    Psi,
}

/// `h_f(n) = Σ_{p | f(n), p > threshold} 1/p`, exactly.
pub fn h_stat(n: u64, kind: HKind, threshold: f64, ctx: &FactorContext) -> Result<ExactRatio> {
    if !(threshold > 0.0) {
        return Err(Error::argument("h threshold must be positive"));
    }
    let c = ctx.compositions(n)?;
    let f = match kind {
        HKind::Phi => &c.phi_n,
        HKind::Psi => &c.psi_n,
    };
    Ok(f.primes()
        .filter(|p| p.to_f64().unwrap_or(f64::INFINITY) > threshold)
        .map(|p| ExactRatio::new(1u32, p.clone()).expect("p ≥ 2"))
        .sum())
}

fn in_upper_range(n: u64, x: u64) -> bool {
    n <= x && (n as u128) * (n as u128) > x as u128
}

/// `n ∈ 𝒜`: `√x < n ≤ x` and `M₀(x)` divides both `φ(n)` and `ψ(n)`.
pub fn in_set_a(n: u64, x: u64, c1: f64, ctx: &FactorContext) -> Result<bool> {
    if n < 2 || x < 2 {
        return Err(Error::argument("n and x must be at least 2"));
    }
    let m0 = m_zero(x as f64, c1)?;
    if !in_upper_range(n, x) {
        return Ok(false);
    }
    let c = ctx.compositions(n)?;
    Ok(m0.factorization.divides(&c.phi_n) && m0.factorization.divides(&c.psi_n))
}

/// `n ∈ ℬ`: `√x < n ≤ x` and both `h_φ(n)`, `h_ψ(n)` (threshold `log₂ x`)
/// are below `1/√(log₃ x)`.
pub fn in_set_b(n: u64, x: u64, ctx: &FactorContext) -> Result<bool> {
    let (l2, l3) = logs_above_ee(x)?;
    if !in_upper_range(n, x) {
        return Ok(false);
    }
    let bound = 1.0 / l3.sqrt();
    let c = ctx.compositions(n)?;
    let h = |f: &Factorization| -> f64 {
        f.primes()
            .filter_map(|p| p.to_f64())
            .filter(|&p| p > l2)
            .map(|p| 1.0 / p)
            .sum()
    };
    Ok(h(&c.phi_n) < bound && h(&c.psi_n) < bound)
}

/// `(log₂ x, log₃ x)` for `x > e^e`.
fn logs_above_ee(x: u64) -> Result<(f64, f64)> {
    let l3 = iterated_log(x as f64, 3)?;
    if !(l3 > 0.0) {
        return Err(Error::domain(format!("log3({x}) is not positive; need x > e^e")));
    }
    Ok((iterated_log(x as f64, 2)?, l3))
}

/// Membership of `n` in the three exceptional sets used to bound `ω(ψ(n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DClassification {
    /// `ω(n) > 3e·log₂ x`.
    pub in_d1: bool,
    /// Some `p | n` has `ω(p − 1) ≥ b`.
    pub in_d2: bool,
    /// Some `p | n` has `ω(p + 1) ≥ b`.
    pub in_d3: bool,
    /// `⌊e²·log₂ x⌋`.
    pub b: u64,
}

/// `b = ⌊e²·log₂ x⌋`, for `x ≥ 16`.
pub fn d_threshold(x: u64) -> Result<u64> {
    if x < 16 {
        return Err(Error::domain("the D classification needs x ≥ 16"));
    }
    Ok((E * E * iterated_log(x as f64, 2)?).floor() as u64)
}

pub fn classify_d(n: u64, x: u64, ctx: &FactorContext) -> Result<DClassification> {
    let b = d_threshold(x)?;
    let l2 = iterated_log(x as f64, 2)?;
    if n == 0 {
        return Err(Error::argument("n must be at least 1"));
    }
    let f = ctx.factor_small(n);
    let omega_at = |m: u64| ctx.factor_small(m).len() as u64;
    Ok(DClassification {
        in_d1: f.len() as f64 > 3.0 * E * l2,
        in_d2: f.iter().any(|&(p, _)| omega_at(p - 1) >= b),
        in_d3: f.iter().any(|&(p, _)| omega_at(p + 1) >= b),
        b,
    })
}

/// `S(x, m)` and the normalization `S(x, m)·φ(m)/log₂ x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProgressionSum {
    pub sum: f64,
    /// NaN when `log₂ x ≤ 0`.
    pub normalized: f64,
}

/// `S(x, m) = Σ 1/q` over primes `q ≤ x` with `m | q + 1`.
pub fn prog_recip_sum(x: u64, m: u64) -> Result<ProgressionSum> {
    if x < 2 {
        return Err(Error::argument("x must be at least 2"));
    }
    if m == 0 {
        return Err(Error::argument("m must be at least 1"));
    }
    let sum: CompensatedSum = primes_in(2, x + 1)
        .filter(|q| (q + 1) % m == 0)
        .map(|q| 1.0 / q as f64)
        .collect();
    let phi_m: u64 = factor_u64(m)
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product();
    let l2 = (x as f64).ln().ln();
    let normalized = if l2 > 0.0 {
        sum.value() * phi_m as f64 / l2
    } else {
        f64::NAN
    };
    Ok(ProgressionSum {
        sum: sum.value(),
        normalized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn h_examples() {
        let ctx = FactorContext::new(100).unwrap();
        assert_eq!(h_stat(31, HKind::Phi, 5.0, &ctx).unwrap(), ExactRatio::zero());
        assert_eq!(h_stat(23, HKind::Phi, 5.0, &ctx).unwrap(), r(1, 11));
        assert_eq!(h_stat(22, HKind::Psi, 5.0, &ctx).unwrap(), ExactRatio::zero());
        assert!(h_stat(22, HKind::Psi, 0.0, &ctx).is_err());
    }

    #[test]
    fn set_a_examples() {
        let ctx = FactorContext::new(1_000_000).unwrap();
        assert!(in_set_a(700_000, 1_000_000, 1.0, &ctx).unwrap());
        assert!(!in_set_a(1_000, 1_000_000, 1.0, &ctx).unwrap());
        // 999983 is prime, so φ and ψ are both even.
        assert!(in_set_a(999_983, 1_000_000, 1.0, &ctx).unwrap());
        assert!(in_set_a(100, 10, 1.0, &ctx).is_err());
    }

    #[test]
    fn set_b_examples() {
        let ctx = FactorContext::new(1_000_000).unwrap();
        // φ(999983) = 2·79·6329, ψ(999983) = 2⁴·3·83·251.
        // h_φ = 1/79 + 1/6329, h_ψ = 1/3 + 1/83 + 1/251, bound 1/√log₃ x ≈ 1.018.
        assert!(in_set_b(999_983, 1_000_000, &ctx).unwrap());
        assert!(!in_set_b(999, 1_000_000, &ctx).unwrap());
        // φ(2¹⁹) = 2¹⁸ and ψ(2¹⁹) = 3·2¹⁸ give h_φ = 0, h_ψ = 1/3 < 1/√log₃.
        assert!(in_set_b(1 << 19, 1_000_000, &ctx).unwrap());
        assert!(in_set_b(20, 15, &ctx).is_err());
    }

    #[test]
    fn d_examples() {
        let ctx = FactorContext::new(1_000_000).unwrap();
        assert_eq!(d_threshold(1_000_000).unwrap(), 19);
        let one = classify_d(1, 1_000_000, &ctx).unwrap();
        assert!(!one.in_d1 && !one.in_d2 && !one.in_d3);
        let primorial = classify_d(510_510, 1_000_000, &ctx).unwrap();
        assert!(!primorial.in_d1);
        assert!(classify_d(5, 15, &ctx).is_err());
    }

    #[test]
    fn progression_sum_examples() {
        let s = prog_recip_sum(20, 3).unwrap();
        let want = 1.0 / 2.0 + 1.0 / 5.0 + 1.0 / 11.0 + 1.0 / 17.0;
        assert!((s.sum - want).abs() < 1e-15);
        assert!((s.normalized - want * 2.0 / 20f64.ln().ln()).abs() < 1e-12);
        let all = prog_recip_sum(20, 1).unwrap();
        let primes = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0];
        assert!((all.sum - primes.iter().map(|p| 1.0 / p).sum::<f64>()).abs() < 1e-15);
        assert_eq!(prog_recip_sum(2, 10).unwrap().sum, 0.0);
    }
}

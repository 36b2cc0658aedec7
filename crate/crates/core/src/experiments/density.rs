use rayon::prelude::*;
use serde::Serialize;

use super::kernel::evaluate;
use super::SweepConfig;
use crate::arith::FactorContext;
use crate::constants::{iterated_log, leading_constant};
use crate::error::{Error, Result};
use crate::numeric::{format_f64_17, isqrt};
use crate::sieve::SpfTable;

/// Log-spaced bins per histogram.
pub const HISTOGRAM_BINS: usize = 64;

const BLOCK: u64 = 1 << 16;

fn log3_positive(v: u64) -> Result<f64> {
    let l3 = iterated_log(v as f64, 3)?;
    if !(l3 > 0.0) {
        return Err(Error::domain(format!("log3({v}) is not positive; need a value above e^e")));
    }
    Ok(l3)
}

/// `(I(n) / [L·log₃²n·φ(n)/ψ(n)], K(n) / [L·log₃²n])` with
/// `L = (6/π²)e^{2γ}`. Needs `n > e^e`.
pub fn normalized_density_sample(n: u64, ctx: &FactorContext) -> Result<(f64, f64)> {
    normalized_density_sample_at(n, n, ctx)
}

/// As [`normalized_density_sample`] but normalized with `log₃ x`.
pub fn normalized_density_sample_at(n: u64, x: u64, ctx: &FactorContext) -> Result<(f64, f64)> {
    let l3 = log3_positive(x)?;
    let c = ctx.compositions(n)?;
    let scale = leading_constant() * l3 * l3;
    Ok((
        c.i().to_f64() / (scale * c.phi_over_psi().to_f64()),
        c.k().to_f64() / scale,
    ))
}

/// Histograms of the normalized `I` and `K` over `n ∈ (√x, x]`, `n ≥ 16`,
/// under both the `log₃ n` and the `log₃ x` normalization. All four series
/// share one set of log-spaced bin edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityHistogram {
    pub x: u64,
    pub samples: u64,
    /// `HISTOGRAM_BINS + 1` increasing edges.
    pub edges: Vec<f64>,
    pub i_log3n: Vec<u64>,
    pub k_log3n: Vec<u64>,
    pub i_log3x: Vec<u64>,
    pub k_log3x: Vec<u64>,
}

impl DensityHistogram {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,I_log3n,K_log3n,I_log3x,K_log3x\n");
        for b in 0..HISTOGRAM_BINS {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                format_f64_17(self.edges[b]),
                format_f64_17(self.edges[b + 1]),
                self.i_log3n[b],
                self.k_log3n[b],
                self.i_log3x[b],
                self.k_log3x[b],
            ));
        }
        out
    }
}

pub fn density_histogram(x: u64, config: &SweepConfig) -> Result<DensityHistogram> {
    let l3x = log3_positive(x)?;
    let lo = (isqrt(x) + 1).max(16);
    let table = SpfTable::build_segmented(2, x + 2, config.segment_size, config.max_entries)?;
    let ctx = FactorContext::from_table(table);
    let lc = leading_constant();
    let scale_x = lc * l3x * l3x;

    let blocks = (x + 1).saturating_sub(lo).div_ceil(BLOCK);
    let values: Vec<[f64; 4]> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let a = lo + b * BLOCK;
            let z = (a + BLOCK - 1).min(x);
            (a..=z)
                .map(|n| {
                    let ev = evaluate(n, &ctx);
                    let l3n = (n as f64).ln().ln().ln();
                    let scale_n = lc * l3n * l3n;
                    let (i, k, r) = (ev.i(), ev.k(), ev.phi_over_psi());
                    [i / (scale_n * r), k / scale_n, i / (scale_x * r), k / scale_x]
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat();

    let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.iter().flatten() {
        vmin = vmin.min(*v);
        vmax = vmax.max(*v);
    }
    if values.is_empty() {
        (vmin, vmax) = (1.0, 1.0);
    }
    let (ln_lo, ln_hi) = (vmin.ln(), vmax.ln());
    let step = (ln_hi - ln_lo) / HISTOGRAM_BINS as f64;
    let edges: Vec<f64> = (0..=HISTOGRAM_BINS)
        .map(|i| match i {
            0 => vmin,
            HISTOGRAM_BINS => vmax,
            _ => (ln_lo + step * i as f64).exp(),
        })
        .collect();
    let bin = |v: f64| -> usize {
        if step > 0.0 {
            (((v.ln() - ln_lo) / step) as usize).min(HISTOGRAM_BINS - 1)
        } else {
            0
        }
    };
    let mut counts = [(); 4].map(|_| vec![0u64; HISTOGRAM_BINS]);
    for v in &values {
        for (series, &value) in counts.iter_mut().zip(v) {
            series[bin(value)] += 1;
        }
    }
    let [i_log3n, k_log3n, i_log3x, k_log3x] = counts;
    Ok(DensityHistogram {
        x,
        samples: values.len() as u64,
        edges,
        i_log3n,
        k_log3n,
        i_log3x,
        k_log3x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_at_3599() {
        let ctx = FactorContext::new(4000).unwrap();
        let (a, b) = normalized_density_sample(3599, &ctx).unwrap();
        let l3 = 3599f64.ln().ln().ln();
        let want = 9.0 / (leading_constant() * l3 * l3 * (58.0 / 60.0) * (60.0 / 62.0));
        assert!((a - want).abs() < 1e-12 * want);
        assert!(a > 0.0 && b > 0.0);
        assert!(normalized_density_sample(15, &ctx).is_err());
    }

    #[test]
    fn histogram_counts_every_sample() {
        let h = density_histogram(10_000, &SweepConfig::default()).unwrap();
        assert_eq!(h.samples, 10_000 - 100);
        for series in [&h.i_log3n, &h.k_log3n, &h.i_log3x, &h.k_log3x] {
            assert_eq!(series.iter().sum::<u64>(), h.samples);
        }
        assert!(h.edges.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(h.to_csv().lines().count(), HISTOGRAM_BINS + 1);
    }
}

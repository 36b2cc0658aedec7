use std::f64::consts::E;

use rayon::prelude::*;
use serde::Serialize;

use super::kernel::{evaluate, exponent, recip_sum_above, Evaluated};
use super::{d_threshold, in_upper_range};
use crate::arith::FactorContext;
use crate::constants::{c0, leading_constant};
use crate::error::{Error, Result};
use crate::numeric::{format_f64_17, CompensatedSum};
use crate::sieve::{m_zero, SpfTable, DEFAULT_MAX_ENTRIES, DEFAULT_SEGMENT_SIZE};

/// Header of the summary CSV.
pub const CSV_HEADER: &str =
    "x,mean_I,mean_K,mean_phi_over_psi,pred_I,pred_K,frac_positive,frac_in_A,mean_h_phi,mean_h_psi";

/// Numbers per accumulation block. Blocks are reduced in index order, so
/// totals do not depend on the thread count or the table segment size.
const BLOCK: u64 = 1 << 16;

/// Aggregates over `n ≤ x`.
///
/// Fields that need `log₃ x > 0` (`pred_*`, `frac_in_A`) are NaN for
/// `x ≤ e^e`; the `h` means are NaN when `log₂ x ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryRow {
    pub x: u64,
    #[serde(rename = "mean_I")]
    pub mean_i: f64,
    #[serde(rename = "mean_K")]
    pub mean_k: f64,
    pub mean_phi_over_psi: f64,
    /// `c₀·(6/π²)e^{2γ}·log₃² x`.
    #[serde(rename = "pred_I")]
    pub pred_i: f64,
    /// `(6/π²)e^{2γ}·log₃² x`.
    #[serde(rename = "pred_K")]
    pub pred_k: f64,
    /// Share of `n ≤ x` with `ψ(φ(n)) > φ(ψ(n))`; ties count as not positive.
    pub frac_positive: f64,
    #[serde(rename = "frac_in_A")]
    pub frac_in_a: f64,
    /// Mean of `h_φ(n)` with threshold `log₂ x`.
    pub mean_h_phi: f64,
    pub mean_h_psi: f64,
}

impl SummaryRow {
    pub fn to_csv_line(&self) -> String {
        let fields = [
            self.mean_i,
            self.mean_k,
            self.mean_phi_over_psi,
            self.pred_i,
            self.pred_k,
            self.frac_positive,
            self.frac_in_a,
            self.mean_h_phi,
            self.mean_h_psi,
        ];
        let mut line = self.x.to_string();
        for v in fields {
            line.push(',');
            line.push_str(&format_f64_17(v));
        }
        line
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// Constant in `g(x) = c₁·log₂ x/log₃ x`, which fixes `M₀`.
    pub c1: f64,
    /// Constant in the `ω(φ(n)), ω(ψ(n)) > b₃·log₂² x` diagnostic.
    pub b3: f64,
    /// Entries per smallest-prime-factor table segment.
    pub segment_size: usize,
    /// Largest table the sweep may allocate.
    pub max_entries: u64,
    /// Prime cutoff for the `c₀` used in `pred_I`.
    pub c0_cutoff: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            c1: 1.0,
            b3: 4.0 * E.powi(3) * 1.1,
            segment_size: DEFAULT_SEGMENT_SIZE,
            max_entries: DEFAULT_MAX_ENTRIES,
            c0_cutoff: 10_000_000,
        }
    }
}

/// Running minimum and maximum of one normalized quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extreme {
    pub name: &'static str,
    pub min: f64,
    pub argmin: u64,
    pub max: f64,
    pub argmax: u64,
}

impl Extreme {
    fn new(name: &'static str) -> Self {
        Extreme {
            name,
            min: f64::INFINITY,
            argmin: 0,
            max: f64::NEG_INFINITY,
            argmax: 0,
        }
    }

    fn update(&mut self, v: f64, n: u64) {
        if v < self.min {
            self.min = v;
            self.argmin = n;
        }
        if v > self.max {
            self.max = v;
            self.argmax = n;
        }
    }

    fn merge(&mut self, other: &Extreme) {
        if other.min < self.min {
            self.min = other.min;
            self.argmin = other.argmin;
        }
        if other.max > self.max {
            self.max = other.max;
            self.argmax = other.argmax;
        }
    }
}

const EXTREME_NAMES: [&str; 5] = [
    "phi_n_log2n_over_n",
    "psi_phi_over_n_log2n",
    "psi_n_over_n_log2n",
    "phi_psi_log2n_over_n",
    "k_over_log2n_squared",
];

/// Whole-range diagnostics at the sweep bound `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepDiagnostics {
    pub x: u64,
    pub c0_cutoff: u64,
    pub c0: f64,
    /// Extremes over `3 ≤ n ≤ x`.
    pub extremes: Vec<Extreme>,
    /// `|ℬ|`; absent for `x ≤ e^e`.
    pub count_in_b: Option<u64>,
    /// `⌊e²·log₂ x⌋`; absent for `x < 16`.
    pub b: Option<u64>,
    pub count_in_d1: Option<u64>,
    pub count_in_d2: Option<u64>,
    pub count_in_d3: Option<u64>,
    /// Count of `n` with `ω(φ(n))` or `ω(ψ(n))` above `b₃·log₂² x`.
    pub count_above_b3: Option<u64>,
    pub max_omega_phi: usize,
    pub max_omega_psi: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SummaryRow>,
    pub diagnostics: SweepDiagnostics,
}

impl SweepReport {
    /// Header plus one line per checkpoint, newline-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv_line());
            out.push('\n');
        }
        out
    }
}

struct Checkpoint {
    c: u64,
    h_threshold: Option<f64>,
    log3: Option<f64>,
    m0: Option<Vec<(u64, u32)>>,
}

struct DiagParams {
    x: u64,
    log2: f64,
    b_bound: Option<f64>,
    b: Option<u64>,
    b3_limit: Option<f64>,
}

#[derive(Clone, Copy, Default)]
struct RowAcc {
    i: CompensatedSum,
    k: CompensatedSum,
    r: CompensatedSum,
    h_phi: CompensatedSum,
    h_psi: CompensatedSum,
    positive: u64,
    in_a: u64,
}

impl RowAcc {
    fn merge(&mut self, o: &RowAcc) {
        self.i.merge(&o.i);
        self.k.merge(&o.k);
        self.r.merge(&o.r);
        self.h_phi.merge(&o.h_phi);
        self.h_psi.merge(&o.h_psi);
        self.positive += o.positive;
        self.in_a += o.in_a;
    }
}

#[derive(Clone)]
struct DiagAcc {
    extremes: [Extreme; 5],
    in_b: u64,
    d: [u64; 3],
    above_b3: u64,
    max_omega_phi: usize,
    max_omega_psi: usize,
}

impl DiagAcc {
    fn new() -> Self {
        DiagAcc {
            extremes: EXTREME_NAMES.map(Extreme::new),
            in_b: 0,
            d: [0; 3],
            above_b3: 0,
            max_omega_phi: 0,
            max_omega_psi: 0,
        }
    }

    fn merge(&mut self, o: &DiagAcc) {
        for (a, b) in self.extremes.iter_mut().zip(&o.extremes) {
            a.merge(b);
        }
        self.in_b += o.in_b;
        for (a, b) in self.d.iter_mut().zip(&o.d) {
            *a += b;
        }
        self.above_b3 += o.above_b3;
        self.max_omega_phi = self.max_omega_phi.max(o.max_omega_phi);
        self.max_omega_psi = self.max_omega_psi.max(o.max_omega_psi);
    }
}

/// One row per checkpoint (default: just `x`).
pub fn sweep(x: u64, checkpoints: &[u64], config: &SweepConfig) -> Result<Vec<SummaryRow>> {
    Ok(sweep_report(x, checkpoints, config)?.rows)
}

/// Single pass over `n = 1..=x`.
///
/// The row at checkpoint `c` is exactly the row a sweep with bound `c` would
/// produce: it aggregates `n ≤ c`, uses `log₂ c` as the `h` threshold and
/// `M₀(c)` for `𝒜`. Results are bit-identical for any number of threads.
pub fn sweep_report(x: u64, checkpoints: &[u64], config: &SweepConfig) -> Result<SweepReport> {
    if x == 0 {
        return Err(Error::argument("x must be at least 1"));
    }
    let cps: Vec<u64> = if checkpoints.is_empty() {
        vec![x]
    } else {
        checkpoints.to_vec()
    };
    if cps[0] == 0 || cps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("checkpoints must be positive and strictly increasing"));
    }
    if *cps.last().expect("non-empty") > x {
        return Err(Error::argument("checkpoints must not exceed x"));
    }

    let table = SpfTable::build_segmented(2, x + 2, config.segment_size, config.max_entries)?;
    let ctx = FactorContext::from_table(table);
    let c0_value = c0(config.c0_cutoff)?.value;

    let params: Vec<Checkpoint> = cps
        .iter()
        .map(|&c| checkpoint_params(c, config.c1))
        .collect::<Result<_>>()?;
    let diag = diag_params(x, config.b3)?;

    let blocks = x.div_ceil(BLOCK);
    let partials: Vec<(Vec<RowAcc>, DiagAcc)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK + 1;
            let hi = ((b + 1) * BLOCK).min(x);
            accumulate_block(lo, hi, &ctx, &params, &diag)
        })
        .collect();

    let mut rows = vec![RowAcc::default(); params.len()];
    let mut diag_acc = DiagAcc::new();
    for (r, d) in &partials {
        for (a, b) in rows.iter_mut().zip(r) {
            a.merge(b);
        }
        diag_acc.merge(d);
    }

    let lc = leading_constant();
    let rows = params
        .iter()
        .zip(&rows)
        .map(|(cp, acc)| {
            let c = cp.c as f64;
            let (pred_i, pred_k) = match cp.log3 {
                Some(l3) => (c0_value * lc * l3 * l3, lc * l3 * l3),
                None => (f64::NAN, f64::NAN),
            };
            let (mean_h_phi, mean_h_psi) = match cp.h_threshold {
                Some(_) => (acc.h_phi.value() / c, acc.h_psi.value() / c),
                None => (f64::NAN, f64::NAN),
            };
            SummaryRow {
                x: cp.c,
                mean_i: acc.i.value() / c,
                mean_k: acc.k.value() / c,
                mean_phi_over_psi: acc.r.value() / c,
                pred_i,
                pred_k,
                frac_positive: acc.positive as f64 / c,
                frac_in_a: if cp.m0.is_some() {
                    acc.in_a as f64 / c
                } else {
                    f64::NAN
                },
                mean_h_phi,
                mean_h_psi,
            }
        })
        .collect();

    let has_b = diag.b_bound.is_some();
    let has_d = diag.b.is_some();
    Ok(SweepReport {
        rows,
        diagnostics: SweepDiagnostics {
            x,
            c0_cutoff: config.c0_cutoff,
            c0: c0_value,
            extremes: diag_acc.extremes.to_vec(),
            count_in_b: has_b.then_some(diag_acc.in_b),
            b: diag.b,
            count_in_d1: has_d.then_some(diag_acc.d[0]),
            count_in_d2: has_d.then_some(diag_acc.d[1]),
            count_in_d3: has_d.then_some(diag_acc.d[2]),
            count_above_b3: diag.b3_limit.map(|_| diag_acc.above_b3),
            max_omega_phi: diag_acc.max_omega_phi,
            max_omega_psi: diag_acc.max_omega_psi,
        },
    })
}

fn positive_log3(c: u64) -> Option<f64> {
    let l3 = (c as f64).ln().ln().ln();
    (l3 > 0.0).then_some(l3)
}

fn checkpoint_params(c: u64, c1: f64) -> Result<Checkpoint> {
    let l2 = (c as f64).ln().ln();
    let log3 = positive_log3(c);
    let m0 = match log3 {
        Some(_) => Some(
            m_zero(c as f64, c1)?
                .factorization
                .to_u64_pairs()
                .expect("M0 prime powers are small"),
        ),
        None => None,
    };
    Ok(Checkpoint {
        c,
        h_threshold: (l2 > 0.0).then_some(l2),
        log3,
        m0,
    })
}

fn diag_params(x: u64, b3: f64) -> Result<DiagParams> {
    let log2 = (x as f64).ln().ln();
    Ok(DiagParams {
        x,
        log2,
        b_bound: positive_log3(x).map(|l3| 1.0 / l3.sqrt()),
        b: if x >= 16 { Some(d_threshold(x)?) } else { None },
        b3_limit: (log2 > 0.0).then(|| b3 * log2 * log2),
    })
}

fn accumulate_block(
    lo: u64,
    hi: u64,
    ctx: &FactorContext,
    params: &[Checkpoint],
    diag: &DiagParams,
) -> (Vec<RowAcc>, DiagAcc) {
    let mut rows = vec![RowAcc::default(); params.len()];
    let mut d = DiagAcc::new();
    let mut first = params.partition_point(|cp| cp.c < lo);
    for n in lo..=hi {
        while first < params.len() && params[first].c < n {
            first += 1;
        }
        let ev = evaluate(n, ctx);
        let (i, k, r) = (ev.i(), ev.k(), ev.phi_over_psi());
        let positive = ev.positive();
        for (cp, acc) in params[first..].iter().zip(&mut rows[first..]) {
            acc.i.add(i);
            acc.k.add(k);
            acc.r.add(r);
            acc.positive += positive as u64;
            if let Some(t) = cp.h_threshold {
                acc.h_phi.add(recip_sum_above(&ev.phi_fac, t));
                acc.h_psi.add(recip_sum_above(&ev.psi_fac, t));
            }
            if let Some(m0) = &cp.m0 {
                if in_upper_range(n, cp.c) && divides_both(m0, &ev) {
                    acc.in_a += 1;
                }
            }
        }
        diagnose(&ev, ctx, diag, &mut d);
    }
    (rows, d)
}

fn divides_both(m0: &[(u64, u32)], ev: &Evaluated) -> bool {
    m0.iter()
        .all(|&(p, a)| exponent(&ev.phi_fac, p) >= a && exponent(&ev.psi_fac, p) >= a)
}

fn diagnose(ev: &Evaluated, ctx: &FactorContext, params: &DiagParams, d: &mut DiagAcc) {
    let n = ev.n;
    let nf = n as f64;
    d.max_omega_phi = d.max_omega_phi.max(ev.phi_fac.len());
    d.max_omega_psi = d.max_omega_psi.max(ev.psi_fac.len());
    if n >= 3 {
        let l2n = nf.ln().ln();
        let values = [
            ev.phi_n as f64 * l2n / nf,
            ev.psi_phi as f64 / (nf * l2n),
            ev.psi_n as f64 / (nf * l2n),
            ev.phi_psi as f64 * l2n / nf,
            ev.k() / (l2n * l2n),
        ];
        for (e, v) in d.extremes.iter_mut().zip(values) {
            e.update(v, n);
        }
    }
    if let Some(bound) = params.b_bound {
        if in_upper_range(n, params.x)
            && recip_sum_above(&ev.phi_fac, params.log2) < bound
            && recip_sum_above(&ev.psi_fac, params.log2) < bound
        {
            d.in_b += 1;
        }
    }
    if let Some(b) = params.b {
        if ev.n_fac.len() as f64 > 3.0 * E * params.log2 {
            d.d[0] += 1;
        }
        let omega = |m: u64| ctx.factor_small(m).len() as u64;
        if ev.n_fac.iter().any(|&(p, _)| omega(p - 1) >= b) {
            d.d[1] += 1;
        }
        if ev.n_fac.iter().any(|&(p, _)| omega(p + 1) >= b) {
            d.d[2] += 1;
        }
    }
    if let Some(limit) = params.b3_limit {
        if ev.phi_fac.len() as f64 > limit || ev.psi_fac.len() as f64 > limit {
            d.above_b3 += 1;
        }
    }
}

//! Big-integer primality and factoring, least primes in arithmetic
//! progressions, and the extremal construction `n = P·Q` with
//! `P ≡ 1` and `Q ≡ −1 (mod M(x))`.
//!
//! For such `n` every prime `p ≤ x` divides both `φ(n)` and `ψ(n)`, which
//! forces `ψ(φ(n))/φ(n) ≥ ∏_{p≤x}(1 + 1/p)` and
//! `φ(ψ(n))/ψ(n) ≤ ∏_{p≤x}(1 − 1/p)`. [`construct_witness`] checks both
//! inequalities with exact rational arithmetic.

mod factor;
mod primality;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use factor::{factor_big, factor_big_with, factor_u64, FactorOptions};
pub use primality::{is_prime_u64, is_probable_prime, DEFAULT_ROUNDS};

use crate::arith::{phi, phi_factored, phi_over_identity, psi, psi_factored, psi_over_identity};
use crate::arith::{ExactRatio, ShiftedFactors};
use crate::constants::leading_constant;
use crate::error::{Error, Result};
use crate::numeric::ln_big;
use crate::sieve::{lcm_one_to, Factorization, LcmObject};

/// Candidates examined per parallel batch of a progression scan.
const SCAN_BATCH: u64 = 256;

/// Default cap on candidates examined by a progression scan.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// Least prime of a progression and how far the scan went.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgressionPrime {
    pub prime: BigUint,
    /// Index `k` with `prime = (a mod m) + k·m`.
    pub steps: u64,
    /// `ln prime / ln m`.
    pub exponent: f64,
}

/// Least prime `p ≡ a (mod m)`, scanning `a mod m, a mod m + m, …` in order.
pub fn least_prime_in_progression(m: &BigUint, a: &BigUint, rounds: u32) -> Result<ProgressionPrime> {
    least_prime_in_progression_with_budget(m, a, rounds, DEFAULT_SEARCH_BUDGET)
}

/// As [`least_prime_in_progression`], giving up after `max_candidates`.
///
/// Candidates are tested in parallel batches; the first prime by index wins,
/// so the answer equals that of a sequential scan.
pub fn least_prime_in_progression_with_budget(
    m: &BigUint,
    a: &BigUint,
    rounds: u32,
    max_candidates: u64,
) -> Result<ProgressionPrime> {
    if m < &BigUint::from(2u32) {
        return Err(Error::argument("modulus must be at least 2"));
    }
    let r = a % m;
    if !r.gcd(m).is_one() {
        return Err(Error::argument(format!("gcd({a}, {m}) is not 1")));
    }
    let mut start = 0u64;
    while start < max_candidates {
        let len = SCAN_BATCH.min(max_candidates - start);
        let hit = (0..len as usize)
            .into_par_iter()
            .position_first(|i| is_probable_prime(&(&r + m * (start + i as u64)), rounds));
        if let Some(i) = hit {
            let steps = start + i as u64;
            let prime = &r + m * steps;
            let exponent = ln_big(&prime) / ln_big(m);
            return Ok(ProgressionPrime { prime, steps, exponent });
        }
        start += len;
    }
    Err(Error::budget(
        "progression search",
        format!("no prime ≡ {r} (mod {m}) among the first {max_candidates} candidates"),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMode {
    /// Factor `P ± 1` and `Q ± 1` and evaluate every quantity exactly.
    Exact,
    /// Replace the factored quantities by their bounds over `p | M(x)`.
    BoundOnly,
}

impl WitnessMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessMode::Exact => "exact",
            WitnessMode::BoundOnly => "bound_only",
        }
    }
}

impl fmt::Display for WitnessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for WitnessMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(WitnessMode::Exact),
            "bound_only" | "bound-only" => Ok(WitnessMode::BoundOnly),
            _ => Err(Error::argument(format!("unknown witness mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessConfig {
    pub rounds: u32,
    /// Largest `x` attempted in exact mode; larger requests run bound-only.
    pub exact_cap: u64,
    /// Progression candidates examined before a budget error.
    pub search_budget: u64,
    pub factor: FactorOptions,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            rounds: DEFAULT_ROUNDS,
            exact_cap: 40,
            search_budget: DEFAULT_SEARCH_BUDGET,
            factor: FactorOptions::default(),
        }
    }
}

/// Pass/fail of each link of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainChecks {
    pub m_divides_p_minus_1: bool,
    pub m_divides_q_plus_1: bool,
    pub p_prime: bool,
    pub q_prime: bool,
    /// `lhs_34 ≥ rhs_34`.
    pub lower_bound_psi_phi: bool,
    /// `lhs_36 ≤ rhs_36`.
    pub upper_bound_phi_psi: bool,
    /// `I(n)·ψ(n)/φ(n) = lhs_34 / lhs_36`; exact mode only.
    pub identity: Option<bool>,
}

impl ChainChecks {
    /// Every hard check holds.
    pub fn all_hold(&self) -> bool {
        self.m_divides_p_minus_1
            && self.m_divides_q_plus_1
            && self.p_prime
            && self.q_prime
            && self.lower_bound_psi_phi
            && self.upper_bound_phi_psi
            && self.identity.unwrap_or(true)
    }
}

/// Size and growth diagnostics; none of these is asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessDiagnostics {
    pub log_m: f64,
    pub log_n: f64,
    /// `ln n < 23x`.
    pub log_n_below_23x: bool,
    pub exponent_p: f64,
    pub exponent_q: f64,
    /// `ψ(n)/φ(n)`, exact.
    pub psi_over_phi_n: ExactRatio,
    /// `I(n)·ψ(n)/φ(n)` in exact mode, or its lower bound `lhs_34/lhs_36`.
    pub product: ExactRatio,
    /// `(6/π²)e^{2γ}·(ln ln n)²`.
    pub reference: f64,
}

/// Full record of one construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub x: u64,
    pub m: LcmObject,
    pub p: BigUint,
    pub q: BigUint,
    pub n: BigUint,
    /// `(P − 1)/M`.
    pub k_p: BigUint,
    /// `(Q + 1)/M`.
    pub k_q: BigUint,
    /// `ψ(φ(n))/φ(n)`, or `∏_{p|M}(1 + 1/p)` when bound-only.
    pub lhs_34: ExactRatio,
    /// `∏_{p≤x}(1 + 1/p)`.
    pub rhs_34: ExactRatio,
    /// `φ(ψ(n))/ψ(n)`, or `∏_{p|M}(1 − 1/p)` when bound-only.
    pub lhs_36: ExactRatio,
    /// `∏_{p≤x}(1 − 1/p)`.
    pub rhs_36: ExactRatio,
    pub i_value: Option<ExactRatio>,
    pub mode: WitnessMode,
    pub requested_mode: WitnessMode,
    /// Why an exact request ended up bound-only.
    pub failed_stage: Option<String>,
    pub checks: ChainChecks,
    pub p_equals_q: bool,
    pub n_squarefree: bool,
    pub diagnostics: WitnessDiagnostics,
}

struct ExactParts {
    lhs_34: ExactRatio,
    lhs_36: ExactRatio,
    i_value: ExactRatio,
}

/// Builds `M(x)`, the least `P ≡ 1` and `Q ≡ −1 (mod M(x))`, `n = P·Q`, and
/// checks the inequality chain.
///
/// Exact mode falls back to bound-only (recording `failed_stage`) when `x`
/// exceeds `config.exact_cap` or a factoring budget runs out. Budget errors
/// of the progression search are returned as errors.
pub fn construct_witness(x: u64, mode: WitnessMode, config: &WitnessConfig) -> Result<WitnessReport> {
    if x < 2 {
        return Err(Error::argument("x must be at least 2"));
    }
    let m = lcm_one_to(x);
    let mv = m.value().clone();
    let found_p = least_prime_in_progression_with_budget(&mv, &BigUint::one(), config.rounds, config.search_budget)?;
    let found_q = least_prime_in_progression_with_budget(
        &mv,
        &(&mv - 1u32),
        config.rounds,
        config.search_budget,
    )?;
    let (p, q) = (found_p.prime, found_q.prime);
    let p_equals_q = p == q;
    let n = &p * &q;
    let n_fac = if p_equals_q {
        Factorization::from_factors(vec![(p.clone(), 2)])?
    } else {
        Factorization::from_unsorted([(p.clone(), 1), (q.clone(), 1)])
    };

    let rhs_34 = psi_over_identity(&m.factorization);
    let rhs_36 = phi_over_identity(&m.factorization);

    let (exact, failed_stage) = match mode {
        WitnessMode::BoundOnly => (None, None),
        WitnessMode::Exact if x > config.exact_cap => (
            None,
            Some(format!("exact mode is capped at x <= {}", config.exact_cap)),
        ),
        WitnessMode::Exact => match exact_parts(&m, &p, &q, &n_fac, &config.factor) {
            Ok(parts) => (Some(parts), None),
            Err(e @ Error::Budget { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        },
    };

    let (lhs_34, lhs_36, i_value, used_mode) = match exact {
        Some(parts) => (parts.lhs_34, parts.lhs_36, Some(parts.i_value), WitnessMode::Exact),
        None => (rhs_34.clone(), rhs_36.clone(), None, WitnessMode::BoundOnly),
    };

    let psi_over_phi_n = ExactRatio::new(psi(&n_fac), phi(&n_fac))?;
    let chain = &lhs_34 / &lhs_36;
    let identity = i_value.as_ref().map(|i| &(i * &psi_over_phi_n) == &chain);
    let product = match &i_value {
        Some(i) => i * &psi_over_phi_n,
        None => chain,
    };

    let checks = ChainChecks {
        m_divides_p_minus_1: ((&p - 1u32) % &mv).is_zero(),
        m_divides_q_plus_1: ((&q + 1u32) % &mv).is_zero(),
        p_prime: is_probable_prime(&p, config.rounds),
        q_prime: is_probable_prime(&q, config.rounds),
        lower_bound_psi_phi: lhs_34 >= rhs_34,
        upper_bound_phi_psi: lhs_36 <= rhs_36,
        identity,
    };

    let log_n = ln_big(&n);
    let diagnostics = WitnessDiagnostics {
        log_m: ln_big(&mv),
        log_n,
        log_n_below_23x: log_n < 23.0 * x as f64,
        exponent_p: found_p.exponent,
        exponent_q: found_q.exponent,
        psi_over_phi_n,
        product,
        reference: leading_constant() * log_n.ln().powi(2),
    };

    Ok(WitnessReport {
        x,
        k_p: (&p - 1u32) / &mv,
        k_q: (&q + 1u32) / &mv,
        n_squarefree: n_fac.is_squarefree(),
        m,
        p,
        q,
        n,
        lhs_34,
        rhs_34,
        lhs_36,
        rhs_36,
        i_value,
        mode: used_mode,
        requested_mode: mode,
        failed_stage,
        checks,
        p_equals_q,
        diagnostics,
    })
}

fn exact_parts(
    m: &LcmObject,
    p: &BigUint,
    q: &BigUint,
    n_fac: &Factorization,
    options: &FactorOptions,
) -> Result<ExactParts> {
    let hint = Some(&m.factorization);
    let mut down = ShiftedFactors::new();
    let mut up = ShiftedFactors::new();
    down.insert(p.clone(), factor_big_with(&(p - 1u32), hint, options)?);
    up.insert(q.clone(), factor_big_with(&(q + 1u32), hint, options)?);
    if p != q {
        down.insert(q.clone(), factor_big_with(&(q - 1u32), None, options)?);
        up.insert(p.clone(), factor_big_with(&(p + 1u32), None, options)?);
    }
    let phi_n = phi_factored(n_fac, &down)?;
    let psi_n = psi_factored(n_fac, &up)?;
    Ok(ExactParts {
        lhs_34: psi_over_identity(&phi_n),
        lhs_36: phi_over_identity(&psi_n),
        i_value: ExactRatio::new(psi(&phi_n), phi(&psi_n))?,
    })
}

fn ratio_json(r: &ExactRatio) -> Value {
    json!({ "num": r.num().to_string(), "den": r.den().to_string() })
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

impl WitnessReport {
    /// JSON form: integers as decimal strings, rationals as `{num, den}`,
    /// mode and flags as strings.
    pub fn to_json(&self) -> Value {
        let c = &self.checks;
        let d = &self.diagnostics;
        json!({
            "x": self.x.to_string(),
            "M": self.m.value().to_string(),
            "M_factorization": self.m.factorization.to_string(),
            "P": self.p.to_string(),
            "Q": self.q.to_string(),
            "n": self.n.to_string(),
            "kP": self.k_p.to_string(),
            "kQ": self.k_q.to_string(),
            "lhs_34": ratio_json(&self.lhs_34),
            "rhs_34": ratio_json(&self.rhs_34),
            "lhs_36": ratio_json(&self.lhs_36),
            "rhs_36": ratio_json(&self.rhs_36),
            "I_value": self.i_value.as_ref().map(ratio_json),
            "mode": self.mode.as_str(),
            "requested_mode": self.requested_mode.as_str(),
            "failed_stage": self.failed_stage,
            "p_equals_q": flag(self.p_equals_q),
            "n_squarefree": flag(self.n_squarefree),
            "checks": {
                "m_divides_p_minus_1": flag(c.m_divides_p_minus_1),
                "m_divides_q_plus_1": flag(c.m_divides_q_plus_1),
                "p_prime": flag(c.p_prime),
                "q_prime": flag(c.q_prime),
                "lhs_34_ge_rhs_34": flag(c.lower_bound_psi_phi),
                "lhs_36_le_rhs_36": flag(c.upper_bound_phi_psi),
                "identity": c.identity.map(flag),
                "all_hold": flag(c.all_hold()),
            },
            "diagnostics": {
                "log_M": d.log_m,
                "log_n": d.log_n,
                "log_n_below_23x": flag(d.log_n_below_23x),
                "exponent_P": d.exponent_p,
                "exponent_Q": d.exponent_q,
                "psi_over_phi_n": ratio_json(&d.psi_over_phi_n),
                "I_times_psi_over_phi": ratio_json(&d.product),
                "I_times_psi_over_phi_f64": d.product.to_f64(),
                "reference": d.reference,
            },
        })
    }
}

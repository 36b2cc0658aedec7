//! The constants behind the maximal and average orders of `I(n)` and `K(n)`,
//! and truncated Euler/Mertens products.
//!
//! Every logarithm is natural. Products are formed by compensated summation
//! of `ln(1 ± t)` terms and exponentiated once at the end, which keeps ten
//! million near-unity factors from drifting.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::sieve::primes_in;

/// Euler–Mascheroni constant γ.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// π to 20 digits.
#[allow(clippy::excessive_precision)]
pub const PI_20: f64 = 3.141_592_653_589_793_238_46;

const _: () = assert!(PI_20 == PI);

/// Slack factor in the certified `c₀` tail bound `3 / cutoff`.
const C0_TAIL_NUMERATOR: f64 = 3.0;

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// `6/π²`, the density of squarefree integers.
pub fn six_over_pi_squared() -> f64 {
    6.0 / (PI_20 * PI_20)
}

/// `(6/π²)·e^{2γ}`, the constant of the maximal order of `I(n)` and of the
/// leading terms of both average orders.
pub fn leading_constant() -> f64 {
    six_over_pi_squared() * (2.0 * EULER_GAMMA).exp()
}

/// A truncated product over primes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductEstimate {
    /// Largest prime included.
    pub cutoff: u64,
    pub value: f64,
    /// Bound on `|log(full product / truncated product)|`; infinite when the
    /// full product diverges.
    pub tail_bound: f64,
}

impl ProductEstimate {
    /// Interval `[value·e^{−tail}, value·e^{tail}]` guaranteed to hold the full product.
    pub fn interval(&self) -> (f64, f64) {
        (
            self.value * (-self.tail_bound).exp(),
            self.value * self.tail_bound.exp(),
        )
    }
}

/// A Mertens partial product and its leading-order prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MertensEstimate {
    pub product: ProductEstimate,
    pub predicted: f64,
}

impl MertensEstimate {
    pub fn ratio(&self) -> f64 {
        self.product.value / self.predicted
    }
}

/// `c₀ = ∏_p (1 − 2/(p(p+1)))` truncated at primes `≤ cutoff`.
///
/// The tail satisfies `|log(1 − t)| ≤ t/(1 − t)` with `t ≤ 2/(p(p+1)) ≤ 1/3`,
/// and `Σ_{n>N} 2/(n(n+1)) = 2/(N+1)`, so `3/cutoff` bounds the log of the
/// missing factors.
pub fn c0(cutoff: u64) -> Result<ProductEstimate> {
    if cutoff < 2 {
        return Err(Error::argument("c0 cutoff must be at least 2"));
    }
    let (sum, last) = log_product(cutoff, |p| -2.0 / (p * (p + 1.0)));
    Ok(ProductEstimate {
        cutoff: last,
        value: sum.exp(),
        tail_bound: C0_TAIL_NUMERATOR / cutoff as f64,
    })
}

/// `∏_{p≤x} (1 − 1/p)` with prediction `e^{−γ} / log x`.
pub fn mertens_minus(x: u64) -> Result<MertensEstimate> {
    if x < 2 {
        return Err(Error::argument("Mertens products need x ≥ 2"));
    }
    let (sum, last) = log_product(x, |p| -1.0 / p);
    Ok(MertensEstimate {
        product: ProductEstimate {
            cutoff: last,
            value: sum.exp(),
            tail_bound: f64::INFINITY,
        },
        predicted: (-EULER_GAMMA).exp() / (x as f64).ln(),
    })
}

/// `∏_{p≤x} (1 + 1/p)` with prediction `(6e^γ/π²) · log x`.
pub fn mertens_plus(x: u64) -> Result<MertensEstimate> {
    if x < 2 {
        return Err(Error::argument("Mertens products need x ≥ 2"));
    }
    let (sum, last) = log_product(x, |p| 1.0 / p);
    Ok(MertensEstimate {
        product: ProductEstimate {
            cutoff: last,
            value: sum.exp(),
            tail_bound: f64::INFINITY,
        },
        predicted: six_over_pi_squared() * EULER_GAMMA.exp() * (x as f64).ln(),
    })
}

/// `log_k x`: the natural logarithm applied `k` times.
///
/// Fails when some intermediate argument is not positive. The final value may
/// be negative; callers that need a positive value check it themselves.
pub fn iterated_log(x: f64, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::argument("iteration count must be positive"));
    }
    let mut v = x;
    for i in 0..k {
        if !(v > 0.0) {
            return Err(Error::domain(format!(
                "log_{k}({x}) undefined: iteration {i} has argument {v}"
            )));
        }
        v = v.ln();
    }
    Ok(v)
}

/// Compensated `Σ_{p≤limit} ln(1 + term(p))`, plus the last prime seen.
fn log_product(limit: u64, term: impl Fn(f64) -> f64) -> (f64, u64) {
    let mut sum = CompensatedSum::new();
    let mut last = 0;
    for p in primes_in(2, limit + 1) {
        sum.add(term(p as f64).ln_1p());
        last = p;
    }
    (sum.value(), last)
}

use num_bigint::BigUint;

use super::primes::primes_in;
use super::Factorization;
use crate::constants::iterated_log;
use crate::error::{Error, Result};

/// Largest threshold `g(x)` for which `M₀` is materialised.
const MAX_PRIME_POWER_THRESHOLD: f64 = 4_294_967_296.0;

/// Which prime powers an [`LcmObject`] collects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LcmBound {
    /// Every prime power `p^a ≤ bound`: `M(x) = lcm(1, …, x)`.
    AtMost(u64),
    /// Every prime power `p^a < bound`: `M₀(x)` with `bound = g(x)`.
    Below(f64),
}

/// A least common multiple of prime powers, kept in factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct LcmObject {
    /// The cutoff parameter the object was built from.
    pub x: f64,
    pub bound: LcmBound,
    pub factorization: Factorization,
}

impl LcmObject {
    /// Expands the product. `M(x)` grows like `e^x`, so only do this when the
    /// integer itself is needed.
    pub fn value(&self) -> &BigUint {
        self.factorization.value()
    }

    /// The threshold `g(x)` of an `M₀` object.
    pub fn g(&self) -> Option<f64> {
        match self.bound {
            LcmBound::Below(g) => Some(g),
            LcmBound::AtMost(_) => None,
        }
    }

    /// Prime powers `p^a` of the product, as machine words.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factorization
            .to_u64_pairs()
            .unwrap_or_default()
            .into_iter()
            .map(|(p, e)| p.pow(e))
            .collect()
    }

    /// True if the product divides `n`.
    pub fn divides_u64(&self, n: u64) -> bool {
        n != 0 && self.prime_powers().into_iter().all(|q| n % q == 0)
    }
}

/// `M(x) = lcm(1, 2, …, x)`: each prime `p ≤ x` with exponent `⌊log x / log p⌋`.
pub fn lcm_one_to(x: u64) -> LcmObject {
    let pairs: Vec<(u64, u32)> = primes_in(2, x.saturating_add(1))
        .map(|p| (p, max_power_at_most(p, x)))
        .collect();
    LcmObject {
        x: x as f64,
        bound: LcmBound::AtMost(x),
        factorization: Factorization::from_u64_pairs(&pairs),
    }
}

/// `g(x) = c₁ · log₂ x / log₃ x`, defined for `x > e^e`.
pub fn g_threshold(x: f64, c1: f64) -> Result<f64> {
    if !(c1 > 0.0) {
        return Err(Error::argument("c1 must be positive"));
    }
    let l2 = iterated_log(x, 2)?;
    let l3 = iterated_log(x, 3)?;
    if !(l3 > 0.0) {
        return Err(Error::domain(format!("log3({x}) is not positive; need x > e^e")));
    }
    Ok(c1 * l2 / l3)
}

/// `M₀(x) = lcm{p^a : p^a < g(x)}`.
pub fn m_zero(x: f64, c1: f64) -> Result<LcmObject> {
    let g = g_threshold(x, c1)?;
    m_zero_below(x, g)
}

/// `M₀` for an explicitly supplied threshold `g`.
pub fn m_zero_below(x: f64, g: f64) -> Result<LcmObject> {
    if g > MAX_PRIME_POWER_THRESHOLD {
        return Err(Error::resource(format!(
            "threshold g = {g:e} is too large to enumerate its prime powers"
        )));
    }
    let pairs: Vec<(u64, u32)> = if g <= 2.0 {
        Vec::new()
    } else {
        let top = g.ceil() as u64;
        primes_in(2, top)
            .filter(|&p| (p as f64) < g)
            .map(|p| {
                let mut e = 1;
                let mut q = p;
                while ((q * p) as f64) < g {
                    q *= p;
                    e += 1;
                }
                (p, e)
            })
            .collect()
    };
    Ok(LcmObject {
        x,
        bound: LcmBound::Below(g),
        factorization: Factorization::from_u64_pairs(&pairs),
    })
}

fn max_power_at_most(p: u64, x: u64) -> u32 {
    let mut e = 1;
    let mut q = p;
    while let Some(next) = q.checked_mul(p) {
        if next > x {
            break;
        }
        q = next;
        e += 1;
    }
    e
}

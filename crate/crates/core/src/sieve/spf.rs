use num_bigint::BigUint;
use rayon::prelude::*;
use smallvec::SmallVec;

use super::primes::small_primes;
use super::Factorization;
use crate::error::{Error, Result};
use crate::numeric::isqrt;

/// Default number of entries per table segment.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 22;

/// Default cap on the total number of entries a single table may hold
/// (4 bytes each, so 1 GiB).
pub const DEFAULT_MAX_ENTRIES: u64 = 1 << 28;

/// Prime-power pairs of a word-sized number, kept inline for the common case.
pub type PrimePowers = SmallVec<[(u64, u32); 12]>;

/// Smallest-prime-factor lookup for the contiguous range `[lo, hi)`.
///
/// Composite entries store their least prime factor (always below `2^32`
/// for a `u64` argument); prime entries store `0` and resolve to themselves.
/// The table also keeps every prime up to `√(hi − 1)` so that cofactors that
/// fall below `lo` can still be split by trial division.
#[derive(Debug, Clone)]
pub struct SpfTable {
    lo: u64,
    hi: u64,
    spf: Vec<u32>,
    base_primes: Vec<u32>,
}

impl SpfTable {
    /// Builds the table for `[lo, hi)` under the default memory budget.
    pub fn build(lo: u64, hi: u64) -> Result<Self> {
        Self::build_with_budget(lo, hi, DEFAULT_MAX_ENTRIES)
    }

    pub fn build_with_budget(lo: u64, hi: u64, max_entries: u64) -> Result<Self> {
        check_range(lo, hi, max_entries)?;
        let base = base_primes_for(hi);
        Ok(build_segment(lo, hi, &base))
    }

    /// Builds `[lo, hi)` as independent segments of `segment_size` entries on
    /// the current rayon pool and concatenates them.
    pub fn build_segmented(
        lo: u64,
        hi: u64,
        segment_size: usize,
        max_entries: u64,
    ) -> Result<Self> {
        check_range(lo, hi, max_entries)?;
        if segment_size == 0 {
            return Err(Error::argument("segment size must be positive"));
        }
        let base = base_primes_for(hi);
        let step = segment_size as u64;
        let bounds: Vec<(u64, u64)> = (0..(hi - lo).div_ceil(step))
            .map(|i| (lo + i * step, (lo + (i + 1) * step).min(hi)))
            .collect();
        let parts: Vec<SpfTable> = bounds
            .par_iter()
            .map(|&(a, b)| build_segment(a, b, &base))
            .collect();
        SpfTable::concat(parts)
    }

    /// Joins adjacent tables `[a, b) ++ [b, c) ++ …` into one.
    pub fn concat(parts: Vec<SpfTable>) -> Result<Self> {
        let mut iter = parts.into_iter();
        let mut acc = iter
            .next()
            .ok_or_else(|| Error::argument("nothing to concatenate"))?;
        for next in iter {
            if next.lo != acc.hi {
                return Err(Error::argument(format!(
                    "tables are not adjacent: [{}, {}) then [{}, {})",
                    acc.lo, acc.hi, next.lo, next.hi
                )));
            }
            acc.hi = next.hi;
            acc.spf.extend_from_slice(&next.spf);
            if next.base_primes.len() > acc.base_primes.len() {
                acc.base_primes = next.base_primes;
            }
        }
        Ok(acc)
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n < self.hi
    }

    /// Smallest prime factor of `n`, or `None` outside the table.
    #[inline]
    pub fn spf(&self, n: u64) -> Option<u64> {
        if !self.contains(n) {
            return None;
        }
        match self.spf[(n - self.lo) as usize] {
            0 => Some(n),
            p => Some(p as u64),
        }
    }

    pub fn is_prime(&self, n: u64) -> Option<bool> {
        self.spf(n).map(|p| p == n)
    }

    /// Canonical factorization of `n` (`n = 1` gives the empty factorization).
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        let pairs = self.factor_small(n)?;
        Ok(Factorization::from_factors(
            pairs
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect(),
        )
        .expect("table output is canonical"))
    }

    /// Word-sized variant of [`SpfTable::factorize`] for hot loops.
    pub fn factor_small(&self, n: u64) -> Result<PrimePowers> {
        if n == 1 {
            return Ok(PrimePowers::new());
        }
        if !self.contains(n) {
            return Err(Error::argument(format!(
                "{n} is outside the table range [{}, {})",
                self.lo, self.hi
            )));
        }
        Ok(self.factor_in_range(n))
    }

    #[inline]
    pub(crate) fn factor_in_range(&self, mut n: u64) -> PrimePowers {
        let mut out = PrimePowers::new();
        while n > 1 {
            let Some(p) = self.spf(n) else {
                self.trial_divide_rest(n, out.last().map_or(2, |&(p, _)| p), &mut out);
                break;
            };
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    fn trial_divide_rest(&self, mut n: u64, from: u64, out: &mut PrimePowers) {
        let start = self.base_primes.partition_point(|&q| (q as u64) < from);
        for &q in &self.base_primes[start..] {
            let q = q as u64;
            if q * q > n {
                break;
            }
            if n % q == 0 {
                let mut e = 0;
                while n % q == 0 {
                    n /= q;
                    e += 1;
                }
                out.push((q, e));
            }
        }
        if n > 1 {
            out.push((n, 1));
        }
    }
}

fn check_range(lo: u64, hi: u64, max_entries: u64) -> Result<()> {
    if lo < 2 {
        return Err(Error::argument("table range must start at 2 or above"));
    }
    if hi <= lo {
        return Err(Error::argument(format!("empty table range [{lo}, {hi})")));
    }
    if hi - lo > max_entries {
        return Err(Error::resource(format!(
            "table of {} entries exceeds the budget of {max_entries}",
            hi - lo
        )));
    }
    Ok(())
}

fn base_primes_for(hi: u64) -> Vec<u32> {
    small_primes(isqrt(hi - 1) as u32)
}

fn build_segment(lo: u64, hi: u64, base: &[u32]) -> SpfTable {
    let len = (hi - lo) as usize;
    let mut spf = vec![0u32; len];
    for &p in base {
        let p64 = p as u64;
        let sq = p64 * p64;
        if sq >= hi {
            break;
        }
        let mut m = sq.max(lo.div_ceil(p64) * p64);
        // Even multiples of an odd prime already belong to 2.
        let step = if p == 2 {
            p64
        } else {
            if m % 2 == 0 {
                m += p64;
            }
            2 * p64
        };
        while m < hi {
            let slot = &mut spf[(m - lo) as usize];
            if *slot == 0 {
                *slot = p;
            }
            m += step;
        }
    }
    SpfTable {
        lo,
        hi,
        spf,
        base_primes: base.to_vec(),
    }
}

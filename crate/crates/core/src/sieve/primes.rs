use crate::numeric::isqrt;

const STREAM_SEGMENT: u64 = 1 << 18;

/// All primes `≤ limit` by a plain odd-only sieve.
pub fn small_primes(limit: u32) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    // composite[i] describes 2i + 1
    let mut composite = vec![false; limit / 2 + 1];
    let mut out = vec![2u32];
    let mut i = 1;
    while 2 * i + 1 <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            out.push(p as u32);
            let mut m = p * p;
            while m <= limit {
                composite[m / 2] = true;
                m += 2 * p;
            }
        }
        i += 1;
    }
    out
}

/// Primes in `[lo, hi)` in increasing order, produced by a segmented sieve.
pub fn primes_in(lo: u64, hi: u64) -> PrimeStream {
    PrimeStream::new(lo, hi)
}

/// Iterator over the primes of a half-open range.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    base: Vec<u32>,
    next_lo: u64,
    hi: u64,
    buffer: Vec<u64>,
    pos: usize,
}

impl PrimeStream {
    fn new(lo: u64, hi: u64) -> Self {
        let lo = lo.max(2);
        let base = if hi > lo {
            small_primes(isqrt(hi - 1) as u32)
        } else {
            Vec::new()
        };
        PrimeStream {
            base,
            next_lo: lo,
            hi,
            buffer: Vec::new(),
            pos: 0,
        }
    }

    fn refill(&mut self) -> bool {
        while self.next_lo < self.hi {
            let lo = self.next_lo;
            let hi = lo.saturating_add(STREAM_SEGMENT).min(self.hi);
            self.next_lo = hi;
            let mut composite = vec![false; (hi - lo) as usize];
            for &p in &self.base {
                let p = p as u64;
                if p * p >= hi {
                    break;
                }
                let mut m = (p * p).max(lo.div_ceil(p) * p);
                while m < hi {
                    composite[(m - lo) as usize] = true;
                    m += p;
                }
            }
            self.buffer.clear();
            self.pos = 0;
            self.buffer.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64),
            );
            if !self.buffer.is_empty() {
                return true;
            }
        }
        false
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.buffer.len() && !self.refill() {
            return None;
        }
        let p = self.buffer[self.pos];
        self.pos += 1;
        Some(p)
    }
}

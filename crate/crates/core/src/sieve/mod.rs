//! Prime generation, smallest-prime-factor tables, canonical factorizations
//! and the LCM objects `M(x)` and `M₀(x)`.

mod factorization;
mod lcm;
mod primes;
mod spf;

pub use factorization::Factorization;
pub use lcm::{g_threshold, lcm_one_to, m_zero, m_zero_below, LcmBound, LcmObject};
pub use primes::{primes_in, small_primes, PrimeStream};
pub use spf::{PrimePowers, SpfTable, DEFAULT_MAX_ENTRIES, DEFAULT_SEGMENT_SIZE};

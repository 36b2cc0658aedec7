//! Exact evaluation of the compositions of Euler's totient φ and Dedekind's ψ,
//!
//! ```text
//! I(n) = ψ(φ(n)) / φ(ψ(n))        K(n) = ψ(φ(n)) / φ(φ(n))
//! ```
//!
//! together with the constants, Mertens-type products, bulk averaging
//! experiments and the extremal `n = P·Q` construction that describe their
//! maximal and average orders.
//!
//! The crate is organised bottom-up:
//!
//! - [`sieve`]: primes, segmented smallest-prime-factor tables, canonical
//!   factorizations and the LCM objects `M(x)` and `M₀(x)`.
//! - [`arith`]: exact φ, ψ, their compositions, `I(n)`, `K(n)`, `ω(n)` and the
//!   Dirichlet coefficients of `φ/ψ = 1 * a`.
//! - [`constants`]: γ, `(6/π²)e^{2γ}`, the product `c₀` and the Mertens partial
//!   products with their asymptotic predictions.
//! - [`experiments`]: deterministic parallel sweeps over `1..=x` and the set
//!   classifiers used by the averaging arguments.
//! - [`witness`]: big-integer primality, factoring and the `P ≡ 1`, `Q ≡ −1
//!   (mod M(x))` construction with an exactly checked inequality chain.
//! - [`cli`]: the `phipsi` command-line front end.
//!
//! Runnable walkthroughs for each capability live in the crate's `examples/`
//! directory.

pub mod arith;
pub mod cli;
pub mod constants;
mod error;
pub mod experiments;
pub mod numeric;
pub mod sieve;
pub mod witness;

pub use arith::{ratio_i, ratio_k, ExactRatio, FactorContext, SignedExactRatio};
pub use error::{Error, Result};
pub use sieve::{Factorization, SpfTable};

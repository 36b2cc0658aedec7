use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{is_prime_u64, is_probable_prime, mul_mod, DEFAULT_ROUNDS};
use crate::error::{Error, Result};
use crate::sieve::{small_primes, Factorization};

/// Limits for [`factor_big_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    /// Miller–Rabin rounds used to certify cofactors above `2^64`.
    pub rounds: u32,
    /// Trial division runs over every prime below this bound.
    pub trial_limit: u32,
    /// Total Pollard-rho iterations allowed across all big cofactors.
    pub rho_iterations: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            rounds: DEFAULT_ROUNDS,
            trial_limit: 1_000_000,
            rho_iterations: 20_000_000,
        }
    }
}

fn trial_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| small_primes(1_000_000))
}

/// Sorted prime-power factorization of a machine word (`n ≤ 1` gives `[]`).
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut m = n;
    for &p in trial_primes().iter().take(168) {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack = vec![m];
    let mut big = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            big.push(m);
            continue;
        }
        let d = rho_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
    big.sort_unstable();
    for p in big {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// A nontrivial factor of an odd composite word, by Brent's variant of rho.
fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let f = |y: u64, c: u64| (mul_mod(y, y, n) + c) % n;
    for c in 1.. {
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let (mut x, mut ys);
        let mut g;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho iterates over unbounded c")
}

/// Full factorization of an arbitrary-precision natural with default limits.
pub fn factor_big(n: &BigUint, hint: Option<&Factorization>) -> Result<Factorization> {
    factor_big_with(n, hint, &FactorOptions::default())
}

/// Full factorization: divide out the primes of `hint` (a factorization of
/// some known divisor), trial-divide below `trial_limit`, then split what is
/// left with Pollard–Brent rho, certifying cofactors with
/// [`is_probable_prime`].
pub fn factor_big_with(
    n: &BigUint,
    hint: Option<&Factorization>,
    options: &FactorOptions,
) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::argument("cannot factor zero"));
    }
    let mut pairs: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();

    if let Some(h) = hint {
        for p in h.primes() {
            let e = divide_out(&mut m, p);
            if e > 0 {
                pairs.push((p.clone(), e));
            }
        }
    }

    for &p in trial_primes() {
        if p >= options.trial_limit || m.is_one() {
            break;
        }
        if let Some(w) = m.to_u64() {
            pairs.extend(factor_u64(w).into_iter().map(|(p, e)| (BigUint::from(p), e)));
            m = BigUint::one();
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % p).is_zero() {
            let e = divide_out(&mut m, &pb);
            pairs.push((pb, e));
        }
    }

    let mut budget = options.rho_iterations;
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(w) = m.to_u64() {
            pairs.extend(factor_u64(w).into_iter().map(|(p, e)| (BigUint::from(p), e)));
            continue;
        }
        if is_probable_prime(&m, options.rounds) {
            pairs.push((m, 1));
            continue;
        }
        let d = rho_big(&m, &mut budget)?;
        let rest = &m / &d;
        stack.push(d);
        stack.push(rest);
    }
    Ok(Factorization::from_unsorted(pairs))
}

fn divide_out(m: &mut BigUint, p: &BigUint) -> u32 {
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        *m = q;
        e += 1;
    }
}

fn rho_big(n: &BigUint, budget: &mut u64) -> Result<BigUint> {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |y: &BigUint| (y * y + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut x;
        let mut ys;
        let mut g;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                let batch = 128.min(r - k);
                if *budget < batch {
                    return Err(Error::budget(
                        "pollard rho",
                        format!("iteration budget exhausted on a {}-bit cofactor", n.bits()),
                    ));
                }
                *budget -= batch;
                for _ in 0..batch {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * diff) % n;
                }
                g = q.gcd(n);
                k += batch;
                if k >= r || g != one {
                    break;
                }
            }
            r *= 2;
            if g != one {
                break;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Ok(g);
        }
    }
    unreachable!("rho iterates over unbounded c")
}

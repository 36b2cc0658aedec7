//! Strong-pseudoprime and strong Lucas tests.
//!
//! Below `2^64` the Miller–Rabin test with the first twelve prime bases is
//! deterministic. Above it, `rounds` Miller–Rabin bases (base 2 followed by
//! reproducible pseudo-random bases) are combined with a strong Lucas test
//! using Selfridge's parameters.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Miller–Rabin rounds used when the caller has no preference.
pub const DEFAULT_ROUNDS: u32 = 40;

const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const BASE_SEED: u64 = 0x5eed_0f_b0a5e5;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary-precision natural.
///
/// Exact below `2^64`. Above it a composite is accepted with probability at
/// most `4^{−rounds}` by the Miller–Rabin stage alone, and no composite is
/// known to pass the additional strong Lucas stage.
pub fn is_probable_prime(n: &BigUint, rounds: u32) -> bool {
    if let Some(w) = n.to_u64() {
        return is_prime_u64(w);
    }
    if n.is_even() {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;

    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED ^ n.iter_u64_digits().next().unwrap_or(0));
    let lo = BigUint::from(3u32);
    for round in 0..rounds.max(1) {
        let a = if round == 0 {
            BigUint::from(2u32)
        } else {
            rng.gen_biguint_range(&lo, &n_minus_1)
        };
        if !strong_probable_prime(n, &n_minus_1, &d, s, &a) {
            return false;
        }
    }
    strong_lucas_probable_prime(n)
}

fn strong_probable_prime(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Jacobi symbol `(a/n)` for odd `n`.
pub(crate) fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    debug_assert!(n.is_odd());
    let mut a = a % n;
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let r8 = (&n % 8u32).to_u32().unwrap_or(0);
        if z % 2 == 1 && (r8 == 3 || r8 == 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's method A (`P = 1`).
pub(crate) fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }

    // First D in 5, −7, 9, −11, … with (D/n) = −1.
    let mut d_abs: u64 = 5;
    let mut negative = false;
    let d_mod = loop {
        let abs_mod = BigUint::from(d_abs) % n;
        let residue = if negative && !abs_mod.is_zero() {
            n - &abs_mod
        } else {
            abs_mod
        };
        match jacobi(&residue, n) {
            -1 => break residue,
            0 => return n == &BigUint::from(d_abs),
            _ => {}
        }
        d_abs += 2;
        negative = !negative;
    };
    // Q = (1 − D)/4, reduced mod n.
    let q_mod = if negative {
        BigUint::from((1 + d_abs) / 4) % n
    } else {
        let q_abs = BigUint::from((d_abs - 1) / 4) % n;
        if q_abs.is_zero() {
            q_abs
        } else {
            n - q_abs
        }
    };

    let half = |x: BigUint| -> BigUint {
        if x.is_odd() {
            (x + n) >> 1
        } else {
            x >> 1
        }
    };

    let n_plus_1: BigUint = n + 1u32;
    let s = n_plus_1.trailing_zeros().expect("n + 1 > 0");
    let d = &n_plus_1 >> s;

    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q_mod.clone();
    let two_n = n * 2u32;
    for bit in (0..d.bits() - 1).rev() {
        u = (&u * &v) % n;
        v = ((&v * &v) + &two_n - ((&qk << 1) % n)) % n;
        qk = (&qk * &qk) % n;
        if d.bit(bit) {
            let nu = half((&u + &v) % n);
            let nv = half((&d_mod * &u + &v) % n);
            u = nu;
            v = nv;
            qk = (&qk * &q_mod) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = ((&v * &v) + &two_n - ((&qk << 1) % n)) % n;
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk) % n;
    }
    false
}

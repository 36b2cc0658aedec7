//! Trial-division reference implementations, deliberately independent of the
//! sieve and factored-merge code paths.
#![allow(dead_code)]

pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn naive_phi(n: u64) -> u64 {
    trial_factor(n).iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
}

pub fn naive_psi(n: u64) -> u64 {
    trial_factor(n).iter().map(|&(p, e)| p.pow(e - 1) * (p + 1)).product()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(φ(n), ψ(n), φ(φ(n)), ψ(φ(n)), φ(ψ(n)))`.
pub fn naive_compositions(n: u64) -> [u64; 5] {
    let (f, s) = (naive_phi(n), naive_psi(n));
    [f, s, naive_phi(f), naive_psi(f), naive_phi(s)]
}

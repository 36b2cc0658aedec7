//! Word-sized evaluation of φ, ψ and their compositions for sweeps.

use num_bigint::BigUint;

use crate::arith::{ratio_to_f64, FactorContext};
use crate::sieve::PrimePowers;

const EXACT_F64: u64 = 1 << 53;

/// Everything a sweep needs about one `n`, all as machine words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Evaluated {
    pub n: u64,
    pub n_fac: PrimePowers,
    pub phi_fac: PrimePowers,
    pub psi_fac: PrimePowers,
    pub phi_n: u64,
    pub psi_n: u64,
    pub phi_phi: u64,
    pub psi_phi: u64,
    pub phi_psi: u64,
}

impl Evaluated {
    pub fn i(&self) -> f64 {
        ratio_u64(self.psi_phi, self.phi_psi)
    }

    pub fn k(&self) -> f64 {
        ratio_u64(self.psi_phi, self.phi_phi)
    }

    pub fn phi_over_psi(&self) -> f64 {
        ratio_u64(self.phi_n, self.psi_n)
    }

    /// `ψ(φ(n)) > φ(ψ(n))`.
    pub fn positive(&self) -> bool {
        self.psi_phi > self.phi_psi
    }
}

/// Correctly rounded `a / b`.
pub(crate) fn ratio_u64(a: u64, b: u64) -> f64 {
    if a < EXACT_F64 && b < EXACT_F64 {
        a as f64 / b as f64
    } else {
        ratio_to_f64(&BigUint::from(a), &BigUint::from(b))
    }
}

pub(crate) fn evaluate(n: u64, ctx: &FactorContext) -> Evaluated {
    let n_fac = ctx.factor_small(n);
    let phi_fac = shifted_merge(&n_fac, ctx, |p| p - 1);
    let psi_fac = shifted_merge(&n_fac, ctx, |p| p + 1);
    Evaluated {
        n,
        phi_n: value(&phi_fac),
        psi_n: value(&psi_fac),
        phi_phi: phi_of(&phi_fac),
        psi_phi: psi_of(&phi_fac),
        phi_psi: phi_of(&psi_fac),
        n_fac,
        phi_fac,
        psi_fac,
    }
}

fn shifted_merge(n_fac: &PrimePowers, ctx: &FactorContext, shift: impl Fn(u64) -> u64) -> PrimePowers {
    let mut out = PrimePowers::new();
    for &(p, a) in n_fac {
        if a > 1 {
            out.push((p, a - 1));
        }
        out.extend(ctx.factor_small(shift(p)));
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    let mut merged = PrimePowers::new();
    for (p, e) in out {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

fn value(f: &PrimePowers) -> u64 {
    f.iter().map(|&(p, e)| p.pow(e)).product()
}

fn phi_of(f: &PrimePowers) -> u64 {
    f.iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
}

fn psi_of(f: &PrimePowers) -> u64 {
    f.iter().map(|&(p, e)| p.pow(e - 1) * (p + 1)).product()
}

pub(crate) fn exponent(f: &PrimePowers, p: u64) -> u32 {
    f.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
}

/// `Σ 1/p` over primes `p > threshold` of `f`, smallest first.
pub(crate) fn recip_sum_above(f: &PrimePowers, threshold: f64) -> f64 {
    f.iter()
        .filter(|&&(p, _)| p as f64 > threshold)
        .map(|&(p, _)| 1.0 / p as f64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_3599() {
        let ctx = FactorContext::new(4000).unwrap();
        let e = evaluate(3599, &ctx);
        assert_eq!((e.phi_n, e.psi_n), (3480, 3720));
        assert_eq!((e.psi_phi, e.phi_psi), (8640, 960));
        assert_eq!(e.i(), 9.0);
        assert!(e.positive());
        let one = evaluate(1, &ctx);
        assert_eq!((one.phi_n, one.psi_n, one.psi_phi, one.phi_psi), (1, 1, 1, 1));
        assert!(!evaluate(10, &ctx).positive());
    }

    #[test]
    fn agrees_with_big_path() {
        let ctx = FactorContext::new(3000).unwrap();
        for n in 1..3000 {
            let e = evaluate(n, &ctx);
            let c = ctx.compositions(n).unwrap();
            assert_eq!(BigUint::from(e.psi_phi), c.psi_phi);
            assert_eq!(BigUint::from(e.phi_psi), c.phi_psi);
            assert_eq!(BigUint::from(e.phi_phi), c.phi_phi);
            assert_eq!(e.i(), c.i().to_f64());
        }
    }
}

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{phi, phi_factored, psi, psi_factored, ExactRatio, ShiftedFactors};
use crate::error::{Error, Result};
use crate::sieve::{Factorization, PrimePowers, SpfTable, DEFAULT_SEGMENT_SIZE, DEFAULT_MAX_ENTRIES};
use crate::witness::factor_u64;

/// Factors word-sized numbers: by table lookup inside an [`SpfTable`], and by
/// trial division plus Pollard rho for anything outside it.
#[derive(Debug, Clone, Default)]
pub struct FactorContext {
    table: Option<SpfTable>,
}

impl FactorContext {
    /// A context whose table covers every `m ≤ limit + 1`, which is what the
    /// compositions of any `n ≤ limit` touch.
    pub fn new(limit: u64) -> Result<Self> {
        let hi = limit
            .checked_add(2)
            .ok_or_else(|| Error::argument("limit too large"))?
            .max(3);
        let table = SpfTable::build_segmented(2, hi, DEFAULT_SEGMENT_SIZE, DEFAULT_MAX_ENTRIES)?;
        Ok(FactorContext { table: Some(table) })
    }

    pub fn from_table(table: SpfTable) -> Self {
        FactorContext { table: Some(table) }
    }

    /// A context with no table; every request goes through [`factor_u64`].
    pub fn without_table() -> Self {
        FactorContext { table: None }
    }

    pub fn table(&self) -> Option<&SpfTable> {
        self.table.as_ref()
    }

    pub fn factor_small(&self, m: u64) -> PrimePowers {
        match &self.table {
            Some(t) if m == 1 || t.contains(m) => t.factor_small(m).expect("in range"),
            _ => factor_u64(m).into_iter().collect(),
        }
    }

    pub fn factor(&self, m: u64) -> Factorization {
        Factorization::from_u64_pairs(&self.factor_small(m))
    }

    /// Factorizations of `p − 1` for each prime `p` of `f`.
    pub fn shifted_down(&self, f: &Factorization) -> Result<ShiftedFactors> {
        self.shifted(f, |p| p - 1)
    }

    /// Factorizations of `p + 1` for each prime `p` of `f`.
    pub fn shifted_up(&self, f: &Factorization) -> Result<ShiftedFactors> {
        self.shifted(f, |p| p + 1)
    }

    fn shifted(&self, f: &Factorization, shift: impl Fn(u64) -> u64) -> Result<ShiftedFactors> {
        f.primes()
            .map(|p| {
                let w = p
                    .to_u64()
                    .filter(|&w| w < u64::MAX)
                    .ok_or_else(|| Error::argument(format!("prime {p} is not word-sized")))?;
                Ok((p.clone(), self.factor(shift(w))))
            })
            .collect()
    }

    /// Every composition of φ and ψ at `n`.
    pub fn compositions(&self, n: u64) -> Result<Compositions> {
        if n == 0 {
            return Err(Error::argument("n must be at least 1"));
        }
        let n_fac = self.factor(n);
        let phi_n = phi_factored(&n_fac, &self.shifted_down(&n_fac)?)?;
        let psi_n = psi_factored(&n_fac, &self.shifted_up(&n_fac)?)?;
        Ok(Compositions {
            n,
            phi_phi: phi(&phi_n),
            psi_phi: psi(&phi_n),
            phi_psi: phi(&psi_n),
            n_factors: n_fac,
            phi_n,
            psi_n,
        })
    }
}

/// `n` with its images under φ, ψ and their two-fold compositions.
#[derive(Debug, Clone, PartialEq)]
pub struct Compositions {
    pub n: u64,
    pub n_factors: Factorization,
    pub phi_n: Factorization,
    pub psi_n: Factorization,
    pub phi_phi: BigUint,
    pub psi_phi: BigUint,
    pub phi_psi: BigUint,
}

impl Compositions {
    /// `I(n) = ψ(φ(n)) / φ(ψ(n))`.
    pub fn i(&self) -> ExactRatio {
        ExactRatio::new(self.psi_phi.clone(), self.phi_psi.clone()).expect("φ(ψ(n)) ≥ 1")
    }

    /// `K(n) = ψ(φ(n)) / φ(φ(n))`.
    pub fn k(&self) -> ExactRatio {
        ExactRatio::new(self.psi_phi.clone(), self.phi_phi.clone()).expect("φ(φ(n)) ≥ 1")
    }

    /// `φ(n)/ψ(n) = ∏_{p|n} (p−1)/(p+1)`.
    pub fn phi_over_psi(&self) -> ExactRatio {
        ExactRatio::new(self.phi_n.value().clone(), self.psi_n.value().clone()).expect("ψ(n) ≥ 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: u64, d: u64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn ratio_examples() {
        let ctx = FactorContext::new(4000).unwrap();
        let c = |n| ctx.compositions(n).unwrap();
        assert_eq!(c(1).i(), ExactRatio::one());
        assert_eq!(c(1).k(), ExactRatio::one());
        assert_eq!(c(2).i(), ratio(1, 2));
        assert_eq!(c(3).i(), ratio(3, 2));
        assert_eq!(c(3).k(), ratio(3, 1));
        assert_eq!(c(10).k(), ratio(3, 1));
        let w = c(3599);
        assert_eq!(w.psi_phi, BigUint::from(8640u32));
        assert_eq!(w.phi_psi, BigUint::from(960u32));
        assert_eq!(w.i(), ratio(9, 1));
    }

    #[test]
    fn table_and_fallback_agree() {
        let with = FactorContext::new(2_000).unwrap();
        let without = FactorContext::without_table();
        for n in [1u64, 2, 97, 1_024, 1_999, 2_000, 5_003, 1_000_000_007] {
            assert_eq!(with.compositions(n).unwrap(), without.compositions(n).unwrap());
        }
    }

    #[test]
    fn zero_is_rejected() {
        assert!(FactorContext::without_table().compositions(0).is_err());
    }
}

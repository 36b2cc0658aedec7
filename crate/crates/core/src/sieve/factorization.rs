use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Canonical prime-power decomposition of a natural number.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// empty factorization represents `1`. The expanded value is cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// The factorization of `1`.
    pub fn one() -> Self {
        Factorization {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs that are already in
    /// canonical order. Primality of the entries is the caller's promise.
    pub fn from_factors(factors: Vec<(BigUint, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::argument("factor primes must be strictly increasing"));
            }
        }
        if factors.iter().any(|(p, e)| *e == 0 || p < &BigUint::from(2u32)) {
            return Err(Error::argument("factors need a base ≥ 2 and exponent ≥ 1"));
        }
        let value = expand(&factors);
        Ok(Factorization { value, factors })
    }

    /// Builds a factorization from pairs in any order, combining repeats.
    pub fn from_unsorted<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();
        for (p, e) in pairs {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        let factors: Vec<_> = map.into_iter().collect();
        let value = expand(&factors);
        Factorization { value, factors }
    }

    pub fn from_u64_pairs(pairs: &[(u64, u32)]) -> Self {
        Self::from_unsorted(pairs.iter().map(|&(p, e)| (BigUint::from(p), e)))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> + '_ {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, prime: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(p, _)| p.cmp(prime))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Factorization of the product `self · other`.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, b) = (&self.factors[i], &other.factors[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Factorization {
            value: &self.value * &other.value,
            factors: out,
        }
    }

    /// True if this number divides the one described by `other`.
    pub fn divides(&self, other: &Factorization) -> bool {
        self.factors
            .iter()
            .all(|(p, e)| other.exponent_of(p) >= *e)
    }

    /// The pairs as machine words, when every prime fits in a `u64`.
    pub fn to_u64_pairs(&self) -> Option<Vec<(u64, u32)>> {
        self.factors
            .iter()
            .map(|(p, e)| p.to_u64().map(|p| (p, *e)))
            .collect()
    }
}

impl Default for Factorization {
    fn default() -> Self {
        Factorization::one()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn expand(factors: &[(BigUint, u32)]) -> BigUint {
    factors
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(pairs: &[(u64, u32)]) -> Factorization {
        Factorization::from_u64_pairs(pairs)
    }

    #[test]
    fn one_is_empty() {
        let one = Factorization::one();
        assert!(one.is_one());
        assert_eq!(one.value(), &BigUint::one());
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn from_factors_rejects_unsorted_and_zero_exponents() {
        let two = BigUint::from(2u32);
        let three = BigUint::from(3u32);
        assert!(Factorization::from_factors(vec![(three.clone(), 1), (two.clone(), 1)]).is_err());
        assert!(Factorization::from_factors(vec![(two.clone(), 0)]).is_err());
        let ok = Factorization::from_factors(vec![(two, 2), (three, 1)]).unwrap();
        assert_eq!(ok.value(), &BigUint::from(12u32));
        assert_eq!(ok.to_string(), "2^2 * 3");
    }

    #[test]
    fn mul_merges_exponents() {
        let a = f(&[(2, 2), (3, 1)]);
        let b = f(&[(2, 1), (5, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.to_u64_pairs().unwrap(), vec![(2, 3), (3, 1), (5, 1)]);
        assert_eq!(ab.value(), &BigUint::from(120u32));
    }

    #[test]
    fn divisibility_by_exponents() {
        let twelve = f(&[(2, 2), (3, 1)]);
        let six = f(&[(2, 1), (3, 1)]);
        let eight = f(&[(2, 3)]);
        assert!(six.divides(&twelve));
        assert!(!eight.divides(&twelve));
        assert!(Factorization::one().divides(&six));
    }
}

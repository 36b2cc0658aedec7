use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A non-negative fraction of arbitrary-precision naturals in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRatio(Ratio<BigUint>);

impl ExactRatio {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::argument("ratio denominator must be positive"));
        }
        Ok(ExactRatio(Ratio::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        ExactRatio(Ratio::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(Ratio::zero())
    }

    pub fn one() -> Self {
        ExactRatio(Ratio::one())
    }

    pub fn num(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn den(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::argument("reciprocal of zero"));
        }
        Ok(ExactRatio(self.0.recip()))
    }

    /// Nearest `f64`, ties to even.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.num(), self.den())
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl Mul for ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 * &rhs.0)
    }
}

impl Add for ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 + &rhs.0)
    }
}

/// Division; panics on a zero divisor, like integer division.
impl Div for ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "division of ExactRatio by zero");
        ExactRatio(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: &ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "division of ExactRatio by zero");
        ExactRatio(&self.0 / &rhs.0)
    }
}

impl std::iter::Product for ExactRatio {
    fn product<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::one(), |a, b| a * b)
    }
}

impl std::iter::Sum for ExactRatio {
    fn sum<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::zero(), |a, b| a + b)
    }
}

/// A signed fraction in lowest terms: `sign · magnitude`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedExactRatio(BigRational);

impl SignedExactRatio {
    pub fn zero() -> Self {
        SignedExactRatio(BigRational::zero())
    }

    pub fn from_parts(sign: Sign, magnitude: &ExactRatio) -> Self {
        if sign == Sign::NoSign || magnitude.is_zero() {
            return Self::zero();
        }
        let num = BigInt::from_biguint(sign, magnitude.num().clone());
        let den = BigInt::from(magnitude.den().clone());
        SignedExactRatio(BigRational::new(num, den))
    }

    /// `Minus`, `NoSign` (exactly when the value is zero) or `Plus`.
    pub fn sign(&self) -> Sign {
        match self.0.numer().sign() {
            Sign::NoSign => Sign::NoSign,
            s => s,
        }
    }

    pub fn magnitude(&self) -> ExactRatio {
        let abs = self.0.abs();
        ExactRatio(Ratio::new(
            abs.numer().magnitude().clone(),
            abs.denom().magnitude().clone(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.magnitude().to_f64();
        if self.sign() == Sign::Minus {
            -m
        } else {
            m
        }
    }
}

impl From<ExactRatio> for SignedExactRatio {
    fn from(r: ExactRatio) -> Self {
        SignedExactRatio::from_parts(Sign::Plus, &r)
    }
}

impl Add for SignedExactRatio {
    type Output = SignedExactRatio;
    fn add(self, rhs: SignedExactRatio) -> SignedExactRatio {
        SignedExactRatio(self.0 + rhs.0)
    }
}

impl std::iter::Sum for SignedExactRatio {
    fn sum<I: Iterator<Item = SignedExactRatio>>(iter: I) -> Self {
        iter.fold(SignedExactRatio::zero(), |a, b| a + b)
    }
}

impl fmt::Display for SignedExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Correctly rounded `num / den` for arbitrary-precision operands.
pub(crate) fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries 55 or 56 significant bits; the
    // remainder folds into the lowest bit as a sticky flag, which the final
    // u64 -> f64 conversion then rounds correctly.
    let shift = 55 + den.bits() as i64 - num.bits() as i64;
    let (n, d) = if shift >= 0 {
        (num << shift as u64, den.clone())
    } else {
        (num.clone(), den << (-shift) as u64)
    };
    let (q, r) = num_integer::Integer::div_rem(&n, &d);
    let mut q = q.to_u64().expect("quotient has at most 56 bits");
    if !r.is_zero() {
        q |= 1;
    }
    scale_by_pow2(q as f64, -shift)
}

fn scale_by_pow2(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl PartialEq<u64> for ExactRatio {
    fn eq(&self, other: &u64) -> bool {
        self.is_integer() && self.num() == &BigUint::from(*other)
    }
}

impl PartialOrd<u64> for ExactRatio {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.0.cmp(&Ratio::from_integer(BigUint::from(*other))))
    }
}

//! Exact scalar rings: arbitrary-precision rationals and their dual-number
//! extension.
//!
//! Everything downstream (series, builders, the DSL evaluator) is generic
//! over [`Scalar`], so the same code path that expands a series over
//! [`Rational`] also expands it over [`DualRational`] when a derivative with
//! respect to one parameter is wanted.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative ring with exact equality, enough structure for truncated
/// series arithmetic, and a partial multiplicative inverse.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse. Errors when the element is not invertible
    /// (zero rational, or a dual whose value part is zero).
    fn inv(&self) -> Result<Self>;

    fn pow_u(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn pow_i(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow_u(k as u64))
        } else {
            Ok(self.inv()?.pow_u(k.unsigned_abs()))
        }
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Exact rational number in canonical form: reduced, positive denominator,
/// zero represented as 0/1. Backed by an arbitrary-precision fraction that
/// re-canonicalizes after every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// `p/r` with exact reduction. Panics when `r == 0`; use [`Rational::new`]
    /// for a fallible construction.
    pub fn ratio(p: i64, r: i64) -> Self {
        assert!(r != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(r)))
    }

    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// |self| < 1, the sampling region for generic parameters.
    pub fn abs_lt_one(&self) -> bool {
        self.0.numer().abs() < self.0.denom().abs()
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        i64::try_from(self.0.numer()).ok()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `p/r`, with optional leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("malformed rational `{s}`"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
                Ok(Rational::from_bigint(n))
            }
            Some((p, r)) => {
                let numer = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let denom = BigInt::from_str(r.trim()).map_err(|_| bad())?;
                Rational::new(numer, denom)
            }
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Result<Self> {
        self.checked_inv()
    }
}

// ---------------------------------------------------------------------------
// DualRational
// ---------------------------------------------------------------------------

/// Rational dual number `value + deriv·ε` with `ε² = 0`.
///
/// Carrying a dual coefficient through a series construction differentiates
/// the whole series with respect to that coefficient: the products below
/// implement exactly the product and quotient rules.
#[derive(Clone, PartialEq, Eq)]
pub struct DualRational {
    pub value: Rational,
    pub deriv: Rational,
}

impl DualRational {
    pub fn new(value: Rational, deriv: Rational) -> Self {
        DualRational { value, deriv }
    }

    /// A constant: derivative zero.
    pub fn constant(value: Rational) -> Self {
        DualRational {
            value,
            deriv: Rational::zero(),
        }
    }

    /// The differentiation variable itself: derivative one.
    pub fn variable(value: Rational) -> Self {
        DualRational {
            value,
            deriv: Rational::one(),
        }
    }
}

impl fmt::Display for DualRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*eps", self.value, self.deriv)
    }
}

impl fmt::Debug for DualRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for DualRational {
    type Output = DualRational;
    fn add(self, rhs: DualRational) -> DualRational {
        DualRational {
            value: self.value + rhs.value,
            deriv: self.deriv + rhs.deriv,
        }
    }
}

impl Sub for DualRational {
    type Output = DualRational;
    fn sub(self, rhs: DualRational) -> DualRational {
        DualRational {
            value: self.value - rhs.value,
            deriv: self.deriv - rhs.deriv,
        }
    }
}

impl Mul for DualRational {
    type Output = DualRational;
    fn mul(self, rhs: DualRational) -> DualRational {
        // (a + εa')(b + εb') = ab + ε(ab' + a'b)
        DualRational {
            value: self.value.clone() * rhs.value.clone(),
            deriv: self.value * rhs.deriv + self.deriv * rhs.value,
        }
    }
}

impl Neg for DualRational {
    type Output = DualRational;
    fn neg(self) -> DualRational {
        DualRational {
            value: -self.value,
            deriv: -self.deriv,
        }
    }
}

impl Scalar for DualRational {
    fn zero() -> Self {
        DualRational::constant(Rational::zero())
    }
    fn one() -> Self {
        DualRational::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }
    fn is_one(&self) -> bool {
        self.value.is_one() && self.deriv.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        DualRational::constant(r.clone())
    }
    fn inv(&self) -> Result<Self> {
        // 1/(v + εd) = 1/v − ε d/v²
        if self.value.is_zero() {
            return Err(Error::series(
                "cannot invert a dual number with zero value part",
            ));
        }
        let vinv = self.value.checked_inv()?;
        let deriv = -(self.deriv.clone() * vinv.clone() * vinv.clone());
        Ok(DualRational { value: vinv, deriv })
    }
}

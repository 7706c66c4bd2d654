//! Monomial parameters and polynomial weights.
//!
//! Every series parameter a builder accepts is a monomial `c·q^e` with an
//! exact scalar coefficient and a natural q-exponent. Generic-parameter
//! identities are then checked by randomized rational substitution rather
//! than by multivariate rational-function arithmetic.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A monomial parameter `c·q^e`.
#[derive(Clone, PartialEq, Debug)]
pub struct Param<S> {
    pub coeff: S,
    pub exp: usize,
}

impl<S: Scalar> Param<S> {
    pub fn new(coeff: S, exp: usize) -> Self {
        Param { coeff, exp }
    }

    pub fn one() -> Self {
        Param {
            coeff: S::one(),
            exp: 0,
        }
    }

    /// The monomial `q`.
    pub fn q() -> Self {
        Param {
            coeff: S::one(),
            exp: 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Param {
            coeff: self.coeff.clone() * rhs.coeff.clone(),
            exp: self.exp + rhs.exp,
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if self.exp < rhs.exp {
            return Err(Error::series(format!(
                "monomial division q^{} / q^{} would need a negative q-power",
                self.exp, rhs.exp
            )));
        }
        Ok(Param {
            coeff: self.coeff.clone() * rhs.coeff.inv()?,
            exp: self.exp - rhs.exp,
        })
    }

    pub fn neg(&self) -> Self {
        Param {
            coeff: -self.coeff.clone(),
            exp: self.exp,
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let exp = (self.exp as i64) * k;
        if exp < 0 {
            return Err(Error::series(format!(
                "monomial power (q^{})^{k} would need a negative q-power",
                self.exp
            )));
        }
        Ok(Param {
            coeff: self.coeff.pow_i(k)?,
            exp: exp as usize,
        })
    }
}

impl<S: Scalar> fmt::Display for Param<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exp, self.coeff.is_one()) {
            (0, _) => write!(f, "{}", self.coeff),
            (1, true) => write!(f, "q"),
            (1, false) => write!(f, "{}*q", self.coeff),
            (e, true) => write!(f, "q^{e}"),
            (e, false) => write!(f, "{}*q^{e}", self.coeff),
        }
    }
}

/// A polynomial weight w(n) with rational coefficients, applied to the
/// outer summation index of a weighted Lambert sum.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightPoly {
    coeffs: Vec<Rational>, // coeffs[i] multiplies n^i; no trailing zeros
}

impl WeightPoly {
    pub fn zero() -> Self {
        WeightPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial n.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        WeightPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, n: u64) -> Rational {
        let x = Rational::from_bigint(n.into());
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone();
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        WeightPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

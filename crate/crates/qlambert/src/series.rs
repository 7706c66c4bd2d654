//! The truncated formal power series ring S\[\[q\]\]/(q^{D+1}).
//!
//! A [`QSeries`] stores the coefficients of q^0 … q^D densely; every
//! operation is exact and results of mixed-degree operations truncate to the
//! minimum degree of the operands, so precision never silently inflates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{DualRational, Rational, Scalar};

/// Truncated formal power series over a scalar ring.
#[derive(Clone, PartialEq)]
pub struct QSeries<S> {
    coeffs: Vec<S>, // coeffs[k] is the coefficient of q^k; len = degree + 1
}

impl<S: Scalar> QSeries<S> {
    pub fn zero(degree: usize) -> Self {
        QSeries {
            coeffs: vec![S::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(S::one(), degree)
    }

    pub fn constant(c: S, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    /// `c·q^e` truncated at `degree`; the zero series when `e > degree`.
    pub fn monomial(c: S, exp: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if exp <= degree {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 slot");
        QSeries { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: S) {
        self.coeffs[k] = c;
    }

    pub fn add_to_coeff(&mut self, k: usize, c: S) {
        if k < self.coeffs.len() {
            self.coeffs[k] = self.coeffs[k].clone() + c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Copy truncated to a lower degree.
    pub fn truncated(&self, degree: usize) -> Self {
        assert!(degree <= self.degree());
        QSeries {
            coeffs: self.coeffs[..=degree].to_vec(),
        }
    }

    pub fn scalar_mul(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree());
        }
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| a.clone() * c.clone())
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// ∑_{j≥0} t^j = 1/(1−t) for a series with zero constant term.
    pub fn geometric_inverse(t: &Self) -> Result<Self> {
        if !t.coeffs[0].is_zero() {
            return Err(Error::series(
                "geometric_inverse requires a zero constant term (use unit_reciprocal)",
            ));
        }
        // r = 1 + t·r, solved coefficient by coefficient.
        let d = t.degree();
        let mut r = Self::zero(d);
        r.coeffs[0] = S::one();
        for k in 1..=d {
            let mut acc = S::zero();
            for j in 1..=k {
                if !t.coeffs[j].is_zero() && !r.coeffs[k - j].is_zero() {
                    acc = acc + t.coeffs[j].clone() * r.coeffs[k - j].clone();
                }
            }
            r.coeffs[k] = acc;
        }
        Ok(r)
    }

    /// Reciprocal of a series whose constant term is invertible.
    pub fn unit_reciprocal(u: &Self) -> Result<Self> {
        let u0 = &u.coeffs[0];
        if u0.is_zero() {
            return Err(Error::series(
                "unit_reciprocal requires an invertible constant term",
            ));
        }
        let inv0 = u0.inv()?;
        let d = u.degree();
        let mut r = Self::zero(d);
        r.coeffs[0] = inv0.clone();
        for k in 1..=d {
            let mut acc = S::zero();
            for j in 1..=k {
                if !u.coeffs[j].is_zero() && !r.coeffs[k - j].is_zero() {
                    acc = acc + u.coeffs[j].clone() * r.coeffs[k - j].clone();
                }
            }
            r.coeffs[k] = -(inv0.clone() * acc);
        }
        Ok(r)
    }

    /// `self / den` where `den` has an invertible constant term.
    pub fn div_unit(&self, den: &Self) -> Result<Self> {
        Ok(self * &Self::unit_reciprocal(den)?)
    }

    /// Divide by the binomial `1 − c·q^step` in place via the recurrence
    /// r[k] = a[k] + c·r[k−step]. For `step == 0` this is a scalar division
    /// by `1 − c`.
    pub(crate) fn div_one_minus(&self, c: &S, step: usize) -> Result<Self> {
        if c.is_zero() {
            return Ok(self.clone());
        }
        if step == 0 {
            let unit = (S::one() - c.clone()).inv().map_err(|_| {
                Error::series("division by 1 - c with c = 1".to_string())
            })?;
            return Ok(self.scalar_mul(&unit));
        }
        let mut r = self.clone();
        if step > r.degree() {
            return Ok(r);
        }
        for k in step..=r.degree() {
            if !r.coeffs[k - step].is_zero() {
                let add = c.clone() * r.coeffs[k - step].clone();
                r.coeffs[k] = r.coeffs[k].clone() + add;
            }
        }
        Ok(r)
    }

    /// Multiply by the binomial `1 − c·q^step`.
    pub(crate) fn mul_one_minus(&self, c: &S, step: usize) -> Self {
        if c.is_zero() || step > self.degree() {
            return self.clone();
        }
        if step == 0 {
            return self.scalar_mul(&(S::one() - c.clone()));
        }
        let mut r = self.clone();
        for k in (step..=r.degree()).rev() {
            if !self.coeffs[k - step].is_zero() {
                let sub = c.clone() * self.coeffs[k - step].clone();
                r.coeffs[k] = r.coeffs[k].clone() - sub;
            }
        }
        r
    }

    /// Coefficients at even exponents, odd slots zeroed.
    pub fn even_part(&self) -> Self {
        let mut r = self.clone();
        for (k, c) in r.coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = S::zero();
            }
        }
        r
    }

    /// Coefficients at odd exponents, even slots zeroed.
    pub fn odd_part(&self) -> Self {
        let mut r = self.clone();
        for (k, c) in r.coeffs.iter_mut().enumerate() {
            if k % 2 == 0 {
                *c = S::zero();
            }
        }
        r
    }

    /// The substitution q ↦ −q: negate odd-indexed coefficients.
    pub fn subst_neg_q(&self) -> Self {
        let mut r = self.clone();
        for (k, c) in r.coeffs.iter_mut().enumerate() {
            if k % 2 == 1 {
                *c = -c.clone();
            }
        }
        r
    }

    /// The substitution q ↦ q^b (b ≥ 1) at the same numeric truncation
    /// degree: the coefficient of q^k moves to q^{bk}, everything else is
    /// zero-filled, and exponents past the degree are dropped.
    pub fn subst_q_pow(&self, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::series("subst_q_pow requires b >= 1"));
        }
        let d = self.degree();
        let mut r = Self::zero(d);
        for (k, c) in self.coeffs.iter().enumerate() {
            match k.checked_mul(b) {
                Some(kb) if kb <= d => r.coeffs[kb] = c.clone(),
                _ => break,
            }
        }
        Ok(r)
    }

    /// Multiply by q^s. Negative `s` requires the valuation to be at least
    /// |s|; used for prefactors like q^{−2} that the source series provably
    /// absorbs.
    pub fn shift(&self, s: i64) -> Result<Self> {
        let d = self.degree();
        let mut r = Self::zero(d);
        if s >= 0 {
            let s = s as usize;
            for (k, c) in self.coeffs.iter().enumerate() {
                if k + s <= d {
                    r.coeffs[k + s] = c.clone();
                }
            }
            Ok(r)
        } else {
            let s = s.unsigned_abs() as usize;
            match self.valuation() {
                None => Ok(r), // zero series shifts to zero
                Some(v) if v >= s => {
                    for k in s..=d {
                        r.coeffs[k - s] = self.coeffs[k].clone();
                    }
                    Ok(r)
                }
                Some(v) => Err(Error::series(format!(
                    "shift by -{s} below valuation {v}"
                ))),
            }
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QSeries<T> {
        QSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl QSeries<DualRational> {
    pub fn value_part(&self) -> QSeries<Rational> {
        self.map(|d| d.value.clone())
    }

    pub fn deriv_part(&self) -> QSeries<Rational> {
        self.map(|d| d.deriv.clone())
    }
}

impl<S: Scalar> Add for &QSeries<S> {
    type Output = QSeries<S>;
    fn add(self, rhs: &QSeries<S>) -> QSeries<S> {
        let d = self.degree().min(rhs.degree());
        let coeffs = (0..=d)
            .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
            .collect();
        QSeries { coeffs }
    }
}

impl<S: Scalar> Sub for &QSeries<S> {
    type Output = QSeries<S>;
    fn sub(self, rhs: &QSeries<S>) -> QSeries<S> {
        let d = self.degree().min(rhs.degree());
        let coeffs = (0..=d)
            .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
            .collect();
        QSeries { coeffs }
    }
}

impl<S: Scalar> Neg for &QSeries<S> {
    type Output = QSeries<S>;
    fn neg(self) -> QSeries<S> {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> Mul for &QSeries<S> {
    type Output = QSeries<S>;

    /// Cauchy product modulo q^{D+1}, D = min of the operand degrees.
    fn mul(self, rhs: &QSeries<S>) -> QSeries<S> {
        let d = self.degree().min(rhs.degree());
        let mut out: QSeries<S> = QSeries::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(d + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a.clone() * b.clone();
                out.coeffs[i + j] = out.coeffs[i + j].clone() + prod;
            }
        }
        out
    }
}

impl fmt::Display for QSeries<Rational> {
    /// Plain-text rendering `c0 + c1*q + c2*q^2 + …`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for QSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}]", self.coeff_strings().join(", "))
    }
}

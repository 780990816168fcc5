//! Dense univariate polynomials over Q(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Polynomial in one named variable, coefficients in ascending degree order.
///
/// The coefficient list never ends in a zero; the zero polynomial is the
/// empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(var: impl Into<String>, mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { var: var.into(), coeffs }
    }

    pub fn zero(var: impl Into<String>) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn one(var: impl Into<String>) -> Self {
        Self::constant(var, GaussianRational::one())
    }

    pub fn constant(var: impl Into<String>, c: GaussianRational) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var`.
    pub fn variable(var: impl Into<String>) -> Self {
        Self::new(var, vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// Convenience constructor from Gaussian-integer coefficients `(re, im)`.
    pub fn from_int_pairs(var: impl Into<String>, coeffs: &[(i64, i64)]) -> Self {
        Self::new(var, coeffs.iter().map(|&(re, im)| GaussianRational::from_integers(re, im)).collect())
    }

    /// Convenience constructor from real integer coefficients.
    pub fn from_ints(var: impl Into<String>, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Same coefficients, different variable tag.
    pub fn with_var(&self, var: impl Into<String>) -> Self {
        Self { var: var.into(), coeffs: self.coeffs.clone() }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `var^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Divide through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.var.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.var.clone(), right: other.var.clone() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(self.var.clone(), (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(self.var.clone(), (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var.clone()));
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Ok(Self::new(self.var.clone(), out))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var.clone());
        let mut base = self.clone();
        let mut k = k;
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

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_var(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Self::zero(self.var.clone()), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.var.clone(), quot), Self::new(self.var.clone(), rem)))
    }

    /// Division known to be exact; panics (in debug builds) otherwise.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "exact_div left remainder {r}");
        Ok(q)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.var.clone(),
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale_int(i as i64)).collect(),
        )
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.var.clone(), self.coeffs.iter().map(GaussianRational::conj).collect())
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation after converting coefficients to `f64`.
    pub fn eval_numeric(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c.to_complex())
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussianRational::to_complex).collect()
    }

    /// `outer(self)`: substitute this polynomial into `outer`. The result
    /// carries this polynomial's variable.
    pub fn compose_into(&self, outer: &Self) -> Self {
        outer
            .coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.var.clone()), |acc, c| &(&acc * self) + &Self::constant(self.var.clone(), c.clone()))
    }

    /// Resultant over Q(i), computed along the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<GaussianRational> {
        self.check_var(other)?;
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return Ok(GaussianRational::zero());
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = GaussianRational::one();
        loop {
            let da = a.degree().expect("nonzero");
            let db = b.degree().expect("nonzero");
            if db == 0 {
                return Ok(&acc * &pow_scalar(&b.coeffs[0], da));
            }
            let (_, r) = a.div_rem(&b)?;
            let Some(dr) = r.degree() else {
                return Ok(GaussianRational::zero());
            };
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = &acc * &pow_scalar(&b.coeffs[db], da - dr);
            a = b;
            b = r;
        }
    }

    /// Squarefree part: the product of the distinct irreducible factors,
    /// monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_constant() {
            return Err(Error::ZeroOrConstantInput);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }
}

fn pow_scalar(c: &GaussianRational, k: usize) -> GaussianRational {
    (0..k).fold(GaussianRational::one(), |acc, _| &acc * c)
}

macro_rules! panicking_op {
    ($tr:ident, $f:ident, $try:ident) => {
        /// Panics if the variable tags differ.
        impl<'a> $tr<&'a UniPoly> for &'a UniPoly {
            type Output = UniPoly;
            fn $f(self, rhs: &UniPoly) -> UniPoly {
                self.$try(rhs).expect("polynomial variable mismatch")
            }
        }
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $f(self, rhs: UniPoly) -> UniPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var.clone(), self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{self}]")
    }
}

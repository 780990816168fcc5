use std::fmt::Debug;
use std::ops::Add;

use num::complex::Complex64;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, UniPoly};
use crate::monodromy::ComplexPoly;

/// Scalars a [`BiPoly`] may carry.
pub trait Scalar: Clone + Debug + PartialEq + Zero + One + for<'a> Add<&'a Self, Output = Self> {
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn to_complex(&self) -> Complex64;
}

impl Scalar for GaussianRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn to_complex(&self) -> Complex64 {
        GaussianRational::to_complex(self)
    }
}

impl Scalar for Complex64 {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Dense bivariate polynomial; `coeffs[i][j]` multiplies `a^i b^j` where
/// `(a, b)` are the two variables in order.
///
/// All rows have equal length and trailing all-zero rows and columns are
/// trimmed, so the matrix shape is `(deg_a + 1, deg_b + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<T> {
    vars: (String, String),
    coeffs: Vec<Vec<T>>,
}

pub type ExactBiPoly = BiPoly<GaussianRational>;
pub type NumericBiPoly = BiPoly<Complex64>;

impl<T: Scalar> BiPoly<T> {
    pub fn new(vars: (impl Into<String>, impl Into<String>), coeffs: Vec<Vec<T>>) -> Self {
        let cols = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut coeffs: Vec<Vec<T>> = coeffs
            .into_iter()
            .map(|mut row| {
                row.resize(cols, T::zero());
                row
            })
            .collect();
        while coeffs.last().is_some_and(|r| r.iter().all(Zero::is_zero)) {
            coeffs.pop();
        }
        let used = (0..cols).rev().find(|&j| coeffs.iter().any(|r| !r[j].is_zero())).map_or(0, |j| j + 1);
        for row in &mut coeffs {
            row.truncate(used);
        }
        if used == 0 {
            coeffs.clear();
        }
        Self { vars: (vars.0.into(), vars.1.into()), coeffs }
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn coeffs(&self) -> &[Vec<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.coeffs.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// (degree in the first variable, degree in the second).
    pub fn bidegree(&self) -> Result<(usize, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok((self.coeffs.len() - 1, self.coeffs[0].len() - 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.vars.clone(), Vec::new());
        }
        let (r1, c1) = (self.coeffs.len(), self.coeffs[0].len());
        let (r2, c2) = (other.coeffs.len(), other.coeffs[0].len());
        let mut out = vec![vec![T::zero(); c1 + c2 - 1]; r1 + r2 - 1];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, orow) in other.coeffs.iter().enumerate() {
                    for (l, b) in orow.iter().enumerate() {
                        let prod = a.mul_ref(b);
                        out[i + k][j + l] = out[i + k][j + l].clone() + &prod;
                    }
                }
            }
        }
        Self::new(self.vars.clone(), out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, &T) -> T) -> Self {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self.ncols().max(other.ncols());
        let out = (0..rows).map(|i| (0..cols).map(|j| f(self.coeff(i, j), &other.coeff(i, j))).collect()).collect();
        Self::new(self.vars.clone(), out)
    }

    fn ncols(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.sub_ref(b))
    }

    pub fn eval(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, row| {
            acc * a + row.iter().rev().fold(Complex64::zero(), |s, c| s * b + c.to_complex())
        })
    }

    /// `Σ |c_ij| |a|^i |b|^j`: the rounding scale of [`BiPoly::eval`].
    pub fn eval_scale(&self, a: Complex64, b: Complex64) -> f64 {
        let (ra, rb) = (a.norm(), b.norm());
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, row| acc * ra + row.iter().rev().fold(0.0, |s, c| s * rb + c.to_complex().norm()))
    }

    pub fn to_numeric(&self) -> NumericBiPoly {
        BiPoly::new(self.vars.clone(), self.coeffs.iter().map(|r| r.iter().map(Scalar::to_complex).collect()).collect())
    }

    /// Coefficient of the top power of the second variable, as a polynomial
    /// in the first (ascending).
    pub fn leading_in_second(&self) -> Vec<T> {
        match self.coeffs.first() {
            None => Vec::new(),
            Some(r0) => {
                let j = r0.len() - 1;
                self.coeffs.iter().map(|r| r[j].clone()).collect()
            }
        }
    }

    /// Coefficient of the top power of the first variable, as a polynomial
    /// in the second (ascending).
    pub fn leading_in_first(&self) -> Vec<T> {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self.ncols().max(other.ncols());
        let mut worst = 0.0f64;
        for i in 0..rows {
            for j in 0..cols {
                worst = worst.max((self.coeff(i, j).to_complex() - other.coeff(i, j).to_complex()).norm());
            }
        }
        worst
    }
}

impl ExactBiPoly {
    /// Lift a univariate polynomial in the first (`second = false`) or
    /// second variable.
    pub fn from_uni(vars: (&str, &str), p: &UniPoly, second: bool) -> Self {
        let coeffs =
            if second { vec![p.coeffs().to_vec()] } else { p.coeffs().iter().map(|c| vec![c.clone()]).collect() };
        Self::new(vars, coeffs)
    }

    pub fn constant(vars: (&str, &str), c: GaussianRational) -> Self {
        Self::new(vars, vec![vec![c]])
    }

    /// Compose a univariate polynomial with a bivariate argument.
    pub fn substitute_into(&self, p: &UniPoly) -> Self {
        let vars = (self.vars.0.as_str(), self.vars.1.as_str());
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::new(vars, Vec::new()), |acc, c| acc.mul(self).add(&Self::constant(vars, c.clone())))
    }

    /// Whether every coefficient is real (exact test).
    pub fn has_real_coefficients(&self) -> bool {
        self.coeffs.iter().flatten().all(GaussianRational::is_real)
    }

    pub fn leading_in_second_poly(&self) -> UniPoly {
        UniPoly::new(self.vars.0.clone(), self.leading_in_second())
    }

    pub fn leading_in_first_poly(&self) -> UniPoly {
        UniPoly::new(self.vars.1.clone(), self.leading_in_first())
    }
}

impl NumericBiPoly {
    pub fn leading_in_second_poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.leading_in_second())
    }

    pub fn leading_in_first_poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.leading_in_first())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from(v)
    }

    #[test]
    fn trimming_sets_bidegree() {
        let f =
            ExactBiPoly::new(("z", "w"), vec![vec![g(-1), g(0), g(0)], vec![g(0), g(1), g(0)], vec![g(0), g(0), g(0)]]);
        assert_eq!(f.bidegree().unwrap(), (1, 1));
        let zero = ExactBiPoly::new(("z", "w"), vec![vec![g(0)]]);
        assert_eq!(zero.bidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn product_of_conjugate_factors() {
        // (zw - 1)(zw + 1) = z^2 w^2 - 1
        let a = ExactBiPoly::new(("z", "w"), vec![vec![g(-1)], vec![g(0), g(1)]]);
        let b = ExactBiPoly::new(("z", "w"), vec![vec![g(1)], vec![g(0), g(1)]]);
        let prod = a.mul(&b);
        assert_eq!(prod.bidegree().unwrap(), (2, 2));
        assert_eq!(prod.coeff(0, 0), g(-1));
        assert_eq!(prod.coeff(2, 2), g(1));
        assert_eq!(prod.coeff(1, 1), g(0));
    }

    #[test]
    fn substitution() {
        // p(t) = t^2 + 1 at t = a + b
        let arg = ExactBiPoly::new(("a", "b"), vec![vec![g(0), g(1)], vec![g(1)]]);
        let p = UniPoly::from_ints("t", &[1, 0, 1]);
        let r = arg.substitute_into(&p);
        assert_eq!(r.coeff(0, 0), g(1));
        assert_eq!(r.coeff(2, 0), g(1));
        assert_eq!(r.coeff(1, 1), g(2));
        assert_eq!(r.coeff(0, 2), g(1));
    }

    #[test]
    fn leading_coefficients() {
        // (z^2 - 1) w + (z^2 - 2)
        let f = ExactBiPoly::new(("z", "w"), vec![vec![g(-2), g(-1)], vec![g(0), g(0)], vec![g(1), g(1)]]);
        assert_eq!(f.leading_in_second_poly(), UniPoly::from_ints("z", &[-1, 0, 1]));
        assert_eq!(f.leading_in_first_poly(), UniPoly::from_ints("w", &[1, 1]));
    }
}

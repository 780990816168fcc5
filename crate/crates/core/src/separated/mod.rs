//! The curve `P(z)Q(w) - 1`, the real form `P(x+iy)·P̄(x-iy) - 1` of a
//! lemniscate, explicit factorizations in the reducible case, and the
//! bookkeeping of how components meet the lines at infinity.

mod bipoly;
mod incidence;
mod proportionality;

pub use bipoly::{BiPoly, ExactBiPoly, NumericBiPoly, Scalar};
pub use incidence::{germ_branch_count, infinity_incidence, Axis, IncidencePoint, IncidenceScalar, InfinityIncidence};
pub use proportionality::{proportionality_report, ProportionalityReport, SplitMultiplicity};

use std::f64::consts::TAU;

use num::complex::Complex64;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, UniPoly};
use crate::power::decide_reducibility;

fn require_nonconstant(p: &UniPoly) -> Result<()> {
    if p.is_constant() {
        Err(Error::ZeroOrConstantInput)
    } else {
        Ok(())
    }
}

/// Outer product `p(a)·q(b)` as a bivariate polynomial in `(p.var, q.var)`.
fn outer_product(p: &UniPoly, q: &UniPoly) -> ExactBiPoly {
    let rows = p.coeffs().iter().map(|a| q.coeffs().iter().map(|b| a * b).collect()).collect();
    ExactBiPoly::new((p.var(), q.var()), rows)
}

/// `P(z)Q(w) - 1`.
pub fn build_separated(p: &UniPoly, q: &UniPoly) -> Result<ExactBiPoly> {
    require_nonconstant(p)?;
    require_nonconstant(q)?;
    let prod = outer_product(p, q);
    Ok(prod.sub(&ExactBiPoly::constant((p.var(), q.var()), GaussianRational::one())))
}

/// `f(x, y) = P(x+iy)·P̄(x-iy) - 1`, which equals `|P(x+iy)|² - 1` on real
/// points and has real coefficients.
pub fn build_real_form(p: &UniPoly) -> Result<ExactBiPoly> {
    require_nonconstant(p)?;
    let vars = ("x", "y");
    let i = GaussianRational::i();
    let plus = ExactBiPoly::new(vars, vec![vec![GaussianRational::zero(), i.clone()], vec![GaussianRational::one()]]);
    let minus = ExactBiPoly::new(vars, vec![vec![GaussianRational::zero(), -i], vec![GaussianRational::one()]]);
    let left = plus.substitute_into(p);
    let right = minus.substitute_into(&p.conj());
    Ok(left.mul(&right).sub(&ExactBiPoly::constant(vars, GaussianRational::one())))
}

/// The `d` factors `γ·P₁(z)Q₁(w) - ζ^j`, `j = 0..d`, of a reducible
/// `P(z)Q(w) - 1`, where `P = c_P·P₁^d`, `Q = c_Q·Q₁^d`, `γ^d = c_P·c_Q` and
/// `ζ = e^{2πi/d}`.
pub fn explicit_factors(p: &UniPoly, q: &UniPoly) -> Result<Vec<NumericBiPoly>> {
    let verdict = decide_reducibility(p, q)?;
    if !verdict.reducible {
        return Err(Error::NotReducible);
    }
    let d = verdict.d;
    let content = (&verdict.p1.content * &verdict.q1.content).to_complex();
    let gamma = content.powf(1.0 / d as f64);
    let base = outer_product(&verdict.p1.base, &verdict.q1.base).to_numeric();
    let scaled: Vec<Vec<Complex64>> = base.coeffs().iter().map(|r| r.iter().map(|c| c * gamma).collect()).collect();
    let vars = (p.var(), q.var());
    Ok((0..d)
        .map(|j| {
            let zeta = Complex64::from_polar(1.0, TAU * j as f64 / d as f64);
            let mut rows = scaled.clone();
            rows[0][0] -= zeta;
            NumericBiPoly::new(vars, rows)
        })
        .collect())
}

/// Product of numeric factors.
pub fn multiply_all(factors: &[NumericBiPoly]) -> Option<NumericBiPoly> {
    let (first, rest) = factors.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, f| acc.mul(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("z", c)
    }

    fn w(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("w", c)
    }

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from(v)
    }

    #[test]
    fn separated_examples() {
        let f = build_separated(&z(&[0, 1]), &w(&[0, 1])).unwrap();
        assert_eq!(f, ExactBiPoly::new(("z", "w"), vec![vec![g(-1)], vec![g(0), g(1)]]));

        let f = build_separated(&z(&[0, 0, 1]), &w(&[0, 0, 1])).unwrap();
        assert_eq!(f.bidegree().unwrap(), (2, 2));
        assert_eq!(f.coeff(0, 0), g(-1));
        assert_eq!(f.coeff(2, 2), g(1));

        // (z^2 - 1)(w + 1) - 1 = z^2 w + z^2 - w - 2
        let f = build_separated(&z(&[-1, 0, 1]), &w(&[1, 1])).unwrap();
        let expected = ExactBiPoly::new(("z", "w"), vec![vec![g(-2), g(-1)], vec![g(0), g(0)], vec![g(1), g(1)]]);
        assert_eq!(f, expected);
        for (a, b) in [(0.3, -1.2), (2.0, 0.5), (-0.7, 1.9)] {
            let (zz, ww) = (Complex64::new(a, b), Complex64::new(b, a));
            let direct = (zz * zz - 1.0) * (ww + 1.0) - 1.0;
            assert!((f.eval(zz, ww) - direct).norm() < 1e-12);
        }

        assert_eq!(build_separated(&z(&[3]), &w(&[0, 1])), Err(Error::ZeroOrConstantInput));
    }

    #[test]
    fn real_form_examples() {
        // z -> x^2 + y^2 - 1
        let f = build_real_form(&z(&[0, 1])).unwrap();
        assert_eq!(f, ExactBiPoly::new(("x", "y"), vec![vec![g(-1), g(0), g(1)], vec![g(0)], vec![g(1)]]));
        // z - i -> x^2 + y^2 - 2y
        let f = build_real_form(&UniPoly::from_int_pairs("z", &[(0, -1), (1, 0)])).unwrap();
        assert_eq!(f, ExactBiPoly::new(("x", "y"), vec![vec![g(0), g(-2), g(1)], vec![g(0)], vec![g(1)]]));
        // z^2 -> (x^2 + y^2)^2 - 1
        let f = build_real_form(&z(&[0, 0, 1])).unwrap();
        let expected = ExactBiPoly::new(
            ("x", "y"),
            vec![vec![g(-1), g(0), g(0), g(0), g(1)], vec![g(0)], vec![g(0), g(0), g(2)], vec![g(0)], vec![g(1)]],
        );
        assert_eq!(f, expected);
        assert!(f.has_real_coefficients());
    }

    #[test]
    fn explicit_factor_examples() {
        let fs = explicit_factors(&z(&[0, 0, 1]), &w(&[0, 0, 1])).unwrap();
        assert_eq!(fs.len(), 2);
        let zw = |c: f64| {
            NumericBiPoly::new(
                ("z", "w"),
                vec![vec![Complex64::new(c, 0.0)], vec![Complex64::zero(), Complex64::one()]],
            )
        };
        assert!(fs[0].max_abs_diff(&zw(-1.0)) < 1e-15);
        assert!(fs[1].max_abs_diff(&zw(1.0)) < 1e-15);
        assert_eq!(fs[1].bidegree().unwrap(), (1, 1));

        // z^2, w^4 -> z w^2 -+ 1
        let fs = explicit_factors(&z(&[0, 0, 1]), &w(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].bidegree().unwrap(), (1, 2));
        assert!((fs[0].coeff(0, 0) + 1.0).norm() < 1e-15);
        assert!((fs[1].coeff(0, 0) - 1.0).norm() < 1e-15);

        // (z^2 - 1)^2, w^6 -> (z^2 - 1) w^3 -+ 1
        let p = z(&[-1, 0, 1]).pow(2);
        let q = w(&[0, 0, 0, 0, 0, 0, 1]);
        let fs = explicit_factors(&p, &q).unwrap();
        let prod = multiply_all(&fs).unwrap();
        let exact = build_separated(&p, &q).unwrap().to_numeric();
        assert!(prod.max_abs_diff(&exact) < 1e-10);
        assert_eq!(fs[0].bidegree().unwrap(), (2, 3));
    }

    #[test]
    fn explicit_factors_need_reducible_input() {
        assert_eq!(explicit_factors(&z(&[0, 0, 1]), &w(&[0, 0, 0, 1])), Err(Error::NotReducible));
    }

    #[test]
    fn explicit_factors_with_nontrivial_content() {
        // 3i (z+1)^3 and 2 w^3: content 6i has no cube root in Q(i).
        let p = z(&[1, 1]).pow(3).scale(&GaussianRational::from_integers(0, 3));
        let q = w(&[0, 0, 0, 2]);
        let fs = explicit_factors(&p, &q).unwrap();
        assert_eq!(fs.len(), 3);
        let prod = multiply_all(&fs).unwrap();
        assert!(prod.max_abs_diff(&build_separated(&p, &q).unwrap().to_numeric()) < 1e-12);
    }
}

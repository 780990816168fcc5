//! Perfect-power structure of univariate polynomials and the reducibility
//! criterion for `P(z)Q(w) - 1`.
//!
//! Over C, `P = P₁^d` for some polynomial `P₁` exactly when `d` divides every
//! root multiplicity of `P`, i.e. every exponent of its squarefree
//! decomposition. The curve `P(z)Q(w) = 1` splits precisely when `P` and `Q`
//! are d-th powers for a common `d > 1`.

use num::integer::gcd;

use crate::error::{Error, Result};
use crate::exact::{squarefree_decompose, GaussianRational, UniPoly};

/// `content · base^exponent`, base monic.
///
/// The scalar d-th root of `content` needed to write the input literally as
/// a d-th power need not lie in Q(i), so it stays outside the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerForm {
    pub content: GaussianRational,
    pub base: UniPoly,
    pub exponent: usize,
}

impl PowerForm {
    pub fn reconstruct(&self) -> UniPoly {
        self.base.pow(self.exponent as u32).scale(&self.content)
    }
}

/// Outcome of the joint decision for `P(z)Q(w) - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibilityVerdict {
    pub reducible: bool,
    /// `gcd(d_max(P), d_max(Q))`; the number of irreducible components.
    pub d: usize,
    pub p1: PowerForm,
    pub q1: PowerForm,
}

/// Largest `d` such that `p` is a d-th power over C.
pub fn max_power_exponent(p: &UniPoly) -> Result<usize> {
    let sd = squarefree_decompose(p)?;
    Ok(sd.exponents().fold(0, gcd))
}

/// Writes `p = content · base^d`. `d` must divide [`max_power_exponent`].
pub fn extract_power_form(p: &UniPoly, d: usize) -> Result<PowerForm> {
    let sd = squarefree_decompose(p)?;
    let max = sd.exponents().fold(0, gcd);
    if d == 0 || max % d != 0 {
        return Err(Error::NotADivisor { d, max });
    }
    let base = sd.parts.iter().fold(UniPoly::one(p.var()), |acc, (f, e)| &acc * &f.pow((e / d) as u32));
    Ok(PowerForm { content: sd.content, base, exponent: d })
}

pub fn decide_reducibility(p: &UniPoly, q: &UniPoly) -> Result<ReducibilityVerdict> {
    let d = gcd(max_power_exponent(p)?, max_power_exponent(q)?);
    Ok(ReducibilityVerdict { reducible: d > 1, d, p1: extract_power_form(p, d)?, q1: extract_power_form(q, d)? })
}

/// Whether `|P(x+iy)|² - 1` is irreducible over C, together with the
/// maximal power form. The base of that form cuts out the same lemniscate
/// `{|P| = 1}` as a set and is itself never a proper power.
pub fn lemniscate_irreducible(p: &UniPoly) -> Result<(bool, PowerForm)> {
    let d = max_power_exponent(p)?;
    Ok((d == 1, extract_power_form(p, d)?))
}

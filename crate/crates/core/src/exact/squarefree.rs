//! Yun's squarefree decomposition in characteristic zero.

use super::{GaussianRational, UniPoly};
use crate::error::{Error, Result};

/// `content · ∏ factor^exponent`, factors monic, squarefree and pairwise
/// coprime, exponents strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub content: GaussianRational,
    pub parts: Vec<(UniPoly, usize)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> UniPoly {
        let var = self.parts.first().map(|(f, _)| f.var().to_string()).unwrap_or_default();
        self.parts.iter().fold(UniPoly::constant(var, self.content.clone()), |acc, (f, e)| &acc * &f.pow(*e as u32))
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().map(|(_, e)| *e)
    }
}

pub fn squarefree_decompose(p: &UniPoly) -> Result<SquarefreeDecomposition> {
    if p.is_constant() {
        return Err(Error::ZeroOrConstantInput);
    }
    let content = p.leading_coeff().expect("non-constant").clone();
    let f = p.monic();
    let df = f.derivative();

    let a0 = f.gcd(&df)?;
    let mut b = f.exact_div(&a0)?;
    let mut c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut parts = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = if d.is_zero() { b.clone() } else { b.gcd(&d)? };
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            parts.push((a, i));
        }
        i += 1;
    }
    debug_assert!(c.is_zero() || c.is_constant());
    Ok(SquarefreeDecomposition { content, parts })
}

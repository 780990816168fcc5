//! Local intersection numbers of a curve in P¹×P¹ with the two lines at
//! infinity.
//!
//! For `f(z, w)` of bidegree `(p, q)`, the points where the closure of
//! `{f = 0}` meets `L₁ = P¹×{∞}` are the roots `z_j` of the coefficient of
//! `w^q`, and the local intersection number there is the root multiplicity.
//! The mirror statement holds for `L₂ = {∞}×P¹`.

use num::complex::Complex64;
use num::integer::gcd;

use super::bipoly::{BiPoly, Scalar};
use super::build_separated;
use crate::error::{Error, Result};
use crate::exact::{squarefree_decompose, GaussianRational, UniPoly};
use crate::monodromy::{cluster_roots, numeric_roots, sort_points, ComplexPoly};

/// Which line at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Second variable at infinity; points are first-variable locations.
    L1,
    /// First variable at infinity; points are second-variable locations.
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidencePoint {
    pub location: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfinityIncidence {
    pub axis: Axis,
    pub points: Vec<IncidencePoint>,
}

impl InfinityIncidence {
    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

/// Root multiplicities of a leading-coefficient polynomial.
pub trait IncidenceScalar: Scalar {
    fn root_clusters(coeffs: Vec<Self>) -> Result<Vec<(Complex64, usize)>>;
}

impl IncidenceScalar for GaussianRational {
    fn root_clusters(coeffs: Vec<Self>) -> Result<Vec<(Complex64, usize)>> {
        let lc = UniPoly::new("t", coeffs);
        if lc.is_constant() {
            return Ok(Vec::new());
        }
        let sd = squarefree_decompose(&lc)?;
        let mut out = Vec::new();
        for (f, e) in &sd.parts {
            let mut rs = numeric_roots(&ComplexPoly::from_exact(f))?;
            sort_points(&mut rs);
            out.extend(rs.into_iter().map(|r| (r, *e)));
        }
        out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        Ok(out)
    }
}

impl IncidenceScalar for Complex64 {
    fn root_clusters(coeffs: Vec<Self>) -> Result<Vec<(Complex64, usize)>> {
        let lc = ComplexPoly::new(coeffs);
        if lc.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let roots = numeric_roots(&lc)?;
        Ok(cluster_roots(&lc, &roots))
    }
}

pub fn infinity_incidence<T: IncidenceScalar>(f: &BiPoly<T>, axis: Axis) -> Result<InfinityIncidence> {
    let (dz, dw) = f.bidegree()?;
    let (lc, expected) = match axis {
        Axis::L1 => (f.leading_in_second(), dz),
        Axis::L2 => (f.leading_in_first(), dw),
    };
    let lc_degree = lc.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    if lc_degree != expected {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let points = T::root_clusters(lc)?
        .into_iter()
        .map(|(location, multiplicity)| IncidencePoint { location, multiplicity })
        .collect();
    Ok(InfinityIncidence { axis, points })
}

/// Number of local branches of `P(z)Q(w) = 1` at `(z_j, ∞)`: the germ is
/// `u^q = v^{p_j}`, which has `gcd(q, p_j)` branches.
pub fn germ_branch_count(p: &UniPoly, q: &UniPoly, j: usize) -> Result<usize> {
    let inc = infinity_incidence(&build_separated(p, q)?, Axis::L1)?;
    let point = inc.points.get(j).ok_or(Error::IndexOutOfRange { index: j, len: inc.points.len() })?;
    let qdeg = q.degree().expect("non-constant");
    Ok(gcd(qdeg, point.multiplicity))
}

//! Floating-point polynomial roots.
//!
//! Simultaneous Aberth–Ehrlich iteration followed by Newton polishing. For
//! exact input the squarefree decomposition is taken first so that the
//! iteration only ever sees simple roots.

use std::f64::consts::TAU;

use num::complex::Complex64;
use num::Zero;

use crate::error::{Error, Result};
use crate::exact::{squarefree_decompose, UniPoly};

/// Single-linkage tolerance for numeric root clusters.
pub const CLUSTER_TOL: f64 = 1e-6;

const MAX_ITER: usize = 2000;
const RESIDUAL_TOL: f64 = 1e-10;

/// Dense complex-coefficient polynomial, ascending order, trailing exact
/// zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_exact(p: &UniPoly) -> Self {
        Self::new(p.to_complex_coeffs())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |a_k| |z|^k`, the natural scale of rounding error in `eval(z)`.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Taylor coefficient `p^{(k)}(z) / k!` and its rounding scale.
    fn taylor(&self, z: Complex64, k: usize) -> (Complex64, f64) {
        let r = z.norm();
        let mut val = Complex64::zero();
        let mut scale = 0.0;
        for j in (k..self.coeffs.len()).rev() {
            let b = binomial(j, k);
            val = val * z + self.coeffs[j] * b;
            scale = scale * r + self.coeffs[j].norm() * b;
        }
        (val, scale)
    }

    pub fn sub_constant(&self, c: Complex64) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(Complex64::zero());
        }
        coeffs[0] -= c;
        Self::new(coeffs)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// All roots (with multiplicity) of an exact polynomial.
///
/// Each squarefree factor is solved separately and its roots are repeated
/// according to the exponent, so multiple roots come out exactly repeated.
pub fn univariate_roots(p: &UniPoly) -> Result<Vec<Complex64>> {
    let sd = squarefree_decompose(p)?;
    let mut out = Vec::with_capacity(p.degree().unwrap_or(0));
    for (f, e) in &sd.parts {
        let rs = numeric_roots(&ComplexPoly::from_exact(f))?;
        for r in rs {
            out.extend(std::iter::repeat_n(r, *e));
        }
    }
    sort_points(&mut out);
    Ok(out)
}

/// Roots of a floating polynomial with multiplicity.
pub fn numeric_roots(p: &ComplexPoly) -> Result<Vec<Complex64>> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::ZeroOrConstantInput),
        Some(n) => n,
    };
    // Exact zero roots from vanishing low-order coefficients.
    let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = ComplexPoly::new(p.coeffs[zeros..].to_vec());
    let mut roots = vec![Complex64::zero(); zeros];
    if n > zeros {
        roots.extend(aberth(&reduced)?);
    }
    let worst = roots
        .iter()
        .map(|&r| {
            let s = p.eval_scale(r);
            if s == 0.0 {
                0.0
            } else {
                p.eval(r).norm() / s
            }
        })
        .fold(0.0, f64::max);
    if worst.is_nan() || worst >= RESIDUAL_TOL {
        return Err(Error::ConvergenceFailure { residual: worst });
    }
    Ok(roots)
}

fn aberth(p: &ComplexPoly) -> Result<Vec<Complex64>> {
    let n = p.degree().expect("non-constant");
    let lc = p.coeffs[n];
    if n == 1 {
        return Ok(vec![-p.coeffs[0] / lc]);
    }
    // Initial points on a circle of the geometric-mean root radius.
    let radius = (p.coeffs[0] / lc).norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4)).collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (v, dv) = p.eval_with_derivative(z[i]);
            if v.is_zero() {
                continue;
            }
            let ratio = v / dv;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.is_finite() {
                step = Complex64::from_polar(1e-8 * (1.0 + z[i].norm()), i as f64);
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    for r in z.iter_mut() {
        polish(p, r);
    }
    if !converged && z.iter().any(|r| !r.is_finite()) {
        return Err(Error::ConvergenceFailure { residual: f64::INFINITY });
    }
    Ok(z)
}

/// A few Newton steps, each kept only if it lowers the residual.
pub(crate) fn polish(p: &ComplexPoly, r: &mut Complex64) {
    let mut best = p.eval(*r).norm();
    for _ in 0..4 {
        let (v, dv) = p.eval_with_derivative(*r);
        if v.is_zero() || dv.is_zero() {
            return;
        }
        let cand = *r - v / dv;
        let res = p.eval(cand).norm();
        if res.is_nan() || res >= best {
            return;
        }
        best = res;
        *r = cand;
    }
}

/// Deterministic ordering by real part, then imaginary part.
pub fn sort_points(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Groups numeric roots into `(location, multiplicity)` clusters.
///
/// Roots within [`CLUSTER_TOL`] are linked first. A multiple root computed
/// in floating point scatters on a circle of radius about `ε^{1/m}`, which
/// for `m ≥ 3` exceeds that tolerance, so nearby clusters are then merged
/// whenever the polynomial's first `m` Taylor coefficients vanish at the
/// merged centroid to rounding level.
pub fn cluster_roots(p: &ComplexPoly, roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        let hits: Vec<usize> = clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|&x| (x - r).norm() <= CLUSTER_TOL))
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [] => clusters.push(vec![r]),
            [first, rest @ ..] => {
                for &i in rest.iter().rev() {
                    let moved = clusters.remove(i);
                    clusters[*first].extend(moved);
                }
                clusters[*first].push(r);
            }
        }
    }

    let mut centers: Vec<Complex64> = clusters.iter().map(|c| centroid(c)).collect();
    loop {
        let mut best: Option<(f64, usize, usize, Complex64)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let (ci, cj) = (centroid(&clusters[i]), centroid(&clusters[j]));
                let dist = (ci - cj).norm();
                if dist > 0.05 * (1.0 + ci.norm().max(cj.norm())) {
                    continue;
                }
                let merged: Vec<Complex64> = clusters[i].iter().chain(&clusters[j]).copied().collect();
                if best.is_some_and(|(d, ..)| dist >= d) {
                    continue;
                }
                if let Some(at) = multiple_root_near(p, centroid(&merged), merged.len()) {
                    best = Some((dist, i, j, at));
                }
            }
        }
        match best {
            Some((_, i, j, at)) => {
                let moved = clusters.remove(j);
                clusters[i].extend(moved);
                centers.remove(j);
                centers[i] = at;
            }
            None => break,
        }
    }

    let mut out: Vec<(Complex64, usize)> = centers.into_iter().zip(clusters.iter().map(Vec::len)).collect();
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}

fn centroid(c: &[Complex64]) -> Complex64 {
    c.iter().sum::<Complex64>() / c.len() as f64
}

/// An `m`-fold root is a simple root of the `(m-1)`-th derivative, so
/// Newton on that derivative recovers it from a scattered cluster; the point
/// is accepted when every Taylor coefficient below `m` vanishes there.
fn multiple_root_near(p: &ComplexPoly, start: Complex64, m: usize) -> Option<Complex64> {
    let mut c = start;
    for _ in 0..20 {
        let (v, _) = p.taylor(c, m - 1);
        let (dv, _) = p.taylor(c, m);
        if dv.is_zero() {
            break;
        }
        let delta = v / (dv * m as f64);
        c -= delta;
        if delta.norm() <= 1e-15 * (1.0 + c.norm()) {
            break;
        }
    }
    if !c.is_finite() || (c - start).norm() > 0.05 * (1.0 + start.norm()) {
        return None;
    }
    (0..m)
        .all(|k| {
            let (v, scale) = p.taylor(c, k);
            v.norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
        })
        .then_some(c)
}

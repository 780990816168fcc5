//! Numerical monodromy of the projection `(z, w) ↦ z` on `{P(z)Q(w) = 1}`.
//!
//! Loops around every branch point act on a generic fiber by permutations;
//! the orbits of the group they generate are in bijection with the
//! irreducible components of the curve. Nothing here consults the
//! power-structure criterion, so the orbit count is an independent check
//! on it.

mod roots;
mod track;

pub use roots::{cluster_roots, numeric_roots, sort_points, univariate_roots, ComplexPoly, CLUSTER_TOL};
pub use track::{FiberTracker, Segment, LEG_STEPS, LOOP_STEPS};

use std::f64::consts::TAU;

use num::complex::Complex64;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, UniPoly};

/// Branch points closer than this are treated as one.
const DEDUP_TOL: f64 = 1e-8;
/// Minimum separation of fiber roots at an acceptable basepoint.
const MIN_FIBER_SEPARATION: f64 = 1e-4;
/// Residual bound after a closed loop.
const RETURN_RESIDUAL: f64 = 1e-8;
const BASEPOINT_ATTEMPTS: usize = 16;

/// The `deg Q` solutions of `Q(w) = 1/P(base_z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberData {
    pub base_z: Complex64,
    pub roots_w: Vec<Complex64>,
}

/// `perm[i] = j`: root `i` of the fiber continues to root `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// `None` unless `images` is a bijection of `0..len`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &j in &images {
            if j >= images.len() || std::mem::replace(&mut seen[j], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Cycle decomposition, each cycle starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }
}

/// Orbits of the group generated by `perms` on `0..n`.
pub fn orbits(n: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for perm in perms {
        for i in 0..n.min(perm.len()) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, perm.apply(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyCertificate {
    pub fiber: FiberData,
    /// Sorted by real part, then imaginary part.
    pub branch_points: Vec<Complex64>,
    pub loop_radii: Vec<f64>,
    /// One per branch point, same order.
    pub permutations: Vec<Permutation>,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<usize>>,
}

impl MonodromyCertificate {
    /// Rebuild the orbit data from (possibly edited) permutations.
    pub fn with_permutations(mut self, permutations: Vec<Permutation>) -> Self {
        self.orbits = orbits(self.fiber.roots_w.len(), &permutations);
        self.orbit_count = self.orbits.len();
        self.permutations = permutations;
        self
    }
}

fn require_nonconstant(p: &UniPoly) -> Result<()> {
    if p.is_constant() {
        Err(Error::ZeroOrConstantInput)
    } else {
        Ok(())
    }
}

/// `Res_w(Q'(w), s·Q(w) - 1)` as a polynomial in `s`; its roots are `1/v`
/// for the nonzero critical values `v` of `Q`.
fn critical_value_polynomial(q: &UniPoly) -> Result<UniPoly> {
    let dq = q.derivative();
    let n = q.degree().expect("non-constant");
    // Degree in s is at most n - 1: interpolate through s = 1..=n.
    let nodes: Vec<GaussianRational> = (1..=n as i64).map(GaussianRational::from).collect();
    let values = nodes
        .iter()
        .map(|s| {
            let shifted = q.scale(s).try_sub(&UniPoly::one(q.var()))?;
            dq.resultant(&shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    lagrange("s", &nodes, &values)
}

fn lagrange(var: &str, nodes: &[GaussianRational], values: &[GaussianRational]) -> Result<UniPoly> {
    let mut acc = UniPoly::zero(var);
    for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one(var);
        let mut denom = GaussianRational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::new(var, vec![-xj, GaussianRational::one()]);
                denom = &denom * &(xi - xj);
            }
        }
        acc = &acc + &basis.scale(&yi.checked_div(&denom)?);
    }
    Ok(acc)
}

/// Points over which the fiber of `P(z)Q(w) = 1` degenerates: roots of `P`
/// (roots escape to infinity) and solutions of `P(z) = 1/v` for nonzero
/// critical values `v` of `Q` (roots collide).
///
/// Both sets are computed as roots of exact squarefree polynomials, so every
/// returned point is a simple root of the polynomial it came from.
pub fn branch_points(p: &UniPoly, q: &UniPoly) -> Result<Vec<Complex64>> {
    require_nonconstant(p)?;
    require_nonconstant(q)?;
    let mut pts = numeric_roots(&ComplexPoly::from_exact(&p.squarefree_part()?))?;
    let crit = critical_value_polynomial(q)?.with_var(p.var());
    if !crit.is_constant() {
        let collide = p.compose_into(&crit).squarefree_part()?;
        pts.extend(numeric_roots(&ComplexPoly::from_exact(&collide))?);
    }
    sort_points(&mut pts);
    let mut out: Vec<Complex64> = Vec::with_capacity(pts.len());
    for z in pts {
        if out.iter().all(|o| (o - z).norm() > DEDUP_TOL) {
            out.push(z);
        }
    }
    Ok(out)
}

/// Loop radius around each branch point: a third of the distance to the
/// nearest other one, capped at 1.
pub fn loop_radii(branch_points: &[Complex64]) -> Vec<f64> {
    branch_points
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            branch_points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &o)| (o - c).norm() / 3.0)
                .fold(1.0, f64::min)
        })
        .collect()
}

fn tracker_for(p: &UniPoly, q: &UniPoly) -> FiberTracker {
    FiberTracker::new(ComplexPoly::from_exact(p), ComplexPoly::from_exact(q))
}

/// Solve `Q(w) = 1/P(z)` at `z`.
pub fn fiber_at(tracker: &FiberTracker, z: Complex64) -> Result<FiberData> {
    let pv = tracker.p().eval(z);
    if pv.is_zero() {
        return Err(Error::DegenerateBasepoint { attempts: 1 });
    }
    let mut roots_w = numeric_roots(&tracker.q().sub_constant(pv.inv()))?;
    tracker.refine(z, &mut roots_w)?;
    sort_points(&mut roots_w);
    Ok(FiberData { base_z: z, roots_w })
}

fn min_separation(ws: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            best = best.min((ws[i] - ws[j]).norm());
        }
    }
    best
}

/// Match the roots after a closed path back to the starting fiber.
fn match_roots(start: &[Complex64], end: &[Complex64]) -> Result<Permutation> {
    let mut images = Vec::with_capacity(end.len());
    for &w in end {
        let mut dists: Vec<(f64, usize)> = start.iter().enumerate().map(|(j, &s)| ((s - w).norm(), j)).collect();
        dists.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let [(d1, _), (d2, _), ..] = dists.as_slice() {
            if d1 * 10.0 > *d2 {
                return Err(Error::MatchingAmbiguity);
            }
        }
        images.push(dists[0].1);
    }
    Permutation::new(images).ok_or(Error::MatchingAmbiguity)
}

fn check_return_residual(tracker: &FiberTracker, fiber: &FiberData, ws: &[Complex64]) -> Result<()> {
    let c = tracker.p().eval(fiber.base_z).inv();
    for &w in ws {
        let res = (tracker.q().eval(w) - c).norm();
        let scale = tracker.q().eval_scale(w).max(1.0);
        if res.is_nan() || res >= RETURN_RESIDUAL * scale {
            return Err(Error::ConvergenceFailure { residual: res });
        }
    }
    Ok(())
}

fn closed_path(tracker: &FiberTracker, fiber: &FiberData, path: &[Segment]) -> Result<Permutation> {
    let mut ws = fiber.roots_w.clone();
    tracker.track(path, &mut ws)?;
    tracker.refine(fiber.base_z, &mut ws)?;
    check_return_residual(tracker, fiber, &ws)?;
    match_roots(&fiber.roots_w, &ws)
}

/// Lasso from the fiber's basepoint around the circle `|z - center| = radius`.
pub fn track_loop_with(
    tracker: &FiberTracker,
    fiber: &FiberData,
    center: Complex64,
    radius: f64,
) -> Result<Permutation> {
    let b = fiber.base_z;
    let dir = (b - center) / (b - center).norm();
    let entry = center + dir * radius;
    let path = [
        Segment::Line { from: b, to: entry },
        Segment::Circle { center, radius, start: dir.arg() },
        Segment::Line { from: entry, to: b },
    ];
    closed_path(tracker, fiber, &path)
}

/// Monodromy permutation of one loop around `center`.
pub fn track_loop(p: &UniPoly, q: &UniPoly, fiber: &FiberData, center: Complex64, radius: f64) -> Result<Permutation> {
    require_nonconstant(p)?;
    require_nonconstant(q)?;
    track_loop_with(&tracker_for(p, q), fiber, center, radius)
}

/// Orbit count of the monodromy group; deterministic for a given seed.
pub fn component_count(p: &UniPoly, q: &UniPoly, seed: u64) -> Result<MonodromyCertificate> {
    require_nonconstant(p)?;
    require_nonconstant(q)?;
    let bps = branch_points(p, q)?;
    let radii = loop_radii(&bps);
    let tracker = tracker_for(p, q);
    let far = 1.5 * (1.0 + bps.iter().map(|z| z.norm()).fold(0.0, f64::max));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;

    for _ in 0..BASEPOINT_ATTEMPTS {
        let theta: f64 = rng.gen::<f64>() * TAU;
        let base = Complex64::from_polar(far, theta);
        let fiber = match fiber_at(&tracker, base) {
            Ok(f) if min_separation(&f.roots_w) >= MIN_FIBER_SEPARATION => f,
            Ok(_) => continue,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let perms: Result<Vec<Permutation>> =
            bps.par_iter().zip(&radii).map(|(&c, &r)| track_loop_with(&tracker, &fiber, c, r)).collect();
        match perms {
            Ok(perms) => {
                let orbs = orbits(fiber.roots_w.len(), &perms);
                return Ok(MonodromyCertificate {
                    fiber,
                    branch_points: bps,
                    loop_radii: radii,
                    orbit_count: orbs.len(),
                    orbits: orbs,
                    permutations: perms,
                });
            }
            Err(e) if e.is_numerical() => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::DegenerateBasepoint { attempts: BASEPOINT_ATTEMPTS }))
}

/// Number of cycles of the local monodromy on a small circle around
/// `center`: the number of distinct clusters of w-roots that escape to
/// infinity together as `z` approaches a root of `P`.
pub fn escaping_branch_count(p: &UniPoly, q: &UniPoly, center: Complex64) -> Result<usize> {
    Ok(escaping_branch_counts(p, q, &[center])?[0])
}

/// [`escaping_branch_count`] for several centers, sharing the branch point
/// computation.
pub fn escaping_branch_counts(p: &UniPoly, q: &UniPoly, centers: &[Complex64]) -> Result<Vec<usize>> {
    require_nonconstant(p)?;
    require_nonconstant(q)?;
    let bps = branch_points(p, q)?;
    let tracker = tracker_for(p, q);
    centers
        .iter()
        .map(|&center| {
            let radius = bps
                .iter()
                .filter(|&&o| (o - center).norm() > DEDUP_TOL)
                .map(|&o| (o - center).norm() / 3.0)
                .fold(1.0, f64::min);
            let fiber = fiber_at(&tracker, center + radius)?;
            let path = [Segment::Circle { center, radius, start: 0.0 }];
            Ok(closed_path(&tracker, &fiber, &path)?.cycles().len())
        })
        .collect()
}

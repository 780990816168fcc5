//! Proportionality of a two-factor splitting `P(z)Q(w) - 1 = f'·f''`.
//!
//! If `f'` and `f''` have bidegrees `(p', q')` and `(p'', q'')` and meet the
//! line `L₁` at `z_j` with multiplicities `p'_j`, `p''_j` (similarly `q'_j`,
//! `q''_j` on `L₂`), then every ratio `p'_j : p''_j` equals `q' : q''`, every
//! `q'_j : q''_j` equals `p' : p''`, and the common value `d'/d''` in lowest
//! terms makes every `p_j` and `q_j` a multiple of `d = d' + d''`.

use num::complex::Complex64;
use num::rational::Ratio;

use super::incidence::{Axis, InfinityIncidence};
use crate::error::{Error, Result};

/// Location tolerance when pairing the points of the two factors.
const MATCH_TOL: f64 = 1e-6;

/// Intersection multiplicities of both factors at one point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitMultiplicity {
    pub location: Complex64,
    pub first: usize,
    pub second: usize,
}

impl SplitMultiplicity {
    pub fn total(&self) -> usize {
        self.first + self.second
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProportionalityReport {
    pub alpha: Ratio<usize>,
    pub beta: Ratio<usize>,
    pub d_prime: usize,
    pub d_double_prime: usize,
    pub d: usize,
    /// `p_j / d`, one per point on `L₁`.
    pub a: Vec<usize>,
    /// `q_j / d`, one per point on `L₂`.
    pub b: Vec<usize>,
    pub l1: Vec<SplitMultiplicity>,
    pub l2: Vec<SplitMultiplicity>,
    pub consistent: bool,
}

/// `incidences[k] = (L₁ incidence, L₂ incidence)` and `bidegrees[k]` of
/// factor `k`; exactly two factors are required.
pub fn proportionality_report(
    incidences: &[(InfinityIncidence, InfinityIncidence)],
    bidegrees: &[(usize, usize)],
) -> Result<ProportionalityReport> {
    let ([(l1a, l2a), (l1b, l2b)], [(p1, q1), (p2, q2)]) = (incidences, bidegrees) else {
        return Err(Error::InconsistentFactorData(format!(
            "two factors required, got {} incidence pairs and {} bidegrees",
            incidences.len(),
            bidegrees.len()
        )));
    };
    for (inc, axis) in [(l1a, Axis::L1), (l2a, Axis::L2), (l1b, Axis::L1), (l2b, Axis::L2)] {
        if inc.axis != axis {
            return Err(Error::InconsistentFactorData("incidence pairs must be (L1, L2)".into()));
        }
    }
    let l1 = pair_points(l1a, l1b);
    let l2 = pair_points(l2a, l2b);
    let ratio_of = |pts: &[SplitMultiplicity], name: &str| -> Result<Ratio<usize>> {
        match pts.first() {
            Some(s) if s.second > 0 => Ok(Ratio::new(s.first, s.second)),
            Some(_) => Err(Error::InconsistentFactorData(format!("second factor misses the first point on {name}"))),
            None => Err(Error::InconsistentFactorData(format!("no points on {name}"))),
        }
    };
    let alpha = ratio_of(&l1, "L1")?;
    let beta = ratio_of(&l2, "L2")?;

    let mut consistent = alpha == beta;
    // p'_j / p''_j = q' / q''  and  q'_j / q''_j = p' / p''
    consistent &= l1.iter().all(|s| s.first * q2 == s.second * q1);
    consistent &= l2.iter().all(|s| s.first * p2 == s.second * p1);
    // Σ p'_j = p' etc.
    consistent &= l1.iter().map(|s| s.first).sum::<usize>() == *p1;
    consistent &= l1.iter().map(|s| s.second).sum::<usize>() == *p2;
    consistent &= l2.iter().map(|s| s.first).sum::<usize>() == *q1;
    consistent &= l2.iter().map(|s| s.second).sum::<usize>() == *q2;

    let (d_prime, d_double_prime) = (*alpha.numer(), *alpha.denom());
    let d = d_prime + d_double_prime;
    let mut quotients = |pts: &[SplitMultiplicity]| -> Vec<usize> {
        pts.iter()
            .map(|s| {
                let a = s.total() / d;
                consistent &= s.total() % d == 0 && s.first == a * d_prime && s.second == a * d_double_prime;
                a
            })
            .collect()
    };
    let a = quotients(&l1);
    let b = quotients(&l2);
    Ok(ProportionalityReport { alpha, beta, d_prime, d_double_prime, d, a, b, l1, l2, consistent })
}

/// Union of both factors' points, multiplicity 0 where a factor is absent.
fn pair_points(first: &InfinityIncidence, second: &InfinityIncidence) -> Vec<SplitMultiplicity> {
    let mut out: Vec<SplitMultiplicity> = first
        .points
        .iter()
        .map(|p| SplitMultiplicity { location: p.location, first: p.multiplicity, second: 0 })
        .collect();
    for p in &second.points {
        let hit = out.iter_mut().find(|s| (s.location - p.location).norm() <= MATCH_TOL * (1.0 + p.location.norm()));
        match hit {
            Some(s) => s.second += p.multiplicity,
            None => out.push(SplitMultiplicity { location: p.location, first: 0, second: p.multiplicity }),
        }
    }
    out.sort_by(|a, b| a.location.re.total_cmp(&b.location.re).then(a.location.im.total_cmp(&b.location.im)));
    out
}

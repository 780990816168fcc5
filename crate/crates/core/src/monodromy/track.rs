//! Predictor–corrector continuation of the fiber `{w : P(z)Q(w) = 1}` along
//! a path in the z-plane.

use std::f64::consts::TAU;

use num::complex::Complex64;
use num::Zero;

use super::roots::ComplexPoly;
use crate::error::{Error, Result};

/// Base steps for the circular part of a loop.
pub const LOOP_STEPS: usize = 256;
/// Base steps for each straight leg.
pub const LEG_STEPS: usize = 128;
/// Maximum number of step halvings below the base step.
const MAX_DEPTH: u32 = 30;
const NEWTON_ITERS: usize = 12;
const NEWTON_TOL: f64 = 1e-12;
/// A step may move a root by at most this fraction of its distance to the
/// nearest other root. Near an m-fold branch point at distance `D` this caps
/// the step length below `D`, so no step can pass over a branch point.
const PREDICT_RATIO: f64 = 0.1;
/// Largest Newton correction, as a fraction of the predicted separation.
const CORRECT_RATIO: f64 = 0.25;

/// A piece of a path in the base plane, parametrized over `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// Counter-clockwise full turn starting at `center + radius·e^{i·start}`.
    Circle {
        center: Complex64,
        radius: f64,
        start: f64,
    },
}

impl Segment {
    fn at(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Circle { center, radius, start } => center + Complex64::from_polar(radius, start + TAU * t),
        }
    }

    fn base_steps(&self) -> usize {
        match self {
            Segment::Line { .. } => LEG_STEPS,
            Segment::Circle { .. } => LOOP_STEPS,
        }
    }
}

/// Numeric data of `P` and `Q` needed to move along fibers.
#[derive(Debug, Clone)]
pub struct FiberTracker {
    p: ComplexPoly,
    q: ComplexPoly,
}

impl FiberTracker {
    pub fn new(p: ComplexPoly, q: ComplexPoly) -> Self {
        Self { p, q }
    }

    pub fn p(&self) -> &ComplexPoly {
        &self.p
    }

    pub fn q(&self) -> &ComplexPoly {
        &self.q
    }

    /// `1/P(z)` and its z-derivative.
    fn target(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        let (pv, dpv) = self.p.eval_with_derivative(z);
        if pv.is_zero() {
            return None;
        }
        let c = pv.inv();
        let dc = -dpv * c * c;
        (c.is_finite() && dc.is_finite()).then_some((c, dc))
    }

    /// Newton on `Q(w) = c` starting at `w`.
    ///
    /// Near a multiple root of `Q` the rounding noise of `Q(w)` divided by a
    /// small `Q'(w)` can exceed the absolute tolerance, so a step at that
    /// noise level also counts as converged.
    fn correct(&self, mut w: Complex64, c: Complex64) -> Option<Complex64> {
        for _ in 0..NEWTON_ITERS {
            let (qv, dqv) = self.q.eval_with_derivative(w);
            if dqv.is_zero() {
                return None;
            }
            let delta = (qv - c) / dqv;
            let noise = 64.0 * f64::EPSILON * (self.q.eval_scale(w) + c.norm()) / dqv.norm();
            w -= delta;
            if !w.is_finite() {
                return None;
            }
            if delta.norm() <= (NEWTON_TOL * (1.0 + w.norm())).max(noise) {
                return Some(w);
            }
        }
        None
    }

    /// Refine a full fiber at `z` in place.
    pub fn refine(&self, z: Complex64, ws: &mut [Complex64]) -> Result<()> {
        let (c, _) = self.target(z).ok_or(Error::PathCollision { re: z.re, im: z.im })?;
        for w in ws.iter_mut() {
            *w = self.correct(*w, c).ok_or(Error::PathCollision { re: z.re, im: z.im })?;
        }
        Ok(())
    }

    /// One attempted step `z0 -> z1`; `None` if it must be subdivided.
    fn step(&self, z0: Complex64, z1: Complex64, ws: &[Complex64]) -> Option<Vec<Complex64>> {
        let (_, dc0) = self.target(z0)?;
        let (c1, _) = self.target(z1)?;
        let dz = z1 - z0;
        let predicted: Vec<Complex64> = ws
            .iter()
            .map(|&w| {
                let (_, dq) = self.q.eval_with_derivative(w);
                w + dc0 / dq * dz
            })
            .collect();
        let mut out = Vec::with_capacity(ws.len());
        for (i, (&w_old, &w_pred)) in ws.iter().zip(&predicted).enumerate() {
            let sep_old = separation(ws, i, w_old);
            let sep_pred = separation(&predicted, i, w_pred);
            if !w_pred.is_finite() || (w_pred - w_old).norm() > PREDICT_RATIO * sep_old {
                return None;
            }
            let w_new = self.correct(w_pred, c1)?;
            if (w_new - w_pred).norm() > CORRECT_RATIO * sep_pred {
                return None;
            }
            out.push(w_new);
        }
        // Two paths converging onto one root within a single step means a
        // corrector jumped.
        let jumped =
            (0..out.len()).any(|i| separation(&out, i, out[i]) < 0.5 * separation(&predicted, i, predicted[i]));
        (!jumped).then_some(out)
    }

    fn advance(&self, seg: &Segment, t0: f64, t1: f64, ws: &mut Vec<Complex64>, depth: u32) -> Result<()> {
        let (z0, z1) = (seg.at(t0), seg.at(t1));
        if let Some(next) = self.step(z0, z1, ws) {
            *ws = next;
            return Ok(());
        }
        if depth >= MAX_DEPTH {
            return Err(Error::PathCollision { re: z0.re, im: z0.im });
        }
        let mid = 0.5 * (t0 + t1);
        self.advance(seg, t0, mid, ws, depth + 1)?;
        self.advance(seg, mid, t1, ws, depth + 1)
    }

    /// Continue every root of the fiber along the path pieces in order.
    pub fn track(&self, path: &[Segment], ws: &mut Vec<Complex64>) -> Result<()> {
        for seg in path {
            let n = seg.base_steps();
            for k in 0..n {
                let (t0, t1) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
                self.advance(seg, t0, t1, ws, 0)?;
            }
        }
        Ok(())
    }
}

fn separation(ws: &[Complex64], i: usize, w: Complex64) -> f64 {
    ws.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| (v - w).norm())
        .fold(f64::INFINITY, f64::min)
        .clamp(1e-300, 1e300)
}

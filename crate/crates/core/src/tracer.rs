//! Polyline extraction of the lemniscate `{|P(z)| = 1}` by marching squares
//! on `g(x, y) = |P(x+iy)|² - 1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::UniPoly;
use crate::monodromy::ComplexPoly;

pub const MIN_RESOLUTION: usize = 16;

/// Axis-aligned box `(xmin, xmax, ymin, ymax)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BoundingBox {
    pub fn centered_square(half_width: f64) -> Self {
        Self { xmin: -half_width, xmax: half_width, ymin: -half_width, ymax: half_width }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    pub bbox: BoundingBox,
    pub resolution: usize,
    pub polylines: Vec<Vec<(f64, f64)>>,
    /// Closed polylines repeat their first vertex at the end.
    pub closed: Vec<bool>,
}

impl CurveSet {
    pub fn cell_size(&self) -> (f64, f64) {
        (self.bbox.width() / self.resolution as f64, self.bbox.height() / self.resolution as f64)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.polylines.iter().flatten().copied()
    }
}

/// Square box of half-width `2·max(1 + C, ρ)` around the origin, where
/// `C = 1 + max |a_i / a_n|` is the Cauchy root bound and
/// `ρ = 1 + max_i (|a_i| + [i = 0]) / |a_n|` is the same bound for every
/// `P - u` with `|u| ≤ 1`. Points of `{|P| ≤ 1}` are roots of such a `P - u`,
/// so the box contains the whole region even when `|a_n|` is small.
pub fn bounding_box(p: &UniPoly) -> Result<BoundingBox> {
    if p.is_constant() {
        return Err(Error::ZeroOrConstantInput);
    }
    let c = p.to_complex_coeffs();
    let (lower, lead) = c.split_at(c.len() - 1);
    let lead = lead[0].norm();
    let cauchy = 1.0 + lower.iter().map(|a| a.norm() / lead).fold(0.0, f64::max);
    let rho = 1.0
        + lower.iter().enumerate().map(|(i, a)| (a.norm() + if i == 0 { 1.0 } else { 0.0 }) / lead).fold(0.0, f64::max);
    Ok(BoundingBox::centered_square(2.0 * (1.0 + cauchy).max(rho)))
}

/// Edge of the grid: `(i, j, horizontal)`; horizontal edges join vertex
/// `(i, j)` to `(i+1, j)`, vertical ones `(i, j)` to `(i, j+1)`.
type EdgeId = (usize, usize, bool);

pub fn trace_lemniscate(p: &UniPoly, resolution: usize) -> Result<CurveSet> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::IndexOutOfRange { index: resolution, len: MIN_RESOLUTION });
    }
    let bbox = bounding_box(p)?;
    let poly = ComplexPoly::from_exact(p);
    let n = resolution;
    let hx = bbox.width() / n as f64;
    let hy = bbox.height() / n as f64;
    let xy = |i: f64, j: f64| (bbox.xmin + i * hx, bbox.ymin + j * hy);
    let g = |x: f64, y: f64| poly.eval(Complex64::new(x, y)).norm_sqr() - 1.0;

    // values[j][i] at vertex (i, j)
    let values: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|j| {
            (0..=n)
                .map(|i| {
                    let (x, y) = xy(i as f64, j as f64);
                    g(x, y)
                })
                .collect()
        })
        .collect();
    let val = |i: usize, j: usize| values[j][i];
    let inside = |v: f64| v < 0.0;

    let crossing = |e: EdgeId| -> (f64, f64) {
        let (i, j, horizontal) = e;
        let (a, b) = if horizontal { (val(i, j), val(i + 1, j)) } else { (val(i, j), val(i, j + 1)) };
        let t = a / (a - b);
        if horizontal {
            xy(i as f64 + t, j as f64)
        } else {
            xy(i as f64, j as f64 + t)
        }
    };

    // Adjacency between edge crossings, built cell by cell.
    let mut adj: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    let mut link = |a: EdgeId, b: EdgeId| {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    };
    for j in 0..n {
        for i in 0..n {
            let corners = [val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1)];
            let case = corners.iter().enumerate().fold(0u8, |acc, (k, &v)| acc | ((inside(v) as u8) << k));
            // sides: bottom, right, top, left
            let bottom = (i, j, true);
            let right = (i + 1, j, false);
            let top = (i, j + 1, true);
            let left = (i, j, false);
            match case {
                0 | 15 => {}
                1 | 14 => link(left, bottom),
                2 | 13 => link(bottom, right),
                3 | 12 => link(left, right),
                4 | 11 => link(right, top),
                6 | 9 => link(bottom, top),
                7 | 8 => link(left, top),
                5 | 10 => {
                    let (cx, cy) = xy(i as f64 + 0.5, j as f64 + 0.5);
                    let center_inside = inside(g(cx, cy));
                    // Corners 0 and 2 share a sign in case 5 (inside) and
                    // case 10 (outside). If the center agrees with them the
                    // region through the center connects 0 and 2.
                    let diag_inside = case == 5;
                    if center_inside == diag_inside {
                        link(left, top);
                        link(bottom, right);
                    } else {
                        link(left, bottom);
                        link(right, top);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let mut polylines = Vec::new();
    let mut closed = Vec::new();
    let mut visited: BTreeMap<EdgeId, bool> = adj.keys().map(|&k| (k, false)).collect();
    let walk = |start: EdgeId, visited: &mut BTreeMap<EdgeId, bool>| -> (Vec<EdgeId>, bool) {
        let mut chain = vec![start];
        visited.insert(start, true);
        let mut prev: Option<EdgeId> = None;
        let mut cur = start;
        loop {
            let next = adj[&cur].iter().copied().find(|&e| Some(e) != prev && !visited[&e]);
            match next {
                Some(e) => {
                    visited.insert(e, true);
                    chain.push(e);
                    prev = Some(cur);
                    cur = e;
                }
                None => {
                    let is_closed = chain.len() > 2 && adj[&cur].contains(&start);
                    return (chain, is_closed);
                }
            }
        }
    };
    // Open chains start at boundary crossings (degree 1).
    let ends: Vec<EdgeId> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(&k, _)| k).collect();
    for e in ends {
        if !visited[&e] {
            let (chain, _) = walk(e, &mut visited);
            polylines.push(chain.iter().map(|&e| crossing(e)).collect::<Vec<_>>());
            closed.push(false);
        }
    }
    let keys: Vec<EdgeId> = adj.keys().copied().collect();
    for e in keys {
        if !visited[&e] {
            let (chain, is_closed) = walk(e, &mut visited);
            let mut pts: Vec<(f64, f64)> = chain.iter().map(|&e| crossing(e)).collect();
            if is_closed {
                pts.push(pts[0]);
            }
            polylines.push(pts);
            closed.push(is_closed);
        }
    }
    Ok(CurveSet { bbox, resolution, polylines, closed })
}

/// Groups of polylines whose endpoints lie within one cell diagonal of
/// each other.
pub fn component_count_numeric(c: &CurveSet) -> usize {
    let m = c.polylines.len();
    let (hx, hy) = c.cell_size();
    let diag = (hx * hx + hy * hy).sqrt();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let ends: Vec<Vec<(f64, f64)>> = c
        .polylines
        .iter()
        .map(|pl| match (pl.first(), pl.last()) {
            (Some(&a), Some(&b)) => vec![a, b],
            _ => Vec::new(),
        })
        .collect();
    for a in 0..m {
        if c.closed[a] {
            continue;
        }
        for b in a + 1..m {
            if c.closed[b] {
                continue;
            }
            let near = ends[a].iter().any(|&(x1, y1)| {
                ends[b].iter().any(|&(x2, y2)| ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt() <= diag)
            });
            if near {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    (0..m).filter(|&i| find(&mut parent, i) == i).count()
}

/// SVG 1.1 document: one `<path>` per polyline, coordinates with six
/// decimals, `viewBox` equal to the bounding box.
pub fn render_svg(c: &CurveSet) -> String {
    let b = &c.bbox;
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        b.xmin,
        b.ymin,
        b.width(),
        b.height()
    );
    for (pl, &closed) in c.polylines.iter().zip(&c.closed) {
        let mut d = String::new();
        for (k, (x, y)) in pl.iter().enumerate() {
            let _ = write!(d, "{}{:.6},{:.6}", if k == 0 { "M" } else { " L" }, x, y);
        }
        if closed {
            d.push_str(" Z");
        }
        let _ = writeln!(
            s,
            "  <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>"
        );
    }
    s.push_str("</svg>\n");
    s
}

/// CSV with header `polyline_id,x,y`, points in traversal order.
pub fn render_csv(c: &CurveSet) -> String {
    let mut s = String::from("polyline_id,x,y\n");
    for (id, pl) in c.polylines.iter().enumerate() {
        for (x, y) in pl {
            let _ = writeln!(s, "{id},{x:.6},{y:.6}");
        }
    }
    s
}

pub fn emit_svg(c: &CurveSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_svg(c))?;
    Ok(())
}

pub fn emit_csv(c: &CurveSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_csv(c))?;
    Ok(())
}

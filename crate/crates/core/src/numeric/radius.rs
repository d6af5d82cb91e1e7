//! Intrinsic radius by shortest paths on the sample grid.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::sample::SurfaceSample;
use crate::error::{Error, Result};
use crate::twistor::s4_distance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeWeight {
    /// Secant length in `R^5`.
    #[default]
    Chordal,
    /// Great-circle arc length.
    Geodesic,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RadiusOptions {
    pub weights: EdgeWeight,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusReport {
    pub center: (f64, f64),
    /// Grid node the center snapped to.
    pub center_node: (usize, usize),
    pub estimate: f64,
    pub h: f64,
    pub nodes: usize,
    pub weights: EdgeWeight,
    /// `(h, estimate)` from coarsest to finest.
    pub refinement: Vec<(f64, f64)>,
}

const NEIGHBOURS: [(isize, isize); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn weight(s: &SurfaceSample, a: usize, b: usize, w: EdgeWeight) -> f64 {
    let d = s4_distance(&s.x_values[a], &s.x_values[b]);
    match w {
        EdgeWeight::Chordal => d,
        EdgeWeight::Geodesic => 2.0 * (0.5 * d).min(1.0).asin(),
    }
}

/// Whether an active node has a missing 4-neighbour, i.e. lies on the outer
/// boundary or on the rim of an excluded disk.
pub fn is_boundary(s: &SurfaceSample, i: usize, j: usize) -> bool {
    let (i, j) = (i as isize, j as isize);
    s.active(i, j) && [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().any(|(di, dj)| !s.active(i + di, j + dj))
}

/// Nearest active node to `p`.
pub fn snap(s: &SurfaceSample, p: (f64, f64)) -> Result<(usize, usize)> {
    if !s.domain.contains(p.0, p.1) {
        return Err(Error::InvalidInput(format!("center ({}, {}) lies outside the domain {}", p.0, p.1, s.domain)));
    }
    let i = ((p.0 - s.origin.0) / s.h).round().clamp(0.0, (s.nu - 1) as f64) as usize;
    let j = ((p.1 - s.origin.1) / s.h).round().clamp(0.0, (s.nv - 1) as f64) as usize;
    if !s.active(i as isize, j as isize) {
        return Err(Error::InvalidInput(format!("center ({}, {}) lies in an excluded region", p.0, p.1)));
    }
    Ok((i, j))
}

/// Shortest-path distances from `src` over the 8-neighbour graph of active
/// nodes; unreachable nodes get `+inf`.
pub fn distances(s: &SurfaceSample, src: (usize, usize), w: EdgeWeight) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; s.nu * s.nv];
    let start = s.idx(src.0, src.1);
    dist[start] = 0.0;
    let mut heap = BinaryHeap::from([Entry(0.0, start)]);
    while let Some(Entry(d, k)) = heap.pop() {
        if d > dist[k] {
            continue;
        }
        let (i, j) = ((k % s.nu) as isize, (k / s.nu) as isize);
        for (di, dj) in NEIGHBOURS {
            if s.active(i + di, j + dj) {
                let m = s.idx((i + di) as usize, (j + dj) as usize);
                let nd = d + weight(s, k, m, w);
                if nd < dist[m] {
                    dist[m] = nd;
                    heap.push(Entry(nd, m));
                }
            }
        }
    }
    dist
}

/// Length of the shortest grid path from the node nearest `p0` to the boundary.
pub fn intrinsic_radius(s: &SurfaceSample, p0: (f64, f64), opts: &RadiusOptions) -> Result<RadiusReport> {
    let c = snap(s, p0)?;
    let dist = distances(s, c, opts.weights);
    let mut best = f64::INFINITY;
    for j in 0..s.nv {
        for i in 0..s.nu {
            if is_boundary(s, i, j) {
                best = best.min(dist[s.idx(i, j)]);
            }
        }
    }
    if !best.is_finite() {
        return Err(Error::GridTooSmall);
    }
    Ok(RadiusReport {
        center: p0,
        center_node: c,
        estimate: best,
        h: s.h,
        nodes: s.active_count(),
        weights: opts.weights,
        refinement: vec![(s.h, best)],
    })
}

/// Radius estimates on the samples produced for each spacing in `hs`; the
/// report carries the last (finest) estimate.
pub fn radius_refinement(
    sampler: impl Fn(f64) -> Result<SurfaceSample>,
    hs: &[f64],
    p0: (f64, f64),
    opts: &RadiusOptions,
) -> Result<RadiusReport> {
    let mut seq = Vec::new();
    let mut last = None;
    for &h in hs {
        let r = intrinsic_radius(&sampler(h)?, p0, opts)?;
        seq.push((h, r.estimate));
        last = Some(r);
    }
    let mut r = last.ok_or_else(|| Error::InvalidInput("no grid spacings given".into()))?;
    r.refinement = seq;
    Ok(r)
}

/// Whether successive differences of the estimates shrink.
pub fn is_cauchy(seq: &[(f64, f64)]) -> bool {
    let d: Vec<f64> = seq.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();
    d.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::sample::DomainSpec;
    use crate::twistor::S4Point;

    fn great_sphere(u: f64, v: f64) -> S4Point {
        [v.cos() * u.cos(), v.cos() * u.sin(), v.sin(), 0.0, 0.0]
    }

    fn strip(d: &str, h: f64) -> SurfaceSample {
        SurfaceSample::from_fn(d.parse::<DomainSpec>().unwrap(), h, vec![], great_sphere).unwrap()
    }

    #[test]
    fn great_circle_strip() {
        let r = radius_refinement(|h| Ok(strip("rect:-0.5,0.5,-0.3,0.3", h)), &[8e-3, 4e-3, 2e-3], (0.0, 0.0), &Default::default()).unwrap();
        assert!((r.estimate - 0.3).abs() < 3e-3, "{r:?}");
        assert!(is_cauchy(&r.refinement));
        let g = intrinsic_radius(&strip("rect:-0.5,0.5,-0.3,0.3", 2e-3), (0.0, 0.0), &RadiusOptions { weights: EdgeWeight::Geodesic }).unwrap();
        assert!((g.estimate - 0.3).abs() < 1e-9);
    }

    #[test]
    fn explicit_path_bounds_estimate() {
        let s = strip("rect:-0.5,0.5,-0.3,0.3", 0.01);
        let r = intrinsic_radius(&s, (0.1, 0.05), &Default::default()).unwrap();
        let (i, j) = r.center_node;
        let path: f64 = (j..s.nv - 1).map(|jj| s4_distance(s.x(i, jj), s.x(i, jj + 1))).sum();
        assert!(r.estimate <= path + 1e-15);
    }

    #[test]
    fn shrinking_domain() {
        let big = intrinsic_radius(&strip("rect:-0.5,0.5,-0.3,0.3", 0.01), (0.0, 0.0), &Default::default()).unwrap();
        let small = intrinsic_radius(&strip("rect:-0.2,0.2,-0.1,0.1", 0.01), (0.0, 0.0), &Default::default()).unwrap();
        assert!(small.estimate <= big.estimate);
    }

    #[test]
    fn center_outside() {
        let s = strip("disk:0,0,0.2", 0.01);
        assert!(matches!(intrinsic_radius(&s, (0.5, 0.0), &Default::default()), Err(Error::InvalidInput(_))));
    }
}

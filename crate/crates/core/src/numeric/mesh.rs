//! Mesh export: JSON with `R^5` vertices and OBJ through stereographic projection.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::geometry::{conformality_at, minimality_at, pointwise, ReportOptions};
use super::sample::SurfaceSample;
use crate::error::{Error, Result};
use crate::twistor::S4Point;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub nu: usize,
    pub nv: usize,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub conformality: Vec<Option<f64>>,
    pub minimality: Vec<Option<f64>>,
}

/// Active grid nodes as vertices and complete grid cells as quads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub grid: GridInfo,
    pub vertices_r5: Vec<S4Point>,
    pub faces: Vec<[usize; 4]>,
    pub residuals: Residuals,
}

/// Projection pole `sign * e_axis` on `S^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StereoPole {
    pub axis: usize,
    pub sign: f64,
}

impl Default for StereoPole {
    fn default() -> Self {
        StereoPole { axis: 4, sign: 1.0 }
    }
}

/// Vertices closer than this to the pole count as hitting it.
const POLE_TOL: f64 = 1e-9;

/// Stereographic projection from `pole` to `R^4`, keeping the first three
/// coordinates.
pub fn stereo3(x: &S4Point, pole: StereoPole) -> [f64; 3] {
    let denom = 1.0 - pole.sign * x[pole.axis];
    let mut out = [0.0; 3];
    for (slot, k) in (0..5).filter(|&k| k != pole.axis).take(3).enumerate() {
        out[slot] = x[k] / denom;
    }
    out
}

impl Mesh {
    pub fn from_sample(s: &SurfaceSample) -> Result<Self> {
        let opts = ReportOptions::default();
        let conf = pointwise(s, &opts, conformality_at).unwrap_or_else(|_| vec![None; s.nu * s.nv]);
        let mini = pointwise(s, &opts, minimality_at).unwrap_or_else(|_| vec![None; s.nu * s.nv]);
        let mut index = vec![usize::MAX; s.nu * s.nv];
        let mut vertices = Vec::new();
        let mut residuals = Residuals { conformality: Vec::new(), minimality: Vec::new() };
        for k in 0..s.nu * s.nv {
            if s.mask[k] {
                index[k] = vertices.len();
                vertices.push(s.x_values[k]);
                residuals.conformality.push(conf[k]);
                residuals.minimality.push(mini[k]);
            }
        }
        let mut faces = Vec::new();
        for j in 0..s.nv.saturating_sub(1) {
            for i in 0..s.nu.saturating_sub(1) {
                let q = [s.idx(i, j), s.idx(i + 1, j), s.idx(i + 1, j + 1), s.idx(i, j + 1)];
                if q.iter().all(|&k| s.mask[k]) {
                    faces.push(q.map(|k| index[k]));
                }
            }
        }
        Ok(Mesh { grid: GridInfo { nu: s.nu, nv: s.nv, h: s.h }, vertices_r5: vertices, faces, residuals })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        self.faces.iter().flat_map(|f| [[f[0], f[1], f[2]], [f[0], f[2], f[3]]]).collect()
    }

    /// Wavefront OBJ text with 1-based triangle indices.
    pub fn to_obj(&self, pole: StereoPole) -> Result<String> {
        let mut p = [0.0; 5];
        p[pole.axis] = pole.sign;
        if self.vertices_r5.iter().any(|x| crate::twistor::s4_distance(x, &p) < POLE_TOL) {
            return Err(Error::PoleOnSurface);
        }
        let mut out = String::new();
        for x in &self.vertices_r5 {
            let y = stereo3(x, pole);
            let _ = writeln!(out, "v {:?} {:?} {:?}", y[0], y[1], y[2]);
        }
        for t in self.triangles() {
            let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        Ok(out)
    }
}

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::hp::HpCurve;
use crate::analysis::{base_points, immersion_failures, CurveData};
use crate::curves::ProjectiveCurve;
use crate::error::{Error, Result};
use crate::laurent::{pole_set, PoleLocation};
use crate::arith::DomainPoint;
use crate::roots::find_roots;
use crate::twistor::{twistor_project, CP3Point, S4Point};

/// A region of the `z`-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainSpec {
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    Disk { cx: f64, cy: f64, r: f64 },
    Annulus { cx: f64, cy: f64, r0: f64, r1: f64 },
}

impl DomainSpec {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        const EPS: f64 = 1e-12;
        match *self {
            DomainSpec::Rect { x0, x1, y0, y1 } => x >= x0 - EPS && x <= x1 + EPS && y >= y0 - EPS && y <= y1 + EPS,
            DomainSpec::Disk { cx, cy, r } => (x - cx).hypot(y - cy) <= r + EPS,
            DomainSpec::Annulus { cx, cy, r0, r1 } => {
                let d = (x - cx).hypot(y - cy);
                d >= r0 - EPS && d <= r1 + EPS
            }
        }
    }

    /// `(x0, x1, y0, y1)`.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            DomainSpec::Rect { x0, x1, y0, y1 } => (x0, x1, y0, y1),
            DomainSpec::Disk { cx, cy, r } | DomainSpec::Annulus { cx, cy, r1: r, .. } => (cx - r, cx + r, cy - r, cy + r),
        }
    }
}

impl FromStr for DomainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad domain spec '{s}'; expected rect:x0,x1,y0,y1 | disk:cx,cy,r | annulus:cx,cy,r0,r1"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let v: Vec<f64> = rest.split(',').map(|t| t.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        if v.iter().any(|t| !t.is_finite()) {
            return Err(bad());
        }
        let d = match (kind.trim(), v.as_slice()) {
            ("rect", &[x0, x1, y0, y1]) if x0 < x1 && y0 < y1 => DomainSpec::Rect { x0, x1, y0, y1 },
            ("disk", &[cx, cy, r]) if r > 0.0 => DomainSpec::Disk { cx, cy, r },
            ("annulus", &[cx, cy, r0, r1]) if 0.0 <= r0 && r0 < r1 => DomainSpec::Annulus { cx, cy, r0, r1 },
            _ => return Err(bad()),
        };
        Ok(d)
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Rect { x0, x1, y0, y1 } => write!(f, "rect:{x0},{x1},{y0},{y1}"),
            DomainSpec::Disk { cx, cy, r } => write!(f, "disk:{cx},{cy},{r}"),
            DomainSpec::Annulus { cx, cy, r0, r1 } => write!(f, "annulus:{cx},{cy},{r0},{r1}"),
        }
    }
}

/// Mantissa width used to evaluate curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    Bits(u32),
}

impl Precision {
    pub fn from_bits(bits: u32) -> Self {
        if bits <= 53 {
            Precision::Double
        } else {
            Precision::Bits(bits)
        }
    }

    /// Reads `PRECISION_BITS`; unset means double precision.
    pub fn from_env() -> Result<Self> {
        match std::env::var("PRECISION_BITS") {
            Err(_) => Ok(Precision::Double),
            Ok(s) => s
                .trim()
                .parse::<u32>()
                .ok()
                .filter(|&b| b >= 2)
                .map(Precision::from_bits)
                .ok_or_else(|| Error::InvalidInput(format!("PRECISION_BITS must be an integer >= 2, got '{s}'"))),
        }
    }

    pub fn bits(&self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::Bits(b) => *b,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SampleOptions {
    pub precision: Precision,
    /// Radius of the disks removed around singular points; defaults to `10 h`.
    pub exclusion_radius: Option<f64>,
    /// Further points to keep away from.
    pub extra_exclusions: Vec<Complex64>,
}

/// Values of a surface on a square grid of spacing `h`. Node `(i, j)` sits
/// at `origin + h (i, j)`; nodes outside the domain or too close to a
/// singular point are masked out.
#[derive(Clone, Debug)]
pub struct SurfaceSample {
    pub domain: DomainSpec,
    pub h: f64,
    pub origin: (f64, f64),
    pub nu: usize,
    pub nv: usize,
    pub mask: Vec<bool>,
    pub x_values: Vec<S4Point>,
    /// Lift values and their `z`-derivatives, when the sample comes from a curve.
    pub f_values: Option<Vec<CP3Point>>,
    pub f_derivs: Option<Vec<CP3Point>>,
    pub excluded: Vec<Complex64>,
    pub exclusion_radius: f64,
    pub provenance: String,
}

fn grid_size(span: f64, h: f64) -> usize {
    let n = span / h;
    let r = n.round();
    (if (n - r).abs() < 1e-9 * n.max(1.0) { r } else { n.floor() }) as usize + 1
}

impl SurfaceSample {
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        (self.origin.0 + i as f64 * self.h, self.origin.1 + j as f64 * self.h)
    }

    pub fn active(&self, i: isize, j: isize) -> bool {
        i >= 0 && j >= 0 && (i as usize) < self.nu && (j as usize) < self.nv && self.mask[self.idx(i as usize, j as usize)]
    }

    pub fn x(&self, i: usize, j: usize) -> &S4Point {
        &self.x_values[self.idx(i, j)]
    }

    pub fn active_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    fn skeleton(domain: DomainSpec, h: f64, excluded: Vec<Complex64>, radius: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidInput(format!("grid spacing must be positive, got {h}")));
        }
        let (x0, x1, y0, y1) = domain.bounding_box();
        let nu = grid_size(x1 - x0, h);
        let nv = grid_size(y1 - y0, h);
        if nu.saturating_mul(nv) > 50_000_000 {
            return Err(Error::InvalidInput("grid too large".into()));
        }
        let mut s = SurfaceSample {
            domain,
            h,
            origin: (x0, y0),
            nu,
            nv,
            mask: vec![false; nu * nv],
            x_values: vec![[f64::NAN; 5]; nu * nv],
            f_values: None,
            f_derivs: None,
            excluded,
            exclusion_radius: radius,
            provenance: String::new(),
        };
        for j in 0..nv {
            for i in 0..nu {
                let (x, y) = s.point(i, j);
                let z = Complex64::new(x, y);
                let k = s.idx(i, j);
                s.mask[k] = domain.contains(x, y) && s.excluded.iter().all(|e| (z - e).norm() >= radius);
            }
        }
        if s.active_count() == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(s)
    }

    /// Samples an arbitrary map into `S^4`.
    pub fn from_fn(domain: DomainSpec, h: f64, excluded: Vec<Complex64>, f: impl Fn(f64, f64) -> S4Point) -> Result<Self> {
        let mut s = Self::skeleton(domain, h, excluded, 10.0 * h)?;
        for j in 0..s.nv {
            for i in 0..s.nu {
                let k = s.idx(i, j);
                if s.mask[k] {
                    let (x, y) = s.point(i, j);
                    s.x_values[k] = f(x, y);
                }
            }
        }
        s.provenance = "map".into();
        Ok(s)
    }

    /// Replaces the surface values, keeping the grid. Used to build perturbed samples.
    pub fn map_values(&self, f: impl Fn(f64, f64, &S4Point) -> S4Point) -> Self {
        let mut s = self.clone();
        for j in 0..s.nv {
            for i in 0..s.nu {
                let k = s.idx(i, j);
                if s.mask[k] {
                    let (x, y) = s.point(i, j);
                    s.x_values[k] = f(x, y, &self.x_values[k]);
                }
            }
        }
        s.f_values = None;
        s.f_derivs = None;
        s
    }
}

fn push_location(out: &mut Vec<Complex64>, l: &PoleLocation) {
    match l {
        PoleLocation::Exact(DomainPoint::Finite(x)) => out.push(x.to_complex()),
        PoleLocation::Numeric(x) => out.push(*x),
        PoleLocation::Exact(DomainPoint::Infinity) => {}
    }
}

/// Finite points the sampler keeps away from: poles of the defining data,
/// base points of its lift, critical points of `g` for Bryant data, and
/// points where the curve is not immersed.
pub fn singular_points(c: &ProjectiveCurve) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    if let Some(data) = CurveData::from_provenance(&c.provenance)? {
        for (l, _) in base_points(&data.lift()?)? {
            push_location(&mut out, &l);
        }
        let fs = match &data {
            CurveData::Bryant { f, g } => {
                let crit = find_roots(g.derivative().num());
                out.extend(crit.exact.iter().map(|(x, _)| x.to_complex()));
                out.extend(crit.numeric.iter().map(|(x, _)| *x));
                vec![f, g]
            }
            CurveData::Fcurve { h, g, .. } => vec![h, g],
        };
        for r in fs {
            for p in pole_set(r) {
                push_location(&mut out, &p.location);
            }
        }
    }
    if !c.is_constant() {
        for l in immersion_failures(c)? {
            push_location(&mut out, &l);
        }
    }
    Ok(out)
}

/// Grid of lift values and their twistor images.
pub fn sample_surface(c: &ProjectiveCurve, domain: DomainSpec, h: f64, opts: &SampleOptions) -> Result<SurfaceSample> {
    let mut excluded = singular_points(c)?;
    excluded.extend(opts.extra_exclusions.iter().copied());
    let radius = opts.exclusion_radius.unwrap_or(10.0 * h);
    let mut s = SurfaceSample::skeleton(domain, h, excluded, radius)?;
    let n = s.nu * s.nv;
    let mut fv = vec![[Complex64::new(f64::NAN, 0.0); 4]; n];
    let mut fd = fv.clone();
    let hp = match opts.precision {
        Precision::Bits(b) => Some(HpCurve::new(c, b)),
        Precision::Double => None,
    };
    for j in 0..s.nv {
        for i in 0..s.nu {
            let k = s.idx(i, j);
            if !s.mask[k] {
                continue;
            }
            let (x, y) = s.point(i, j);
            match &hp {
                Some(hp) => {
                    let (v, d, p) = hp.eval(x, y);
                    fv[k] = v;
                    fd[k] = d;
                    s.x_values[k] = p;
                }
                None => {
                    let z = Complex64::new(x, y);
                    fv[k] = c.eval_f64(z);
                    fd[k] = c.eval_derivative_f64(z);
                    s.x_values[k] = twistor_project(&fv[k]);
                }
            }
        }
    }
    s.f_values = Some(fv);
    s.f_derivs = Some(fd);
    s.provenance = serde_json::to_string(&c.provenance).unwrap_or_default();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::bryant_curve;
    use crate::parse::parse_expression as p;

    #[test]
    fn domain_specs() {
        assert_eq!("rect:0,1,0,1".parse::<DomainSpec>().unwrap(), DomainSpec::Rect { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 });
        assert_eq!("disk:0,0,2".parse::<DomainSpec>().unwrap(), DomainSpec::Disk { cx: 0.0, cy: 0.0, r: 2.0 });
        assert!("annulus:0,0,1,2".parse::<DomainSpec>().unwrap().contains(1.5, 0.0));
        assert!("rect:1,0,0,1".parse::<DomainSpec>().is_err());
        assert!("square:0,1".parse::<DomainSpec>().is_err());
    }

    #[test]
    fn unit_square_grid() {
        let c = bryant_curve(&p("1").unwrap(), &p("z").unwrap()).unwrap();
        let s = sample_surface(&c, "rect:0,1,0,1".parse().unwrap(), 0.1, &SampleOptions::default()).unwrap();
        assert_eq!((s.nu, s.nv), (11, 11));
        assert_eq!(s.active_count(), 121);
        for (k, x) in s.x_values.iter().enumerate() {
            assert!(s.mask[k]);
            assert!((x.iter().map(|t| t * t).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exclusion_around_critical_point() {
        let c = bryant_curve(&p("z^2").unwrap(), &p("(z+1/2)^2").unwrap()).unwrap();
        let s = sample_surface(&c, "rect:-1,0.5,-0.5,0.5".parse().unwrap(), 0.005, &SampleOptions::default()).unwrap();
        assert_eq!(s.exclusion_radius, 0.05);
        for j in 0..s.nv {
            for i in 0..s.nu {
                let (x, y) = s.point(i, j);
                if (x + 0.5).hypot(y) < 0.05 {
                    assert!(!s.mask[s.idx(i, j)]);
                }
            }
        }
        assert!(!s.mask[s.idx(100, 100)]);
        assert!(s.mask[s.idx(100, 120)]);
    }

    #[test]
    fn empty_domain() {
        let c = bryant_curve(&p("1").unwrap(), &p("1/z").unwrap()).unwrap();
        let r = sample_surface(&c, "disk:0,0,0.01".parse().unwrap(), 0.01, &SampleOptions::default());
        assert!(matches!(r, Err(Error::EmptyDomain)));
    }

    #[test]
    fn high_precision_agrees() {
        let c = bryant_curve(&p("z^2").unwrap(), &p("z^3").unwrap()).unwrap();
        let d: DomainSpec = "rect:0.5,0.6,0.5,0.6".parse().unwrap();
        let a = sample_surface(&c, d, 0.05, &SampleOptions::default()).unwrap();
        let b = sample_surface(&c, d, 0.05, &SampleOptions { precision: Precision::from_bits(128), ..Default::default() }).unwrap();
        for k in 0..a.x_values.len() {
            for t in 0..5 {
                assert!((a.x_values[k][t] - b.x_values[k][t]).abs() < 1e-14);
            }
        }
    }
}

//! Finite-difference certificates for `X = π∘F` on a grid.

use num_complex::Complex64;
use serde::Serialize;

use super::sample::SurfaceSample;
use crate::error::{Error, Result};
use crate::twistor::{fubini_study_sqr, twistor_differential, S4Point};

/// Ratio of the round length of `dπ(v)` to the Fubini–Study length of a
/// horizontal vector `v`, both squared.
pub const KAPPA: f64 = 4.0;

/// Residuals below this are treated as rounding noise in convergence studies.
pub const ROUNDOFF_FLOOR: f64 = 1e-9;

/// Circles with `|w1|^2 + |w2|^2` below this carry no orientation.
const SPIN_FLOOR: f64 = 1e-6;

type V5 = [f64; 5];

fn dot(a: &V5, b: &V5) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &V5, y: &V5) -> V5 {
    std::array::from_fn(|k| a * x[k] + y[k])
}

fn sub(a: &V5, b: &V5) -> V5 {
    std::array::from_fn(|k| a[k] - b[k])
}

fn scale(a: f64, x: &V5) -> V5 {
    x.map(|t| a * t)
}

fn det5(m: [V5; 5]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for c in 0..5 {
        let p = (c..5).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..5 {
            let f = a[r][c] / a[c][c];
            for k in c..5 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

/// Options shared by the reports.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    /// Combine `h` and `2h` stencils as `(4 D_h - D_2h) / 3`.
    pub richardson: bool,
}

/// First and second differences at one node.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    pub x: V5,
    pub xu: V5,
    pub xv: V5,
    pub xuu: V5,
    pub xvv: V5,
    pub xuv: V5,
}

fn stencil(s: &SurfaceSample, i: usize, j: usize, step: usize) -> Option<Jet> {
    let (i, j, k) = (i as isize, j as isize, step as isize);
    for di in [-k, 0, k] {
        for dj in [-k, 0, k] {
            if !s.active(i + di, j + dj) {
                return None;
            }
        }
    }
    let at = |di: isize, dj: isize| s.x((i + di) as usize, (j + dj) as usize);
    let h = s.h * step as f64;
    let c = at(0, 0);
    let d1 = |a: &V5, b: &V5| scale(0.5 / h, &sub(a, b));
    let d2 = |a: &V5, b: &V5| std::array::from_fn(|t| (a[t] - 2.0 * c[t] + b[t]) / (h * h));
    Some(Jet {
        x: *c,
        xu: d1(at(k, 0), at(-k, 0)),
        xv: d1(at(0, k), at(0, -k)),
        xuu: d2(at(k, 0), at(-k, 0)),
        xvv: d2(at(0, k), at(0, -k)),
        xuv: std::array::from_fn(|t| (at(k, k)[t] - at(k, -k)[t] - at(-k, k)[t] + at(-k, -k)[t]) / (4.0 * h * h)),
    })
}

/// Difference jet at node `(i, j)`, or `None` when the stencil leaves the
/// active set.
pub fn jet(s: &SurfaceSample, i: usize, j: usize, opts: &ReportOptions) -> Option<Jet> {
    let fine = stencil(s, i, j, 1)?;
    if !opts.richardson {
        return Some(fine);
    }
    let coarse = stencil(s, i, j, 2)?;
    let r = |a: &V5, b: &V5| -> V5 { std::array::from_fn(|t| (4.0 * a[t] - b[t]) / 3.0) };
    Some(Jet {
        x: fine.x,
        xu: r(&fine.xu, &coarse.xu),
        xv: r(&fine.xv, &coarse.xv),
        xuu: r(&fine.xuu, &coarse.xuu),
        xvv: r(&fine.xvv, &coarse.xvv),
        xuv: r(&fine.xuv, &coarse.xuv),
    })
}

/// `max(|<X_u,X_v>|, ||X_u|^2 - |X_v|^2|) / (|X_u|^2 + |X_v|^2)`.
pub fn conformality_at(j: &Jet) -> f64 {
    let (a, b) = (dot(&j.xu, &j.xu), dot(&j.xv, &j.xv));
    dot(&j.xu, &j.xv).abs().max((a - b).abs()) / (a + b)
}

/// `|ΔX + (|X_u|^2 + |X_v|^2) X|`.
pub fn minimality_at(j: &Jet) -> f64 {
    let e = dot(&j.xu, &j.xu) + dot(&j.xv, &j.xv);
    let r = axpy(e, &j.x, &std::array::from_fn(|t| j.xuu[t] + j.xvv[t]));
    dot(&r, &r).sqrt()
}

/// The second fundamental form at `e1` in a positively oriented frame
/// `(X, e1, e2, n1, n2)`: `w_k = S(n_k) e1` written as `a + i b` in the
/// basis `(e1, e2)`.
pub fn shape_pair(j: &Jet) -> Option<(Complex64, Complex64)> {
    let x = j.x;
    let lambda = dot(&j.xu, &j.xu);
    if !(lambda > 1e-12) {
        return None;
    }
    let mut basis: Vec<V5> = vec![scale(1.0 / dot(&x, &x).sqrt(), &x)];
    let gs = |v: &V5, basis: &[V5]| -> Option<V5> {
        let mut w = *v;
        for b in basis {
            w = axpy(-dot(&w, b), b, &w);
        }
        let n = dot(&w, &w).sqrt();
        (n > 1e-8 * dot(v, v).sqrt().max(1e-300)).then(|| scale(1.0 / n, &w))
    };
    for v in [j.xu, j.xv] {
        let e = gs(&v, &basis)?;
        basis.push(e);
    }
    let mut candidates: Vec<(f64, V5)> = (0..5)
        .map(|k| {
            let mut e = [0.0; 5];
            e[k] = 1.0;
            let w = basis.iter().fold(e, |w, b| axpy(-dot(&w, b), b, &w));
            (dot(&w, &w), e)
        })
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    for (_, e) in candidates {
        if basis.len() == 5 {
            break;
        }
        if let Some(n) = gs(&e, &basis) {
            basis.push(n);
        }
    }
    if basis.len() < 5 {
        return None;
    }
    if det5([basis[0], basis[1], basis[2], basis[3], basis[4]]) < 0.0 {
        basis[4] = scale(-1.0, &basis[4]);
    }
    let w = |n: &V5| Complex64::new(dot(&j.xuu, n), dot(&j.xuv, n)) / lambda;
    Some((w(&basis[3]), w(&basis[4])))
}

/// `|w1^2 + w2^2| / (|w1|^2 + |w2|^2 + 1)`: zero exactly when the
/// curvature ellipse is a circle centred at 0.
pub fn circle_residual(w1: Complex64, w2: Complex64) -> f64 {
    (w1 * w1 + w2 * w2).norm() / (w1.norm_sqr() + w2.norm_sqr() + 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Positive,
    Negative,
    Mixed,
    /// No point with a nondegenerate circle.
    Undetermined,
}

impl Spin {
    pub fn sign(&self) -> Option<i8> {
        match self {
            Spin::Positive => Some(1),
            Spin::Negative => Some(-1),
            _ => None,
        }
    }
}

fn for_interior(s: &SurfaceSample, opts: &ReportOptions, mut f: impl FnMut(usize, &Jet)) -> Result<()> {
    let mut any = false;
    for j in 0..s.nv {
        for i in 0..s.nu {
            if let Some(jet) = jet(s, i, j, opts) {
                any = true;
                f(s.idx(i, j), &jet);
            }
        }
    }
    if any {
        Ok(())
    } else {
        Err(Error::GridTooSmall)
    }
}

/// Per-node values of `f` on interior nodes.
pub fn pointwise(s: &SurfaceSample, opts: &ReportOptions, f: impl Fn(&Jet) -> f64) -> Result<Vec<Option<f64>>> {
    let mut out = vec![None; s.nu * s.nv];
    for_interior(s, opts, |k, jet| out[k] = Some(f(jet)))?;
    Ok(out)
}

fn max_of(s: &SurfaceSample, opts: &ReportOptions, f: impl Fn(&Jet) -> f64) -> Result<f64> {
    let mut m = 0.0f64;
    for_interior(s, opts, |_, jet| m = m.max(f(jet)))?;
    Ok(m)
}

pub fn conformality_report(s: &SurfaceSample, opts: &ReportOptions) -> Result<f64> {
    max_of(s, opts, conformality_at)
}

pub fn minimality_report(s: &SurfaceSample, opts: &ReportOptions) -> Result<f64> {
    max_of(s, opts, minimality_at)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuperminimalityReport {
    pub circle_max: f64,
    pub spin: Spin,
    /// Interior nodes where no frame could be built.
    pub degenerate_points: usize,
}

pub fn superminimality_report(s: &SurfaceSample, opts: &ReportOptions) -> Result<SuperminimalityReport> {
    let (mut circle_max, mut degenerate, mut pos, mut neg) = (0.0f64, 0, 0usize, 0usize);
    for_interior(s, opts, |_, jet| match shape_pair(jet) {
        None => degenerate += 1,
        Some((w1, w2)) => {
            circle_max = circle_max.max(circle_residual(w1, w2));
            if w1.norm_sqr() + w2.norm_sqr() > SPIN_FLOOR {
                let o = (w1.conj() * w2).im;
                if o > 0.0 {
                    pos += 1;
                } else if o < 0.0 {
                    neg += 1;
                }
            }
        }
    })?;
    let spin = match (pos, neg) {
        (0, 0) => Spin::Undetermined,
        (_, 0) => Spin::Positive,
        (0, _) => Spin::Negative,
        _ => Spin::Mixed,
    };
    Ok(SuperminimalityReport { circle_max, spin, degenerate_points: degenerate })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsometryReport {
    /// Mean of `|dπ(F')|^2 / |F'|^2_FS`.
    pub mean: f64,
    /// `max |r - mean| / mean`.
    pub reldev: f64,
}

/// Compares the round length of `dπ(F')` with the Fubini–Study length of
/// `F'` at every active node.
pub fn isometry_ratio(s: &SurfaceSample) -> Result<IsometryReport> {
    let (fv, fd) = match (&s.f_values, &s.f_derivs) {
        (Some(v), Some(d)) => (v, d),
        _ => return Err(Error::InvalidInput("sample carries no lift values".into())),
    };
    let mut ratios = Vec::new();
    for k in 0..fv.len() {
        if !s.mask[k] {
            continue;
        }
        let fs = fubini_study_sqr(&fv[k], &fd[k]);
        if !(fs > 0.0) {
            continue;
        }
        let d = twistor_differential(&fv[k], &fd[k]);
        ratios.push(dot(&d, &d) / fs);
    }
    if ratios.is_empty() {
        return Err(Error::GridTooSmall);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let reldev = ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max) / mean;
    Ok(IsometryReport { mean, reldev })
}

/// `log(r_coarse / r_fine) / log(h_coarse / h_fine)`.
pub fn observed_order(r_coarse: f64, r_fine: f64, h_ratio: f64) -> f64 {
    (r_coarse / r_fine).ln() / h_ratio.ln()
}

/// Whether a residual sequence on successively halved grids converges at
/// order at least `min_order`. Pairs whose coarse value already sits below
/// `floor` pass.
pub fn converges(residuals: &[f64], h_ratio: f64, min_order: f64, floor: f64) -> bool {
    residuals.windows(2).all(|w| w[0] <= floor || observed_order(w[0], w[1], h_ratio) >= min_order)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRates {
    pub conformality: f64,
    pub minimality: f64,
    pub superminimality: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    pub h: f64,
    pub nu: usize,
    pub nv: usize,
    pub active_points: usize,
    pub conformality_max: f64,
    pub minimality_max: f64,
    pub supermin_circle_max: f64,
    pub spin_sign: Spin,
    pub degenerate_points: usize,
    pub isometry_ratio_mean: Option<f64>,
    pub isometry_ratio_reldev: Option<f64>,
    /// Observed orders between spacing `2h` and `h`.
    pub convergence: Option<ConvergenceRates>,
    pub richardson: bool,
}

pub fn geometry_report(s: &SurfaceSample, opts: &ReportOptions) -> Result<GeometryReport> {
    let sm = superminimality_report(s, opts)?;
    let iso = if s.f_values.is_some() { Some(isometry_ratio(s)?) } else { None };
    Ok(GeometryReport {
        h: s.h,
        nu: s.nu,
        nv: s.nv,
        active_points: s.active_count(),
        conformality_max: conformality_report(s, opts)?,
        minimality_max: minimality_report(s, opts)?,
        supermin_circle_max: sm.circle_max,
        spin_sign: sm.spin,
        degenerate_points: sm.degenerate_points,
        isometry_ratio_mean: iso.map(|r| r.mean),
        isometry_ratio_reldev: iso.map(|r| r.reldev),
        convergence: None,
        richardson: opts.richardson,
    })
}

/// Fills in observed orders from a second report at twice the spacing.
pub fn with_convergence(mut fine: GeometryReport, coarse: &GeometryReport) -> GeometryReport {
    let r = coarse.h / fine.h;
    fine.convergence = Some(ConvergenceRates {
        conformality: observed_order(coarse.conformality_max, fine.conformality_max, r),
        minimality: observed_order(coarse.minimality_max, fine.minimality_max, r),
        superminimality: observed_order(coarse.supermin_circle_max, fine.supermin_circle_max, r),
    });
    fine
}

/// Pushes `X` along a smooth field tangent to the sphere and renormalizes:
/// `X + amplitude V` with `V` a sum of `modes` seeded Fourier modes of
/// frequency up to `max_freq`.
pub fn tangential_perturbation(s: &SurfaceSample, amplitude: f64, modes: usize, max_freq: f64, seed: u64) -> SurfaceSample {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let terms: Vec<(V5, f64, f64, f64)> = (0..modes)
        .map(|_| {
            let a: V5 = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            (a, rng.gen_range(-max_freq..max_freq), rng.gen_range(-max_freq..max_freq), rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    s.map_values(|u, v, x: &S4Point| {
        let mut field = [0.0; 5];
        for (a, ku, kv, ph) in &terms {
            field = axpy((ku * u + kv * v + ph).sin(), a, &field);
        }
        let tangent = axpy(-dot(&field, x), x, &field);
        let y = axpy(amplitude, &tangent, x);
        scale(1.0 / dot(&y, &y).sqrt(), &y)
    })
}

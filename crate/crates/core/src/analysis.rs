//! Orders of components, the immersion criterion, intersections with
//! `H = {z0 = 0}`, and residue reports for `h dg`.

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{DomainPoint, ExtValue, GaussianRational, Poly, RationalFunction};
use crate::contact::is_legendrian;
use crate::curves::{bryant_lift, ProjectiveCurve, Provenance};
use crate::error::{Error, Result};
use crate::laurent::{numeric_residue, order_at, order_or_max, pole_set, residue_at, simple_pole_residue, Pole, PoleLocation};
use crate::roots::{find_roots, numeric_multiplicity};

/// Component orders; `None` is the `+∞` of an identically zero component.
pub type Orders = [Option<i64>; 4];

const NUMERIC_TOL: f64 = 1e-10;

fn location_json(l: &PoleLocation) -> Value {
    match l {
        PoleLocation::Exact(p) => json!({ "point": p.to_string(), "exact": true }),
        PoleLocation::Numeric(x) => json!({ "point": [x.re, x.im], "exact": false }),
    }
}

fn orders_json(o: &Orders) -> Value {
    Value::Array(o.iter().map(|k| k.map_or(Value::String("inf".into()), |k| json!(k))).collect())
}

/// The components in a local coordinate centred at `p`.
fn local_polys(c: &ProjectiveCurve, p: &DomainPoint) -> [Poly; 4] {
    let d = c.degree();
    std::array::from_fn(|k| match p {
        DomainPoint::Finite(x) => c.components()[k].shift(x),
        DomainPoint::Infinity => c.components()[k].reverse(d),
    })
}

/// Orders of the cleared components at `p`. Their minimum is 0.
pub fn component_orders(c: &ProjectiveCurve, p: &DomainPoint) -> Orders {
    local_polys(c, p).map(|q| q.low_order().map(|k| k as i64))
}

/// Orders of an uncleared tuple of rational functions at `p`.
pub fn lift_orders(lift: &[RationalFunction; 4], p: &DomainPoint) -> Orders {
    std::array::from_fn(|k| order_at(&lift[k], p).ok())
}

/// Orders of the Bryant lift `(g', f g' - f' g / 2, g g', f' / 2)` before clearing.
pub fn bryant_orders(f: &RationalFunction, g: &RationalFunction, p: &DomainPoint) -> Orders {
    lift_orders(&bryant_lift(f, g), p)
}

/// Subtracts the minimum, so that the smallest order is 0.
pub fn cleared(o: &Orders) -> Orders {
    let m = o.iter().flatten().min().copied().unwrap_or(0);
    o.map(|k| k.map(|k| k - m))
}

/// The order-gap rule read literally: some component has order `min + 1`.
pub fn order_gap_literal(o: &Orders) -> bool {
    let Some(m) = o.iter().flatten().min().copied() else { return false };
    o.iter().flatten().any(|&k| k == m + 1)
}

/// Smallest and second smallest order (counted with repetition).
pub fn smallest_two(o: &Orders) -> (Option<i64>, Option<i64>) {
    let mut v: Vec<i64> = o.iter().flatten().copied().collect();
    v.sort_unstable();
    (v.first().copied(), v.get(1).copied())
}

fn wedge_nonzero(a: &[GaussianRational; 4], b: &[GaussianRational; 4]) -> bool {
    (0..4).any(|i| (i + 1..4).any(|j| !(&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero()))
}

/// Whether `C` is an immersion at `p`.
///
/// The leading vector is subtracted from the local tuple before taking the
/// second order, so that components sharing the minimal order are compared
/// as one direction. With a unique minimum this is the plain order gap.
pub fn is_immersed_at(c: &ProjectiveCurve, p: &DomainPoint) -> Result<bool> {
    if c.is_constant() {
        return Err(Error::Undefined("constant curve".into()));
    }
    let loc = local_polys(c, p);
    let v0: [GaussianRational; 4] = std::array::from_fn(|k| loc[k].coeff(0));
    let v1: [GaussianRational; 4] = std::array::from_fn(|k| loc[k].coeff(1));
    Ok(wedge_nonzero(&v0, &v1))
}

/// `is_immersed_at` at a finite point given in double precision.
pub fn is_immersed_at_numeric(c: &ProjectiveCurve, x: Complex64) -> bool {
    let v0 = c.eval_f64(x);
    let v1 = c.eval_derivative_f64(x);
    let scale = v0.iter().map(|z| z.norm()).fold(0.0, f64::max) * v1.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    (0..4).any(|i| (i + 1..4).any(|j| (v0[i] * v1[j] - v0[j] * v1[i]).norm() > NUMERIC_TOL * scale.max(1.0)))
}

/// Orders at a numerically located finite point.
pub fn component_orders_numeric(c: &ProjectiveCurve, x: Complex64) -> Orders {
    std::array::from_fn(|k| {
        let q = &c.components()[k];
        (!q.is_zero()).then(|| numeric_multiplicity(q, x, NUMERIC_TOL) as i64)
    })
}

/// All points where `C` fails to be an immersion.
pub fn immersion_failures(c: &ProjectiveCurve) -> Result<Vec<PoleLocation>> {
    if c.is_constant() {
        return Err(Error::Undefined("constant curve".into()));
    }
    let p = c.components();
    let mut w = Poly::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            let m = &(&p[i] * &p[j].derivative()) - &(&p[j] * &p[i].derivative());
            if !m.is_zero() {
                w = if w.is_zero() { m.monic() } else { w.gcd(&m)? };
            }
        }
    }
    let roots = find_roots(&w);
    let mut out: Vec<PoleLocation> = roots.exact.into_iter().map(|(x, _)| PoleLocation::Exact(DomainPoint::Finite(x))).collect();
    out.extend(roots.numeric.into_iter().map(|(x, _)| PoleLocation::Numeric(x)));
    if !is_immersed_at(c, &DomainPoint::Infinity)? {
        out.push(PoleLocation::Exact(DomainPoint::Infinity));
    }
    Ok(out)
}

/// A point where the curve meets `H = {z0 = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HIntersection {
    pub location: PoleLocation,
    /// Order of the cleared `z0` component.
    pub order: i64,
    pub transverse: bool,
}

/// Intersections with `{z0 = 0}`; empty when the curve lies inside it.
pub fn h_intersections(c: &ProjectiveCurve) -> Vec<HIntersection> {
    let z0 = &c.components()[0];
    if z0.is_zero() {
        return Vec::new();
    }
    let roots = find_roots(z0);
    let mut out: Vec<HIntersection> = roots
        .exact
        .into_iter()
        .map(|(x, m)| HIntersection { location: PoleLocation::Exact(DomainPoint::Finite(x)), order: m as i64, transverse: m == 1 })
        .chain(roots.numeric.into_iter().map(|(x, m)| HIntersection {
            location: PoleLocation::Numeric(x),
            order: m as i64,
            transverse: m == 1,
        }))
        .collect();
    let at_inf = (c.degree() - z0.degree().unwrap()) as i64;
    if at_inf > 0 {
        out.push(HIntersection { location: PoleLocation::Exact(DomainPoint::Infinity), order: at_inf, transverse: at_inf == 1 });
    }
    out
}

/// The rational data a curve was built from.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveData {
    Bryant { f: RationalFunction, g: RationalFunction },
    Fcurve { h: RationalFunction, g: RationalFunction, c: GaussianRational },
}

impl CurveData {
    /// Re-reads the defining functions from a provenance record.
    pub fn from_provenance(p: &Provenance) -> Result<Option<Self>> {
        use crate::parse::{parse_constant, parse_expression};
        Ok(match p {
            Provenance::Bryant { f, g } => Some(CurveData::Bryant { f: parse_expression(f)?, g: parse_expression(g)? }),
            Provenance::Fcurve { h, g, c } => Some(CurveData::Fcurve {
                h: parse_expression(h)?,
                g: parse_expression(g)?,
                c: parse_constant(c)?,
            }),
            _ => None,
        })
    }

    fn functions(&self) -> Vec<(&'static str, &RationalFunction)> {
        match self {
            CurveData::Bryant { f, g } => vec![("f", f), ("g", g)],
            CurveData::Fcurve { h, g, .. } => vec![("h", h), ("g", g)],
        }
    }

    /// The uncleared tuple.
    pub fn lift(&self) -> Result<[RationalFunction; 4]> {
        match self {
            CurveData::Bryant { f, g } => Ok(bryant_lift(f, g)),
            CurveData::Fcurve { h, g, c } => {
                let half = GaussianRational::from_frac(1, 2);
                let prim = crate::curves::rational_primitive(&(h * &g.derivative()))?;
                let z1 = &(h * g).scale(&half) - &(&prim + &RationalFunction::constant(c.clone()));
                Ok([RationalFunction::from_int(1), z1, g.clone(), h.scale(&-half)])
            }
        }
    }
}

/// Common zeros of a rational tuple after multiplying through by the lcm of
/// the denominators, with their multiplicities.
pub fn base_points(lift: &[RationalFunction; 4]) -> Result<Vec<(PoleLocation, usize)>> {
    let mut lcm = Poly::from_ints(&[1]);
    for r in lift {
        lcm = (&lcm * r.den()).exact_div(&lcm.gcd(r.den())?)?;
    }
    let mut g = Poly::zero();
    for r in lift.iter().filter(|r| !r.is_zero()) {
        let p = r.num() * &lcm.exact_div(r.den())?;
        g = if g.is_zero() { p.monic() } else { g.gcd(&p)? };
    }
    let roots = find_roots(&g);
    let mut out: Vec<(PoleLocation, usize)> =
        roots.exact.into_iter().map(|(x, m)| (PoleLocation::Exact(DomainPoint::Finite(x)), m)).collect();
    out.extend(roots.numeric.into_iter().map(|(x, m)| (PoleLocation::Numeric(x), m)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointAnalysis {
    pub location: PoleLocation,
    pub orders: Orders,
    pub immersed: bool,
}

#[derive(Clone, Debug)]
pub struct CurveAnalysisReport {
    pub curve: ProjectiveCurve,
    pub degree: usize,
    pub legendrian: bool,
    pub base_points: Vec<(PoleLocation, usize)>,
    pub poles_of_data: Vec<(&'static str, Vec<Pole>)>,
    pub points: Vec<PointAnalysis>,
    pub immersion_failures: Vec<PoleLocation>,
    pub h_intersections: Vec<HIntersection>,
    pub contained_in_h: bool,
}

fn same_location(a: &PoleLocation, b: &PoleLocation) -> bool {
    match (a, b) {
        (PoleLocation::Exact(x), PoleLocation::Exact(y)) => x == y,
        (PoleLocation::Numeric(x), PoleLocation::Numeric(y)) => (x - y).norm() < 1e-8,
        _ => false,
    }
}

fn point_analysis(c: &ProjectiveCurve, l: &PoleLocation) -> Result<PointAnalysis> {
    Ok(match l {
        PoleLocation::Exact(p) => PointAnalysis { location: l.clone(), orders: component_orders(c, p), immersed: is_immersed_at(c, p)? },
        PoleLocation::Numeric(x) => PointAnalysis {
            location: l.clone(),
            orders: component_orders_numeric(c, *x),
            immersed: is_immersed_at_numeric(c, *x),
        },
    })
}

/// Full report; defining data is recovered from the provenance when present.
pub fn analyze(c: &ProjectiveCurve) -> Result<CurveAnalysisReport> {
    let data = CurveData::from_provenance(&c.provenance)?;
    analyze_with(c, data.as_ref())
}

pub fn analyze_with(c: &ProjectiveCurve, data: Option<&CurveData>) -> Result<CurveAnalysisReport> {
    let (base, poles) = match data {
        Some(d) => (
            base_points(&d.lift()?)?,
            d.functions().into_iter().map(|(n, r)| (n, pole_set(r))).collect::<Vec<_>>(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    let failures = immersion_failures(c)?;
    let hits = h_intersections(c);

    let mut special: Vec<PoleLocation> = Vec::new();
    let mut add = |l: &PoleLocation| {
        if !special.iter().any(|s| same_location(s, l)) {
            special.push(l.clone());
        }
    };
    base.iter().for_each(|(l, _)| add(l));
    poles.iter().flat_map(|(_, ps)| ps.iter()).for_each(|p| add(&p.location));
    hits.iter().for_each(|h| add(&h.location));
    failures.iter().for_each(add);
    let points = special.iter().map(|l| point_analysis(c, l)).collect::<Result<Vec<_>>>()?;

    Ok(CurveAnalysisReport {
        curve: c.clone(),
        degree: c.degree(),
        legendrian: is_legendrian(c).legendrian,
        base_points: base,
        poles_of_data: poles,
        points,
        immersion_failures: failures,
        contained_in_h: c.components()[0].is_zero(),
        h_intersections: hits,
    })
}

impl CurveAnalysisReport {
    pub fn immersed(&self) -> bool {
        self.immersion_failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.to_string(),
            "degree": self.degree,
            "legendrian": self.legendrian,
            "immersed": self.immersed(),
            "base_points": self.base_points.iter().map(|(l, m)| {
                let mut v = location_json(l);
                v["multiplicity"] = json!(m);
                v
            }).collect::<Vec<_>>(),
            "poles_of_data": self.poles_of_data.iter().map(|(n, ps)| json!({
                "function": n,
                "poles": ps.iter().map(|p| {
                    let mut v = location_json(&p.location);
                    v["multiplicity"] = json!(p.multiplicity);
                    v
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "points": self.points.iter().map(|p| {
                let mut v = location_json(&p.location);
                v["orders"] = orders_json(&p.orders);
                v["immersed"] = json!(p.immersed);
                v
            }).collect::<Vec<_>>(),
            "immersion_failures": self.immersion_failures.iter().map(location_json).collect::<Vec<_>>(),
            "contained_in_H": self.contained_in_h,
            "H_intersections": self.h_intersections.iter().map(|h| {
                let mut v = location_json(&h.location);
                v["order"] = json!(h.order);
                v["transverse"] = json!(h.transverse);
                v
            }).collect::<Vec<_>>(),
        })
    }
}

/// Residue of `h dg` at one pole.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidueValue {
    Exact(GaussianRational),
    Numeric(Complex64),
}

impl ResidueValue {
    pub fn vanishes(&self) -> bool {
        match self {
            ResidueValue::Exact(r) => r.is_zero(),
            ResidueValue::Numeric(r) => r.norm() < NUMERIC_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueEntry {
    pub location: PoleLocation,
    pub residue: ResidueValue,
    /// The simple-pole formula `c_{-1}(h) c_1(g) - c_{-1}(g) c_1(h)`, where it applies.
    pub fast_path: Option<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactnessReport {
    pub entries: Vec<ResidueEntry>,
}

impl ExactnessReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.residue.vanishes())
    }

    /// Whether every fast-path value equals the full residue.
    pub fn fast_path_agrees(&self) -> bool {
        self.entries.iter().all(|e| match (&e.fast_path, &e.residue) {
            (Some(f), ResidueValue::Exact(r)) => f == r,
            _ => true,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "poles": self.entries.iter().map(|e| {
                let mut v = location_json(&e.location);
                v["residue"] = match &e.residue {
                    ResidueValue::Exact(r) => json!(r.to_string()),
                    ResidueValue::Numeric(r) => json!([r.re, r.im]),
                };
                if let Some(f) = &e.fast_path {
                    v["simple_pole_formula"] = json!(f.to_string());
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

/// Residues of `h dg` at all its poles on CP^1.
pub fn exactness_check(h: &RationalFunction, g: &RationalFunction) -> ExactnessReport {
    let r = h * &g.derivative();
    let mut entries = Vec::new();
    for p in pole_set(&r) {
        match &p.location {
            PoleLocation::Exact(DomainPoint::Infinity) => {}
            PoleLocation::Exact(a) => entries.push(ResidueEntry {
                location: p.location.clone(),
                residue: ResidueValue::Exact(residue_at(&r, a)),
                fast_path: simple_pole_residue(h, g, a),
            }),
            PoleLocation::Numeric(x) => entries.push(ResidueEntry {
                location: p.location.clone(),
                residue: ResidueValue::Numeric(numeric_residue(&r, *x, p.multiplicity)),
                fast_path: None,
            }),
        }
    }
    // r dz has a pole at ∞ unless r vanishes there to order at least 2
    if !r.is_zero() && order_or_max(&r, &DomainPoint::Infinity) < 2 {
        entries.push(ResidueEntry {
            location: PoleLocation::Exact(DomainPoint::Infinity),
            residue: ResidueValue::Exact(residue_at(&r, &DomainPoint::Infinity)),
            fast_path: simple_pole_residue(h, g, &DomainPoint::Infinity),
        });
    }
    ExactnessReport { entries }
}

/// Whether every pole of both functions, `∞` included, is simple.
pub fn simple_pole_certificate(a: &RationalFunction, b: &RationalFunction) -> bool {
    [a, b].iter().all(|r| pole_set(r).iter().all(|p| p.multiplicity == 1))
}

fn is_pole(r: &RationalFunction, p: &DomainPoint) -> bool {
    matches!(r.eval(p), ExtValue::Infinity)
}

/// Whether `(h, g)`, viewed as a map into `CP^1 x CP^1`, is immersive at `p`.
pub fn hg_immersed_at(h: &RationalFunction, g: &RationalFunction, p: &DomainPoint) -> bool {
    [h, g].iter().any(|r| {
        if is_pole(r, p) {
            return order_at(r, p).ok() == Some(-1);
        }
        let v = match r.eval(p) {
            ExtValue::Finite(v) => v,
            ExtValue::Infinity => unreachable!(),
        };
        let shifted = *r - &RationalFunction::constant(v);
        order_at(&shifted, p).ok() == Some(1)
    })
}

/// `F(h, g)` is an immersion exactly when `(h, g)` is: `h'` and `g'` have no
/// common zero away from the poles, and the pair is immersive at the poles.
pub fn hg_immersion_check(h: &RationalFunction, g: &RationalFunction) -> Result<bool> {
    for (name, r) in [("h", h), ("g", g)] {
        if let Some(p) = pole_set(r).iter().find(|p| p.multiplicity > 1) {
            let at = match &p.location {
                PoleLocation::Exact(d) => d.to_string(),
                PoleLocation::Numeric(x) => format!("~{x}"),
            };
            return Err(Error::HypothesisViolation(format!("{name} has a pole of order {} at {at}", p.multiplicity)));
        }
    }
    let common = if h.is_constant() && g.is_constant() {
        return Ok(false);
    } else if h.is_constant() {
        g.derivative().num().monic()
    } else if g.is_constant() {
        h.derivative().num().monic()
    } else {
        h.derivative().num().gcd(g.derivative().num())?
    };
    // zeros of the numerators are never poles of the derivative's own function,
    // but may be poles of the other one, where the pair is immersive
    let roots = find_roots(&common);
    for (x, _) in &roots.exact {
        let p = DomainPoint::Finite(x.clone());
        if !is_pole(h, &p) && !is_pole(g, &p) {
            return Ok(false);
        }
    }
    for (x, _) in &roots.numeric {
        let near_pole = [h, g].iter().any(|r| r.den().eval_f64(*x).norm() < 1e-8);
        if !near_pole {
            return Ok(false);
        }
    }
    Ok(hg_immersed_at(h, g, &DomainPoint::Infinity))
}

//! Legendrian curves from rational data: Bryant's `B(f, g)`, the form
//! `F(h, g)`, exceptional lines, and the inverse of `B`.

mod primitive;
mod projective;

pub use primitive::{hermite_reduce, nonzero_residues, rational_primitive};
pub use projective::{format_point, mat4_identity, mat4_mul, normalize_point, Mat4, ProjectiveCurve, Provenance};

use num_traits::Zero;

use crate::arith::{GaussianRational, RationalFunction};
use crate::error::{Error, Result};

/// The lift `(g', f g' - f' g / 2, g g', f' / 2)`.
pub fn bryant_lift(f: &RationalFunction, g: &RationalFunction) -> [RationalFunction; 4] {
    let half = GaussianRational::from_frac(1, 2);
    let (df, dg) = (f.derivative(), g.derivative());
    [dg.clone(), &(f * &dg) - &(&df * g).scale(&half), g * &dg, df.scale(&half)]
}

/// `B(f, g) = [dg : f dg - g df / 2 : g dg : df / 2]`.
pub fn bryant_curve(f: &RationalFunction, g: &RationalFunction) -> Result<ProjectiveCurve> {
    if g.is_constant() {
        return Err(Error::ConstantG);
    }
    ProjectiveCurve::from_rational(&bryant_lift(f, g), Provenance::Bryant { f: f.to_string_var("z"), g: g.to_string_var("z") })
}

/// `F(h, g) = [1 : h g / 2 - (∫ h dg + c) : g : -h / 2]`.
pub fn f_curve(h: &RationalFunction, g: &RationalFunction, c: &GaussianRational) -> Result<ProjectiveCurve> {
    let half = GaussianRational::from_frac(1, 2);
    let prim = rational_primitive(&(h * &g.derivative()))?;
    let z1 = &(h * g).scale(&half) - &(&prim + &RationalFunction::constant(c.clone()));
    let parts = [RationalFunction::from_int(1), z1, g.clone(), h.scale(&-half)];
    ProjectiveCurve::from_rational(
        &parts,
        Provenance::Fcurve { h: h.to_string_var("z"), g: g.to_string_var("z"), c: c.to_string() },
    )
}

/// `f = -(∫ h dg + c)` together with whether `B(f, g) = F(h, g)` and `h = -f'/g'`.
pub fn compare_forms(
    h: &RationalFunction,
    g: &RationalFunction,
    c: &GaussianRational,
) -> Result<(RationalFunction, bool)> {
    let prim = rational_primitive(&(h * &g.derivative()))?;
    let f = -(&prim + &RationalFunction::constant(c.clone()));
    let b = bryant_curve(&f, g)?;
    let fc = f_curve(h, g, c)?;
    let back = -f.derivative().checked_div(&g.derivative())?;
    Ok((f, b == fc && back == *h))
}

/// The line `[1 : a + b t : b : -t]`.
pub fn exceptional_line(a: &GaussianRational, b: &GaussianRational) -> ProjectiveCurve {
    use crate::arith::Poly;
    let comps = [
        Poly::constant(GaussianRational::from_int(1)),
        Poly::new(vec![a.clone(), b.clone()]),
        Poly::constant(b.clone()),
        Poly::new(vec![GaussianRational::from_int(0), GaussianRational::from_int(-1)]),
    ];
    ProjectiveCurve::from_polys(comps, Provenance::Exceptional { a: a.to_string(), b: b.to_string() })
        .expect("first component is 1")
}

/// The contact-preserving swap `(z0, z1, z2, z3) -> (z0, z1, -z3, z2)`.
pub fn swap_matrix() -> Mat4 {
    let mut m = mat4_identity();
    let zero = GaussianRational::from_int(0);
    m[2][2] = zero.clone();
    m[3][3] = zero;
    m[2][3] = GaussianRational::from_int(-1);
    m[3][2] = GaussianRational::from_int(1);
    m
}

pub fn exceptional_swap(c: &ProjectiveCurve) -> ProjectiveCurve {
    c.transform(&swap_matrix(), c.provenance.clone()).expect("swap is invertible")
}

/// Recovers `(f, g)` with `g = C2/C0` and `f = (C0 C1 + C2 C3)/C0^2`.
pub fn invert_bryant(c: &ProjectiveCurve) -> Result<(RationalFunction, RationalFunction)> {
    let [c0, c1, c2, c3] = c.lift();
    if c0.is_zero() {
        return Err(Error::DegenerateCurve("curve lies in {z0 = 0}".into()));
    }
    let g = c2.checked_div(&c0)?;
    if g.is_constant() {
        return Err(Error::NotRepresentable);
    }
    let f = (&(&c0 * &c1) + &(&c2 * &c3)).checked_div(&(&c0 * &c0))?;
    Ok((f, g))
}

//! Contact forms on CP^3 and C^3, the polynomial automorphism carrying `β`
//! to `α`, hyperplane charts, and the exact Legendrian test.
//!
//! Homogeneous form: `α0 = z0 dz1 - z1 dz0 + z2 dz3 - z3 dz2`.
//! Affine forms: `α = dz1 + z2 dz3 - z3 dz2` and `β = dz1 + z2 dz3`.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{GaussianRational, Poly, RationalFunction};
use crate::curves::{mat4_mul, Mat4, ProjectiveCurve};

/// Pullback of `α0` along a 4-tuple of functions, as the coefficient of `dz`.
///
/// Computed on the cleared tuple `L z` with `L` the lcm of the denominators,
/// using `α0(L z) = L^2 α0(z)`.
pub fn pullback_alpha0(z: &[RationalFunction; 4]) -> RationalFunction {
    let mut lcm = Poly::one();
    for c in z {
        let g = lcm.gcd(c.den()).expect("denominators are nonzero");
        lcm = (&lcm * c.den()).exact_div(&g).expect("gcd divides");
    }
    let p: Vec<Poly> = z.iter().map(|c| c.num() * &lcm.exact_div(c.den()).expect("den divides lcm")).collect();
    let d: Vec<Poly> = p.iter().map(|c| c.derivative()).collect();
    let w = &(&(&p[0] * &d[1]) - &(&p[1] * &d[0])) + &(&(&p[2] * &d[3]) - &(&p[3] * &d[2]));
    RationalFunction::normalize(w, &lcm * &lcm).expect("nonzero denominator")
}

/// A curve into affine C^3.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineLegendrianTriple {
    pub z1: RationalFunction,
    pub z2: RationalFunction,
    pub z3: RationalFunction,
}

impl AffineLegendrianTriple {
    pub fn new(z1: RationalFunction, z2: RationalFunction, z3: RationalFunction) -> Self {
        AffineLegendrianTriple { z1, z2, z3 }
    }

    /// The homogeneous lift `(1, z1, z2, z3)`.
    pub fn lift(&self) -> [RationalFunction; 4] {
        [RationalFunction::from_int(1), self.z1.clone(), self.z2.clone(), self.z3.clone()]
    }
}

/// `z1' + z2 z3' - z3 z2'`.
pub fn pullback_affine_alpha(t: &AffineLegendrianTriple) -> RationalFunction {
    let a = &t.z2 * &t.z3.derivative();
    let b = &t.z3 * &t.z2.derivative();
    &(&t.z1.derivative() + &a) - &b
}

/// `z1' + z2 z3'`.
pub fn pullback_affine_beta(t: &AffineLegendrianTriple) -> RationalFunction {
    &t.z1.derivative() + &(&t.z2 * &t.z3.derivative())
}

/// `ψ(z1, z2, z3) = (z1 + z2 z3 / 2, z3, -z2 / 2)`, applied to a curve.
pub fn psi_map(t: &AffineLegendrianTriple) -> AffineLegendrianTriple {
    let half = GaussianRational::from_frac(1, 2);
    AffineLegendrianTriple {
        z1: &t.z1 + &(&t.z2 * &t.z3).scale(&half),
        z2: t.z3.clone(),
        z3: t.z2.scale(&-half),
    }
}

/// `ψ` on an exact point.
pub fn psi_point(p: &[GaussianRational; 3]) -> [GaussianRational; 3] {
    let half = GaussianRational::from_frac(1, 2);
    [&p[0] + &(&(&p[1] * &p[2]) * &half), p[2].clone(), -(&p[1] * &half)]
}

/// `ψ` on a floating point.
pub fn psi_point_f64(p: [Complex64; 3]) -> [Complex64; 3] {
    [p[0] + p[1] * p[2] * 0.5, p[2], -p[1] * 0.5]
}

/// An exact 3x3 matrix on affine coordinates.
pub type Mat3 = [[GaussianRational; 3]; 3];

/// Linear coordinates adapted to the hyperplane `H = {z0 = a1 z1 + a2 z2 + a3 z3}`.
///
/// On the affine chart `Λ = {z0 = 1 + a1 z1 + a2 z2 + a3 z3}` the new
/// coordinates are `z1' = z1`, `z2' = z2 - a3 z1`, `z3' = z3 + a2 z1`, and the
/// restricted contact form becomes the standard `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactChart {
    pub a: [GaussianRational; 3],
    /// Affine `z -> z'`.
    pub forward: Mat3,
    /// Affine `z' -> z`.
    pub inverse: Mat3,
    /// Homogeneous coordinates: old `z` to new `w`, with `H` sent to `{w0 = 0}`.
    pub to_new: Mat4,
    /// Inverse of `to_new`.
    pub to_old: Mat4,
    /// The projective automorphism of CP^3 extending `forward` on `CP^3 \ H`; it fixes `H`.
    pub ambient: Mat4,
}

pub fn chart_change(a1: GaussianRational, a2: GaussianRational, a3: GaussianRational) -> ContactChart {
    let o = GaussianRational::zero;
    let l = || GaussianRational::from_int(1);
    let forward: Mat3 = [[l(), o(), o()], [-&a3, l(), o()], [a2.clone(), o(), l()]];
    let inverse: Mat3 = [[l(), o(), o()], [a3.clone(), l(), o()], [-&a2, o(), l()]];
    let to_new: Mat4 = [
        [l(), -&a1, -&a2, -&a3],
        [o(), l(), o(), o()],
        [o(), -&a3, l(), o()],
        [o(), a2.clone(), o(), l()],
    ];
    let to_old: Mat4 = [
        [l(), a1.clone(), a2.clone(), a3.clone()],
        [o(), l(), o(), o()],
        [o(), a3.clone(), l(), o()],
        [o(), -&a2, o(), l()],
    ];
    // (z0, z) -> (z0 - a.z, z) -> (t, L z) -> (t + a.Lz, Lz)
    let adapt: Mat4 = [
        [l(), -&a1, -&a2, -&a3],
        [o(), l(), o(), o()],
        [o(), o(), l(), o()],
        [o(), o(), o(), l()],
    ];
    let unadapt: Mat4 = [
        [l(), a1.clone(), a2.clone(), a3.clone()],
        [o(), l(), o(), o()],
        [o(), o(), l(), o()],
        [o(), o(), o(), l()],
    ];
    let mut lin: Mat4 = crate::curves::mat4_identity();
    for i in 0..3 {
        for j in 0..3 {
            lin[i + 1][j + 1] = forward[i][j].clone();
        }
    }
    let ambient = mat4_mul(&unadapt, &mat4_mul(&lin, &adapt));
    ContactChart { a: [a1, a2, a3], forward, inverse, to_new, to_old, ambient }
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = GaussianRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += &(&a[i][k] * &bk[j]);
            }
            acc
        })
    })
}

impl ContactChart {
    /// Applies the affine change `z -> z'` to a curve.
    pub fn apply_affine(&self, t: &AffineLegendrianTriple) -> AffineLegendrianTriple {
        let src = [&t.z1, &t.z2, &t.z3];
        let row = |i: usize| {
            let mut acc = RationalFunction::zero();
            for (j, s) in src.iter().enumerate() {
                acc = &acc + &s.scale(&self.forward[i][j]);
            }
            acc
        };
        AffineLegendrianTriple { z1: row(0), z2: row(1), z3: row(2) }
    }

    /// The form `α0` restricted to `Λ` in the original affine coordinates:
    /// `(1 + a2 z2 + a3 z3) dz1 - (z3 + a2 z1) dz2 + (z2 - a3 z1) dz3`.
    pub fn restricted_form(&self, t: &AffineLegendrianTriple) -> RationalFunction {
        let [_, a2, a3] = &self.a;
        let one = RationalFunction::from_int(1);
        let c1 = &(&one + &t.z2.scale(a2)) + &t.z3.scale(a3);
        let c2 = &t.z3 + &t.z1.scale(a2);
        let c3 = &t.z2 - &t.z1.scale(a3);
        &(&(&c1 * &t.z1.derivative()) - &(&c2 * &t.z2.derivative())) + &(&c3 * &t.z3.derivative())
    }

    /// The homogeneous lift of an affine curve on `Λ`.
    pub fn lift_on_chart(&self, t: &AffineLegendrianTriple) -> [RationalFunction; 4] {
        let [a1, a2, a3] = &self.a;
        let z0 = &(&(&RationalFunction::from_int(1) + &t.z1.scale(a1)) + &t.z2.scale(a2)) + &t.z3.scale(a3);
        [z0, t.z1.clone(), t.z2.clone(), t.z3.clone()]
    }

    /// Re-expresses a curve in the adapted homogeneous coordinates.
    pub fn apply(&self, c: &ProjectiveCurve) -> crate::Result<ProjectiveCurve> {
        let [a1, a2, a3] = &self.a;
        c.transform(
            &self.to_new,
            crate::curves::Provenance::Chart { a1: a1.to_string(), a2: a2.to_string(), a3: a3.to_string() },
        )
    }
}

/// Outcome of the Legendrian test: on failure the nonzero pullback is the witness.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendrianVerdict {
    pub legendrian: bool,
    pub witness: Option<RationalFunction>,
}

/// Exact test that `α0` pulls back to zero along the polynomial lift.
pub fn is_legendrian(c: &ProjectiveCurve) -> LegendrianVerdict {
    let w = pullback_alpha0(&c.lift());
    if w.is_zero() {
        LegendrianVerdict { legendrian: true, witness: None }
    } else {
        LegendrianVerdict { legendrian: false, witness: Some(w) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;
    use crate::curves::{mat4_identity, Provenance};

    fn poly(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn alpha0_examples() {
        let lift = [poly(&[1]), poly(&[0, 1]), poly(&[0]), poly(&[0])];
        assert_eq!(pullback_alpha0(&lift), RationalFunction::from_int(1));
        // exceptional line with a = 1, b = 2
        let line = [poly(&[1]), poly(&[1, 2]), poly(&[2]), poly(&[0, -1])];
        assert!(pullback_alpha0(&line).is_zero());
        // Bryant lift for f = z^2, g = z^3
        let f = poly(&[0, 0, 1]);
        let g = poly(&[0, 0, 0, 1]);
        let half = GaussianRational::from_frac(1, 2);
        let (df, dg) = (f.derivative(), g.derivative());
        let lift = [dg.clone(), &(&f * &dg) - &(&g * &df).scale(&half), &g * &dg, df.scale(&half)];
        assert!(pullback_alpha0(&lift).is_zero());
    }

    #[test]
    fn rational_normal_curve_is_not_legendrian() {
        let c = ProjectiveCurve::from_polys(
            [Poly::from_ints(&[1]), Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, 0, 0, 1])],
            Provenance::Raw,
        )
        .unwrap();
        let v = is_legendrian(&c);
        assert!(!v.legendrian);
        // 1*1 - z*0 + z^2 * 3z^2 - z^3 * 2z = 1 + z^4
        assert_eq!(v.witness.unwrap(), poly(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn affine_examples() {
        let t = AffineLegendrianTriple::new(poly(&[0, 1]), poly(&[0]), poly(&[0]));
        assert_eq!(pullback_affine_alpha(&t), RationalFunction::from_int(1));
        let c = AffineLegendrianTriple::new(poly(&[3]), poly(&[-1]), poly(&[7]));
        assert!(pullback_affine_alpha(&c).is_zero());
        let t = AffineLegendrianTriple::new(poly(&[0, 1]), poly(&[1]), poly(&[0]));
        assert_eq!(pullback_affine_beta(&t), RationalFunction::from_int(1));
        // (f, -f'/g', g) with f = z^3, g = z
        let f = poly(&[0, 0, 0, 1]);
        let g = poly(&[0, 1]);
        let z2 = -f.derivative().checked_div(&g.derivative()).unwrap();
        assert!(pullback_affine_beta(&AffineLegendrianTriple::new(f, z2, g)).is_zero());
        // (-∫h dg, h, g) with h = 2z, g = z: z1 = -z^2
        let t = AffineLegendrianTriple::new(poly(&[0, 0, -1]), poly(&[0, 2]), poly(&[0, 1]));
        assert!(pullback_affine_beta(&t).is_zero());
    }

    #[test]
    fn psi_examples() {
        let g = |n| GaussianRational::from_int(n);
        assert_eq!(psi_point(&[g(0), g(0), g(0)]), [g(0), g(0), g(0)]);
        assert_eq!(psi_point(&[g(1), g(2), g(3)]), [g(4), g(3), g(-1)]);
        let v = psi_point_f64([Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]);
        assert_eq!(v, [Complex64::new(4.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0)]);
        let t = AffineLegendrianTriple::new(poly(&[1, 0, 2]), poly(&[0, 3]), poly(&[-1, 1, 1]));
        assert_eq!(pullback_affine_alpha(&psi_map(&t)), pullback_affine_beta(&t));
    }

    #[test]
    fn chart_examples() {
        let g = |n| GaussianRational::from_int(n);
        let id = chart_change(g(0), g(0), g(0));
        assert_eq!(id.to_new, mat4_identity());
        assert_eq!(id.ambient, mat4_identity());
        // a2 = 1 enters z3' = z3 + z1
        let c = chart_change(g(0), g(1), g(0));
        let t = AffineLegendrianTriple::new(poly(&[0, 1]), poly(&[0, 0, 1]), poly(&[5]));
        let mapped = c.apply_affine(&t);
        assert_eq!(mapped.z1, t.z1);
        assert_eq!(mapped.z2, t.z2);
        assert_eq!(mapped.z3, poly(&[5, 1]));
    }

    #[test]
    fn common_factor_scales_pullback_by_square() {
        let z = [poly(&[1, 1]), poly(&[0, 2, 1]), poly(&[3]), poly(&[0, 0, 1])];
        let phi = poly(&[2, -1, 1]);
        let scaled: [RationalFunction; 4] = std::array::from_fn(|k| &z[k] * &phi);
        assert_eq!(pullback_alpha0(&scaled), &pullback_alpha0(&z) * &(&phi * &phi));
    }
}

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{DomainPoint, GaussianRational, Poly, RationalFunction};
use crate::error::{Error, Result};

/// How a curve was constructed. Functions are stored in their printed form so
/// that the record is readable and can be re-parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Bryant { f: String, g: String },
    Fcurve { h: String, g: String, c: String },
    Exceptional { a: String, b: String },
    Chart { a1: String, a2: String, a3: String },
    Raw,
}

/// An exact 4x4 matrix acting on homogeneous coordinates.
pub type Mat4 = [[GaussianRational; 4]; 4];

pub fn mat4_identity() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| GaussianRational::from_int((i == j) as i64)))
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
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

/// A holomorphic map CP^1 -> CP^3 given by a coprime polynomial 4-tuple.
///
/// The tuple is kept in a canonical scaling (leading coefficient of the first
/// nonzero component is 1), so projective equality is structural equality of
/// `components`. Provenance is ignored by `==`.
#[derive(Clone, Debug)]
pub struct ProjectiveCurve {
    components: [Poly; 4],
    pub provenance: Provenance,
}

impl PartialEq for ProjectiveCurve {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl ProjectiveCurve {
    /// Clears denominators and common factors of a rational 4-tuple.
    pub fn from_rational(parts: &[RationalFunction; 4], provenance: Provenance) -> Result<Self> {
        if parts.iter().all(|p| p.is_zero()) {
            return Err(Error::DegenerateCurve("all components vanish identically".into()));
        }
        let mut lcm = Poly::one();
        for p in parts {
            let g = lcm.gcd(p.den())?;
            lcm = (&lcm * p.den()).exact_div(&g)?;
        }
        let polys: Vec<Poly> = parts.iter().map(|p| p.num() * &lcm.exact_div(p.den()).unwrap()).collect();
        Self::from_polys([polys[0].clone(), polys[1].clone(), polys[2].clone(), polys[3].clone()], provenance)
    }

    /// Divides out the common factor and fixes the scaling.
    pub fn from_polys(polys: [Poly; 4], provenance: Provenance) -> Result<Self> {
        if polys.iter().all(|p| p.is_zero()) {
            return Err(Error::DegenerateCurve("all components vanish identically".into()));
        }
        let mut g = Poly::zero();
        for p in &polys {
            if !p.is_zero() {
                g = if g.is_zero() { p.monic() } else { g.gcd(p)? };
            }
        }
        let mut comps: Vec<Poly> = polys.iter().map(|p| p.exact_div(&g).unwrap()).collect();
        let lead = comps.iter().find(|p| !p.is_zero()).unwrap().leading_coeff().unwrap().inv()?;
        for c in comps.iter_mut() {
            *c = c.scale(&lead);
        }
        let components = [comps[0].clone(), comps[1].clone(), comps[2].clone(), comps[3].clone()];
        Ok(ProjectiveCurve { components, provenance })
    }

    pub fn components(&self) -> &[Poly; 4] {
        &self.components
    }

    /// Components as rational functions (denominator 1).
    pub fn lift(&self) -> [RationalFunction; 4] {
        std::array::from_fn(|k| RationalFunction::from_poly(self.components[k].clone()))
    }

    /// Largest component degree: the degree of the curve.
    pub fn degree(&self) -> usize {
        self.components.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        // constant iff all components are proportional to one fixed vector
        let lead = self.components.iter().position(|p| !p.is_zero()).unwrap();
        let base = &self.components[lead];
        self.components.iter().all(|p| {
            let w = &(p * &base.derivative()) - &(&p.derivative() * base);
            w.is_zero()
        })
    }

    /// Exact value at a point, normalised so the first nonzero coordinate is 1.
    pub fn eval(&self, p: &DomainPoint) -> [GaussianRational; 4] {
        let raw: [GaussianRational; 4] = match p {
            DomainPoint::Finite(x) => std::array::from_fn(|k| self.components[k].eval(x)),
            DomainPoint::Infinity => {
                let d = self.degree();
                std::array::from_fn(|k| self.components[k].coeff(d))
            }
        };
        normalize_point(raw)
    }

    /// Double-precision lift value at a finite point.
    pub fn eval_f64(&self, z: Complex64) -> [Complex64; 4] {
        std::array::from_fn(|k| self.components[k].eval_f64(z))
    }

    /// Double-precision derivative of the lift at a finite point.
    pub fn eval_derivative_f64(&self, z: Complex64) -> [Complex64; 4] {
        std::array::from_fn(|k| self.components[k].derivative().eval_f64(z))
    }

    /// Image under a linear change of homogeneous coordinates `w = M z`.
    pub fn transform(&self, m: &Mat4, provenance: Provenance) -> Result<Self> {
        let polys: [Poly; 4] = std::array::from_fn(|i| {
            let mut acc = Poly::zero();
            for (j, c) in self.components.iter().enumerate() {
                acc = &acc + &c.scale(&m[i][j]);
            }
            acc
        });
        Self::from_polys(polys, provenance)
    }
}

/// Scales a nonzero exact point so that its first nonzero coordinate is 1.
pub fn normalize_point(p: [GaussianRational; 4]) -> [GaussianRational; 4] {
    match p.iter().find(|c| !c.is_zero()) {
        None => p,
        Some(lead) => {
            let inv = lead.inv().unwrap();
            std::array::from_fn(|k| &p[k] * &inv)
        }
    }
}

/// Formats an exact point as `[a : b : c : d]`.
pub fn format_point(p: &[GaussianRational; 4]) -> String {
    format!("[{} : {} : {} : {}]", p[0], p[1], p[2], p[3])
}

impl fmt::Display for ProjectiveCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.components;
        write!(f, "[{} : {} : {} : {}]", c[0], c[1], c[2], c[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clearing_is_canonical() {
        let z = RationalFunction::z();
        let inv = RationalFunction::from_int(1).checked_div(&z).unwrap();
        // [1/z : 1 : z : 0] = [1 : z : z^2 : 0]
        let a = ProjectiveCurve::from_rational(&[inv, RationalFunction::one(), z.clone(), RationalFunction::zero()], Provenance::Raw).unwrap();
        let b = ProjectiveCurve::from_polys(
            [Poly::from_ints(&[3]), Poly::from_ints(&[0, 3]), Poly::from_ints(&[0, 0, 3]), Poly::zero()],
            Provenance::Raw,
        )
        .unwrap();
        assert_eq!(a, b);
        // multiplying the tuple by a common polynomial does not change the curve
        let f = Poly::from_ints(&[2, -1, 5]);
        let c = ProjectiveCurve::from_polys(std::array::from_fn(|k| &b.components()[k] * &f), Provenance::Raw).unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn degenerate_rejected() {
        let zero = RationalFunction::zero();
        let r = ProjectiveCurve::from_rational(&[zero.clone(), zero.clone(), zero.clone(), zero], Provenance::Raw);
        assert!(matches!(r, Err(Error::DegenerateCurve(_))));
    }

    #[test]
    fn eval_at_infinity() {
        let c = ProjectiveCurve::from_polys(
            [Poly::from_ints(&[1]), Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 0, 2]), Poly::zero()],
            Provenance::Raw,
        )
        .unwrap();
        let v = c.eval(&DomainPoint::Infinity);
        assert_eq!(format_point(&v), "[0 : 0 : 1 : 0]");
    }
}

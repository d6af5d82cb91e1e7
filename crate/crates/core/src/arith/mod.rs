//! Exact arithmetic over Q(i): scalars, polynomials, rational functions and
//! points of the Riemann sphere.

mod gaussian;
mod poly;
mod ratfunc;

use std::fmt;

pub use gaussian::{parse_rational, rational_to_string, GaussianRational};
pub use poly::Poly;
pub use ratfunc::{ratfunc_arith, ArithOp, RationalFunction};

use crate::error::Result;

/// A point of CP^1: a finite Gaussian rational or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DomainPoint {
    Finite(GaussianRational),
    Infinity,
}

impl DomainPoint {
    pub fn finite(x: GaussianRational) -> Self {
        DomainPoint::Finite(x)
    }

    pub fn zero() -> Self {
        DomainPoint::Finite(GaussianRational::from_int(0))
    }

    pub fn from_int(n: i64) -> Self {
        DomainPoint::Finite(GaussianRational::from_int(n))
    }
}

impl fmt::Display for DomainPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainPoint::Finite(x) => write!(f, "{x}"),
            DomainPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A value in C ∪ {∞}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtValue {
    Finite(GaussianRational),
    Infinity,
}

/// Monic gcd of two polynomials; both zero is an `InvalidInput` error.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    p.gcd(q)
}

/// Canonical coprime form with monic denominator.
pub fn ratfunc_normalize(num: Poly, den: Poly) -> Result<RationalFunction> {
    RationalFunction::normalize(num, den)
}

pub fn derivative(r: &RationalFunction) -> RationalFunction {
    r.derivative()
}

pub fn evaluate(r: &RationalFunction, p: &DomainPoint) -> ExtValue {
    r.eval(p)
}

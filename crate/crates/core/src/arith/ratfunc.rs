//! Rational functions over Q(i) in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{DomainPoint, ExtValue, GaussianRational, Poly};
use crate::error::{Error, Result};

/// Quotient `num/den` of coprime polynomials with monic denominator.
///
/// The canonical form makes derived equality coincide with equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Cancels common factors and makes the denominator monic.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g)?, den.exact_div(&g)?) };
        let lc = den.leading_coeff().unwrap().inv()?;
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// The coordinate function `z`.
    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, when the function is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Quotient-rule derivative with respect to `z`.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::normalize(n, d).expect("nonzero denominator")
    }

    /// Value at a point of the Riemann sphere; `Infinity` at poles.
    pub fn eval(&self, p: &DomainPoint) -> ExtValue {
        match p {
            DomainPoint::Finite(a) => {
                let d = self.den.eval(a);
                if d.is_zero() {
                    ExtValue::Infinity
                } else {
                    ExtValue::Finite(self.num.eval(a).checked_div(&d).expect("nonzero"))
                }
            }
            DomainPoint::Infinity => {
                let dn = self.num.degree();
                let dd = self.den.degree().expect("nonzero denominator");
                match dn {
                    None => ExtValue::Finite(GaussianRational::zero()),
                    Some(n) if n > dd => ExtValue::Infinity,
                    Some(n) if n < dd => ExtValue::Finite(GaussianRational::zero()),
                    Some(_) => ExtValue::Finite(
                        self.num.leading_coeff().unwrap().checked_div(self.den.leading_coeff().unwrap()).unwrap(),
                    ),
                }
            }
        }
    }

    /// Double-precision value at a finite point (may be infinite or NaN near poles).
    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        self.num.eval_f64(z) / self.den.eval_f64(z)
    }

    /// Substitution `z -> 1/w`, giving the function in the chart at infinity.
    pub fn at_infinity_chart(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap();
        let d = dn.max(dd);
        Self::normalize(self.num.reverse(d), self.den.reverse(d)).expect("nonzero denominator")
    }

    /// Substitution `z -> z + a`.
    pub fn shift(&self, a: &GaussianRational) -> Self {
        Self::normalize(self.num.shift(a), self.den.shift(a)).expect("nonzero denominator")
    }

    /// Composition `self(inner(z))`.
    pub fn compose(&self, inner: &RationalFunction) -> Result<Self> {
        // Horner over the rational function field
        let eval = |p: &Poly| -> RationalFunction {
            let mut acc = RationalFunction::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * inner) + &RationalFunction::constant(c.clone());
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Formats with variable name `var`; output is accepted by the parser.
    pub fn to_string_var(&self, var: &str) -> String {
        let n = self.num.to_string_var(var);
        if self.den.is_one() {
            return n;
        }
        let wrap = |p: &Poly, s: String| {
            let single_term = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            if single_term && !s.starts_with('-') && !s.contains('+') {
                s
            } else {
                format!("({s})")
            }
        };
        format!("{}/{}", wrap(&self.num, n), wrap(&self.den, self.den.to_string_var(var)))
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("z"))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici: only the common part of the denominators can cancel
        let g = self.den.gcd(&rhs.den).unwrap();
        let (d1, d2) = (self.den.exact_div(&g).unwrap(), rhs.den.exact_div(&g).unwrap());
        let t = &(&self.num * &d2) + &(&rhs.num * &d1);
        if t.is_zero() {
            return RationalFunction::zero();
        }
        let g2 = t.gcd(&g).unwrap();
        let (num, den) = if g2.is_one() { (t, &d1 * &g) } else { (t.exact_div(&g2).unwrap(), &d1 * &g.exact_div(&g2).unwrap()) };
        let den = &den * &d2;
        let lc = den.leading_coeff().unwrap().inv().unwrap();
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den).unwrap();
        let g2 = rhs.num.gcd(&self.den).unwrap();
        let n = &self.num.exact_div(&g1).unwrap() * &rhs.num.exact_div(&g2).unwrap();
        let d = &self.den.exact_div(&g2).unwrap() * &rhs.den.exact_div(&g1).unwrap();
        // canonical inputs are coprime, so the cross-cancelled product is too
        let lc = d.leading_coeff().unwrap().inv().unwrap();
        RationalFunction { num: n.scale(&lc), den: d.scale(&lc) }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

/// Binary field operation selector, used by the command line and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(a: &RationalFunction, b: &RationalFunction, op: ArithOp) -> Result<RationalFunction> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

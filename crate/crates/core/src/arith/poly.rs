//! Dense univariate polynomials over Q(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GaussianRational;
use crate::error::{Error, Result};

/// Polynomial with coefficients stored lowest degree first.
///
/// Trailing zeros are always trimmed, so the zero polynomial has an empty
/// coefficient list and `degree() == None` (the `-inf` sentinel).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut v = vec![GaussianRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `z - a`.
    pub fn linear_root(a: &GaussianRational) -> Self {
        Self::new(vec![-a, GaussianRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_complex()).collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading_coeff().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Poly::zero(), self.clone())),
        };
        let mut q = vec![GaussianRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + j] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Quotient of an exact division. Errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0.leading_coeff().unwrap().inv()?;
        Ok((r0.scale(&lc), s0.scale(&lc), t0.scale(&lc)))
    }

    /// Solves `s*a + t*b = c` for `s` with `deg s < deg b`, given `gcd(a, b) = 1`.
    pub fn solve_diophantine(a: &Poly, b: &Poly, c: &Poly) -> Result<(Poly, Poly)> {
        let (g, s, t) = a.ext_gcd(b)?;
        if !g.is_one() {
            return Err(Error::InvalidInput("diophantine operands are not coprime".into()));
        }
        let s = &s * c;
        let t = &t * c;
        let (q, s) = s.div_rem(b)?;
        let t = &t + &(&q * a);
        Ok((s, t))
    }

    /// Taylor shift: the polynomial `p(z + a)`.
    pub fn shift(&self, a: &GaussianRational) -> Poly {
        // Horner in the ring: p(z+a) = (...((c_n)(z+a) + c_{n-1})(z+a) + ...)
        let za = Poly::new(vec![a.clone(), GaussianRational::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &za) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Reversal `z^d p(1/z)` with respect to degree `d >= deg p`.
    pub fn reverse(&self, d: usize) -> Poly {
        let mut v = vec![GaussianRational::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[d - k] = c.clone();
        }
        Poly::new(v)
    }

    /// Multiplicity of the root `a` (0 if `p(a) != 0`). `None` for the zero polynomial.
    pub fn root_multiplicity(&self, a: &GaussianRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.shift(a);
        shifted.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lowest index with a nonzero coefficient (the order at 0).
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Formats with variable name `var`; the output is accepted by the parser.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if c.is_real() || c.re.is_zero() => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let term = match k {
                0 => mag.clone(),
                _ => {
                    let mono = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if mag == "1" {
                        mono
                    } else {
                        format!("{mag}*{mono}")
                    }
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::from_ints(&[1])
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("z"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        Poly::new(v)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    #[test]
    fn gcd_examples() {
        let z2m1 = Poly::from_ints(&[-1, 0, 1]);
        let zm1 = Poly::from_ints(&[-1, 1]);
        assert_eq!(z2m1.gcd(&zm1).unwrap(), zm1);

        let z = Poly::z();
        let zp1 = Poly::from_ints(&[1, 1]);
        assert_eq!(z.gcd(&zp1).unwrap(), Poly::one());

        assert!(Poly::zero().gcd(&Poly::zero()).is_err());
        // gcd(p, 0) is p made monic
        assert_eq!(Poly::from_ints(&[2, 4]).gcd(&Poly::zero()).unwrap(), Poly::new(vec![GaussianRational::from_frac(1, 2), GaussianRational::one()]));
    }

    #[test]
    fn gcd_with_gaussian_root_checked_by_division() {
        let zmi = Poly::linear_root(&GaussianRational::i());
        let p = &(&zmi * &zmi) * &Poly::from_ints(&[2, 1]);
        let q = &zmi * &Poly::from_ints(&[-3, 1]);
        let g = p.gcd(&q).unwrap();
        assert_eq!(g, zmi);
        // division oracle: g divides both, cofactors are coprime
        let pc = p.exact_div(&g).unwrap();
        let qc = q.exact_div(&g).unwrap();
        assert_eq!(pc.gcd(&qc).unwrap(), Poly::one());
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = Poly::new(vec![gi(1, 2), gi(0, -1), gi(3, 0), gi(1, 1)]);
        let d = Poly::new(vec![gi(2, 0), gi(0, 1)]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree().unwrap_or(0) < d.degree().unwrap());
        assert!(p.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[-2, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn shift_and_reverse() {
        // (z+1)^2 = z^2 + 2z + 1
        let p = Poly::from_ints(&[0, 0, 1]).shift(&GaussianRational::one());
        assert_eq!(p, Poly::from_ints(&[1, 2, 1]));
        assert_eq!(Poly::from_ints(&[1, 2]).reverse(3), Poly::from_ints(&[0, 0, 2, 1]));
        assert_eq!(Poly::from_ints(&[0, 0, 1, 1]).root_multiplicity(&GaussianRational::zero()), Some(2));
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[5]).degree(), Some(0));
    }

    #[test]
    fn printing() {
        assert_eq!(Poly::from_ints(&[1, -2, 1]).to_string(), "1 - 2*z + z^2");
        assert_eq!(Poly::new(vec![GaussianRational::zero(), GaussianRational::i()]).to_string(), "i*z");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-z");
    }
}

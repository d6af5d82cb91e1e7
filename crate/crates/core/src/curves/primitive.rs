//! Rational primitives by Hermite reduction.

use num_traits::Zero;

use crate::arith::{DomainPoint, Poly, RationalFunction};
use crate::error::{Error, PoleResidue, Result};
use crate::roots::find_roots;

/// Splits `∫ r dz` into a rational part and a remainder `a/d` with `d`
/// square-free and `deg a < deg d`.
pub fn hermite_reduce(r: &RationalFunction) -> Result<(RationalFunction, Poly, Poly)> {
    let (q, mut a) = r.num().div_rem(r.den())?;
    let d = r.den().clone();
    let mut g = RationalFunction::from_poly(integrate_poly(&q));

    let mut d_minus = d.gcd(&d.derivative())?;
    let d_star = d.exact_div(&d_minus)?;
    while d_minus.degree().unwrap_or(0) > 0 {
        let d_minus2 = d_minus.gcd(&d_minus.derivative())?;
        let d_minus_star = d_minus.exact_div(&d_minus2)?;
        let lhs = -(&d_star * &d_minus.derivative()).exact_div(&d_minus)?;
        let (b, c) = Poly::solve_diophantine(&lhs, &d_minus_star, &a)?;
        a = &c - &(&b.derivative() * &d_star).exact_div(&d_minus_star)?;
        g = &g + &RationalFunction::normalize(b, d_minus.clone())?;
        d_minus = d_minus2;
    }
    Ok((g, a, d_star))
}

fn integrate_poly(p: &Poly) -> Poly {
    let mut c = vec![crate::arith::GaussianRational::zero()];
    for (k, a) in p.coeffs().iter().enumerate() {
        c.push(a * &crate::arith::GaussianRational::from_frac(1, k as i64 + 1));
    }
    Poly::new(c)
}

/// Nonzero residues of `r dz` at finite poles. The residue at `∞` is minus their sum.
pub fn nonzero_residues(r: &RationalFunction) -> Result<Vec<PoleResidue>> {
    let (_, a, d) = hermite_reduce(r)?;
    let mut out = Vec::new();
    if !a.is_zero() {
        let dd = d.derivative();
        let roots = find_roots(&d);
        for (x, _) in roots.exact {
            let res = a.eval(&x).checked_div(&dd.eval(&x))?;
            if !res.is_zero() {
                out.push(PoleResidue::Exact { pole: DomainPoint::Finite(x), residue: res });
            }
        }
        for (x, _) in roots.numeric {
            let res = a.eval_f64(x) / dd.eval_f64(x);
            out.push(PoleResidue::Numeric { pole: (x.re, x.im), residue: (res.re, res.im) });
        }
    }
    Ok(out)
}

/// `∫ r dz` with zero constant term, when every residue of `r dz` vanishes.
pub fn rational_primitive(r: &RationalFunction) -> Result<RationalFunction> {
    let (g, a, _) = hermite_reduce(r)?;
    if !a.is_zero() {
        return Err(Error::ExactnessViolation(nonzero_residues(r)?));
    }
    // fix the additive constant: the value at 0, or the constant term at ∞ when 0 is a pole
    let shift = match g.eval(&DomainPoint::zero()) {
        crate::arith::ExtValue::Finite(v) => v,
        crate::arith::ExtValue::Infinity => {
            let (q, _) = g.num().div_rem(g.den())?;
            q.coeff(0)
        }
    };
    Ok(&g - &RationalFunction::constant(shift))
}

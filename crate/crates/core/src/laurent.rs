//! Laurent expansions, orders, residues and pole sets of rational functions
//! at points of the Riemann sphere.
//!
//! At `∞` everything is computed in the chart `w = 1/z`. Residues are
//! residues of the 1-form `r dz`, so at infinity the chart change contributes
//! the factor `-1/w^2`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{DomainPoint, GaussianRational, Poly, RationalFunction};
use crate::error::{Error, Result};
use crate::roots::find_roots;

/// Window of Laurent coefficients `c_k`, `start <= k <= k_max`, of a function at `center`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentExpansion {
    pub center: DomainPoint,
    /// Order of the function at the center; `None` for the zero function.
    pub order: Option<i64>,
    pub k_max: i64,
    coeffs: Vec<GaussianRational>,
    start: i64,
}

impl LaurentExpansion {
    /// Coefficient `c_k`. Indices below the order are zero; indices above the
    /// window return `None`.
    pub fn coeff(&self, k: i64) -> Option<GaussianRational> {
        if k > self.k_max {
            return None;
        }
        if k < self.start {
            return Some(GaussianRational::zero());
        }
        Some(self.coeffs.get((k - self.start) as usize).cloned().unwrap_or_else(GaussianRational::zero))
    }

    /// `c_{-1}` if it lies in the window.
    pub fn residue(&self) -> Option<GaussianRational> {
        self.coeff(-1)
    }

    /// True when `k_max` is below the order, so no nonzero coefficient is stored.
    pub fn is_empty_window(&self) -> bool {
        match self.order {
            Some(o) => self.k_max < o,
            None => true,
        }
    }

    pub fn is_zero_function(&self) -> bool {
        self.order.is_none()
    }

    /// Stored `(k, c_k)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs.iter().enumerate().map(move |(j, c)| (self.start + j as i64, c))
    }
}

/// The function in a local coordinate `t` centred at `a` (`t = z - a`, or `t = 1/z` at ∞).
pub fn local_form(r: &RationalFunction, a: &DomainPoint) -> RationalFunction {
    match a {
        DomainPoint::Finite(x) => r.shift(x),
        DomainPoint::Infinity => r.at_infinity_chart(),
    }
}

/// Power-series quotient `n/d` to `len` terms; requires `d(0) != 0`.
fn series_div(n: &Poly, d: &Poly, len: usize) -> Vec<GaussianRational> {
    let d0_inv = d.coeff(0).inv().expect("d(0) nonzero");
    let mut out: Vec<GaussianRational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.coeff(k);
        for j in 1..=k.min(d.degree().unwrap_or(0)) {
            acc -= &(&d.coeff(j) * &out[k - j]);
        }
        out.push(&acc * &d0_inv);
    }
    out
}

fn strip_low(p: &Poly) -> (usize, Poly) {
    let k = p.low_order().unwrap_or(0);
    (k, Poly::new(p.coeffs()[k..].to_vec()))
}

/// Exact Laurent coefficients of `r` at `a` up to index `k_max`.
pub fn laurent_expand(r: &RationalFunction, a: &DomainPoint, k_max: i64) -> LaurentExpansion {
    if r.is_zero() {
        return LaurentExpansion { center: a.clone(), order: None, k_max, coeffs: Vec::new(), start: k_max + 1 };
    }
    let local = local_form(r, a);
    let (kn, n1) = strip_low(local.num());
    let (kd, d1) = strip_low(local.den());
    let order = kn as i64 - kd as i64;
    let len = if k_max >= order { (k_max - order + 1) as usize } else { 0 };
    LaurentExpansion { center: a.clone(), order: Some(order), k_max, coeffs: series_div(&n1, &d1, len), start: order }
}

/// Expansion with the default window `k_max = order + 8`.
pub fn laurent_expand_default(r: &RationalFunction, a: &DomainPoint) -> LaurentExpansion {
    let k_max = order_at(r, a).map(|o| o + 8).unwrap_or(8);
    laurent_expand(r, a, k_max)
}

/// Vanishing order at `a` (negative at poles).
pub fn order_at(r: &RationalFunction, a: &DomainPoint) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::Undefined("order of the zero function".into()));
    }
    Ok(match a {
        DomainPoint::Finite(x) => {
            r.num().root_multiplicity(x).unwrap() as i64 - r.den().root_multiplicity(x).unwrap() as i64
        }
        DomainPoint::Infinity => r.den().degree().unwrap() as i64 - r.num().degree().unwrap() as i64,
    })
}

/// Order with the zero function mapped to `i64::MAX`.
pub fn order_or_max(r: &RationalFunction, a: &DomainPoint) -> i64 {
    order_at(r, a).unwrap_or(i64::MAX)
}

/// Residue of the 1-form `r dz` at `a`.
pub fn residue_at(r: &RationalFunction, a: &DomainPoint) -> GaussianRational {
    match a {
        DomainPoint::Finite(_) => {
            if order_or_max(r, a) >= 0 {
                return GaussianRational::zero();
            }
            laurent_expand(r, a, -1).residue().unwrap()
        }
        DomainPoint::Infinity => {
            // r(1/w) (-1/w^2) dw: the residue is -c_1 of r in the chart w
            if order_or_max(r, a) > 1 {
                return GaussianRational::zero();
            }
            -laurent_expand(r, a, 1).coeff(1).unwrap()
        }
    }
}

/// Location of a pole: exact when it lies in Q(i) ∪ {∞}, otherwise a numerical approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum PoleLocation {
    Exact(DomainPoint),
    Numeric(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub location: PoleLocation,
    pub multiplicity: usize,
}

impl Pole {
    pub fn is_exact(&self) -> bool {
        matches!(self.location, PoleLocation::Exact(_))
    }
}

/// Poles of `r` on CP^1 with multiplicities, `∞` last.
pub fn pole_set(r: &RationalFunction) -> Vec<Pole> {
    let roots = find_roots(r.den());
    let mut out: Vec<Pole> = roots
        .exact
        .into_iter()
        .map(|(x, m)| Pole { location: PoleLocation::Exact(DomainPoint::Finite(x)), multiplicity: m })
        .collect();
    out.extend(roots.numeric.into_iter().map(|(x, m)| Pole { location: PoleLocation::Numeric(x), multiplicity: m }));
    if let Some(dn) = r.num().degree() {
        let dd = r.den().degree().unwrap();
        if dn > dd {
            out.push(Pole { location: PoleLocation::Exact(DomainPoint::Infinity), multiplicity: dn - dd });
        }
    }
    out
}

/// Residue of `r dz` at a numerically located finite pole of multiplicity `m`,
/// via the Taylor coefficient of `(z-x)^m r(z)`.
pub fn numeric_residue(r: &RationalFunction, x: Complex64, m: usize) -> Complex64 {
    // deflate the denominator m times by (z - x)
    let mut den = r.den().to_complex_coeffs();
    for _ in 0..m {
        let n = den.len() - 1;
        let mut q = vec![Complex64::zero(); n];
        let mut carry = Complex64::zero();
        for k in (0..n).rev() {
            carry = den[k + 1] + carry * x;
            q[k] = carry;
        }
        den = q;
    }
    let num = r.num().to_complex_coeffs();
    let shifted = |c: &[Complex64]| -> Vec<Complex64> {
        // Taylor coefficients at x by repeated synthetic division
        let mut rest = c.to_vec();
        let mut out = Vec::with_capacity(m);
        for _ in 0..m {
            if rest.is_empty() {
                out.push(Complex64::zero());
                continue;
            }
            let n = rest.len() - 1;
            let mut q = vec![Complex64::zero(); n];
            let mut carry = Complex64::zero();
            for k in (0..=n).rev() {
                let v = rest[k] + carry * x;
                if k == 0 {
                    out.push(v);
                } else {
                    q[k - 1] = v;
                }
                carry = v;
            }
            rest = q;
        }
        out
    };
    let n_t = shifted(&num);
    let d_t = shifted(&den);
    // series quotient, coefficient m-1
    let mut s: Vec<Complex64> = Vec::with_capacity(m);
    for k in 0..m {
        let mut acc = n_t[k];
        for j in 1..=k {
            acc -= d_t[j] * s[k - j];
        }
        s.push(acc / d_t[0]);
    }
    s[m - 1]
}

/// The fast residue formula at a point where both functions have at most simple
/// poles and at least one of them has a pole:
/// `c_{-1}(h) c_1(g) - c_{-1}(g) c_1(h) = Res(h dg)`.
///
/// Returns `None` when the hypothesis does not hold at `a`.
pub fn simple_pole_residue(h: &RationalFunction, g: &RationalFunction, a: &DomainPoint) -> Option<GaussianRational> {
    let oh = order_or_max(h, a);
    let og = order_or_max(g, a);
    if oh.min(og) != -1 {
        return None;
    }
    let eh = laurent_expand(h, a, 1);
    let eg = laurent_expand(g, a, 1);
    let c = |e: &LaurentExpansion, k| e.coeff(k).unwrap();
    Some(&(&c(&eh, -1) * &c(&eg, 1)) - &(&c(&eg, -1) * &c(&eh, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;
    use num_traits::One;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::normalize(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }
    fn q(p: i64, d: i64) -> GaussianRational {
        GaussianRational::from_frac(p, d)
    }

    #[test]
    fn expand_read_off() {
        // 1/z + 2 + 3z = (1 + 2z + 3z^2)/z
        let e = laurent_expand(&rf(&[1, 2, 3], &[0, 1]), &DomainPoint::zero(), 1);
        assert_eq!(e.order, Some(-1));
        assert_eq!(e.coeff(-1), Some(q(1, 1)));
        assert_eq!(e.coeff(0), Some(q(2, 1)));
        assert_eq!(e.coeff(1), Some(q(3, 1)));
        assert_eq!(e.coeff(2), None);
    }

    #[test]
    fn expand_binomial() {
        let half = RationalFunction::from_poly(Poly::new(vec![q(1, 2), q(1, 1)]));
        let e = laurent_expand(&(&half * &half), &DomainPoint::zero(), 2);
        assert_eq!(e.order, Some(0));
        assert_eq!([e.coeff(0), e.coeff(1), e.coeff(2)], [Some(q(1, 4)), Some(q(1, 1)), Some(q(1, 1))]);
    }

    #[test]
    fn expand_against_partial_fractions() {
        // 1/((z-1)(z-2)) = -1/(z-1) + 1/(z-2); at z=1, 1/(z-2) = -1/(1-t) = -1 - t - ...
        let r = rf(&[1], &[2, -3, 1]);
        let e = laurent_expand(&r, &DomainPoint::from_int(1), 0);
        assert_eq!(e.order, Some(-1));
        assert_eq!(e.coeff(-1), Some(q(-1, 1)));
        assert_eq!(e.coeff(0), Some(q(-1, 1)));
    }

    #[test]
    fn empty_window_is_flagged() {
        let e = laurent_expand(&rf(&[0, 0, 0, 1], &[1]), &DomainPoint::zero(), 1);
        assert!(e.is_empty_window());
        assert_eq!(e.coeff(1), Some(GaussianRational::zero()));
        assert!(laurent_expand(&RationalFunction::zero(), &DomainPoint::zero(), 3).is_zero_function());
    }

    #[test]
    fn orders() {
        assert_eq!(order_at(&rf(&[0, 0, 0, 1], &[1]), &DomainPoint::zero()).unwrap(), 3);
        assert_eq!(order_at(&rf(&[1], &[0, 1]), &DomainPoint::zero()).unwrap(), -1);
        assert_eq!(order_at(&rf(&[0, 0, 1], &[1]), &DomainPoint::Infinity).unwrap(), -2);
        assert!(matches!(order_at(&RationalFunction::zero(), &DomainPoint::zero()), Err(Error::Undefined(_))));
    }

    #[test]
    fn residues() {
        assert_eq!(residue_at(&rf(&[1], &[0, 1]), &DomainPoint::zero()), q(1, 1));
        assert_eq!(residue_at(&rf(&[1], &[0, 0, 1]), &DomainPoint::zero()), q(0, 1));
        // (1/z + z) * d/dz(1/z) = -1/z^3 - 1/z
        let h = rf(&[1, 0, 1], &[0, 1]);
        let g = rf(&[1], &[0, 1]);
        let r = &h * &g.derivative();
        // brute force: multiply the two Laurent windows termwise
        let eh = laurent_expand(&h, &DomainPoint::zero(), 3);
        let eg = laurent_expand(&g.derivative(), &DomainPoint::zero(), 3);
        let mut brute = GaussianRational::zero();
        for (i, a) in eh.terms() {
            for (j, b) in eg.terms() {
                if i + j == -1 {
                    brute += &(a * b);
                }
            }
        }
        assert_eq!(brute, q(-1, 1));
        assert_eq!(residue_at(&r, &DomainPoint::zero()), q(-1, 1));
        assert_eq!(simple_pole_residue(&h, &g, &DomainPoint::zero()), Some(q(-1, 1)));
        // 1/z at infinity carries residue -1
        assert_eq!(residue_at(&rf(&[1], &[0, 1]), &DomainPoint::Infinity), q(-1, 1));
    }

    #[test]
    fn poles() {
        let p = pole_set(&rf(&[1], &[0, -1, 1]));
        assert_eq!(
            p,
            vec![
                Pole { location: PoleLocation::Exact(DomainPoint::zero()), multiplicity: 1 },
                Pole { location: PoleLocation::Exact(DomainPoint::from_int(1)), multiplicity: 1 },
            ]
        );
        assert_eq!(
            pole_set(&rf(&[0, 0, 1], &[1])),
            vec![Pole { location: PoleLocation::Exact(DomainPoint::Infinity), multiplicity: 2 }]
        );
        let p = pole_set(&rf(&[1], &[1, 0, 1]));
        let i = GaussianRational::i();
        assert_eq!(p.len(), 2);
        assert!(p.contains(&Pole { location: PoleLocation::Exact(DomainPoint::Finite(i.clone())), multiplicity: 1 }));
        assert!(p.contains(&Pole { location: PoleLocation::Exact(DomainPoint::Finite(-i)), multiplicity: 1 }));
    }

    #[test]
    fn numeric_residue_matches_exact() {
        // 1/((z^2-2)(z-1)^2) at z = sqrt 2
        let r = RationalFunction::normalize(Poly::one(), &Poly::from_ints(&[-2, 0, 1]) * &Poly::from_ints(&[1, -2, 1])).unwrap();
        let s = 2f64.sqrt();
        let got = numeric_residue(&r, Complex64::new(s, 0.0), 1);
        let want = 1.0 / (2.0 * s * (s - 1.0) * (s - 1.0));
        assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12);
        // double pole at 1 against the exact value
        let exact = residue_at(&r, &DomainPoint::from_int(1)).to_complex();
        let got = numeric_residue(&r, Complex64::new(1.0, 0.0), 2);
        assert!((got - exact).norm() < 1e-12);
    }
}

//! Roots of polynomials over Q(i).
//!
//! Roots lying in Q(i) are found exactly: the square-free parts are solved
//! numerically, each approximate root is rationalised by continued fractions
//! and then confirmed by exact evaluation. Whatever is left over is reported
//! as a double-precision approximation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{GaussianRational, Poly};

/// Square-free decomposition `p = c * prod a_i^i` (Yun). Returns the monic,
/// nonconstant factors `a_i` with their multiplicities `i`.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let fp = f.derivative();
    let a0 = f.gcd(&fp).expect("f nonzero");
    let mut b = f.exact_div(&a0).unwrap();
    let c = fp.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d).unwrap();
        let b_next = b.exact_div(&a).unwrap();
        let c_next = d.exact_div(&a).unwrap();
        d = &c_next - &b_next.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

/// All complex roots of `p` (with repetition) by the Aberth–Ehrlich iteration,
/// followed by Newton polishing.
pub fn numeric_roots(p: &Poly) -> Vec<Complex64> {
    let n = match p.degree() {
        Some(n) if n > 0 => n,
        _ => return Vec::new(),
    };
    let lc = p.leading_coeff().unwrap().to_complex();
    let coeffs: Vec<Complex64> = p.to_complex_coeffs().into_iter().map(|c| c / lc).collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            dv = dv * x + v;
            v = v * x + c;
        }
        (v, dv)
    };
    // Cauchy bound for the initial circle
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*r);
            if dv.norm() == 0.0 {
                break;
            }
            let next = *r - v / dv;
            if next.is_finite() {
                *r = next;
            }
        }
    }
    z
}

/// Best rational approximation of `x` by continued fractions, stopping at the
/// first convergent within `tol` or when the denominator exceeds `max_den`.
pub fn rationalize(x: f64, tol: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            return None;
        }
        let approx = BigRational::new(h2.clone(), k2.clone());
        if (approx.to_f64()? - x).abs() <= tol {
            return Some(approx);
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-300 {
            return Some(BigRational::new(h1, k1));
        }
        rest = 1.0 / frac;
    }
    None
}

/// Roots of a polynomial with multiplicities, split into exactly known
/// Gaussian-rational roots and numerical approximations of the rest.
#[derive(Clone, Debug, Default)]
pub struct RootSet {
    pub exact: Vec<(GaussianRational, usize)>,
    pub numeric: Vec<(Complex64, usize)>,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.exact.iter().map(|r| r.1).sum::<usize>() + self.numeric.iter().map(|r| r.1).sum::<usize>()
    }
}

fn try_exact(p: &Poly, approx: Complex64) -> Option<GaussianRational> {
    for tol in [1e-12, 1e-10, 1e-8] {
        let scale = 1.0 + approx.norm();
        let re = rationalize(approx.re, tol * scale, 1_000_000_000_000)?;
        let im = rationalize(approx.im, tol * scale, 1_000_000_000_000)?;
        let cand = GaussianRational::new(re, im);
        if p.eval(&cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

/// All roots of `p` with multiplicities. The zero polynomial and constants have none.
pub fn find_roots(p: &Poly) -> RootSet {
    let mut set = RootSet::default();
    for (factor, mult) in squarefree_decomposition(p) {
        let mut rest = factor.clone();
        for approx in numeric_roots(&factor) {
            if let Some(r) = try_exact(&rest, approx) {
                if let Ok(q) = rest.exact_div(&Poly::linear_root(&r)) {
                    rest = q;
                    set.exact.push((r, mult));
                }
            }
        }
        for approx in numeric_roots(&rest) {
            set.numeric.push((approx, mult));
        }
    }
    set.exact.sort_by(|a, b| cmp_gauss(&a.0, &b.0));
    set.numeric.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    set
}

/// Total order on Q(i) used to make root lists deterministic (real part, then imaginary).
pub fn cmp_gauss(a: &GaussianRational, b: &GaussianRational) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then(a.im.cmp(&b.im))
}

/// Multiplicity of `x` as a root of `p`, evaluated numerically: the number of
/// leading Taylor coefficients at `x` that vanish relative to `tol`.
pub fn numeric_multiplicity(p: &Poly, x: Complex64, tol: f64) -> usize {
    let mut q = p.to_complex_coeffs();
    let mut m = 0;
    let mut fact = 1.0;
    while !q.is_empty() {
        let mut v = Complex64::new(0.0, 0.0);
        for c in q.iter().rev() {
            v = v * x + c;
        }
        let scale: f64 = q.iter().map(|c| c.norm()).fold(0.0, f64::max) * (1.0 + x.norm()).powi(q.len() as i32);
        if v.norm() / fact > tol * scale.max(1.0) {
            break;
        }
        m += 1;
        fact *= (m as f64).max(1.0);
        q = q.iter().enumerate().skip(1).map(|(k, c)| c * (k as f64)).collect();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yun_multiplicities() {
        // (z-1)^3 (z+2) (z^2+1)^2
        let zm1 = Poly::from_ints(&[-1, 1]);
        let zp2 = Poly::from_ints(&[2, 1]);
        let q = Poly::from_ints(&[1, 0, 1]);
        let p = &(&zm1.pow(3) * &zp2) * &q.pow(2);
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec, vec![(zp2.clone(), 1), (q.clone(), 2), (zm1.clone(), 3)]);
    }

    #[test]
    fn exact_gaussian_roots() {
        let i = GaussianRational::i();
        let half = GaussianRational::from_frac(1, 2);
        let p = &(&Poly::linear_root(&i) * &Poly::linear_root(&-i.clone())) * &Poly::linear_root(&half).pow(2);
        let rs = find_roots(&p);
        assert!(rs.numeric.is_empty());
        assert_eq!(rs.exact.len(), 3);
        assert!(rs.exact.contains(&(half, 2)));
        assert!(rs.exact.contains(&(i.clone(), 1)));
        assert!(rs.exact.contains(&(-i, 1)));
    }

    #[test]
    fn irrational_roots_are_numeric() {
        // z^2 - 2 has no roots in Q(i)
        let rs = find_roots(&Poly::from_ints(&[-2, 0, 1]));
        assert!(rs.exact.is_empty());
        assert_eq!(rs.numeric.len(), 2);
        let s = 2f64.sqrt();
        assert!((rs.numeric[0].0 - Complex64::new(-s, 0.0)).norm() < 1e-12);
        assert!((rs.numeric[1].0 - Complex64::new(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rationalize_recovers_fractions() {
        let r = rationalize(-7.0 / 13.0, 1e-12, 1_000_000).unwrap();
        assert_eq!(r, BigRational::new((-7).into(), 13.into()));
        assert!(rationalize(std::f64::consts::PI, 1e-15, 1000).is_none());
    }

    #[test]
    fn numeric_multiplicity_counts() {
        let p = Poly::from_ints(&[-1, 1]).pow(3);
        assert_eq!(numeric_multiplicity(&p, Complex64::new(1.0, 0.0), 1e-10), 3);
        assert_eq!(numeric_multiplicity(&p, Complex64::new(2.0, 0.0), 1e-10), 0);
    }
}

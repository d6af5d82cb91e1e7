//! Evaluation of curves and of `π` in binary floating point with a chosen
//! mantissa width.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::Poly;
use crate::curves::ProjectiveCurve;
use crate::twistor::S4Point;

type Hp = FBig<HalfEven>;

fn int_to_hp(n: &BigInt, bits: usize) -> Hp {
    let i = IBig::from_str_radix(&n.to_str_radix(16), 16).expect("hex digits");
    Hp::from(i).with_precision(bits).value()
}

fn rat_to_hp(q: &BigRational, bits: usize) -> Hp {
    int_to_hp(q.numer(), bits) / int_to_hp(q.denom(), bits)
}

fn f64_to_hp(x: f64, bits: usize) -> Hp {
    Hp::try_from(x).expect("finite input").with_precision(bits).value()
}

fn hp_to_f64(x: &Hp) -> f64 {
    x.to_f64().value()
}

#[derive(Clone, Debug)]
struct C {
    re: Hp,
    im: Hp,
}

impl C {
    fn mul(&self, o: &C) -> C {
        C { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn add(&self, o: &C) -> C {
        C { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

/// A curve with coefficients rounded once to `bits` of mantissa.
#[derive(Clone, Debug)]
pub struct HpCurve {
    bits: usize,
    comps: [Vec<C>; 4],
    derivs: [Vec<C>; 4],
}

fn convert(p: &Poly, bits: usize) -> Vec<C> {
    p.coeffs().iter().map(|c| C { re: rat_to_hp(&c.re, bits), im: rat_to_hp(&c.im, bits) }).collect()
}

impl HpCurve {
    pub fn new(c: &ProjectiveCurve, bits: u32) -> Self {
        let bits = bits as usize;
        HpCurve {
            bits,
            comps: std::array::from_fn(|k| convert(&c.components()[k], bits)),
            derivs: std::array::from_fn(|k| convert(&c.components()[k].derivative(), bits)),
        }
    }

    fn horner(&self, coeffs: &[C], z: &C) -> C {
        let zero = C { re: f64_to_hp(0.0, self.bits), im: f64_to_hp(0.0, self.bits) };
        coeffs.iter().rev().fold(zero, |acc, c| acc.mul(z).add(c))
    }

    /// Lift value, derivative and `π` image at `x + i y`, rounded to double.
    pub fn eval(&self, x: f64, y: f64) -> ([num_complex::Complex64; 4], [num_complex::Complex64; 4], S4Point) {
        let z = C { re: f64_to_hp(x, self.bits), im: f64_to_hp(y, self.bits) };
        let v: [C; 4] = std::array::from_fn(|k| self.horner(&self.comps[k], &z));
        let d: [C; 4] = std::array::from_fn(|k| self.horner(&self.derivs[k], &z));
        let to_c = |c: &C| num_complex::Complex64::new(hp_to_f64(&c.re), hp_to_f64(&c.im));
        (v.each_ref().map(to_c), d.each_ref().map(to_c), self.project(&v))
    }

    fn project(&self, z: &[C; 4]) -> S4Point {
        // q1 = z0 + j z1, q2 = z2 + j z3 as (x, y, u, v) with w = u - i v
        let q = |a: &C, b: &C| [a.re.clone(), a.im.clone(), b.re.clone(), -b.im.clone()];
        let q1 = q(&z[0], &z[1]);
        let q2 = q(&z[2], &z[3]);
        let n = |p: &[Hp; 4]| p.iter().fold(f64_to_hp(0.0, self.bits), |acc, t| acc + t * t);
        let (n1, n2) = (n(&q1), n(&q2));
        let total = &n1 + &n2;
        // q2 * conj(q1)
        let (a1, b1, c1, d1) = (&q2[0], &q2[1], &q2[2], &q2[3]);
        let (a2, b2, c2, d2) = (&q1[0], -&q1[1], -&q1[2], -&q1[3]);
        let prod = [
            a1 * a2 - b1 * &b2 - c1 * &c2 - d1 * &d2,
            a1 * &b2 + b1 * a2 + c1 * &d2 - d1 * &c2,
            a1 * &c2 - b1 * &d2 + c1 * a2 + d1 * &b2,
            a1 * &d2 + b1 * &c2 - c1 * &b2 + d1 * a2,
        ];
        let two = f64_to_hp(2.0, self.bits);
        let out: [Hp; 5] = [
            &two * &prod[0] / &total,
            &two * &prod[1] / &total,
            &two * &prod[2] / &total,
            &two * &prod[3] / &total,
            (n2 - n1) / &total,
        ];
        out.each_ref().map(hp_to_f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::bryant_curve;
    use crate::parse::parse_expression;
    use crate::twistor::twistor_project;

    #[test]
    fn agrees_with_double() {
        let c = bryant_curve(&parse_expression("z^2 + 1/3").unwrap(), &parse_expression("z^3 - i*z").unwrap()).unwrap();
        let hp = HpCurve::new(&c, 200);
        let (v, d, x) = hp.eval(0.3, -0.7);
        let z = num_complex::Complex64::new(0.3, -0.7);
        let v64 = c.eval_f64(z);
        let d64 = c.eval_derivative_f64(z);
        let x64 = twistor_project(&v64);
        for k in 0..4 {
            assert!((v[k] - v64[k]).norm() < 1e-13);
            assert!((d[k] - d64[k]).norm() < 1e-13);
        }
        for k in 0..5 {
            assert!((x[k] - x64[k]).abs() < 1e-14);
        }
        assert!((int_to_hp(&BigInt::from(-255), 64).to_f64().value() + 255.0).abs() == 0.0);
    }
}

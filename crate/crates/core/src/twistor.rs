//! Quaternions, the twistor projection `π: CP^3 -> S^4`, the involution `ι`
//! and the fibres of `π`.
//!
//! `C^2` is identified with `H` by `(z, w) -> z + j w`; complex scalars act on
//! the right. A point `[z0 : z1 : z2 : z3]` gives `q1 = z0 + j z1`,
//! `q2 = z2 + j z3`, and `π` is the inverse stereographic image of
//! `q = q2 q1^{-1}`, with `q = 0` at the south pole `(0, 0, 0, 0, -1)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::GaussianRational;

/// `x + i y + j u + k v`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion<T> {
    pub x: T,
    pub y: T,
    pub u: T,
    pub v: T,
}

impl<T> Quaternion<T> {
    pub fn new(x: T, y: T, u: T, v: T) -> Self {
        Quaternion { x, y, u, v }
    }
}

impl<T> Quaternion<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn conj(&self) -> Self {
        Quaternion::new(self.x.clone(), -self.y.clone(), -self.u.clone(), -self.v.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.u.clone() * self.u.clone()
            + self.v.clone() * self.v.clone()
    }

    pub fn one() -> Self {
        Quaternion::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    /// Euclidean inner product on `R^4`.
    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.u.clone() * o.u.clone() + self.v.clone() * o.v.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Quaternion::new(self.x.clone() * k.clone(), self.y.clone() * k.clone(), self.u.clone() * k.clone(), self.v.clone() * k.clone())
    }
}

impl<T> Add for Quaternion<T>
where
    T: Add<Output = T>,
{
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.x + o.x, self.y + o.y, self.u + o.u, self.v + o.v)
    }
}

impl<T> Sub for Quaternion<T>
where
    T: Sub<Output = T>,
{
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.x - o.x, self.y - o.y, self.u - o.u, self.v - o.v)
    }
}

impl<T> Mul for Quaternion<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.x, self.y, self.u, self.v);
        let (a2, b2, c2, d2) = (o.x, o.y, o.u, o.v);
        Quaternion::new(
            a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
            a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
            a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

pub type Quat = Quaternion<f64>;
pub type QuatExact = Quaternion<BigRational>;

/// `z + j w` with `w = u - i v`.
pub fn quat_from_pair(z: Complex64, w: Complex64) -> Quat {
    Quaternion::new(z.re, z.im, w.re, -w.im)
}

pub fn quat_to_pair(q: &Quat) -> (Complex64, Complex64) {
    (Complex64::new(q.x, q.y), Complex64::new(q.u, -q.v))
}

pub fn quat_from_pair_exact(z: &GaussianRational, w: &GaussianRational) -> QuatExact {
    Quaternion::new(z.re.clone(), z.im.clone(), w.re.clone(), -w.im.clone())
}

/// A point of CP^3 by a nonzero representative.
pub type CP3Point = [Complex64; 4];
/// A point of the unit sphere in R^5.
pub type S4Point = [f64; 5];

fn chart_free(q1: &Quat, q2: &Quat) -> S4Point {
    let n1 = q1.norm_sqr();
    let n2 = q2.norm_sqr();
    let n = n1 + n2;
    let a = (*q2 * q1.conj()).scale(&(2.0 / n));
    [a.x, a.y, a.u, a.v, (n2 - n1) / n]
}

/// `π([z0 : z1 : z2 : z3])`. Both affine charts are covered by one formula:
/// `(2 q2 conj(q1), |q2|^2 - |q1|^2) / (|q1|^2 + |q2|^2)`.
pub fn twistor_project(p: &CP3Point) -> S4Point {
    // rescale so large or tiny representatives do not over/underflow
    let m = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let z: [Complex64; 4] = std::array::from_fn(|k| p[k] / m);
    chart_free(&quat_from_pair(z[0], z[1]), &quat_from_pair(z[2], z[3]))
}

/// `π` through the chart `q = q2 q1^{-1}` followed by inverse stereographic
/// projection; `None` when `q1 = 0`.
pub fn twistor_project_chart(p: &CP3Point) -> Option<S4Point> {
    let q1 = quat_from_pair(p[0], p[1]);
    let q2 = quat_from_pair(p[2], p[3]);
    let n1 = q1.norm_sqr();
    if n1 == 0.0 {
        return None;
    }
    let q = q2 * q1.conj().scale(&(1.0 / n1));
    let s = q.norm_sqr();
    let k = 2.0 / (1.0 + s);
    Some([q.x * k, q.y * k, q.u * k, q.v * k, (s - 1.0) / (1.0 + s)])
}

/// Exact `π` for a point with Gaussian-rational coordinates.
pub fn twistor_project_exact(p: &[GaussianRational; 4]) -> [BigRational; 5] {
    let q1 = quat_from_pair_exact(&p[0], &p[1]);
    let q2 = quat_from_pair_exact(&p[2], &p[3]);
    let n1 = q1.norm_sqr();
    let n2 = q2.norm_sqr();
    let n = n1.clone() + n2.clone();
    let two = BigRational::from_integer(2.into());
    let a = q2 * q1.conj();
    [
        two.clone() * a.x / n.clone(),
        two.clone() * a.y / n.clone(),
        two.clone() * a.u / n.clone(),
        two * a.v / n.clone(),
        (n2 - n1) / n,
    ]
}

/// Derivative of `π` along a tangent vector `dz` at the representative `z`.
pub fn twistor_differential(z: &CP3Point, dz: &CP3Point) -> [f64; 5] {
    let q1 = quat_from_pair(z[0], z[1]);
    let q2 = quat_from_pair(z[2], z[3]);
    let d1 = quat_from_pair(dz[0], dz[1]);
    let d2 = quat_from_pair(dz[2], dz[3]);
    let n = q1.norm_sqr() + q2.norm_sqr();
    let dn = 2.0 * (q1.dot(&d1) + q2.dot(&d2));
    let a = (q2 * q1.conj()).scale(&2.0);
    let da = (d2 * q1.conj() + q2 * d1.conj()).scale(&2.0);
    let b = q2.norm_sqr() - q1.norm_sqr();
    let db = 2.0 * (q2.dot(&d2) - q1.dot(&d1));
    let f = |x: f64, dx: f64| dx / n - x * dn / (n * n);
    [f(a.x, da.x), f(a.y, da.y), f(a.u, da.u), f(a.v, da.v), f(b, db)]
}

/// `ι(z) = (-conj z1, conj z0, -conj z3, conj z2)`, i.e. right multiplication by `j`.
pub fn involution_iota(p: &CP3Point) -> CP3Point {
    [-p[1].conj(), p[0].conj(), -p[3].conj(), p[2].conj()]
}

/// Fubini–Study squared length of `dz` at `z`:
/// `(|z|^2 |dz|^2 - |<z, dz>|^2) / |z|^4`.
pub fn fubini_study_sqr(z: &CP3Point, dz: &CP3Point) -> f64 {
    let nz: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let nd: f64 = dz.iter().map(|c| c.norm_sqr()).sum();
    let h: Complex64 = z.iter().zip(dz).map(|(a, b)| a.conj() * b).sum();
    (nz * nd - h.norm_sqr()) / (nz * nz)
}

/// A projective line given by two spanning points.
#[derive(Clone, Debug, PartialEq)]
pub struct CP3Line {
    pub a: CP3Point,
    pub b: CP3Point,
}

impl CP3Line {
    /// The point `[t : 1]`, i.e. `t a + b`; `None` gives `a`.
    pub fn point(&self, t: Option<Complex64>) -> CP3Point {
        match t {
            None => self.a,
            Some(t) => std::array::from_fn(|k| t * self.a[k] + self.b[k]),
        }
    }

    /// Distance from `p` to the line: the norm of the component of the
    /// unit representative of `p` orthogonal to the span.
    pub fn distance(&self, p: &CP3Point) -> f64 {
        let ip = |x: &CP3Point, y: &CP3Point| -> Complex64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
        let norm = |x: &CP3Point| ip(x, x).re.sqrt();
        let e1: CP3Point = self.a.map(|c| c / norm(&self.a));
        let c = ip(&e1, &self.b);
        let mut e2: CP3Point = std::array::from_fn(|k| self.b[k] - c * e1[k]);
        let n2 = norm(&e2);
        e2 = e2.map(|c| c / n2);
        let pn = norm(p);
        let u: CP3Point = p.map(|c| c / pn);
        let (c1, c2) = (ip(&e1, &u), ip(&e2, &u));
        let r: CP3Point = std::array::from_fn(|k| u[k] - c1 * e1[k] - c2 * e2[k]);
        norm(&r)
    }
}

/// The fibre `π^{-1}(s)`.
pub fn fibre_of(s: &S4Point) -> CP3Line {
    let zero = Complex64::zero();
    let one = Complex64::one();
    if 1.0 - s[4] < 1e-300 {
        // north pole: q1 = 0
        return CP3Line { a: [zero, zero, one, zero], b: [zero, zero, zero, one] };
    }
    let k = 1.0 / (1.0 - s[4]);
    let q = Quaternion::new(s[0] * k, s[1] * k, s[2] * k, s[3] * k);
    let (z2, z3) = quat_to_pair(&q);
    let (w2, w3) = quat_to_pair(&(q * Quat::j()));
    CP3Line { a: [one, zero, z2, z3], b: [zero, one, w2, w3] }
}

/// Projective distance `sqrt(1 - |<a,b>|^2 / (|a|^2 |b|^2))`.
pub fn cp3_distance(a: &CP3Point, b: &CP3Point) -> f64 {
    let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
    let h: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (1.0 - h.norm_sqr() / (na * nb)).max(0.0).sqrt()
}

pub fn s4_distance(a: &S4Point, b: &S4Point) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_point(rng: &mut ChaCha8Rng) -> CP3Point {
        std::array::from_fn(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
    }

    #[test]
    fn pairs() {
        assert_eq!(quat_from_pair(c(1.0, 0.0), c(0.0, 0.0)), Quat::one());
        assert_eq!(quat_from_pair(c(0.0, 0.0), c(1.0, 0.0)), Quat::j());
        assert_eq!(quat_from_pair(c(0.0, 1.0), c(0.0, 1.0)), Quaternion::new(0.0, 1.0, 0.0, -1.0));
        let q = quat_from_pair(c(0.3, -1.0), c(2.0, 0.5));
        assert_eq!(quat_to_pair(&q), (c(0.3, -1.0), c(2.0, 0.5)));
    }

    #[test]
    fn hamilton_rules() {
        let i = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        let j = Quat::j();
        let k = Quaternion::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, Quaternion::new(-1.0, 0.0, 0.0, 0.0));
        // complex scalars act on the right
        let q = quat_from_pair(c(1.0, 2.0), c(-0.5, 3.0));
        let l = c(0.7, -1.1);
        let lhs = q * quat_from_pair(l, c(0.0, 0.0));
        let rhs = quat_from_pair(c(1.0, 2.0) * l, c(-0.5, 3.0) * l);
        assert!((lhs - rhs).norm_sqr() < 1e-24);
    }

    #[test]
    fn poles() {
        let o = c(0.0, 0.0);
        let e = c(1.0, 0.0);
        assert_eq!(twistor_project(&[e, o, o, o]), [0.0, 0.0, 0.0, 0.0, -1.0]);
        assert_eq!(twistor_project(&[o, o, e, o]), [0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(involution_iota(&[e, o, o, o]), [o, e, o, o]);
        let f = fibre_of(&[0.0, 0.0, 0.0, 0.0, -1.0]);
        assert_eq!(f, CP3Line { a: [e, o, o, o], b: [o, e, o, o] });
        let f = fibre_of(&[0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(f, CP3Line { a: [o, o, e, o], b: [o, o, o, e] });
    }

    #[test]
    fn well_defined_and_iota_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = random_point(&mut rng);
            let x = twistor_project(&p);
            assert!((x.iter().map(|t| t * t).sum::<f64>() - 1.0).abs() < 1e-12);
            let l = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            assert!(s4_distance(&x, &twistor_project(&p.map(|z| z * l))) < 1e-12);
            assert!(s4_distance(&x, &twistor_project(&involution_iota(&p))) < 1e-12);
            assert!(s4_distance(&x, &twistor_project_chart(&p).unwrap()) < 1e-12);
            let back = involution_iota(&involution_iota(&p));
            assert!(cp3_distance(&back, &p) < 1e-12);
            let f = fibre_of(&x);
            assert!(f.distance(&p) < 1e-10);
        }
    }

    #[test]
    fn exact_projection_matches() {
        let p = [GaussianRational::from_parts((1, 2), (1, 3)), GaussianRational::from_int(2), GaussianRational::i(), GaussianRational::from_frac(-3, 4)];
        let x = twistor_project_exact(&p);
        let s: BigRational = x.iter().map(|t| t * t).sum();
        assert!(s.is_one());
        let xf = twistor_project(&p.clone().map(|g| g.to_complex()));
        for k in 0..5 {
            assert!((num_traits::ToPrimitive::to_f64(&x[k]).unwrap() - xf[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn differential_matches_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let z = random_point(&mut rng);
        let dz = random_point(&mut rng);
        let h = 1e-6;
        let plus = twistor_project(&std::array::from_fn(|k| z[k] + dz[k] * h));
        let minus = twistor_project(&std::array::from_fn(|k| z[k] - dz[k] * h));
        let d = twistor_differential(&z, &dz);
        for k in 0..5 {
            assert!(((plus[k] - minus[k]) / (2.0 * h) - d[k]).abs() < 1e-7);
        }
    }

    #[test]
    fn horizontal_scale() {
        // at [1:0:0:0] the horizontal vector (0,0,e,0) has FS length e and round length 2e
        let o = c(0.0, 0.0);
        let z = [c(1.0, 0.0), o, o, o];
        let v = [o, o, c(1e-3, 0.0), o];
        let d = twistor_differential(&z, &v);
        let round: f64 = d.iter().map(|t| t * t).sum();
        assert!((round / fubini_study_sqr(&z, &v) - 4.0).abs() < 1e-12);
    }
}

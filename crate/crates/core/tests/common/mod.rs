//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use legendrian::arith::{GaussianRational, Poly, RationalFunction};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(rng: &mut TestRng) -> GaussianRational {
    let re = (rng.gen_range(-5..=5), rng.gen_range(1..=3));
    let im = if rng.gen_bool(0.5) { (0, 1) } else { (rng.gen_range(-5..=5), rng.gen_range(1..=3)) };
    GaussianRational::from_parts(re, im)
}

pub fn nonzero_gauss(rng: &mut TestRng) -> GaussianRational {
    loop {
        let c = gauss(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A polynomial of exact degree `deg`.
pub fn poly_of_degree(rng: &mut TestRng, deg: usize) -> Poly {
    let mut c: Vec<GaussianRational> = (0..deg).map(|_| gauss(rng)).collect();
    c.push(nonzero_gauss(rng));
    Poly::new(c)
}

pub fn poly(rng: &mut TestRng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    poly_of_degree(rng, d)
}

/// Numerator and denominator of degree at most `max_deg`.
pub fn ratfunc(rng: &mut TestRng, max_deg: usize) -> RationalFunction {
    RationalFunction::normalize(poly(rng, max_deg), poly(rng, max_deg)).unwrap()
}

pub fn nonconstant_ratfunc(rng: &mut TestRng, max_deg: usize) -> RationalFunction {
    loop {
        let r = ratfunc(rng, max_deg);
        if !r.is_constant() {
            return r;
        }
    }
}

/// `prod (z - a_k)^{m_k}` with Gaussian-rational `a_k`, so every root is exact.
pub fn split_poly(rng: &mut TestRng, max_roots: usize, max_mult: usize) -> Poly {
    let n = rng.gen_range(0..=max_roots);
    let mut p = Poly::constant(nonzero_gauss(rng));
    for _ in 0..n {
        let a = gauss(rng);
        for _ in 0..rng.gen_range(1..=max_mult) {
            p = &p * &Poly::linear_root(&a);
        }
    }
    p
}

/// A rational function whose finite poles all lie in Q(i).
pub fn ratfunc_exact_poles(rng: &mut TestRng, max_mult: usize) -> RationalFunction {
    let num = poly(rng, 4);
    RationalFunction::normalize(num, split_poly(rng, 3, max_mult)).unwrap()
}

/// A Möbius transformation `(a z + b) / (c z + d)`.
pub fn mobius(rng: &mut TestRng) -> RationalFunction {
    loop {
        let (a, b, c, d) = (gauss(rng), gauss(rng), gauss(rng), gauss(rng));
        if !(&(&a * &d) - &(&b * &c)).is_zero() {
            let num = Poly::new(vec![b, a]);
            let den = Poly::new(vec![d, c]);
            return RationalFunction::normalize(num, den).unwrap();
        }
    }
}

#![allow(dead_code)]

use std::sync::Arc;

use arens_core::{
    make_extension, AhDescriptor, AhElement, FiniteElement, FiniteSpace, LaurentElement, MonicPoly, WeightSequence,
};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type F = FiniteElement<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> Complex<f64> {
    Complex::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn finite<R: Rng>(rng: &mut R, points: usize, scale: f64) -> F {
    F::new((0..points).map(|_| complex(rng, scale)).collect())
}

pub fn laurent<R: Rng>(rng: &mut R, w: &Arc<WeightSequence<f64>>, max_len: usize) -> LaurentElement<f64> {
    let len = rng.gen_range(1..=max_len);
    let lo = rng.gen_range(-3..=3);
    LaurentElement::new(w.clone(), lo, (0..len).map(|_| complex(rng, 1.0)).collect())
}

pub fn monic<R: Rng>(rng: &mut R, points: usize, n: usize, scale: f64) -> MonicPoly<F> {
    MonicPoly::from_lower(FiniteSpace { points }, (0..n).map(|_| finite(rng, points, scale)).collect()).unwrap()
}

pub fn extension<R: Rng>(rng: &mut R, points: usize, n: usize, scale: f64) -> Arc<AhDescriptor<F>> {
    make_extension(&FiniteSpace { points }, monic(rng, points, n, scale), None).unwrap()
}

pub fn ah<R: Rng>(rng: &mut R, desc: &Arc<AhDescriptor<F>>, scale: f64) -> AhElement<F> {
    let points = desc.base().points;
    AhElement::from_coeffs(desc, (0..desc.degree()).map(|_| finite(rng, points, scale)).collect()).unwrap()
}

/// Coefficients `[c_0, …, c_{n−1}, 1]` of `∏ (x − r_i)`.
pub fn poly_from_roots(roots: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let mut coeffs = vec![Complex::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

pub fn horner(coeffs: &[Complex<f64>], z: Complex<f64>) -> Complex<f64> {
    coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Scalar polynomial of coordinate `i` of a polynomial over `ℂ^m`.
pub fn coordinate_poly(coeffs: &[F], i: usize) -> Vec<Complex<f64>> {
    coeffs.iter().map(|c| c.coordinate(i)).collect()
}

/// A random instance of `A_α` over `ℂ^m` where each coordinate is forced
/// to share a root between `α_i` and `β_i` with probability `p_forced`.
/// Returns the element and the per-coordinate forced flags.
pub fn forced_instance<R: Rng>(rng: &mut R, m: usize, n: usize, p_forced: f64) -> (AhElement<F>, Vec<bool>) {
    let mut alpha_coords = Vec::with_capacity(m);
    let mut beta_coords = Vec::with_capacity(m);
    let mut forced = Vec::with_capacity(m);
    for _ in 0..m {
        let roots: Vec<Complex<f64>> = (0..n).map(|_| complex(rng, 1.5)).collect();
        alpha_coords.push(poly_from_roots(&roots));
        let f = rng.gen_bool(p_forced);
        forced.push(f);
        let beta = if f {
            let shared = roots[rng.gen_range(0..n)];
            let gamma: Vec<Complex<f64>> = (0..n - 1).map(|_| complex(rng, 1.5)).collect();
            // (x − shared)·γ, degree n − 1
            let mut b = vec![Complex::new(0.0, 0.0); n];
            for (j, &g) in gamma.iter().enumerate() {
                b[j + 1] += g;
                b[j] -= shared * g;
            }
            b
        } else {
            (0..n).map(|_| complex(rng, 1.5)).collect()
        };
        beta_coords.push(beta);
    }
    let d = FiniteSpace { points: m };
    let lower: Vec<F> = (0..n).map(|j| F::new(alpha_coords.iter().map(|a| a[j]).collect())).collect();
    let desc = make_extension(&d, MonicPoly::from_lower(d, lower).unwrap(), None).unwrap();
    let rep: Vec<F> = (0..n).map(|j| F::new(beta_coords.iter().map(|b| b[j]).collect())).collect();
    (AhElement::from_coeffs(&desc, rep).unwrap(), forced)
}

/// Independent verdict: coordinate `i` is singular iff `β_i` nearly vanishes
/// at a numerically computed root of `α_i`, relative to `Σ |b_j| |λ|^j`.
pub fn common_root_oracle(u: &AhElement<F>) -> bool {
    let alpha = u.ah_descriptor().alpha().as_poly().coeffs().to_vec();
    let m = u.coeff(0).points();
    (0..m).all(|i| {
        let a = coordinate_poly(&alpha, i);
        let b = coordinate_poly(u.rep(), i);
        arens_core::polynomial_roots(&a).unwrap().iter().all(|&r| {
            let magnitude = b.iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
            horner(&b, r).norm() > 1e-9 * magnitude.max(1e-300)
        })
    })
}

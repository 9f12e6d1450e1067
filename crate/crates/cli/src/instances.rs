//! Random instances for the experiments, and the brute-force scalar oracle
//! for invertibility over `ℂ^m`.

use std::f64::consts::TAU;
use std::sync::Arc;

use arens_core::{
    make_extension, polynomial_roots, AhElement, BanachAlgebra, FiniteElement, FiniteSpace, LaurentElement,
    MonicPoly, Ring, SquareMatrix, WeightSequence,
};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub type F = FiniteElement<f64>;

/// Uniform in the square `[−scale, scale)²`.
pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn finite<R: Rng>(rng: &mut R, points: usize, scale: f64) -> F {
    F::new((0..points).map(|_| complex(rng, scale)).collect())
}

/// Coefficients of `∏ (x − r_i)`, lowest first, leading `1` included.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// An element of `A_α` over `ℂ^m` with `deg α = n`. Each coordinate is
/// forced, with probability `p_forced`, to have `α_i` and `β_i` share a
/// root. Returns the element and the forced flags.
pub fn forced_instance<R: Rng>(rng: &mut R, m: usize, n: usize, p_forced: f64) -> (AhElement<F>, Vec<bool>) {
    let mut alphas = Vec::with_capacity(m);
    let mut betas = Vec::with_capacity(m);
    let mut forced = Vec::with_capacity(m);
    for _ in 0..m {
        let roots: Vec<Complex64> = (0..n).map(|_| complex(rng, 1.5)).collect();
        alphas.push(poly_from_roots(&roots));
        let f = rng.gen_bool(p_forced);
        forced.push(f);
        let beta = if f {
            // (x − shared)·γ with deg γ = n − 2
            let shared = roots[rng.gen_range(0..n)];
            let mut b = vec![Complex64::new(0.0, 0.0); n];
            for j in 0..n - 1 {
                let g = complex(rng, 1.5);
                b[j + 1] += g;
                b[j] -= shared * g;
            }
            b
        } else {
            (0..n).map(|_| complex(rng, 1.5)).collect()
        };
        betas.push(beta);
    }
    let d = FiniteSpace { points: m };
    let column = |polys: &[Vec<Complex64>], j: usize| F::new(polys.iter().map(|p| p[j]).collect());
    let lower = (0..n).map(|j| column(&alphas, j)).collect();
    let desc = make_extension(&d, MonicPoly::from_lower(d, lower).expect("coefficients share ℂ^m"), None)
        .expect("automatic t is admissible");
    let rep = (0..n).map(|j| column(&betas, j)).collect();
    (AhElement::from_coeffs(&desc, rep).expect("coefficients share ℂ^m"), forced)
}

/// Independent verdict over `ℂ^m`: `u` is invertible iff in no coordinate
/// does `β_i` nearly vanish at a computed root of `α_i`, relative to
/// `Σ |b_j| |λ|^j`.
pub fn common_root_oracle(u: &AhElement<F>) -> bool {
    let alpha = u.ah_descriptor().alpha().as_poly().coeffs();
    let m = u.coeff(0).points();
    (0..m).all(|i| {
        let a: Vec<Complex64> = alpha.iter().map(|c| c.coordinate(i)).collect();
        let b: Vec<Complex64> = u.rep().iter().map(|c| c.coordinate(i)).collect();
        polynomial_roots(&a).expect("α is monic").iter().all(|&r| {
            let magnitude = b.iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
            horner(&b, r).norm() > 1e-9 * magnitude.max(f64::MIN_POSITIVE)
        })
    })
}

/// A `k×k` matrix over `ℂ^m` whose last row repeats the first, so its
/// determinant vanishes in every coordinate.
pub fn singular_matrix<R: Rng>(rng: &mut R, points: usize, k: usize) -> SquareMatrix<F> {
    let mut b = SquareMatrix::from_fn(k, |_, _| finite(rng, points, 1.0));
    if k > 1 {
        for j in 0..k {
            let v = b.get(0, j).clone();
            b.set(k - 1, j, v);
        }
    } else {
        b.set(0, 0, F::zero(&FiniteSpace { points }));
    }
    b
}

pub fn permutation<R: Rng>(rng: &mut R, k: usize) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..k).collect();
    sigma.shuffle(rng);
    sigma
}

/// Random Laurent element with up to `max_len` terms starting in `[−3, 3]`.
pub fn laurent<R: Rng>(rng: &mut R, w: &Arc<WeightSequence<f64>>, max_len: usize) -> LaurentElement<f64> {
    let len = rng.gen_range(1..=max_len);
    let lo = rng.gen_range(-3..=3);
    LaurentElement::new(w.clone(), lo, (0..len).map(|_| complex(rng, 1.0)).collect())
}

/// `δ₁ − z δ₀`, whose Gelfand transform vanishes exactly at `z`.
pub fn linear_factor(w: &Arc<WeightSequence<f64>>, z: Complex64) -> LaurentElement<f64> {
    LaurentElement::new(w.clone(), 0, vec![-z, Complex64::new(1.0, 0.0)])
}

/// A random element with a zero on the circle `|w| = radius`.
pub fn circle_singular<R: Rng>(rng: &mut R, w: &Arc<WeightSequence<f64>>, radius: f64, max_len: usize) -> LaurentElement<f64> {
    let z = Complex64::from_polar(radius, rng.gen_range(0.0..TAU));
    laurent(rng, w, max_len).mul_ref(&linear_factor(w, z))
}

/// `(δ₁ − aδ₀)(δ₁ − bδ₀)` with `a` strictly inside the annulus and `b`
/// outside it: the windings on the two boundary circles differ by one.
pub fn obstructed<R: Rng>(rng: &mut R, w: &Arc<WeightSequence<f64>>) -> LaurentElement<f64> {
    let annulus = w.radii();
    let (lo, hi) = (annulus.rho_minus, annulus.rho_plus);
    let inside = lo + (hi - lo) * rng.gen_range(0.2..0.8);
    let outside = hi * rng.gen_range(1.5..2.5);
    let a = Complex64::from_polar(inside, rng.gen_range(0.0..TAU));
    let b = Complex64::from_polar(outside, rng.gen_range(0.0..TAU));
    linear_factor(w, a).mul_ref(&linear_factor(w, b))
}

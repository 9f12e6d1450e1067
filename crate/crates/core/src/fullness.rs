//! Sample-based probes of fullness (`G(B) = B ∩ G(A)`) for a subalgebra `B`
//! of a finite-space algebra, given by a finite spanning sample.
//!
//! A `NonFullWitness` says that `x` is invertible in the ambient algebra but
//! its inverse is not within tolerance of the span of the sample. It refutes
//! fullness only relative to that sample.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{BanachAlgebra, Tolerances};
use crate::finite::FiniteElement;
use crate::scalar::{lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FullnessVerdict {
    /// `x⁻¹` lies in the sampled span.
    FullConsistent,
    /// `x` is invertible but `x⁻¹` is not in the sampled span.
    NonFullWitness,
    /// `x` is not invertible in the ambient algebra; nothing to test.
    NotInvertible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FullnessReport<T> {
    pub verdict: FullnessVerdict,
    /// Sup-norm distance from `x⁻¹` to its least-squares fit, relative to `‖x⁻¹‖`.
    pub relative_residual: T,
    /// Coefficients of the fit over the sample.
    pub coefficients: Vec<Complex<T>>,
}

/// Least-squares `min ‖Σ λ_i s_i − y‖₂` by modified Gram–Schmidt. Columns
/// that are numerically dependent on earlier ones get coefficient zero.
pub fn least_squares<T: Real>(columns: &[Vec<Complex<T>>], y: &[Complex<T>]) -> Vec<Complex<T>> {
    let m = columns.len();
    let dot = |a: &[Complex<T>], b: &[Complex<T>]| a.iter().zip(b).fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y);
    let norm2 = |a: &[Complex<T>]| a.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt();
    let mut q: Vec<Option<Vec<Complex<T>>>> = Vec::with_capacity(m);
    let mut r = vec![vec![Complex::<T>::zero(); m]; m];
    for (j, col) in columns.iter().enumerate() {
        let original = norm2(col);
        let mut v = col.clone();
        for (i, qi) in q.iter().enumerate() {
            if let Some(qi) = qi {
                let c = dot(qi, &v);
                r[i][j] = c;
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= qk * c;
                }
            }
        }
        let nv = norm2(&v);
        if nv > lit::<T>(1e-12) * original && nv > T::zero() {
            r[j][j] = Complex::new(nv, T::zero());
            q.push(Some(v.iter().map(|x| x / nv).collect()));
        } else {
            q.push(None);
        }
    }
    let rhs: Vec<Complex<T>> = q
        .iter()
        .map(|qi| qi.as_ref().map_or(Complex::zero(), |qi| dot(qi, y)))
        .collect();
    let mut lambda = vec![Complex::<T>::zero(); m];
    for j in (0..m).rev() {
        if q[j].is_none() {
            continue;
        }
        let mut acc = rhs[j];
        for k in j + 1..m {
            acc -= r[j][k] * lambda[k];
        }
        lambda[j] = acc / r[j][j];
    }
    lambda
}

pub fn is_full_subalgebra_witness<T: Real>(
    sub: &[FiniteElement<T>],
    x: &FiniteElement<T>,
    membership_tol: T,
    tol: &Tolerances<T>,
) -> FullnessReport<T> {
    let Ok(cert) = x.try_invert(tol) else {
        return FullnessReport {
            verdict: FullnessVerdict::NotInvertible,
            relative_residual: T::nan(),
            coefficients: Vec::new(),
        };
    };
    let y = cert.inverse.values();
    let columns: Vec<Vec<Complex<T>>> = sub.iter().map(|s| s.values().to_vec()).collect();
    let coefficients = least_squares(&columns, y);
    let residual = y
        .iter()
        .enumerate()
        .map(|(p, &yp)| {
            let fit = columns
                .iter()
                .zip(&coefficients)
                .fold(Complex::<T>::zero(), |acc, (c, l)| acc + c[p] * l);
            (fit - yp).norm()
        })
        .fold(T::zero(), T::max);
    let relative_residual = residual / cert.inverse.norm();
    let verdict = if relative_residual <= membership_tol {
        FullnessVerdict::FullConsistent
    } else {
        FullnessVerdict::NonFullWitness
    };
    FullnessReport { verdict, relative_residual, coefficients }
}

/// `m` equally spaced points on the unit circle.
pub fn circle_points<T: Real>(m: usize) -> Vec<Complex<T>> {
    (0..m)
        .map(|j| Complex::from_polar(T::one(), T::TAU() * lit(j as f64) / lit(m as f64)))
        .collect()
}

/// Poles of the rational sample functions `1/(z − p)`; all lie off `S¹ ∪ {2}`.
pub const SAMPLE_POLES: [(f64, f64); 3] = [(3.0, 0.0), (-2.0, 0.0), (0.0, 0.5)];

/// A finite sample of rational functions with poles off `S¹ ∪ {2}`,
/// restricted to `points`: `1, z, z², z⁻¹, z⁻²` and `1/(z − p)` for
/// [`SAMPLE_POLES`].
pub fn rational_sample<T: Real>(points: &[Complex<T>]) -> Vec<FiniteElement<T>> {
    let f = |g: &dyn Fn(Complex<T>) -> Complex<T>| FiniteElement::new(points.iter().map(|&z| g(z)).collect());
    let mut out = vec![
        f(&|_| Complex::new(T::one(), T::zero())),
        f(&|z| z),
        f(&|z| z * z),
        f(&|z| z.inv()),
        f(&|z| (z * z).inv()),
    ];
    for (re, im) in SAMPLE_POLES {
        let p = Complex::new(lit::<T>(re), lit::<T>(im));
        out.push(f(&|z| (z - p).inv()));
    }
    out
}

/// `z − 2` on `m` circle points against [`rational_sample`].
pub fn circle_non_fullness_probe<T: Real>(m: usize, membership_tol: T) -> FullnessReport<T> {
    let points = circle_points::<T>(m);
    let two = Complex::new(lit::<T>(2.0), T::zero());
    let x = FiniteElement::new(points.iter().map(|&z| z - two).collect());
    is_full_subalgebra_witness(&rational_sample(&points), &x, membership_tol, &Tolerances::default())
}

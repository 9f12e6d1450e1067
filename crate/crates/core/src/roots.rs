//! Roots of complex polynomials as eigenvalues of the companion matrix.
//!
//! The companion matrix is already upper Hessenberg, so a shifted complex QR
//! iteration with Givens rotations and Wilkinson shifts applies directly.
//! Each eigenvalue is then polished by a few Newton steps on the original
//! polynomial.

use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("QR iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
}

/// Strips trailing (highest-degree) exact zeros from a lowest-first list.
pub fn trim_high<T: Real>(coeffs: &[Complex<T>]) -> &[Complex<T>] {
    let len = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map_or(0, |i| i + 1);
    &coeffs[..len]
}

/// Horner evaluation of a lowest-first coefficient list.
pub fn eval_poly<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::zero(), |acc, &c| acc * z + c)
}

fn eval_with_derivative<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots (with multiplicity) of `Σ coeffs[j] z^j`.
///
/// Exact zero low coefficients produce exact zero roots; the rest come from
/// the companion matrix of the normalized polynomial.
pub fn polynomial_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>, RootError> {
    let coeffs = trim_high(coeffs);
    if coeffs.is_empty() {
        return Err(RootError::ZeroPolynomial);
    }
    let zeros = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let reduced = &coeffs[zeros..];
    let mut roots = vec![Complex::zero(); zeros];
    let degree = reduced.len() - 1;
    if degree == 0 {
        return Ok(roots);
    }
    let lead = reduced[degree];
    if degree == 1 {
        roots.push(-reduced[0] / lead);
        return Ok(roots);
    }
    // Companion matrix: first row −c_{d−1}/c_d … −c_0/c_d, ones on the subdiagonal.
    let mut h = vec![vec![Complex::<T>::zero(); degree]; degree];
    for j in 0..degree {
        h[0][j] = -reduced[degree - 1 - j] / lead;
    }
    for i in 1..degree {
        h[i][i - 1] = Complex::new(T::one(), T::zero());
    }
    let eig = hessenberg_eigenvalues(h)?;
    roots.extend(eig.into_iter().map(|z| polish(reduced, z)));
    Ok(roots)
}

fn polish<T: Real>(coeffs: &[Complex<T>], mut z: Complex<T>) -> Complex<T> {
    let (mut p, _) = eval_with_derivative(coeffs, z);
    for _ in 0..4 {
        let (_, dp) = eval_with_derivative(coeffs, z);
        if dp.is_zero() || p.is_zero() {
            break;
        }
        let candidate = z - p / dp;
        let (pc, _) = eval_with_derivative(coeffs, candidate);
        if pc.norm() < p.norm() {
            z = candidate;
            p = pc;
        } else {
            break;
        }
    }
    z
}

/// Eigenvalues of an upper Hessenberg complex matrix by shifted QR.
fn hessenberg_eigenvalues<T: Real>(mut h: Vec<Vec<Complex<T>>>) -> Result<Vec<Complex<T>>, RootError> {
    let n = h.len();
    let eps = T::epsilon();
    let tiny = T::min_positive_value();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut hi = n;
    let mut iterations = 0usize;
    let max_iterations = 60 * n.max(1);
    let mut total = 0usize;
    while hi > 0 {
        let last = hi - 1;
        // Find the start of the unreduced block ending at `last`.
        let mut lo = last;
        while lo > 0 {
            let scale = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            if h[lo][lo - 1].norm() <= (eps * scale).max(tiny) {
                h[lo][lo - 1] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == last {
            eigenvalues.push(h[last][last]);
            hi -= 1;
            iterations = 0;
            continue;
        }
        iterations += 1;
        total += 1;
        if iterations > max_iterations {
            return Err(RootError::NoConvergence(total));
        }
        let shift = if iterations % 11 == 0 {
            // Exceptional shift to break cycles.
            h[last][last] + Complex::new(h[last][last - 1].norm() * lit(0.75), T::zero())
        } else {
            wilkinson_shift(
                h[last - 1][last - 1],
                h[last - 1][last],
                h[last][last - 1],
                h[last][last],
            )
        };
        qr_step(&mut h, lo, last, shift);
    }
    Ok(eigenvalues)
}

fn wilkinson_shift<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = lit::<T>(0.5);
    let mean = (a + d) * half;
    let disc = ((a - d) * half * ((a - d) * half) + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the window `lo..=hi`.
fn qr_step<T: Real>(h: &mut [Vec<Complex<T>>], lo: usize, hi: usize, shift: Complex<T>) {
    for i in lo..=hi {
        h[i][i] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[k][k];
        let y = h[k + 1][k];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == T::zero() {
            (Complex::new(T::one(), T::zero()), Complex::zero())
        } else {
            (x / r, y / r)
        };
        for j in k..=hi {
            let top = h[k][j];
            let bottom = h[k + 1][j];
            h[k][j] = c.conj() * top + s.conj() * bottom;
            h[k + 1][j] = -s * top + c * bottom;
        }
        rotations.push((c, s));
    }
    for (offset, (c, s)) in rotations.into_iter().enumerate() {
        let k = lo + offset;
        for row in h.iter_mut().take((k + 2).min(hi + 1)).skip(lo) {
            let left = row[k];
            let right = row[k + 1];
            row[k] = left * c + right * s;
            row[k + 1] = -left * s.conj() + right * c.conj();
        }
    }
    for i in lo..=hi {
        h[i][i] += shift;
    }
}

//! Resultants of a monic `α` of degree `n` against `β` of degree below `n`,
//! over an arbitrary commutative algebra.
//!
//! The primary route is the `(2n−1)×(2n−1)` Sylvester-type determinant with
//! `n−1` rows of `α` coefficients followed by `n` rows of `β` coefficients.
//! The determinant of multiplication by `β` on `A[x]/(α)` is kept as an
//! independent cross-check. Both determinants are division free.

use num_complex::Complex;
use num_traits::{Float, FloatConst, One, Zero};

use crate::algebra::{AlgebraError, BanachAlgebra};
use crate::matrix::SquareMatrix;
use crate::poly::{horner, AlgebraPoly, MonicPoly};
use crate::scalar::{factorial, lit};

fn check_beta<A: BanachAlgebra>(alpha: &MonicPoly<A>, beta: &AlgebraPoly<A>) -> Result<(), AlgebraError> {
    if beta.descriptor() != alpha.descriptor() {
        return Err(AlgebraError::DescriptorMismatch);
    }
    let n = alpha.degree();
    match beta.degree() {
        Some(d) if d >= n => Err(AlgebraError::DegreeTooLarge { degree: d, limit: n }),
        _ => Ok(()),
    }
}

/// The Sylvester-type matrix whose determinant is `res(α, β)`.
///
/// Row `i < n−1` holds `1, a_{n−1}, …, a_0` starting at column `i`; row
/// `n−1+i` holds `b_{n−1}, …, b_0` starting at column `i`.
pub fn sylvester_matrix<A: BanachAlgebra>(
    alpha: &MonicPoly<A>,
    beta: &AlgebraPoly<A>,
) -> Result<SquareMatrix<A>, AlgebraError> {
    check_beta(alpha, beta)?;
    let n = alpha.degree();
    let size = 2 * n - 1;
    let d = alpha.descriptor();
    let zero = A::zero(d);
    let alpha_desc: Vec<A> = (0..=n).map(|j| alpha.as_poly().coeff(n - j)).collect();
    let beta_desc: Vec<A> = (0..n).map(|j| beta.coeff(n - 1 - j)).collect();
    Ok(SquareMatrix::from_fn(size, |row, col| {
        let (coeffs, start) = if row + 1 < n {
            (&alpha_desc, row)
        } else {
            (&beta_desc, row + 1 - n)
        };
        if col >= start && col - start < coeffs.len() {
            coeffs[col - start].clone()
        } else {
            zero.clone()
        }
    }))
}

/// `res(α, β)` as the Sylvester-type determinant (Berkowitz, division free).
pub fn resultant<A: BanachAlgebra>(alpha: &MonicPoly<A>, beta: &AlgebraPoly<A>) -> Result<A, AlgebraError> {
    let m = sylvester_matrix(alpha, beta)?;
    Ok(m.determinant(&A::one(alpha.descriptor())))
}

/// Matrix of `y ↦ β·y` on `A[x]/(α)` in the basis `1, x̄, …, x̄^{n−1}`;
/// column `j` holds the reduced coefficients of `β x̄^j`.
pub fn multiplication_matrix<A: BanachAlgebra>(
    alpha: &MonicPoly<A>,
    beta: &AlgebraPoly<A>,
) -> Result<SquareMatrix<A>, AlgebraError> {
    check_beta(alpha, beta)?;
    Ok(multiplication_matrix_unchecked(alpha, &beta.padded(alpha.degree())))
}

pub(crate) fn multiplication_matrix_unchecked<A: BanachAlgebra>(alpha: &MonicPoly<A>, beta: &[A]) -> SquareMatrix<A> {
    let n = alpha.degree();
    let lower = alpha.lower();
    let mut columns: Vec<Vec<A>> = Vec::with_capacity(n);
    let mut v = beta.to_vec();
    for _ in 0..n {
        columns.push(v.clone());
        // v ← x̄·v, using x̄^n = −Σ a_j x̄^j
        let top = v[n - 1].clone();
        let mut next = Vec::with_capacity(n);
        next.push(top.mul_ref(&lower[0]).neg_ref());
        for i in 1..n {
            next.push(v[i - 1].sub_ref(&top.mul_ref(&lower[i])));
        }
        v = next;
    }
    SquareMatrix::from_fn(n, |i, j| columns[j][i].clone())
}

/// `det M_β`, the norm of `β` from `A[x]/(α)` down to `A`.
pub fn resultant_via_multiplication_matrix<A: BanachAlgebra>(
    alpha: &MonicPoly<A>,
    beta: &AlgebraPoly<A>,
) -> Result<A, AlgebraError> {
    let m = multiplication_matrix(alpha, beta)?;
    Ok(m.determinant(&A::one(alpha.descriptor())))
}

/// `P(c) = p_0 + p_1 c + … + p_{n−1} c^{n−1} + c^n`, the resultant as a
/// function of the constant coefficient `c` of `β` with the other
/// coefficients held fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultantPolynomial<A: BanachAlgebra> {
    descriptor: A::Descriptor,
    lower: Vec<A>,
}

impl<A: BanachAlgebra> ResultantPolynomial<A> {
    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// `p_0, …, p_{n−1}`.
    pub fn lower(&self) -> &[A] {
        &self.lower
    }

    /// All coefficients including the unit leading one.
    pub fn full_coeffs(&self) -> Vec<A> {
        let mut c = self.lower.clone();
        c.push(A::one(&self.descriptor));
        c
    }

    pub fn eval(&self, c: &A) -> A {
        horner(&self.full_coeffs(), c, &self.descriptor)
    }

    pub fn eval_scalar(&self, c: Complex<A::Real>) -> A {
        self.eval(&A::from_scalar(&self.descriptor, c))
    }
}

/// Coefficients of `P` by evaluation at the `n+1` points `ρ ζ^i`
/// (`ζ = e^{2πi/(n+1)}`, `ρ = 1 +` the largest coefficient norm) and
/// inverse DFT, which is the Vandermonde solve on those nodes.
pub fn resultant_poly_in_c<A: BanachAlgebra>(
    alpha: &MonicPoly<A>,
    b_tail: &[A],
) -> Result<ResultantPolynomial<A>, AlgebraError> {
    let n = alpha.degree();
    if b_tail.len() + 1 != n {
        return Err(AlgebraError::WrongLength { expected: n - 1, got: b_tail.len() });
    }
    let d = alpha.descriptor();
    if b_tail.iter().any(|b| &b.descriptor() != d) {
        return Err(AlgebraError::DescriptorMismatch);
    }
    let size = alpha
        .lower()
        .iter()
        .chain(b_tail)
        .fold(A::Real::zero(), |m, a| m.max(a.norm()));
    let radius = A::Real::one() + size;
    let nodes = n + 1;
    let turn = A::Real::TAU() / lit(nodes as f64);
    let mut values = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let c = Complex::from_polar(radius, turn * lit(i as f64));
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(A::from_scalar(d, c));
        coeffs.extend(b_tail.iter().cloned());
        let beta = AlgebraPoly::new(d.clone(), coeffs)?;
        values.push(resultant(alpha, &beta)?);
    }
    let inv_nodes = lit::<A::Real>(1.0 / nodes as f64);
    let lower = (0..n)
        .map(|j| {
            let mut acc = A::zero(d);
            for (i, v) in values.iter().enumerate() {
                let w = Complex::from_polar(
                    radius.powi(-(j as i32)) * inv_nodes,
                    -turn * lit((i * j) as f64),
                );
                acc = acc.add_ref(&v.scale(w));
            }
            acc
        })
        .collect();
    Ok(ResultantPolynomial { descriptor: d.clone(), lower })
}

/// A polynomial map `A → A` with algebra coefficients, lowest first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap<A: BanachAlgebra> {
    descriptor: A::Descriptor,
    coeffs: Vec<A>,
}

impl<A: BanachAlgebra> PolyMap<A> {
    pub fn coeffs(&self) -> &[A] {
        &self.coeffs
    }

    pub fn eval(&self, c: &A) -> A {
        horner(&self.coeffs, c, &self.descriptor)
    }
}

/// `P^{(0)}, …, P^{(n−1)}` with `P^{(k)}(c) = Σ_{j≥k} j!/(j−k)! p_j c^{j−k}`.
pub fn formal_derivatives<A: BanachAlgebra>(p: &ResultantPolynomial<A>) -> Vec<PolyMap<A>> {
    let full = p.full_coeffs();
    let n = p.degree();
    (0..n)
        .map(|k| PolyMap {
            descriptor: p.descriptor.clone(),
            coeffs: (k..=n)
                .map(|j| {
                    let factor: A::Real = factorial::<A::Real>(j) / factorial::<A::Real>(j - k);
                    full[j].scale(Complex::new(factor, A::Real::zero()))
                })
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{FiniteElement, FiniteSpace};
    use crate::roots::polynomial_roots;

    type F = FiniteElement<f64>;
    const D1: FiniteSpace = FiniteSpace { points: 1 };

    fn s(x: f64) -> F {
        F::from_real(&[x])
    }

    fn monic(lower: &[f64]) -> MonicPoly<F> {
        MonicPoly::from_lower(D1, lower.iter().map(|&x| s(x)).collect()).unwrap()
    }

    fn poly(cs: &[f64]) -> AlgebraPoly<F> {
        AlgebraPoly::new(D1, cs.iter().map(|&x| s(x)).collect()).unwrap()
    }

    fn val(x: &F) -> Complex<f64> {
        x.coordinate(0)
    }

    #[test]
    fn square_root_case() {
        // α = x² − a0, β = b0 + b1 x  ⇒  b0² − a0 b1²
        let (a0, b0, b1) = (3.0, 2.0, -5.0);
        let r = resultant(&monic(&[-a0, 0.0]), &poly(&[b0, b1])).unwrap();
        assert_eq!(val(&r).re, b0 * b0 - a0 * b1 * b1);
    }

    #[test]
    fn zero_and_unit_beta() {
        for n in 1..5 {
            let alpha = monic(&vec![0.7; n]);
            assert!(resultant(&alpha, &AlgebraPoly::zero(D1)).unwrap().is_zero());
            assert_eq!(val(&resultant(&alpha, &poly(&[1.0])).unwrap()).re, 1.0);
            assert_eq!(val(&resultant_via_multiplication_matrix(&alpha, &poly(&[1.0])).unwrap()).re, 1.0);
        }
    }

    #[test]
    fn x_against_x_squared_minus_one() {
        let alpha = monic(&[-1.0, 0.0]);
        let beta = poly(&[0.0, 1.0]);
        let m = sylvester_matrix(&alpha, &beta).unwrap();
        let entries: Vec<f64> = m.entries().iter().map(|e| val(e).re).collect();
        assert_eq!(entries, vec![1.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(val(&resultant(&alpha, &beta).unwrap()).re, -1.0);
        let mm = multiplication_matrix(&alpha, &beta).unwrap();
        let entries: Vec<f64> = mm.entries().iter().map(|e| val(e).re).collect();
        assert_eq!(entries, vec![0.0, 1.0, 1.0, 0.0]);
        assert_eq!(val(&resultant_via_multiplication_matrix(&alpha, &beta).unwrap()).re, -1.0);
    }

    #[test]
    fn degree_one_alpha() {
        let r = resultant(&monic(&[4.0]), &poly(&[-2.5])).unwrap();
        assert_eq!(val(&r).re, -2.5);
    }

    #[test]
    fn rejects_unreduced_beta() {
        let err = resultant(&monic(&[-1.0, 0.0]), &poly(&[0.0, 0.0, 1.0])).unwrap_err();
        assert_eq!(err, AlgebraError::DegreeTooLarge { degree: 2, limit: 2 });
        let other = AlgebraPoly::constant(F::from_real(&[1.0, 2.0]));
        assert_eq!(resultant(&monic(&[1.0]), &other).unwrap_err(), AlgebraError::DescriptorMismatch);
    }

    #[test]
    fn matches_product_over_roots() {
        // α = (x − 1)(x + 2)(x − 0.5i), β = 3 − x + 2x²
        let roots = [Complex::new(1.0, 0.0), Complex::new(-2.0, 0.0), Complex::new(0.0, 0.5)];
        let mut coeffs = vec![Complex::new(1.0, 0.0)];
        for &r in &roots {
            let mut next = vec![Complex::new(0.0, 0.0); coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= r * c;
            }
            coeffs = next;
        }
        let alpha = MonicPoly::from_lower(
            D1,
            coeffs[..3].iter().map(|&c| F::new(vec![c])).collect(),
        )
        .unwrap();
        let beta = poly(&[3.0, -1.0, 2.0]);
        let oracle: Complex<f64> = roots.iter().map(|&z| 3.0 - z + 2.0 * z * z).product();
        assert!((val(&resultant(&alpha, &beta).unwrap()) - oracle).norm() < 1e-12);
        let found = polynomial_roots(&coeffs).unwrap();
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn poly_in_c_square_root_case() {
        let (a0, b1) = (2.0, 3.0);
        let p = resultant_poly_in_c(&monic(&[-a0, 0.0]), &[s(b1)]).unwrap();
        assert!((val(&p.lower()[0]).re - (-a0 * b1 * b1)).abs() < 1e-12);
        assert!(val(&p.lower()[0]).im.abs() < 1e-12);
        assert!(val(&p.lower()[1]).norm() < 1e-12);
    }

    #[test]
    fn poly_in_c_with_zero_tail_is_c_to_the_n() {
        for n in 1..5 {
            let alpha = monic(&(0..n).map(|j| 0.3 * j as f64 - 0.4).collect::<Vec<_>>());
            let tail = vec![s(0.0); n - 1];
            let p = resultant_poly_in_c(&alpha, &tail).unwrap();
            for c in p.lower() {
                assert!(val(c).norm() < 1e-12, "n = {n}");
            }
        }
        let p = resultant_poly_in_c(&monic(&[5.0]), &[]).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(val(&p.lower()[0]).norm() < 1e-12);
    }

    #[test]
    fn derivatives_of_square_root_polynomial() {
        let p = resultant_poly_in_c(&monic(&[-2.0, 0.0]), &[s(3.0)]).unwrap();
        let ds = formal_derivatives(&p);
        assert_eq!(ds.len(), 2);
        assert!((val(&ds[1].eval(&s(3.0))) - Complex::new(6.0, 0.0)).norm() < 1e-12);
        assert!((val(&ds[0].eval(&s(3.0))) - Complex::new(9.0 - 18.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn top_derivative_is_affine() {
        for n in 1..6 {
            let alpha = monic(&vec![1.5; n]);
            let tail = vec![s(-0.5); n - 1];
            let p = resultant_poly_in_c(&alpha, &tail).unwrap();
            let ds = formal_derivatives(&p);
            assert_eq!(ds.len(), n);
            let top = ds[n - 1].eval(&s(2.0));
            let want = Complex::new(factorial::<f64>(n) * 2.0, 0.0)
                + val(&p.lower()[n - 1]) * factorial::<f64>(n - 1);
            assert!((val(&top) - want).norm() < 1e-9 * want.norm().max(1.0), "n = {n}");
        }
    }
}

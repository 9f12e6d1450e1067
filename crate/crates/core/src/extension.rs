//! The Arens–Hoffman extension `A_α = A[x]/(α)` of a Banach algebra `A` by a
//! monic `α` of degree `n`, normed by `‖β‖ = Σ ‖b_j‖ t^j` on the canonical
//! representative of degree below `n`.
//!
//! `A_α` is itself a [`BanachAlgebra`], so extensions nest into towers.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use rand::Rng;

use crate::algebra::{
    inverse_residual, AlgebraError, BanachAlgebra, InvertCertificate, InvertError, InvertResult, Tolerances,
};
use crate::poly::{convolve, reduce_coeffs, AlgebraPoly, MonicPoly};
use crate::resultant::{multiplication_matrix_unchecked, resultant, sylvester_matrix};
use crate::ring::Ring;
use crate::scalar::{lit, to_f64};

/// Multiplier applied to the smallest admissible norm parameter.
pub const NORM_PARAMETER_SAFETY: f64 = 1.25;

#[derive(Clone, Debug, PartialEq)]
pub struct AhDescriptor<A: BanachAlgebra> {
    alpha: MonicPoly<A>,
    t: A::Real,
}

impl<A: BanachAlgebra> AhDescriptor<A> {
    pub fn base(&self) -> &A::Descriptor {
        self.alpha.descriptor()
    }

    pub fn alpha(&self) -> &MonicPoly<A> {
        &self.alpha
    }

    pub fn t(&self) -> A::Real {
        self.t
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }
}

/// Smallest `t ≥ 1` with `t^n ≥ Σ_j a_j t^j`, where `a_j ≥ 0` are the norms
/// of the lower coefficients of a degree-`n` monic polynomial.
///
/// `t ↦ Σ a_j t^{j−n}` is decreasing, so the admissible set is `[t*, ∞)` and
/// bisection on `[1, 1 + Σ a_j]` finds `t*`. The upper end of the final
/// bracket is returned, so the result is always admissible.
pub fn minimal_norm_parameter<T: crate::scalar::Real>(norms: &[T]) -> T {
    let n = norms.len() as i32;
    let excess = |t: T| {
        norms
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (j, a)| acc + *a * t.powi(j as i32 - n))
            - T::one()
    };
    if excess(T::one()) <= T::zero() {
        return T::one();
    }
    let mut lo = T::one();
    let mut hi = T::one() + norms.iter().fold(T::zero(), |acc, a| acc + *a);
    for _ in 0..200 {
        let mid = (lo + hi) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) <= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Whether `t^n ≥ Σ ‖a_j‖ t^j`, with a relative slack of `1e−12`.
pub fn is_admissible_norm_parameter<A: BanachAlgebra>(alpha: &MonicPoly<A>, t: A::Real) -> bool {
    if !(t.is_finite() && t > A::Real::zero()) {
        return false;
    }
    let n = alpha.degree() as i32;
    let rhs = alpha
        .lower()
        .iter()
        .enumerate()
        .fold(A::Real::zero(), |acc, (j, a)| acc + a.norm() * t.powi(j as i32));
    t.powi(n) >= rhs * (A::Real::one() - lit::<A::Real>(1e-12))
}

/// Builds `A_α`. Without `t`, uses `1.25` times the smallest admissible
/// parameter (floored at `1`); a supplied `t` must be admissible.
pub fn make_extension<A: BanachAlgebra>(
    base: &A::Descriptor,
    alpha: MonicPoly<A>,
    t: Option<A::Real>,
) -> Result<Arc<AhDescriptor<A>>, AlgebraError> {
    if alpha.descriptor() != base {
        return Err(AlgebraError::DescriptorMismatch);
    }
    let t = match t {
        Some(t) => {
            if !is_admissible_norm_parameter(&alpha, t) {
                return Err(AlgebraError::InvalidParameter(format!(
                    "norm parameter t = {} violates t^n ≥ Σ ‖a_j‖ t^j",
                    to_f64(t)
                )));
            }
            t
        }
        None => {
            let norms: Vec<A::Real> = alpha.lower().iter().map(|a| a.norm()).collect();
            minimal_norm_parameter(&norms) * lit(NORM_PARAMETER_SAFETY)
        }
    };
    Ok(Arc::new(AhDescriptor { alpha, t }))
}

/// Why an element of `A_α` is not invertible: its resultant, and the base
/// algebra's reason that the resultant is not invertible.
#[derive(Clone, Debug)]
pub struct AhWitness<A: BanachAlgebra> {
    pub resultant: A,
    pub base: A::Witness,
}

/// `β(x̄) = Σ b_j x̄^j` with exactly `n` stored coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AhElement<A: BanachAlgebra> {
    desc: Arc<AhDescriptor<A>>,
    rep: Vec<A>,
}

impl<A: BanachAlgebra> AhElement<A> {
    /// Reduces an arbitrary coefficient list modulo `α`.
    pub fn from_coeffs(desc: &Arc<AhDescriptor<A>>, coeffs: Vec<A>) -> Result<Self, AlgebraError> {
        if coeffs.iter().any(|c| &c.descriptor() != desc.base()) {
            return Err(AlgebraError::DescriptorMismatch);
        }
        let (_, rep) = reduce_coeffs(&coeffs, &desc.alpha);
        Ok(AhElement { desc: desc.clone(), rep })
    }

    pub fn from_poly(desc: &Arc<AhDescriptor<A>>, poly: &AlgebraPoly<A>) -> Result<Self, AlgebraError> {
        if poly.descriptor() != desc.base() {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Self::from_coeffs(desc, poly.coeffs().to_vec())
    }

    /// The constant `a`; isometric since `t⁰ = 1`.
    pub fn embed(a: &A, desc: &Arc<AhDescriptor<A>>) -> Result<Self, AlgebraError> {
        Self::from_coeffs(desc, vec![a.clone()])
    }

    /// The coset `x̄` of the indeterminate.
    pub fn x_bar(desc: &Arc<AhDescriptor<A>>) -> Self {
        let d = desc.base();
        AhElement::from_coeffs(desc, vec![A::zero(d), A::one(d)]).expect("coefficients share the base")
    }

    pub fn ah_descriptor(&self) -> &Arc<AhDescriptor<A>> {
        &self.desc
    }

    /// `b_0, …, b_{n−1}`.
    pub fn rep(&self) -> &[A] {
        &self.rep
    }

    pub fn coeff(&self, j: usize) -> &A {
        &self.rep[j]
    }

    pub fn as_poly(&self) -> AlgebraPoly<A> {
        AlgebraPoly::new(self.desc.base().clone(), self.rep.clone()).expect("coefficients share the base")
    }

    /// The same element with `b_0` replaced.
    pub fn with_constant(&self, b0: A) -> Result<Self, AlgebraError> {
        if &b0.descriptor() != self.desc.base() {
            return Err(AlgebraError::DescriptorMismatch);
        }
        let mut rep = self.rep.clone();
        rep[0] = b0;
        Ok(AhElement { desc: self.desc.clone(), rep })
    }

    /// `res(α, β)` for this element's representative.
    pub fn resultant(&self) -> A {
        resultant(&self.desc.alpha, &self.as_poly()).expect("representative is reduced")
    }

    /// Bound on the rounding error of [`AhElement::resultant`].
    pub fn resultant_error_bound(&self) -> A::Real {
        sylvester_matrix(&self.desc.alpha, &self.as_poly())
            .expect("representative is reduced")
            .determinant_error_bound()
    }

    fn map(&self, f: impl Fn(&A) -> A) -> Self {
        AhElement {
            desc: self.desc.clone(),
            rep: self.rep.iter().map(f).collect(),
        }
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&A, &A) -> A) -> Self {
        AhElement {
            desc: self.desc.clone(),
            rep: self.rep.iter().zip(&rhs.rep).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn constant_in(desc: &Arc<AhDescriptor<A>>, c: A) -> Self {
        let mut rep = vec![A::zero(desc.base()); desc.degree()];
        rep[0] = c;
        AhElement { desc: desc.clone(), rep }
    }
}

impl<A: BanachAlgebra> Ring for AhElement<A> {
    fn zero_like(&self) -> Self {
        Self::constant_in(&self.desc, A::zero(self.desc.base()))
    }
    fn one_like(&self) -> Self {
        Self::constant_in(&self.desc, A::one(self.desc.base()))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.zip(rhs, A::add_ref)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.zip(rhs, A::sub_ref)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let product = convolve(&self.rep, &rhs.rep, self.desc.base());
        let (_, rep) = reduce_coeffs(&product, &self.desc.alpha);
        AhElement { desc: self.desc.clone(), rep }
    }
    fn neg_ref(&self) -> Self {
        self.map(A::neg_ref)
    }
}

impl<A: BanachAlgebra> BanachAlgebra for AhElement<A> {
    type Real = A::Real;
    type Descriptor = Arc<AhDescriptor<A>>;
    type Witness = AhWitness<A>;

    fn descriptor(&self) -> Self::Descriptor {
        self.desc.clone()
    }

    fn zero(d: &Self::Descriptor) -> Self {
        Self::constant_in(d, A::zero(d.base()))
    }

    fn one(d: &Self::Descriptor) -> Self {
        Self::constant_in(d, A::one(d.base()))
    }

    fn from_scalar(d: &Self::Descriptor, c: Complex<A::Real>) -> Self {
        Self::constant_in(d, A::from_scalar(d.base(), c))
    }

    fn scale(&self, c: Complex<A::Real>) -> Self {
        self.map(|a| a.scale(c))
    }

    fn norm(&self) -> A::Real {
        let t = self.desc.t;
        self.rep
            .iter()
            .rev()
            .fold(A::Real::zero(), |acc, b| acc * t + b.norm())
    }

    fn is_zero(&self) -> bool {
        self.rep.iter().all(A::is_zero)
    }

    /// Invertible iff `res(α, β)` is invertible in the base. Every root of
    /// `α` (in any character) has modulus at most `t`, so
    /// `‖res‖ ≤ max(scale, ‖β‖)^n` is the scale the resultant is judged at.
    /// The inverse is `det(M_β)⁻¹ · adj(M_β) e_0`, refined by Newton steps.
    fn try_invert_at_scale(&self, scale: A::Real, tol: &Tolerances<A::Real>) -> InvertResult<Self> {
        let n = self.desc.degree();
        let base = self.desc.base();
        // Inputs known only to `scale` carry that much more error into the resultant.
        let norm = self.norm();
        let inflation = if norm > A::Real::zero() {
            (scale / norm).max(A::Real::one()).powi(n as i32)
        } else {
            A::Real::one()
        };
        // Coordinates below the rounding error of the resultant are zero.
        let magnitude = self.resultant_error_bound() * inflation / tol.singular_rel;
        let res = self.resultant();
        if let Err(e) = res.try_invert_at_scale(magnitude, tol) {
            return Err(match e {
                InvertError::NotInvertible(w) => InvertError::NotInvertible(AhWitness { resultant: res, base: w }),
                InvertError::NotRepresentable { terms, residual } => InvertError::NotRepresentable { terms, residual },
                InvertError::CertificationFailure { residual } => InvertError::CertificationFailure { residual },
            });
        }
        let m = multiplication_matrix_unchecked(&self.desc.alpha, &self.rep);
        let one = A::one(base);
        let mut e0 = vec![A::zero(base); n];
        e0[0] = one.clone();
        let (det, adj_col) = m.det_and_adjugate_apply(&e0, &one);
        let det_inv = match det.try_invert_at_scale(magnitude, tol) {
            Ok(cert) => cert.inverse,
            Err(InvertError::NotInvertible(_)) => {
                // det M_β equals the resultant; disagreement is a conditioning failure.
                return Err(InvertError::CertificationFailure { residual: A::Real::infinity() });
            }
            Err(InvertError::NotRepresentable { terms, residual }) => {
                return Err(InvertError::NotRepresentable { terms, residual })
            }
            Err(InvertError::CertificationFailure { residual }) => {
                return Err(InvertError::CertificationFailure { residual })
            }
        };
        let mut inverse = AhElement {
            desc: self.desc.clone(),
            rep: adj_col.iter().map(|c| c.mul_ref(&det_inv)).collect(),
        };
        let mut residual = inverse_residual(self, &inverse);
        for _ in 0..2 {
            if residual < tol.invert * lit(1e-3) {
                break;
            }
            let two = Self::from_scalar(&self.desc, Complex::new(lit(2.0), A::Real::zero()));
            let refined = inverse.mul_ref(&two.sub_ref(&self.mul_ref(&inverse)));
            let refined_residual = inverse_residual(self, &refined);
            if refined_residual < residual {
                inverse = refined;
                residual = refined_residual;
            } else {
                break;
            }
        }
        if residual < tol.invert {
            Ok(InvertCertificate { inverse, residual })
        } else {
            Err(InvertError::CertificationFailure { residual })
        }
    }

    /// Coefficient `j` moves by less than `radius / (n t^j)`.
    fn sample_ball<R: Rng + ?Sized>(&self, radius: A::Real, rng: &mut R) -> Self {
        let n = lit::<A::Real>(self.desc.degree() as f64);
        let t = self.desc.t;
        AhElement {
            desc: self.desc.clone(),
            rep: self
                .rep
                .iter()
                .enumerate()
                .map(|(j, b)| b.sample_ball(radius / (n * t.powi(j as i32)), rng))
                .collect(),
        }
    }
}

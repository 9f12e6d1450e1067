//! The commutative unital Banach algebra contract.
//!
//! Elements are immutable values that carry their algebra descriptor.
//! Ring operations from [`Ring`] assume matching descriptors; the `checked_*`
//! methods compare descriptors first and are what public entry points use.

use std::fmt::Debug;

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ring::Ring;
use crate::scalar::{lit, Real};

/// Numerical cut-offs. The defaults are the documented workbench values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances<T> {
    /// Maximum accepted `‖x·x⁻¹ − 1‖` for an inverse certificate.
    pub invert: T,
    /// Finite-space coordinates with modulus at most this times the scale are zero.
    pub singular_rel: T,
    /// Relative band around annulus boundaries treated as on-spectrum.
    pub annulus_rel: T,
    /// Largest truncated Laurent expansion tried for a Beurling inverse.
    pub max_series_terms: usize,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            invert: lit(1e-9),
            singular_rel: lit(1e-12),
            annulus_rel: lit(1e-9),
            max_series_terms: 1 << 16,
        }
    }
}

impl<T: Real> Tolerances<T> {
    pub fn with_invert(mut self, invert: T) -> Self {
        self.invert = invert;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different algebras")]
    DescriptorMismatch,
    #[error("polynomial is not monic of degree at least one")]
    NotMonic,
    #[error("polynomial of degree {degree} must first be reduced below {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("transform vanishes on the circle of radius {radius}")]
    BoundaryZero { radius: f64 },
    #[error("root finding failed: {0}")]
    Roots(#[from] crate::roots::RootError),
}

/// Witness that `x` is invertible: `x · inverse ≈ 1` with the given residual.
#[derive(Clone, Debug, PartialEq)]
pub struct InvertCertificate<A: BanachAlgebra> {
    pub inverse: A,
    pub residual: A::Real,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum InvertError<W: Debug, T: Debug> {
    /// The element is not invertible; `W` explains why.
    #[error("element is not invertible: {0:?}")]
    NotInvertible(W),
    /// Invertible, but no truncated representation within the term budget met the tolerance.
    #[error("inverse not representable within {terms} terms (residual {residual:?})")]
    NotRepresentable { terms: usize, residual: T },
    /// The criterion says invertible but the computed inverse failed its residual check.
    #[error("inverse failed certification (residual {residual:?})")]
    CertificationFailure { residual: T },
}

impl<W: Debug, T: Debug> InvertError<W, T> {
    pub fn is_not_invertible(&self) -> bool {
        matches!(self, InvertError::NotInvertible(_))
    }
}

pub type InvertResult<A> = Result<
    InvertCertificate<A>,
    InvertError<<A as BanachAlgebra>::Witness, <A as BanachAlgebra>::Real>,
>;

/// A concrete commutative unital Banach algebra over `ℂ`.
pub trait BanachAlgebra: Ring + PartialEq + Send + Sync {
    type Real: Real;
    type Descriptor: Clone + Debug + PartialEq + Send + Sync;
    type Witness: Clone + Debug + Send + Sync;

    fn descriptor(&self) -> Self::Descriptor;
    fn zero(d: &Self::Descriptor) -> Self;
    fn one(d: &Self::Descriptor) -> Self;
    fn from_scalar(d: &Self::Descriptor, c: Complex<Self::Real>) -> Self;
    fn scale(&self, c: Complex<Self::Real>) -> Self;
    fn norm(&self) -> Self::Real;
    fn is_zero(&self) -> bool;

    /// Invertibility test where "numerically zero" is judged against
    /// `scale` (the magnitude of the computation that produced `self`).
    fn try_invert_at_scale(&self, scale: Self::Real, tol: &Tolerances<Self::Real>) -> InvertResult<Self>;

    /// Returns a random element `y` with `‖y − self‖ < radius`.
    fn sample_ball<R: Rng + ?Sized>(&self, radius: Self::Real, rng: &mut R) -> Self;

    fn try_invert(&self, tol: &Tolerances<Self::Real>) -> InvertResult<Self> {
        self.try_invert_at_scale(self.norm(), tol)
    }

    fn compatible(&self, other: &Self) -> bool {
        self.descriptor() == other.descriptor()
    }

    fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.ensure_compatible(rhs)?;
        Ok(self.add_ref(rhs))
    }

    fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.ensure_compatible(rhs)?;
        Ok(self.sub_ref(rhs))
    }

    fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.ensure_compatible(rhs)?;
        Ok(self.mul_ref(rhs))
    }

    /// `‖self − other‖`.
    fn distance(&self, other: &Self) -> Result<Self::Real, AlgebraError> {
        Ok(self.checked_sub(other)?.norm())
    }

    fn ensure_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }

    /// `self` raised to a non-negative integer power.
    fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// Residual `‖x · y − 1‖` of a candidate inverse.
pub fn inverse_residual<A: BanachAlgebra>(x: &A, y: &A) -> A::Real {
    x.mul_ref(y).sub_ref(&x.one_like()).norm()
}

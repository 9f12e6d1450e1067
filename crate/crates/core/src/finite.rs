//! `C(X)` for a finite set `X` of `points` points: `ℂ^points` with
//! componentwise product and the sup norm.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{inverse_residual, BanachAlgebra, InvertCertificate, InvertError, InvertResult, Tolerances};
use crate::ring::Ring;
use crate::scalar::{sample_disc, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSpace {
    pub points: usize,
}

/// The first coordinate that is numerically zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroCoordinate {
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteElement<T> {
    values: Vec<Complex<T>>,
}

impl<T: Real> FiniteElement<T> {
    /// Panics on an empty vector: `ℂ⁰` has no unit of norm one.
    pub fn new(values: Vec<Complex<T>>) -> Self {
        assert!(!values.is_empty(), "finite-space algebra needs at least one point");
        FiniteElement { values }
    }

    pub fn from_real(values: &[T]) -> Self {
        Self::new(values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn constant(points: usize, c: Complex<T>) -> Self {
        Self::new(vec![c; points])
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn coordinate(&self, i: usize) -> Complex<T> {
        self.values[i]
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        assert_eq!(self.values.len(), rhs.values.len(), "finite-space dimension mismatch");
        FiniteElement {
            values: self.values.iter().zip(&rhs.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl<T: Real> Ring for FiniteElement<T> {
    fn zero_like(&self) -> Self {
        FiniteElement::constant(self.points(), Complex::zero())
    }
    fn one_like(&self) -> Self {
        FiniteElement::constant(self.points(), Complex::new(T::one(), T::zero()))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a + b)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a - b)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a * b)
    }
    fn neg_ref(&self) -> Self {
        FiniteElement {
            values: self.values.iter().map(|&a| -a).collect(),
        }
    }
}

impl<T: Real> BanachAlgebra for FiniteElement<T> {
    type Real = T;
    type Descriptor = FiniteSpace;
    type Witness = ZeroCoordinate;

    fn descriptor(&self) -> FiniteSpace {
        FiniteSpace { points: self.points() }
    }

    fn zero(d: &FiniteSpace) -> Self {
        Self::constant(d.points, Complex::zero())
    }

    fn one(d: &FiniteSpace) -> Self {
        Self::constant(d.points, Complex::new(T::one(), T::zero()))
    }

    fn from_scalar(d: &FiniteSpace, c: Complex<T>) -> Self {
        Self::constant(d.points, c)
    }

    fn scale(&self, c: Complex<T>) -> Self {
        FiniteElement {
            values: self.values.iter().map(|&a| a * c).collect(),
        }
    }

    fn norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Invertible iff every coordinate exceeds `singular_rel · max(scale, ‖x‖)`.
    fn try_invert_at_scale(&self, scale: T, tol: &Tolerances<T>) -> InvertResult<Self> {
        let threshold = tol.singular_rel * scale.max(self.norm());
        if let Some(index) = self.values.iter().position(|v| v.norm() <= threshold) {
            return Err(InvertError::NotInvertible(ZeroCoordinate { index }));
        }
        let inverse = FiniteElement {
            values: self.values.iter().map(|v| v.inv()).collect(),
        };
        let residual = inverse_residual(self, &inverse);
        if residual < tol.invert {
            Ok(InvertCertificate { inverse, residual })
        } else {
            Err(InvertError::CertificationFailure { residual })
        }
    }

    fn sample_ball<R: Rng + ?Sized>(&self, radius: T, rng: &mut R) -> Self {
        FiniteElement {
            values: self.values.iter().map(|&v| v + sample_disc(radius, rng)).collect(),
        }
    }
}

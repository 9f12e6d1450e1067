//! A closed sum of the concrete algebras, so that towers whose depth is only
//! known at run time (JSON input) can be built and used through the same
//! generic code paths.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use crate::algebra::{AlgebraError, BanachAlgebra, InvertCertificate, InvertError, InvertResult, Tolerances};
use crate::beurling::{LaurentElement, SpectrumWitness, WeightSequence};
use crate::extension::{make_extension, AhDescriptor, AhElement, AhWitness};
use crate::finite::{FiniteElement, FiniteSpace, ZeroCoordinate};
use crate::poly::MonicPoly;
use crate::ring::Ring;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub enum AnyDescriptor<T: Real> {
    Finite(FiniteSpace),
    Beurling(Arc<WeightSequence<T>>),
    Extension(Arc<AhDescriptor<AnyElement<T>>>),
}

impl<T: Real> AnyDescriptor<T> {
    /// Complex dimension, or `None` for the infinite-dimensional Beurling algebras.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            AnyDescriptor::Finite(s) => Some(s.points),
            AnyDescriptor::Beurling(_) => None,
            AnyDescriptor::Extension(d) => d.base().dimension().map(|k| k * d.degree()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyDescriptor::Finite(_) => "finite_space",
            AnyDescriptor::Beurling(_) => "beurling",
            AnyDescriptor::Extension(_) => "arens_hoffman",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyElement<T: Real> {
    Finite(FiniteElement<T>),
    Laurent(LaurentElement<T>),
    Extension(AhElement<AnyElement<T>>),
}

#[derive(Clone, Debug)]
pub enum AnyWitness<T: Real> {
    ZeroCoordinate(ZeroCoordinate),
    Spectrum(SpectrumWitness<T>),
    Resultant(Box<AhWitness<AnyElement<T>>>),
}

fn lift<A, T, W>(
    r: Result<InvertCertificate<A>, InvertError<W, T>>,
    wrap: impl Fn(A) -> AnyElement<T>,
    witness: impl Fn(W) -> AnyWitness<T>,
) -> InvertResult<AnyElement<T>>
where
    A: BanachAlgebra<Real = T>,
    T: Real,
    W: std::fmt::Debug,
{
    match r {
        Ok(c) => Ok(InvertCertificate { inverse: wrap(c.inverse), residual: c.residual }),
        Err(InvertError::NotInvertible(w)) => Err(InvertError::NotInvertible(witness(w))),
        Err(InvertError::NotRepresentable { terms, residual }) => Err(InvertError::NotRepresentable { terms, residual }),
        Err(InvertError::CertificationFailure { residual }) => Err(InvertError::CertificationFailure { residual }),
    }
}

macro_rules! same_variant {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (AnyElement::Finite($x), AnyElement::Finite($y)) => AnyElement::Finite($body),
            (AnyElement::Laurent($x), AnyElement::Laurent($y)) => AnyElement::Laurent($body),
            (AnyElement::Extension($x), AnyElement::Extension($y)) => AnyElement::Extension($body),
            _ => panic!("ring operation on elements of different algebra kinds"),
        }
    };
}

macro_rules! each_variant {
    ($a:expr, |$x:ident| $body:expr) => {
        match $a {
            AnyElement::Finite($x) => AnyElement::Finite($body),
            AnyElement::Laurent($x) => AnyElement::Laurent($body),
            AnyElement::Extension($x) => AnyElement::Extension($body),
        }
    };
}

impl<T: Real> Ring for AnyElement<T> {
    fn zero_like(&self) -> Self {
        each_variant!(self, |x| x.zero_like())
    }
    fn one_like(&self) -> Self {
        each_variant!(self, |x| x.one_like())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        same_variant!(self, rhs, |x, y| x.add_ref(y))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        same_variant!(self, rhs, |x, y| x.sub_ref(y))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        same_variant!(self, rhs, |x, y| x.mul_ref(y))
    }
    fn neg_ref(&self) -> Self {
        each_variant!(self, |x| x.neg_ref())
    }
}

impl<T: Real> BanachAlgebra for AnyElement<T> {
    type Real = T;
    type Descriptor = AnyDescriptor<T>;
    type Witness = AnyWitness<T>;

    fn descriptor(&self) -> AnyDescriptor<T> {
        match self {
            AnyElement::Finite(x) => AnyDescriptor::Finite(x.descriptor()),
            AnyElement::Laurent(x) => AnyDescriptor::Beurling(x.descriptor()),
            AnyElement::Extension(x) => AnyDescriptor::Extension(x.descriptor()),
        }
    }

    fn zero(d: &AnyDescriptor<T>) -> Self {
        match d {
            AnyDescriptor::Finite(s) => AnyElement::Finite(FiniteElement::zero(s)),
            AnyDescriptor::Beurling(w) => AnyElement::Laurent(LaurentElement::zero(w)),
            AnyDescriptor::Extension(e) => AnyElement::Extension(AhElement::zero(e)),
        }
    }

    fn one(d: &AnyDescriptor<T>) -> Self {
        match d {
            AnyDescriptor::Finite(s) => AnyElement::Finite(FiniteElement::one(s)),
            AnyDescriptor::Beurling(w) => AnyElement::Laurent(LaurentElement::one(w)),
            AnyDescriptor::Extension(e) => AnyElement::Extension(AhElement::one(e)),
        }
    }

    fn from_scalar(d: &AnyDescriptor<T>, c: Complex<T>) -> Self {
        match d {
            AnyDescriptor::Finite(s) => AnyElement::Finite(FiniteElement::from_scalar(s, c)),
            AnyDescriptor::Beurling(w) => AnyElement::Laurent(LaurentElement::from_scalar(w, c)),
            AnyDescriptor::Extension(e) => AnyElement::Extension(AhElement::from_scalar(e, c)),
        }
    }

    fn scale(&self, c: Complex<T>) -> Self {
        each_variant!(self, |x| x.scale(c))
    }

    fn norm(&self) -> T {
        match self {
            AnyElement::Finite(x) => x.norm(),
            AnyElement::Laurent(x) => x.norm(),
            AnyElement::Extension(x) => x.norm(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            AnyElement::Finite(x) => x.is_zero(),
            AnyElement::Laurent(x) => x.is_zero(),
            AnyElement::Extension(x) => x.is_zero(),
        }
    }

    fn try_invert_at_scale(&self, scale: T, tol: &Tolerances<T>) -> InvertResult<Self> {
        match self {
            AnyElement::Finite(x) => lift(x.try_invert_at_scale(scale, tol), AnyElement::Finite, AnyWitness::ZeroCoordinate),
            AnyElement::Laurent(x) => lift(x.try_invert_at_scale(scale, tol), AnyElement::Laurent, AnyWitness::Spectrum),
            AnyElement::Extension(x) => lift(x.try_invert_at_scale(scale, tol), AnyElement::Extension, |w| {
                AnyWitness::Resultant(Box::new(w))
            }),
        }
    }

    fn sample_ball<R: Rng + ?Sized>(&self, radius: T, rng: &mut R) -> Self {
        each_variant!(self, |x| x.sample_ball(radius, rng))
    }
}

impl<T: Real> From<FiniteElement<T>> for AnyElement<T> {
    fn from(x: FiniteElement<T>) -> Self {
        AnyElement::Finite(x)
    }
}

impl<T: Real> From<LaurentElement<T>> for AnyElement<T> {
    fn from(x: LaurentElement<T>) -> Self {
        AnyElement::Laurent(x)
    }
}

impl<T: Real> From<AhElement<AnyElement<T>>> for AnyElement<T> {
    fn from(x: AhElement<AnyElement<T>>) -> Self {
        AnyElement::Extension(x)
    }
}

/// Iterated extension: each `α` must be monic over the algebra built so far.
/// An empty list returns `base` unchanged.
pub fn tower<T: Real>(
    base: AnyDescriptor<T>,
    alphas: &[MonicPoly<AnyElement<T>>],
) -> Result<AnyDescriptor<T>, AlgebraError> {
    alphas.iter().try_fold(base, |d, alpha| {
        Ok(AnyDescriptor::Extension(make_extension(&d, alpha.clone(), None)?))
    })
}

//! Polynomials with coefficients in a Banach algebra, lowest degree first.

use crate::algebra::{AlgebraError, BanachAlgebra};

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPoly<A: BanachAlgebra> {
    descriptor: A::Descriptor,
    coeffs: Vec<A>,
}

impl<A: BanachAlgebra> AlgebraPoly<A> {
    pub fn new(descriptor: A::Descriptor, coeffs: Vec<A>) -> Result<Self, AlgebraError> {
        if coeffs.iter().any(|c| c.descriptor() != descriptor) {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Ok(AlgebraPoly { descriptor, coeffs })
    }

    /// Panics on an empty list; the descriptor is taken from the first coefficient.
    pub fn from_coeffs(coeffs: Vec<A>) -> Result<Self, AlgebraError> {
        let descriptor = coeffs
            .first()
            .expect("from_coeffs needs at least one coefficient")
            .descriptor();
        Self::new(descriptor, coeffs)
    }

    pub fn zero(descriptor: A::Descriptor) -> Self {
        AlgebraPoly { descriptor, coeffs: Vec::new() }
    }

    pub fn constant(c: A) -> Self {
        AlgebraPoly { descriptor: c.descriptor(), coeffs: vec![c] }
    }

    /// The indeterminate `x`.
    pub fn x(descriptor: A::Descriptor) -> Self {
        AlgebraPoly {
            coeffs: vec![A::zero(&descriptor), A::one(&descriptor)],
            descriptor,
        }
    }

    pub fn descriptor(&self) -> &A::Descriptor {
        &self.descriptor
    }

    /// Stored coefficients, possibly with zero high terms.
    pub fn coeffs(&self) -> &[A] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<A> {
        self.coeffs
    }

    pub fn coeff(&self, j: usize) -> A {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| A::zero(&self.descriptor))
    }

    /// Degree ignoring exact-zero high coefficients; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Coefficients `0..len`, zero padded or truncated.
    pub fn padded(&self, len: usize) -> Vec<A> {
        (0..len).map(|j| self.coeff(j)).collect()
    }

    pub fn trimmed(&self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        AlgebraPoly {
            descriptor: self.descriptor.clone(),
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.ensure(rhs)?;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Ok(AlgebraPoly {
            descriptor: self.descriptor.clone(),
            coeffs: (0..len).map(|j| self.coeff(j).add_ref(&rhs.coeff(j))).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.ensure(rhs)?;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Ok(AlgebraPoly {
            descriptor: self.descriptor.clone(),
            coeffs: (0..len).map(|j| self.coeff(j).sub_ref(&rhs.coeff(j))).collect(),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.ensure(rhs)?;
        Ok(AlgebraPoly {
            descriptor: self.descriptor.clone(),
            coeffs: convolve(&self.coeffs, &rhs.coeffs, &self.descriptor),
        })
    }

    pub fn scale(&self, c: num_complex::Complex<A::Real>) -> Self {
        AlgebraPoly {
            descriptor: self.descriptor.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `Σ coeffs[j] · point^j` for an algebra-valued point.
    pub fn eval(&self, point: &A) -> Result<A, AlgebraError> {
        if point.descriptor() != self.descriptor {
            return Err(AlgebraError::DescriptorMismatch);
        }
        Ok(horner(&self.coeffs, point, &self.descriptor))
    }

    fn ensure(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.descriptor == rhs.descriptor {
            Ok(())
        } else {
            Err(AlgebraError::DescriptorMismatch)
        }
    }
}

pub(crate) fn horner<A: BanachAlgebra>(coeffs: &[A], point: &A, d: &A::Descriptor) -> A {
    coeffs
        .iter()
        .rev()
        .fold(A::zero(d), |acc, c| acc.mul_ref(point).add_ref(c))
}

pub(crate) fn convolve<A: BanachAlgebra>(a: &[A], b: &[A], d: &A::Descriptor) -> Vec<A> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![A::zero(d); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    out
}

/// `α(x) = a_0 + … + a_{n−1} x^{n−1} + x^n` with `n ≥ 1` and leading
/// coefficient exactly the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPoly<A: BanachAlgebra> {
    poly: AlgebraPoly<A>,
}

impl<A: BanachAlgebra> MonicPoly<A> {
    pub fn new(poly: AlgebraPoly<A>) -> Result<Self, AlgebraError> {
        let poly = poly.trimmed();
        match poly.degree() {
            Some(n) if n >= 1 && poly.coeffs[n] == A::one(&poly.descriptor) => Ok(MonicPoly { poly }),
            _ => Err(AlgebraError::NotMonic),
        }
    }

    /// Builds `x^n + Σ lower[j] x^j` from the `n` lower coefficients.
    pub fn from_lower(descriptor: A::Descriptor, lower: Vec<A>) -> Result<Self, AlgebraError> {
        if lower.is_empty() {
            return Err(AlgebraError::NotMonic);
        }
        let mut coeffs = lower;
        coeffs.push(A::one(&descriptor));
        Self::new(AlgebraPoly::new(descriptor, coeffs)?)
    }

    pub fn degree(&self) -> usize {
        self.poly.coeffs.len() - 1
    }

    pub fn descriptor(&self) -> &A::Descriptor {
        &self.poly.descriptor
    }

    /// `a_0, …, a_{n−1}`.
    pub fn lower(&self) -> &[A] {
        &self.poly.coeffs[..self.degree()]
    }

    pub fn as_poly(&self) -> &AlgebraPoly<A> {
        &self.poly
    }
}

/// `f = q·α + r` with `deg r < n`, by schoolbook division; no division in
/// the algebra is needed because `α` is monic.
pub fn divide_by_monic<A: BanachAlgebra>(
    f: &AlgebraPoly<A>,
    alpha: &MonicPoly<A>,
) -> Result<(AlgebraPoly<A>, AlgebraPoly<A>), AlgebraError> {
    if f.descriptor() != alpha.descriptor() {
        return Err(AlgebraError::DescriptorMismatch);
    }
    let (q, r) = reduce_coeffs(f.coeffs(), alpha);
    let d = alpha.descriptor().clone();
    Ok((
        AlgebraPoly { descriptor: d.clone(), coeffs: q }.trimmed(),
        AlgebraPoly { descriptor: d, coeffs: r },
    ))
}

/// Quotient and remainder coefficient vectors; the remainder always has
/// exactly `n` entries.
pub(crate) fn reduce_coeffs<A: BanachAlgebra>(f: &[A], alpha: &MonicPoly<A>) -> (Vec<A>, Vec<A>) {
    let n = alpha.degree();
    let d = alpha.descriptor();
    let mut rem: Vec<A> = f.to_vec();
    while rem.len() < n {
        rem.push(A::zero(d));
    }
    let q_len = rem.len().saturating_sub(n);
    let mut quotient = vec![A::zero(d); q_len];
    let lower = alpha.lower();
    for i in (n..rem.len()).rev() {
        let lead = rem[i].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, a) in lower.iter().enumerate() {
            rem[i - n + j] = rem[i - n + j].sub_ref(&lead.mul_ref(a));
        }
        rem[i] = A::zero(d);
        quotient[i - n] = lead;
    }
    rem.truncate(n);
    (quotient, rem)
}

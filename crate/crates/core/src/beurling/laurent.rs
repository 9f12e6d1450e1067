//! Finitely supported elements of `ℓ¹(ℤ, ω)`, i.e. Laurent polynomials,
//! under convolution and the weighted `ℓ¹` norm.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use crate::algebra::{inverse_residual, BanachAlgebra, InvertCertificate, InvertError, InvertResult, Tolerances};
use crate::beurling::spectrum::{gelfand_roots, AnnulusSpectrum};
use crate::beurling::weight::WeightSequence;
use crate::ring::Ring;
use crate::scalar::{lit, sample_disc, Real};

/// Why a Laurent element is not invertible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectrumWitness<T> {
    ZeroElement,
    /// A zero of the Gelfand transform inside the annulus.
    AnnulusRoot(Complex<T>),
}

/// `Σ_{k=lo}^{lo+len−1} c_k δ_k`. The stored window may carry zero end
/// coefficients; equality compares trimmed supports.
#[derive(Clone, Debug)]
pub struct LaurentElement<T> {
    weight: Arc<WeightSequence<T>>,
    lo: i64,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> LaurentElement<T> {
    pub fn new(weight: Arc<WeightSequence<T>>, lo: i64, coeffs: Vec<Complex<T>>) -> Self {
        LaurentElement { weight, lo, coeffs }
    }

    pub fn monomial(weight: Arc<WeightSequence<T>>, k: i64, c: Complex<T>) -> Self {
        Self::new(weight, k, vec![c])
    }

    /// `δ_k`.
    pub fn delta(weight: Arc<WeightSequence<T>>, k: i64) -> Self {
        Self::monomial(weight, k, Complex::new(T::one(), T::zero()))
    }

    pub fn weight(&self) -> &Arc<WeightSequence<T>> {
        &self.weight
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Upper end of the stored window (`lo − 1` when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Complex<T> {
        if k < self.lo || k > self.hi() {
            Complex::zero()
        } else {
            self.coeffs[(k - self.lo) as usize]
        }
    }

    /// `(k, c_k)` over the stored window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &c)| (self.lo + i as i64, c))
    }

    /// Same element with exact zero end coefficients removed; zero becomes the empty window at 0.
    pub fn trimmed(&self) -> Self {
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        match first {
            None => LaurentElement::new(self.weight.clone(), 0, Vec::new()),
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(first);
                LaurentElement::new(
                    self.weight.clone(),
                    self.lo + first as i64,
                    self.coeffs[first..=last].to_vec(),
                )
            }
        }
    }

    /// Smallest and largest index with a non-zero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        let t = self.trimmed();
        if t.coeffs.is_empty() {
            None
        } else {
            Some((t.lo, t.hi()))
        }
    }

    /// `x̂(w) = Σ c_k w^k`.
    pub fn gelfand_transform(&self, w: Complex<T>) -> Complex<T> {
        if self.coeffs.is_empty() {
            return Complex::zero();
        }
        let poly = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex::<T>::zero(), |acc, &c| acc * w + c);
        poly * w.powi(self.lo as i32)
    }

    pub fn annulus(&self) -> AnnulusSpectrum<T> {
        self.weight.radii()
    }

    fn combine(&self, rhs: &Self, sign: T) -> Self {
        debug_assert!(self.weight == rhs.weight, "Beurling weight mismatch");
        if self.coeffs.is_empty() {
            return rhs.scale(Complex::new(sign, T::zero()));
        }
        if rhs.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        let coeffs = (lo..=hi)
            .map(|k| self.coeff(k) + rhs.coeff(k) * sign)
            .collect();
        LaurentElement::new(self.weight.clone(), lo, coeffs)
    }

    /// Inverse as a truncated Laurent series, built from the factorization
    /// `x̂(w) = c · w^lo · ∏ (w − r_i)` with the roots split into those inside
    /// and those outside the annulus.
    fn series_inverse(
        &self,
        roots: &[Complex<T>],
        annulus: &AnnulusSpectrum<T>,
        tol: &Tolerances<T>,
    ) -> InvertResult<Self> {
        let lead = self.coeffs[self.coeffs.len() - 1];
        let (inner, outer): (Vec<_>, Vec<_>) = roots.iter().partition(|r| r.norm() < annulus.rho_minus);
        // ∏_{inner} (w − r) = w^m ∏ (1 − r/w);  ∏_{outer} (w − r) = ∏(−r) ∏ (1 − w/r)
        let inner_factor: Vec<Complex<T>> = inner.iter().map(|&&r| r).collect();
        let outer_factor: Vec<Complex<T>> = outer.iter().map(|&&r| r.inv()).collect();
        let outer_const = outer
            .iter()
            .fold(Complex::new(T::one(), T::zero()), |acc, &&r| acc * (-r));
        let scale = (lead * outer_const).inv();
        let shift = -self.lo - inner.len() as i64;

        let estimate = |rate: T| -> usize {
            if rate <= T::zero() {
                return 8;
            }
            let n = (lit::<T>(-40.0) / rate.ln()).to_usize().unwrap_or(usize::MAX);
            n.saturating_add(8).min(tol.max_series_terms)
        };
        let inner_rate = inner.iter().fold(T::zero(), |m, r| m.max(r.norm() / annulus.rho_minus));
        let outer_rate = outer.iter().fold(T::zero(), |m, r| m.max(annulus.rho_plus / r.norm()));
        let mut n_inner = if inner.is_empty() { 1 } else { estimate(inner_rate) };
        let mut n_outer = if outer.is_empty() { 1 } else { estimate(outer_rate) };
        let mut residual = T::infinity();
        loop {
            if n_inner.saturating_mul(n_outer) > 1 << 27 {
                break;
            }
            let s_in = reciprocal_series(&product_coeffs(&inner_factor), n_inner);
            let s_out = reciprocal_series(&product_coeffs(&outer_factor), n_outer);
            // s_in runs over w^0, w^-1, …; s_out over w^0, w^1, …
            let mut coeffs = vec![Complex::zero(); n_inner + n_outer - 1];
            for (i, &a) in s_in.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a * scale;
                for (j, &b) in s_out.iter().enumerate() {
                    coeffs[n_inner - 1 - i + j] += a * b;
                }
            }
            let candidate = LaurentElement::new(self.weight.clone(), shift - (n_inner as i64 - 1), coeffs);
            residual = inverse_residual(self, &candidate);
            if residual < tol.invert {
                return Ok(InvertCertificate {
                    inverse: candidate.trimmed(),
                    residual,
                });
            }
            let grow_inner = !inner.is_empty() && n_inner < tol.max_series_terms;
            let grow_outer = !outer.is_empty() && n_outer < tol.max_series_terms;
            if !grow_inner && !grow_outer {
                break;
            }
            if grow_inner {
                n_inner = (n_inner * 2).min(tol.max_series_terms);
            }
            if grow_outer {
                n_outer = (n_outer * 2).min(tol.max_series_terms);
            }
        }
        Err(InvertError::NotRepresentable {
            terms: n_inner + n_outer - 1,
            residual,
        })
    }
}

/// Coefficients of `∏ (1 − r_i z)`, lowest first.
fn product_coeffs<T: Real>(roots: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut p = vec![Complex::new(T::one(), T::zero())];
    for &r in roots {
        let mut next = vec![Complex::zero(); p.len() + 1];
        for (j, &pj) in p.iter().enumerate() {
            next[j] += pj;
            next[j + 1] -= r * pj;
        }
        p = next;
    }
    p
}

/// First `n` Taylor coefficients of `1/q(z)` for `q(0) = 1`.
fn reciprocal_series<T: Real>(q: &[Complex<T>], n: usize) -> Vec<Complex<T>> {
    let mut s: Vec<Complex<T>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = if j == 0 { Complex::new(T::one(), T::zero()) } else { Complex::zero() };
        for i in 1..q.len().min(j + 1) {
            acc -= q[i] * s[j - i];
        }
        s.push(acc);
    }
    s
}

impl<T: Real> PartialEq for LaurentElement<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.weight != other.weight {
            return false;
        }
        let a = self.trimmed();
        let b = other.trimmed();
        a.lo == b.lo && a.coeffs == b.coeffs
    }
}

impl<T: Real> Ring for LaurentElement<T> {
    fn zero_like(&self) -> Self {
        LaurentElement::new(self.weight.clone(), 0, Vec::new())
    }

    fn one_like(&self) -> Self {
        LaurentElement::delta(self.weight.clone(), 0)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.combine(rhs, T::one())
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.combine(rhs, -T::one())
    }

    /// Full convolution on `[lo_x + lo_y, hi_x + hi_y]`.
    fn mul_ref(&self, rhs: &Self) -> Self {
        debug_assert!(self.weight == rhs.weight, "Beurling weight mismatch");
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return self.zero_like();
        }
        let mut coeffs = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentElement::new(self.weight.clone(), self.lo + rhs.lo, coeffs)
    }

    fn neg_ref(&self) -> Self {
        self.scale(Complex::new(-T::one(), T::zero()))
    }
}

impl<T: Real> BanachAlgebra for LaurentElement<T> {
    type Real = T;
    type Descriptor = Arc<WeightSequence<T>>;
    type Witness = SpectrumWitness<T>;

    fn descriptor(&self) -> Self::Descriptor {
        self.weight.clone()
    }

    fn zero(d: &Self::Descriptor) -> Self {
        LaurentElement::new(d.clone(), 0, Vec::new())
    }

    fn one(d: &Self::Descriptor) -> Self {
        LaurentElement::delta(d.clone(), 0)
    }

    fn from_scalar(d: &Self::Descriptor, c: Complex<T>) -> Self {
        LaurentElement::monomial(d.clone(), 0, c)
    }

    fn scale(&self, c: Complex<T>) -> Self {
        LaurentElement::new(
            self.weight.clone(),
            self.lo,
            self.coeffs.iter().map(|&a| a * c).collect(),
        )
    }

    /// `Σ |c_k| ω_k`, accumulated through `ln ω_k` to survive large weights.
    fn norm(&self) -> T {
        self.terms()
            .filter(|(_, c)| !c.is_zero())
            .fold(T::zero(), |acc, (k, c)| acc + (c.norm().ln() + self.weight.ln_weight(k)).exp())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Invertible iff the Gelfand transform has no zero on the annulus
    /// `ρ₋ ≤ |w| ≤ ρ₊` (boundary band `annulus_rel` counts as on-spectrum).
    fn try_invert_at_scale(&self, _scale: T, tol: &Tolerances<T>) -> InvertResult<Self> {
        let x = self.trimmed();
        if x.coeffs.is_empty() {
            return Err(InvertError::NotInvertible(SpectrumWitness::ZeroElement));
        }
        let annulus = x.annulus();
        let g = match gelfand_roots(&x) {
            Ok(g) => g,
            Err(_) => {
                return Err(InvertError::CertificationFailure { residual: T::infinity() });
            }
        };
        if let Some(root) = g.annulus_root(&annulus, tol.annulus_rel) {
            return Err(InvertError::NotInvertible(SpectrumWitness::AnnulusRoot(root)));
        }
        // Roots of x̂ itself: drop the exact zeros contributed by the w^{lo − shift} lift.
        let lift = (x.lo - g.shift) as usize;
        x.series_inverse(&g.roots[lift..], &annulus, tol)
    }

    /// Coefficientwise perturbation on the support together with index 0.
    fn sample_ball<R: Rng + ?Sized>(&self, radius: T, rng: &mut R) -> Self {
        let (lo, hi) = match self.support() {
            Some((lo, hi)) => (lo.min(0), hi.max(0)),
            None => (0, 0),
        };
        let count = lit::<T>((hi - lo + 1) as f64);
        let coeffs = (lo..=hi)
            .map(|k| {
                let r = radius / (count * self.weight.weight(k));
                self.coeff(k) + sample_disc(r, rng)
            })
            .collect();
        LaurentElement::new(self.weight.clone(), lo, coeffs)
    }
}

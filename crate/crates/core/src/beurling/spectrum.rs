//! Annulus spectra, Gelfand roots, winding numbers and the disc-algebra
//! closure test.
//!
//! All topological quantities come from exact root counts (argument
//! principle on the root list), never from numerical phase integration.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::AlgebraError;
use crate::beurling::laurent::LaurentElement;
use crate::roots::{polynomial_roots, trim_high};
use crate::scalar::{lit, to_f64, Real};

/// `{w : ρ₋ ≤ |w| ≤ ρ₊}`, the maximal ideal space of a Beurling algebra.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnnulusSpectrum<T> {
    pub rho_minus: T,
    pub rho_plus: T,
}

impl<T: Real> AnnulusSpectrum<T> {
    pub fn new(rho_minus: T, rho_plus: T) -> Result<Self, AlgebraError> {
        if rho_minus > T::zero() && rho_minus <= rho_plus && rho_plus.is_finite() {
            Ok(AnnulusSpectrum { rho_minus, rho_plus })
        } else {
            Err(AlgebraError::InvalidParameter(format!(
                "annulus needs 0 < ρ₋ ≤ ρ₊, got [{}, {}]",
                to_f64(rho_minus),
                to_f64(rho_plus)
            )))
        }
    }

    pub fn is_circle(&self) -> bool {
        self.rho_minus == self.rho_plus
    }

    /// Membership of a modulus in the annulus widened by the relative band `tol`.
    pub fn contains_modulus(&self, modulus: T, tol: T) -> bool {
        modulus >= self.rho_minus * (T::one() - tol) && modulus <= self.rho_plus * (T::one() + tol)
    }
}

/// Roots of `w^{−shift} · x̂(w)` where `shift = min(lo, 0)`, an ordinary polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GelfandRoots<T> {
    pub shift: i64,
    pub roots: Vec<Complex<T>>,
}

impl<T: Real> GelfandRoots<T> {
    /// First root whose modulus falls in the (tolerance-widened) annulus.
    pub fn annulus_root(&self, annulus: &AnnulusSpectrum<T>, tol: T) -> Option<Complex<T>> {
        self.roots
            .iter()
            .copied()
            .find(|r| annulus.contains_modulus(r.norm(), tol))
    }

    pub fn is_invertible_on(&self, annulus: &AnnulusSpectrum<T>, tol: T) -> bool {
        self.annulus_root(annulus, tol).is_none()
    }

    /// Winding number of `θ ↦ x̂(ρ e^{iθ})`; errors if a root sits on the circle.
    pub fn winding_at(&self, radius: T, tol: T) -> Result<i64, AlgebraError> {
        let mut inside = 0i64;
        for r in &self.roots {
            let m = r.norm();
            if (m - radius).abs() <= tol * radius {
                return Err(AlgebraError::BoundaryZero { radius: to_f64(radius) });
            }
            if m < radius {
                inside += 1;
            }
        }
        Ok(self.shift + inside)
    }
}

pub fn radii<T: Real>(weight: &crate::beurling::WeightSequence<T>) -> AnnulusSpectrum<T> {
    weight.radii()
}

pub fn gelfand_roots<T: Real>(x: &LaurentElement<T>) -> Result<GelfandRoots<T>, AlgebraError> {
    let x = x.trimmed();
    if x.coeffs().is_empty() {
        return Err(AlgebraError::ZeroElement);
    }
    let shift = x.lo().min(0);
    let lift = (x.lo() - shift) as usize;
    let mut poly = vec![Complex::zero(); lift];
    poly.extend_from_slice(x.coeffs());
    Ok(GelfandRoots {
        shift,
        roots: polynomial_roots(&poly)?,
    })
}

/// Windings on the inner and outer boundary circles of `annulus`.
pub fn winding_pair<T: Real>(
    x: &LaurentElement<T>,
    annulus: &AnnulusSpectrum<T>,
    tol: T,
) -> Result<(i64, i64), AlgebraError> {
    let g = gelfand_roots(x)?;
    Ok((
        g.winding_at(annulus.rho_minus, tol)?,
        g.winding_at(annulus.rho_plus, tol)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Obstruction<T> {
    /// Different windings on the two circles: a zero of every element within
    /// `stability_radius` of `x` lies inside the annulus.
    Obstructed {
        inner: i64,
        outer: i64,
        stability_radius: T,
    },
    Unobstructed {
        inner: i64,
        outer: i64,
        stability_radius: T,
    },
}

impl<T: Real> Obstruction<T> {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Obstruction::Obstructed { .. })
    }

    pub fn windings(&self) -> (i64, i64) {
        match *self {
            Obstruction::Obstructed { inner, outer, .. } | Obstruction::Unobstructed { inner, outer, .. } => {
                (inner, outer)
            }
        }
    }

    pub fn stability_radius(&self) -> T {
        match *self {
            Obstruction::Obstructed { stability_radius, .. }
            | Obstruction::Unobstructed { stability_radius, .. } => stability_radius,
        }
    }
}

/// Winding mismatch test. The stability radius is a certified lower bound on
/// `min |x̂|` over both boundary circles: a perturbation of smaller norm cannot
/// change either winding, because `|ẑ(w)| ≤ ‖z‖` on the annulus.
pub fn obstruction_verdict<T: Real>(
    x: &LaurentElement<T>,
    annulus: &AnnulusSpectrum<T>,
    tol: T,
) -> Result<Obstruction<T>, AlgebraError> {
    let (inner, outer) = winding_pair(x, annulus, tol)?;
    let stability_radius =
        boundary_min_modulus(x, annulus.rho_minus).min(boundary_min_modulus(x, annulus.rho_plus));
    Ok(if inner != outer {
        Obstruction::Obstructed { inner, outer, stability_radius }
    } else {
        Obstruction::Unobstructed { inner, outer, stability_radius }
    })
}

/// Certified lower bound on `min_θ |x̂(ρ e^{iθ})|`.
///
/// Two bounds, keep the larger: a grid minimum minus the Lipschitz defect
/// `π/M · Σ |k||c_k| ρ^k`, and the root-product bound
/// `|c_lead| ρ^shift ∏ |ρ − |r_i||`.
pub fn boundary_min_modulus<T: Real>(x: &LaurentElement<T>, radius: T) -> T {
    let x = x.trimmed();
    if x.coeffs().is_empty() {
        return T::zero();
    }
    let mut lipschitz = T::zero();
    let mut magnitude = T::zero();
    for (k, c) in x.terms() {
        let rk = radius.powf(lit(k as f64));
        lipschitz += lit::<T>(k.unsigned_abs() as f64) * c.norm() * rk;
        magnitude += c.norm() * rk;
    }
    let roundoff = lit::<T>(64.0) * T::epsilon() * magnitude;
    let mut grid_bound = T::zero();
    let mut points = 256usize;
    while points <= 1 << 18 {
        let step = T::TAU() / lit(points as f64);
        let mut min = T::infinity();
        for j in 0..points {
            let w = Complex::from_polar(radius, step * lit(j as f64));
            min = min.min(x.gelfand_transform(w).norm());
        }
        let defect = T::PI() / lit(points as f64) * lipschitz;
        grid_bound = min - defect - roundoff;
        if defect <= min * lit(0.05) {
            break;
        }
        points *= 4;
    }
    let root_bound = gelfand_roots(&x)
        .map(|g| {
            let lead = x.coeffs()[x.coeffs().len() - 1].norm();
            let mut b = lead * radius.powf(lit(g.shift as f64));
            for r in &g.roots {
                b *= (radius - r.norm()).abs();
            }
            b * (T::one() - lit::<T>(1e-9)) - roundoff
        })
        .unwrap_or(T::zero());
    grid_bound.max(root_bound).max(T::zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscClosure {
    InClosure,
    NotInClosure,
    IsZero,
}

/// Closure of the invertibles of the disc algebra for a polynomial `p`:
/// `p` is a limit of invertibles iff it has no zero in the open disc.
pub fn disc_closure_membership<T: Real>(
    coeffs: &[Complex<T>],
    tol: T,
) -> Result<DiscClosure, AlgebraError> {
    let trimmed = trim_high(coeffs);
    if trimmed.is_empty() {
        return Ok(DiscClosure::IsZero);
    }
    let roots = polynomial_roots(trimmed)?;
    if roots.iter().any(|r| r.norm() < T::one() - tol) {
        Ok(DiscClosure::NotInClosure)
    } else {
        Ok(DiscClosure::InClosure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beurling::WeightSequence;
    use std::sync::Arc;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn one_sided() -> Arc<WeightSequence<f64>> {
        Arc::new(WeightSequence::one_sided(2.0).unwrap())
    }

    fn shift_minus(w: Arc<WeightSequence<f64>>, a: f64) -> LaurentElement<f64> {
        // δ₁ − a δ₀
        LaurentElement::new(w, 0, vec![c(-a), c(1.0)])
    }

    #[test]
    fn roots_and_verdicts() {
        let unit = Arc::new(WeightSequence::constant());
        let g = gelfand_roots(&LaurentElement::delta(unit.clone(), 1)).unwrap();
        assert_eq!(g.roots, vec![c(0.0)]);
        assert!(g.is_invertible_on(&unit.radii(), 1e-9));

        let g = gelfand_roots(&shift_minus(unit.clone(), 1.0)).unwrap();
        assert!(!g.is_invertible_on(&unit.radii(), 1e-9));

        let w = one_sided();
        let g = gelfand_roots(&shift_minus(w.clone(), 1.5)).unwrap();
        assert!((g.annulus_root(&w.radii(), 1e-9).unwrap() - c(1.5)).norm() < 1e-12);

        assert_eq!(
            gelfand_roots(&LaurentElement::new(unit, 0, vec![])),
            Err(AlgebraError::ZeroElement)
        );
    }

    #[test]
    fn monomial_windings() {
        let w = one_sided();
        for k in -5..=5 {
            let x = LaurentElement::delta(w.clone(), k);
            assert_eq!(winding_pair(&x, &w.radii(), 1e-9).unwrap(), (k, k));
        }
    }

    #[test]
    fn obstruction_on_the_two_annulus() {
        let w = one_sided();
        let annulus = w.radii();
        let inside = shift_minus(w.clone(), 1.5);
        assert_eq!(winding_pair(&inside, &annulus, 1e-9).unwrap(), (0, 1));
        let v = obstruction_verdict(&inside, &annulus, 1e-9).unwrap();
        assert!(v.is_obstructed());
        // min |w − 1.5| is 0.5 on both circles
        assert!(v.stability_radius() <= 0.5 && v.stability_radius() > 0.45);

        let outside = shift_minus(w.clone(), 3.0);
        assert_eq!(winding_pair(&outside, &annulus, 1e-9).unwrap(), (0, 0));
        assert!(!obstruction_verdict(&LaurentElement::delta(w.clone(), 2), &annulus, 1e-9)
            .unwrap()
            .is_obstructed());

        let on_circle = shift_minus(w, 2.0);
        assert!(matches!(winding_pair(&on_circle, &annulus, 1e-9), Err(AlgebraError::BoundaryZero { .. })));
    }

    #[test]
    fn single_circle_is_never_obstructed() {
        let w = Arc::new(WeightSequence::constant());
        let x = LaurentElement::new(w.clone(), -2, vec![c(0.3), c(-2.0), c(0.1), c(4.0)]);
        assert!(!obstruction_verdict(&x, &w.radii(), 1e-9).unwrap().is_obstructed());
    }

    #[test]
    fn boundary_bound_is_a_lower_bound() {
        let w = Arc::new(WeightSequence::constant());
        let x = LaurentElement::new(w, -1, vec![c(0.4), c(1.0), c(-0.7), c(0.2)]);
        let bound = boundary_min_modulus(&x, 1.0);
        let mut true_min = f64::INFINITY;
        for j in 0..100_000 {
            let z = Complex::from_polar(1.0, std::f64::consts::TAU * j as f64 / 100_000.0);
            true_min = true_min.min(x.gelfand_transform(z).norm());
        }
        assert!(bound <= true_min && bound > 0.9 * true_min, "{bound} vs {true_min}");
    }

    #[test]
    fn disc_algebra_closure() {
        assert_eq!(disc_closure_membership(&[c(-2.0), c(1.0)], 1e-9).unwrap(), DiscClosure::InClosure);
        assert_eq!(disc_closure_membership(&[c(-1.0), c(1.0)], 1e-9).unwrap(), DiscClosure::InClosure);
        assert_eq!(disc_closure_membership(&[c(0.0), c(1.0)], 1e-9).unwrap(), DiscClosure::NotInClosure);
        assert_eq!(disc_closure_membership::<f64>(&[], 1e-9).unwrap(), DiscClosure::IsZero);
        assert_eq!(disc_closure_membership(&[c(0.0), c(0.0)], 1e-9).unwrap(), DiscClosure::IsZero);
        assert_eq!(disc_closure_membership(&[c(5.0)], 1e-9).unwrap(), DiscClosure::InClosure);
    }

    #[test]
    fn annulus_validation() {
        assert!(AnnulusSpectrum::new(0.0, 1.0).is_err());
        assert!(AnnulusSpectrum::new(2.0, 1.0).is_err());
        assert!(AnnulusSpectrum::new(1.0, 1.0).unwrap().is_circle());
    }
}

//! Constructive density: small perturbations that land in the invertible group.
//!
//! For `u = b_0 + b_1 x̄ + … + b_{n−1} x̄^{n−1}` in `A_α`, only `b_0` moves. With
//! `P(c) = res(α, c + b_1 x + …)` monic of degree `n`, the search walks a
//! chain `c̃_{n−1} = b_0, c̃_{n−2}, …, c̃_0, b̃_0`, each within `ε/n` of the
//! previous one, such that `P^{(n−k)}(c̃_{n−k−1})` is invertible at stage `k`
//! and `P(b̃_0)` is invertible at the end. Each existence step is realised by
//! rejection sampling in the ball.

use num_complex::Complex;
use num_traits::{Float, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BanachAlgebra, InvertCertificate, Tolerances};
use crate::extension::{make_extension, AhElement};
use crate::matrix::SquareMatrix;
use crate::poly::MonicPoly;
use crate::resultant::{formal_derivatives, resultant_poly_in_c};
use crate::scalar::{lit, sample_circle, to_f64, Real};

/// Failures in a row after which the sampling radius shrinks.
pub const SHRINK_EVERY: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbConfig<T> {
    pub epsilon: T,
    pub max_samples_per_stage: usize,
    pub rng_seed: u64,
    /// Index of the trial; with the seed and the stage it fixes the random stream.
    pub trial: u64,
    pub shrink_factor: T,
    pub tolerances: Tolerances<T>,
}

impl<T: Real> PerturbConfig<T> {
    pub fn new(epsilon: T, rng_seed: u64) -> Self {
        PerturbConfig {
            epsilon,
            max_samples_per_stage: 200,
            rng_seed,
            trial: 0,
            shrink_factor: lit(0.5),
            tolerances: Tolerances::default(),
        }
    }

    pub fn with_trial(mut self, trial: u64) -> Self {
        self.trial = trial;
        self
    }

    pub fn validate(&self) -> Result<(), PerturbError> {
        if !(self.epsilon > T::zero() && self.epsilon.is_finite()) {
            return Err(PerturbError::InvalidConfig(format!(
                "epsilon must be positive, got {}",
                to_f64(self.epsilon)
            )));
        }
        if self.max_samples_per_stage == 0 {
            return Err(PerturbError::InvalidConfig("max_samples_per_stage must be at least 1".into()));
        }
        if !(self.shrink_factor > T::zero() && self.shrink_factor < T::one()) {
            return Err(PerturbError::InvalidConfig(format!(
                "shrink_factor must lie in (0, 1), got {}",
                to_f64(self.shrink_factor)
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PerturbError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("stage {k} found no admissible point in {samples} samples")]
    StageExhausted { k: usize, samples: usize },
    #[error("no invertible element found in {samples} samples")]
    Exhausted { samples: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Independent stream for `(seed, trial, stage)`: the three words form the
/// ChaCha key, so streams never overlap and do not depend on scheduling.
pub fn stream_rng(seed: u64, trial: u64, stage: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&stage.to_le_bytes());
    key[24..].copy_from_slice(b"perturb\0");
    ChaCha8Rng::from_seed(key)
}

/// Sub-trial index for the `i`-th repetition inside trial `trial`.
pub fn sub_trial(trial: u64, i: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = trial ^ i.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Radius actually sampled for a budget `r`, leaving room for rounding so
/// that the measured displacement stays strictly below `r`.
fn inner_radius<T: Real>(r: T) -> T {
    r * (T::one() - lit::<T>(64.0) * T::epsilon())
}

/// Rejection sampling in `B(center, radius)`. The radius shrinks by
/// `shrink` after every [`SHRINK_EVERY`] consecutive failures. Returns the
/// accepted point, the predicate's payload and the number of draws.
fn search_ball<A, R, X>(
    center: &A,
    radius: A::Real,
    max_samples: usize,
    shrink: A::Real,
    rng: &mut R,
    mut accept: impl FnMut(&A) -> Option<X>,
) -> Option<(A, X, usize)>
where
    A: BanachAlgebra,
    R: Rng + ?Sized,
{
    let mut r = inner_radius(radius);
    for draw in 1..=max_samples {
        let candidate = center.sample_ball(r, rng);
        let inside = candidate.distance(center).map_or(false, |d| d < radius);
        if inside {
            if let Some(x) = accept(&candidate) {
                return Some((candidate, x, draw));
            }
        }
        if draw % SHRINK_EVERY == 0 {
            r *= shrink;
        }
    }
    None
}

/// Upper bound for `‖Σ c_j z^j‖` given `‖z‖`; the scale for invertibility tests.
fn eval_magnitude<A: BanachAlgebra>(coeffs: &[A], z_norm: A::Real) -> A::Real {
    coeffs
        .iter()
        .rev()
        .fold(A::Real::zero(), |acc, c| acc * z_norm + c.norm())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StageRecord<A: BanachAlgebra> {
    /// `1..n−1` for the derivative stages, `n` for the final stage.
    pub k: usize,
    pub value: A,
    pub samples_used: usize,
    /// Distance from the previous chain value.
    pub displacement: A::Real,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerturbTrace<A: BanachAlgebra> {
    pub stages: Vec<StageRecord<A>>,
    pub final_b0: A,
    /// `‖ũ − u‖` in the extension norm.
    pub achieved_distance: A::Real,
    /// Inverse of `res(α, β̃)` in the base algebra.
    pub certificate: InvertCertificate<A>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageSummary {
    pub k: usize,
    pub samples_used: usize,
    pub displacement: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceSummary {
    pub stages: Vec<StageSummary>,
    pub achieved_distance: f64,
    pub resultant_residual: f64,
}

impl<A: BanachAlgebra> PerturbTrace<A> {
    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            stages: self
                .stages
                .iter()
                .map(|s| StageSummary {
                    k: s.k,
                    samples_used: s.samples_used,
                    displacement: to_f64(s.displacement),
                })
                .collect(),
            achieved_distance: to_f64(self.achieved_distance),
            resultant_residual: to_f64(self.certificate.residual),
        }
    }

    pub fn total_samples(&self) -> usize {
        self.stages.iter().map(|s| s.samples_used).sum()
    }
}

/// A nearby invertible element of `A_α` that differs from `u` only in `b_0`.
pub fn perturb_to_invertible<A: BanachAlgebra>(
    u: &AhElement<A>,
    cfg: &PerturbConfig<A::Real>,
) -> Result<(AhElement<A>, PerturbTrace<A>), PerturbError> {
    cfg.validate()?;
    let desc = u.ah_descriptor();
    let alpha = desc.alpha();
    let n = alpha.degree();
    let step = cfg.epsilon / lit(n as f64);
    let tol = &cfg.tolerances;
    let b0 = u.coeff(0).clone();
    let tail = u.rep()[1..].to_vec();
    let mut stages = Vec::with_capacity(n);
    let mut current = b0.clone();

    if n > 1 {
        let p = resultant_poly_in_c(alpha, &tail)?;
        let derivatives = formal_derivatives(&p);
        for k in 1..n {
            let derivative = &derivatives[n - k];
            let mut rng = stream_rng(cfg.rng_seed, cfg.trial, k as u64);
            let found = search_ball(&current, step, cfg.max_samples_per_stage, cfg.shrink_factor, &mut rng, |c| {
                let scale = eval_magnitude(derivative.coeffs(), c.norm());
                derivative.eval(c).try_invert_at_scale(scale, tol).ok().map(|_| ())
            });
            let (next, (), samples_used) = found.ok_or(PerturbError::StageExhausted {
                k,
                samples: cfg.max_samples_per_stage,
            })?;
            stages.push(StageRecord {
                k,
                displacement: next.distance(&current)?,
                value: next.clone(),
                samples_used,
            });
            current = next;
        }
    }

    let mut rng = stream_rng(cfg.rng_seed, cfg.trial, n as u64);
    let found = search_ball(&current, step, cfg.max_samples_per_stage, cfg.shrink_factor, &mut rng, |c| {
        let candidate = u.with_constant(c.clone()).ok()?;
        let magnitude = candidate.resultant_error_bound() / tol.singular_rel;
        // The resultant decides invertibility exactly; the inverse of the
        // candidate itself has norm at least 1/ε and is not certified here.
        let certificate = candidate.resultant().try_invert_at_scale(magnitude, tol).ok()?;
        Some((candidate, certificate))
    });
    let (final_b0, (perturbed, certificate), samples_used) = found.ok_or(PerturbError::StageExhausted {
        k: n,
        samples: cfg.max_samples_per_stage,
    })?;
    stages.push(StageRecord {
        k: n,
        displacement: final_b0.distance(&current)?,
        value: final_b0.clone(),
        samples_used,
    });
    let achieved_distance = perturbed.distance(u)?;
    Ok((
        perturbed,
        PerturbTrace { stages, final_b0, achieved_distance, certificate },
    ))
}

/// An invertible `a′` with `‖a′ − a‖ < ε`, found by sampling the ball.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePerturbation<A: BanachAlgebra> {
    pub value: A,
    pub certificate: InvertCertificate<A>,
    pub samples_used: usize,
    pub distance: A::Real,
}

pub fn perturb_in_base<A: BanachAlgebra, R: Rng + ?Sized>(
    a: &A,
    epsilon: A::Real,
    rng: &mut R,
    max_samples: usize,
    shrink_factor: A::Real,
    tol: &Tolerances<A::Real>,
) -> Result<BasePerturbation<A>, PerturbError> {
    if !(epsilon > A::Real::zero()) {
        return Err(PerturbError::InvalidConfig("epsilon must be positive".into()));
    }
    let (value, certificate, samples_used) =
        search_ball(a, epsilon, max_samples, shrink_factor, rng, |c| c.try_invert(tol).ok())
            .ok_or(PerturbError::Exhausted { samples: max_samples })?;
    let distance = value.distance(a)?;
    Ok(BasePerturbation { value, certificate, samples_used, distance })
}

/// Result of perturbing `B` along a permutation pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPerturbation<A: BanachAlgebra> {
    pub matrix: SquareMatrix<A>,
    /// The shared scalar added at every pattern entry.
    pub s: Complex<A::Real>,
    pub determinant: A,
    pub certificate: InvertCertificate<A>,
    pub samples_used: usize,
    /// `Σ_m ‖B̃_{m,σ(m)} − B_{m,σ(m)}‖ = k |s|`.
    pub displacement: A::Real,
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    sigma.iter().all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
}

/// `B̃ = B + s Σ_m E_{m,σ(m)}` with `k|s| < ε` and `det B̃` invertible.
///
/// `det(B + s P_σ)` is a polynomial in `s` whose `s^k` coefficient is
/// `sign(σ)`, so in every character it has at most `k` roots; `s` is drawn
/// on circles of radius `ε/k`, shrinking after repeated failures.
pub fn matrix_perturb<A: BanachAlgebra, R: Rng + ?Sized>(
    b: &SquareMatrix<A>,
    epsilon: A::Real,
    sigma: &[usize],
    rng: &mut R,
    max_samples: usize,
    shrink_factor: A::Real,
    tol: &Tolerances<A::Real>,
) -> Result<MatrixPerturbation<A>, PerturbError> {
    let k = b.size();
    if k == 0 || sigma.len() != k || !is_permutation(sigma) {
        return Err(PerturbError::InvalidConfig("σ must be a permutation of the matrix indices".into()));
    }
    if !(epsilon > A::Real::zero()) {
        return Err(PerturbError::InvalidConfig("epsilon must be positive".into()));
    }
    let d = b.get(0, 0).descriptor();
    if b.entries().iter().any(|e| e.descriptor() != d) {
        return Err(AlgebraError::DescriptorMismatch.into());
    }
    let one = A::one(&d);
    let budget = epsilon / lit(k as f64);
    let mut radius = inner_radius(budget);
    for draw in 1..=max_samples {
        let s = sample_circle(radius, rng);
        let shift = A::from_scalar(&d, s);
        let mut perturbed = b.clone();
        for (m, &j) in sigma.iter().enumerate() {
            perturbed.set(m, j, b.get(m, j).add_ref(&shift));
        }
        let mut displacement = A::Real::zero();
        for (m, &j) in sigma.iter().enumerate() {
            displacement += perturbed.get(m, j).distance(b.get(m, j))?;
        }
        // Rounding in `b + s` can push the measured displacement past ε.
        if displacement < epsilon {
            let det = perturbed.determinant(&one);
            let scale = perturbed.determinant_error_bound() / tol.singular_rel;
            if let Ok(certificate) = det.try_invert_at_scale(scale, tol) {
                return Ok(MatrixPerturbation {
                    matrix: perturbed,
                    s,
                    determinant: det,
                    certificate,
                    samples_used: draw,
                    displacement,
                });
            }
        }
        if draw % SHRINK_EVERY == 0 {
            radius *= shrink_factor;
        }
    }
    Err(PerturbError::Exhausted { samples: max_samples })
}

/// One invertible approximant of `a^n` obtained through `A_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerApproximant<A: BanachAlgebra> {
    pub epsilon: A::Real,
    /// `res(α, b̃_0) = b̃_0^n`, invertible in the base.
    pub value: A,
    pub distance_to_power: A::Real,
    pub trace: PerturbTrace<A>,
}

/// For each `ε`, perturbs `a` (as a constant of `A_α`) to an invertible
/// element and returns the resultant, which approximates `a^n`.
pub fn nth_power_approximants<A: BanachAlgebra>(
    a: &A,
    alpha: &MonicPoly<A>,
    epsilons: &[A::Real],
    cfg: &PerturbConfig<A::Real>,
) -> Result<Vec<PowerApproximant<A>>, PerturbError> {
    let desc = make_extension(&a.descriptor(), alpha.clone(), None)?;
    let u = AhElement::embed(a, &desc)?;
    let power = a.pow(alpha.degree() as u32);
    epsilons
        .iter()
        .enumerate()
        .map(|(i, &epsilon)| {
            let run = PerturbConfig { epsilon, trial: sub_trial(cfg.trial, i as u64), ..*cfg };
            let (perturbed, trace) = perturb_to_invertible(&u, &run)?;
            let value = perturbed.resultant();
            let distance_to_power = value.distance(&power)?;
            Ok(PowerApproximant { epsilon, value, distance_to_power, trace })
        })
        .collect()
}

/// Largest `‖approximant − a^n‖` over `repeats` independent runs per `ε`:
/// an empirical envelope for the `C·ε` bound.
pub fn power_envelope<A: BanachAlgebra>(
    a: &A,
    alpha: &MonicPoly<A>,
    epsilons: &[A::Real],
    repeats: usize,
    cfg: &PerturbConfig<A::Real>,
) -> Result<Vec<A::Real>, PerturbError> {
    let mut envelope = vec![A::Real::zero(); epsilons.len()];
    for r in 0..repeats {
        let run = cfg.with_trial(sub_trial(cfg.trial, 1 << 32 | r as u64));
        for (slot, approx) in envelope.iter_mut().zip(nth_power_approximants(a, alpha, epsilons, &run)?) {
            *slot = slot.max(approx.distance_to_power);
        }
    }
    Ok(envelope)
}

/// Least-squares slope of `ln y` against `ln x`; `None` for fewer than two
/// points, non-positive data, or constant `x`.
pub fn fitted_loglog_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 || x.iter().chain(y).any(|&v| !(v > 0.0 && v.is_finite())) {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

use serde::Serialize;

use crate::algebra::AlgebraError;
use crate::beurling::spectrum::AnnulusSpectrum;
use crate::scalar::{lit, to_f64, Real};

/// A weight `ω: ℤ → (0, ∞)` with `ω_0 = 1` and `ω_{m+n} ≤ ω_m ω_n`,
/// given by a closed-form generator so that its radii are exact.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSequence<T> {
    /// `ω ≡ 1`, the algebra `ℓ¹(ℤ)`.
    Constant,
    /// `ω_k = r^|k|`, `r ≥ 1`.
    Geometric { r: T },
    /// `ω_k = r^k` for `k ≥ 0` and `1` for `k < 0`, `r ≥ 1`.
    OneSided { r: T },
    /// Explicit values on `[lo, lo + values.len() − 1]`, extended by the
    /// geometric tails `ω_k = q₊^k` above and `ω_k = q₋^|k|` below, where the
    /// rates are fixed by the end points.
    Table { lo: i64, values: Vec<T> },
}

impl<T: Real> WeightSequence<T> {
    pub fn constant() -> Self {
        WeightSequence::Constant
    }

    pub fn geometric(r: T) -> Result<Self, AlgebraError> {
        check_rate(r)?;
        Ok(WeightSequence::Geometric { r })
    }

    pub fn one_sided(r: T) -> Result<Self, AlgebraError> {
        check_rate(r)?;
        Ok(WeightSequence::OneSided { r })
    }

    pub fn table(lo: i64, values: Vec<T>) -> Result<Self, AlgebraError> {
        let hi = lo + values.len() as i64 - 1;
        if lo > -1 || hi < 1 {
            return Err(AlgebraError::InvalidParameter(
                "weight table window must contain -1, 0 and 1".into(),
            ));
        }
        if values.iter().any(|v| !(v.is_finite() && *v > T::zero())) {
            return Err(AlgebraError::InvalidParameter("weights must be positive and finite".into()));
        }
        if values[(-lo) as usize] != T::one() {
            return Err(AlgebraError::InvalidParameter("weight must satisfy ω_0 = 1".into()));
        }
        let w = WeightSequence::Table { lo, values };
        let span = hi - lo;
        if !w.is_submultiplicative_on(lo - 2 * span, hi + 2 * span) {
            return Err(AlgebraError::InvalidParameter("weight table is not submultiplicative".into()));
        }
        let radii = w.radii();
        let slack = lit::<T>(1e-12);
        for k in lo..=hi {
            let bound = if k >= 0 {
                lit::<T>(k as f64) * radii.rho_plus.ln()
            } else {
                lit::<T>(k as f64) * radii.rho_minus.ln()
            };
            if w.ln_weight(k) < bound - slack {
                return Err(AlgebraError::InvalidParameter(format!(
                    "weight table dips below its limiting rate at k = {k}"
                )));
            }
        }
        Ok(w)
    }

    /// `ln ω_k`; weights themselves overflow quickly for geometric growth.
    pub fn ln_weight(&self, k: i64) -> T {
        let kf = lit::<T>(k as f64);
        match self {
            WeightSequence::Constant => T::zero(),
            WeightSequence::Geometric { r } => kf.abs() * r.ln(),
            WeightSequence::OneSided { r } => {
                if k >= 0 {
                    kf * r.ln()
                } else {
                    T::zero()
                }
            }
            WeightSequence::Table { lo, values } => {
                let hi = lo + values.len() as i64 - 1;
                if k < *lo {
                    kf * values[0].ln() / lit((*lo) as f64)
                } else if k > hi {
                    kf * values[values.len() - 1].ln() / lit(hi as f64)
                } else {
                    values[(k - lo) as usize].ln()
                }
            }
        }
    }

    pub fn weight(&self, k: i64) -> T {
        self.ln_weight(k).exp()
    }

    /// `ρ₋ = lim ω_{−n}^{−1/n}` and `ρ₊ = lim ω_n^{1/n}` in closed form.
    pub fn radii(&self) -> AnnulusSpectrum<T> {
        let one = T::one();
        let (rho_minus, rho_plus) = match self {
            WeightSequence::Constant => (one, one),
            WeightSequence::Geometric { r } => (r.recip(), *r),
            WeightSequence::OneSided { r } => (one, *r),
            WeightSequence::Table { lo, values } => {
                let hi = lo + values.len() as i64 - 1;
                let q_minus = (values[0].ln() / lit((-lo) as f64)).exp();
                let q_plus = (values[values.len() - 1].ln() / lit(hi as f64)).exp();
                (q_minus.recip(), q_plus)
            }
        };
        AnnulusSpectrum { rho_minus, rho_plus }
    }

    /// Spot check of `ω_{m+n} ≤ ω_m ω_n` for all `m, n, m + n` in `[lo, hi]`.
    pub fn is_submultiplicative_on(&self, lo: i64, hi: i64) -> bool {
        let slack = lit::<T>(1e-12);
        for m in lo..=hi {
            for n in lo..=hi {
                let s = m + n;
                if s < lo || s > hi {
                    continue;
                }
                let lhs = self.ln_weight(s);
                let rhs = self.ln_weight(m) + self.ln_weight(n);
                if lhs > rhs + slack * (T::one() + rhs.abs()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn describe(&self) -> String {
        match self {
            WeightSequence::Constant => "ω ≡ 1".to_string(),
            WeightSequence::Geometric { r } => format!("ω_k = {}^|k|", to_f64(*r)),
            WeightSequence::OneSided { r } => format!("ω_k = {}^k (k ≥ 0), 1 (k < 0)", to_f64(*r)),
            WeightSequence::Table { lo, values } => {
                format!("table on [{lo}, {}] with geometric tails", lo + values.len() as i64 - 1)
            }
        }
    }
}

fn check_rate<T: Real>(r: T) -> Result<(), AlgebraError> {
    if r.is_finite() && r >= T::one() {
        Ok(())
    } else {
        Err(AlgebraError::InvalidParameter(format!(
            "weight rate must be finite and at least 1, got {}",
            to_f64(r)
        )))
    }
}

//! Seeded batch experiments. Trial `i` draws every random number from
//! streams keyed by `(seed, i, stage)`, so the rows do not depend on thread
//! scheduling and a rerun reproduces the CSV byte for byte.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use arens_core::fullness::circle_non_fullness_probe;
use arens_core::json::{parse_complex, parse_descriptor, DescriptorJson};
use arens_core::{
    disc_closure_membership, fitted_loglog_slope, matrix_perturb, obstruction_verdict, perturb_in_base,
    perturb_to_invertible, polynomial_roots, power_envelope, stream_rng, winding_pair, AnyDescriptor, BanachAlgebra,
    FiniteElement, FiniteSpace, FullnessVerdict, InvertError, MonicPoly, PerturbConfig, Ring, Tolerances, WeightSequence,
};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::instances::{
    circle_singular, common_root_oracle, finite, forced_instance, horner, obstructed, permutation, singular_matrix, F,
};

/// Stage id of the stream that builds a trial's instance; the perturbation
/// engine uses stage ids `1..=n` and `0`.
const INSTANCE_STREAM: u64 = 1 << 40;
/// Stream for the perturbations that probe winding stability.
const PROBE_STREAM: u64 = INSTANCE_STREAM + 1;
/// Stream for perturbations inside the base algebra.
const BASE_STREAM: u64 = INSTANCE_STREAM + 2;

/// Relative agreement required between the resultant and the root product.
pub const RESULTANT_ORACLE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Resultant against `∏ β(λ_i)` over `ℂ^m`.
    ResultantOracle,
    /// Extension inverse verdict against the coordinatewise common-root test.
    AhInvertOracle,
    /// Perturbation of singular extension elements into the invertibles.
    PerturbationDensity,
    /// Resultants of perturbed constants tending to `a^n`.
    PowerLimits,
    /// Perturbing only the entries on a permutation of a singular matrix.
    MatrixPerturbation,
    /// Dense invertibles on a circle weight, winding obstruction on a proper annulus.
    BeurlingDichotomy,
    /// Closure of the invertible polynomials of the disc algebra.
    DiscClosure,
    /// `z − 2` against a rational sample on the circle.
    CircleNonFullness,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// Degrees `n` of `α`; a trial draws one uniformly.
    pub degrees: Option<Vec<usize>>,
    /// Probability that a coordinate of an oracle instance is forced singular.
    pub p_forced: Option<f64>,
    pub max_samples_per_stage: Option<usize>,
    pub matrix_size: Option<usize>,
    /// Longest random Laurent factor.
    pub max_terms: Option<usize>,
    /// Independent runs per `ε` in the power-limit envelope.
    pub repeats: Option<usize>,
    /// Degrees of `α = x^n` for the power limits.
    pub powers: Option<Vec<usize>>,
    /// Constants `a` for the power limits, as `[re, im]` or numbers.
    pub constants: Option<Vec<Value>>,
    /// Winding-stability probes per obstructed element.
    pub perturbations_per_element: Option<usize>,
    /// Disc-closure inputs, coefficient lists lowest first.
    pub polynomials: Option<Vec<Vec<Value>>>,
    /// Expected verdicts for `polynomials`, e.g. `"in_closure"`.
    pub expected: Option<Vec<String>>,
    pub circle_points: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub min_success_rate: Option<f64>,
    pub max_success_rate: Option<f64>,
    /// Smallest fitted log-log slope over the power-limit groups.
    pub min_loglog_slope: Option<f64>,
    /// Total winding changes observed under stability probes.
    pub max_winding_changes: Option<u64>,
    /// Trials whose verdict disagrees with an independent oracle.
    pub max_oracle_disagreements: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub descriptor: Option<DescriptorJson>,
    pub trials: usize,
    #[serde(default)]
    pub epsilons: Vec<f64>,
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub thresholds: Thresholds,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).context("bad experiment config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.trials >= 1, "trials must be at least 1");
        ensure!(
            self.epsilons.iter().all(|&e| e > 0.0 && e.is_finite()),
            "every epsilon must be positive and finite"
        );
        let needs_epsilon = matches!(
            self.kind,
            ExperimentKind::PerturbationDensity
                | ExperimentKind::PowerLimits
                | ExperimentKind::MatrixPerturbation
                | ExperimentKind::BeurlingDichotomy
        );
        ensure!(!needs_epsilon || !self.epsilons.is_empty(), "{:?} needs a non-empty epsilons list", self.kind);
        Ok(())
    }
}

/// One CSV line; absent values are written as empty fields.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub trial: usize,
    pub seed: u64,
    pub epsilon: Option<f64>,
    pub success: bool,
    pub achieved_distance: Option<f64>,
    pub stage_samples_total: Option<usize>,
    pub certificate_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdCheck {
    pub name: &'static str,
    pub limit: f64,
    pub value: f64,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub kind: ExperimentKind,
    pub trials: usize,
    pub seed: u64,
    pub success_rate: f64,
    pub mean_achieved_distance: Option<f64>,
    pub mean_samples_per_stage: Option<f64>,
    pub failures: Vec<Value>,
    pub details: Value,
    pub threshold_checks: Vec<ThresholdCheck>,
    pub thresholds_met: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary)? + "\n")
    }

    /// Writes `results.csv` and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        fs::write(dir.join("results.csv"), self.csv()?)?;
        fs::write(dir.join("summary.json"), self.summary_json()?)?;
        Ok(())
    }
}

/// What a trial reports besides its CSV row.
#[derive(Clone, Debug, Default)]
struct Outcome {
    success: bool,
    achieved_distance: Option<f64>,
    stage_samples_total: Option<usize>,
    stages: usize,
    certificate_residual: Option<f64>,
    failure: Option<Value>,
    oracle_disagreement: bool,
    winding_changes: u64,
    /// Grouping key for per-group statistics.
    group: Option<String>,
}

impl Outcome {
    fn failed(reason: impl ToString) -> Self {
        Outcome { failure: Some(json!({"reason": reason.to_string()})), ..Outcome::default() }
    }
}

struct Setup {
    cfg: ExperimentConfig,
    tol: Tolerances<f64>,
    descriptor: Option<AnyDescriptor<f64>>,
}

impl Setup {
    fn points(&self, default: usize) -> Result<usize> {
        match &self.descriptor {
            None => Ok(default),
            Some(AnyDescriptor::Finite(s)) => Ok(s.points),
            Some(d) => bail!("{:?} needs a finite_space descriptor, got {}", self.cfg.kind, d.kind()),
        }
    }

    fn weight(&self) -> Result<Arc<WeightSequence<f64>>> {
        match &self.descriptor {
            None => Ok(Arc::new(WeightSequence::constant())),
            Some(AnyDescriptor::Beurling(w)) => Ok(w.clone()),
            Some(d) => bail!("{:?} needs a beurling descriptor, got {}", self.cfg.kind, d.kind()),
        }
    }

    fn epsilon(&self, trial: usize) -> Option<f64> {
        let e = &self.cfg.epsilons;
        (!e.is_empty()).then(|| e[trial % e.len()])
    }

    fn degrees(&self, default: &[usize]) -> Vec<usize> {
        self.cfg.params.degrees.clone().unwrap_or_else(|| default.to_vec())
    }

    fn max_samples(&self) -> usize {
        self.cfg.params.max_samples_per_stage.unwrap_or(200)
    }

    fn perturb_config(&self, epsilon: f64, trial: usize) -> PerturbConfig<f64> {
        let mut c = PerturbConfig::new(epsilon, self.cfg.seed).with_trial(trial as u64);
        c.max_samples_per_stage = self.max_samples();
        c.tolerances = self.tol;
        c
    }

    fn instance_rng(&self, trial: usize) -> impl Rng {
        stream_rng(self.cfg.seed, trial as u64, INSTANCE_STREAM)
    }
}

/// Runs every trial and assembles the report. `tol` applies to all
/// invertibility decisions.
pub fn run(cfg: &ExperimentConfig, tol: Tolerances<f64>) -> Result<ExperimentReport> {
    cfg.validate()?;
    let descriptor = cfg.descriptor.as_ref().map(parse_descriptor).transpose()?;
    let setup = Setup { cfg: cfg.clone(), tol, descriptor };
    check_setup(&setup)?;
    let outcomes: Vec<Outcome> = (0..cfg.trials).into_par_iter().map(|i| trial(&setup, i)).collect();
    let rows = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| Row {
            trial: i,
            seed: cfg.seed,
            epsilon: setup.epsilon(i),
            success: o.success,
            achieved_distance: o.achieved_distance,
            stage_samples_total: o.stage_samples_total,
            certificate_residual: o.certificate_residual,
        })
        .collect::<Vec<_>>();
    let summary = summarise(&setup, &rows, &outcomes);
    Ok(ExperimentReport { rows, summary })
}

/// Rejects descriptors and parameters that would fail in every trial.
fn check_setup(s: &Setup) -> Result<()> {
    use ExperimentKind::*;
    match s.cfg.kind {
        ResultantOracle | AhInvertOracle | PerturbationDensity | MatrixPerturbation => {
            s.points(1)?;
            let degrees = s.degrees(&[1]);
            ensure!(!degrees.is_empty() && degrees.iter().all(|&n| n >= 1), "degrees must be at least 1");
        }
        BeurlingDichotomy => {
            s.weight()?;
        }
        PowerLimits => {
            ensure!(s.descriptor.is_none(), "power limits run over ℂ and take no descriptor");
            constants(s)?;
        }
        DiscClosure => {
            let (polys, expected) = disc_inputs(s)?;
            ensure!(
                expected.as_ref().map_or(true, |e| e.len() == polys.len()),
                "expected verdicts must match the polynomials"
            );
        }
        CircleNonFullness => ensure!(
            s.cfg.params.circle_points.as_ref().map_or(true, |p| !p.is_empty() && p.iter().all(|&m| m >= 3)),
            "circle_points must be at least 3"
        ),
    }
    Ok(())
}

fn trial(s: &Setup, i: usize) -> Outcome {
    use ExperimentKind::*;
    let result = match s.cfg.kind {
        ResultantOracle => resultant_oracle(s, i),
        AhInvertOracle => ah_invert_oracle(s, i),
        PerturbationDensity => perturbation_density(s, i),
        PowerLimits => power_limits(s, i),
        MatrixPerturbation => matrix_trial(s, i),
        BeurlingDichotomy => beurling_dichotomy(s, i),
        DiscClosure => disc_closure(s, i),
        CircleNonFullness => circle_non_fullness(s, i),
    };
    result.unwrap_or_else(Outcome::failed)
}

fn pick<R: Rng, T: Copy>(rng: &mut R, items: &[T]) -> T {
    items[rng.gen_range(0..items.len())]
}

fn resultant_oracle(s: &Setup, i: usize) -> Result<Outcome> {
    let mut rng = s.instance_rng(i);
    let m = s.points(1)?;
    let n = pick(&mut rng, &s.degrees(&[1, 2, 3, 4, 5]));
    let d = FiniteSpace { points: m };
    let lower: Vec<F> = (0..n).map(|_| finite(&mut rng, m, 2.0)).collect();
    let beta: Vec<F> = (0..n).map(|_| finite(&mut rng, m, 2.0)).collect();
    let alpha = MonicPoly::from_lower(d, lower)?;
    let desc = arens_core::make_extension(&d, alpha.clone(), None)?;
    let u = arens_core::AhElement::from_coeffs(&desc, beta.clone())?;
    let res = u.resultant();
    let mut worst: f64 = 0.0;
    for p in 0..m {
        let a: Vec<Complex64> = alpha.as_poly().coeffs().iter().map(|c| c.coordinate(p)).collect();
        let b: Vec<Complex64> = beta.iter().map(|c| c.coordinate(p)).collect();
        let mut product = Complex64::new(1.0, 0.0);
        let mut magnitude = 1.0;
        for r in polynomial_roots(&a)? {
            product *= horner(&b, r);
            magnitude *= b.iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
        }
        // A product far below its rounding magnitude is compared absolutely at that scale.
        let scale = product.norm().max(1e-3 * magnitude).max(f64::MIN_POSITIVE);
        worst = worst.max((res.coordinate(p) - product).norm() / scale);
    }
    let success = worst <= RESULTANT_ORACLE_TOL;
    Ok(Outcome {
        success,
        achieved_distance: Some(worst),
        oracle_disagreement: !success,
        failure: (!success).then(|| json!({"reason": "resultant differs from root product", "n": n, "relative_error": worst})),
        ..Outcome::default()
    })
}

fn ah_invert_oracle(s: &Setup, i: usize) -> Result<Outcome> {
    let mut rng = s.instance_rng(i);
    let m = s.points(2)?;
    let n = pick(&mut rng, &s.degrees(&[1, 2, 3, 4]));
    let (u, forced) = forced_instance(&mut rng, m, n, s.cfg.params.p_forced.unwrap_or(0.3));
    let expected = common_root_oracle(&u);
    let verdict = u.try_invert(&s.tol);
    // The resultant decides; an uncertified inverse still means "invertible".
    let invertible = !matches!(verdict, Err(InvertError::NotInvertible(_)));
    let success = invertible == expected;
    Ok(Outcome {
        success,
        certificate_residual: verdict.as_ref().ok().map(|c| c.residual),
        oracle_disagreement: !success,
        failure: (!success).then(|| {
            json!({"reason": "verdict disagrees with oracle", "n": n, "forced": forced, "oracle_invertible": expected})
        }),
        group: Some(if expected { "invertible" } else { "singular" }.into()),
        ..Outcome::default()
    })
}

fn perturbation_density(s: &Setup, i: usize) -> Result<Outcome> {
    let mut rng = s.instance_rng(i);
    let m = s.points(2)?;
    let n = pick(&mut rng, &s.degrees(&[3]));
    let epsilon = s.epsilon(i).expect("validated");
    let (u, _) = forced_instance(&mut rng, m, n, 1.0);
    let (v, trace) = match perturb_to_invertible(&u, &s.perturb_config(epsilon, i)) {
        Ok(r) => r,
        Err(e) => return Ok(Outcome { stages: n, ..Outcome::failed(e) }),
    };
    let distance = v.distance(&u)?;
    let mut violations = Vec::new();
    if !(distance < epsilon) {
        violations.push(format!("distance {distance} is not below epsilon"));
    }
    if v.rep()[1..] != u.rep()[1..] {
        violations.push("a coefficient of positive degree changed".into());
    }
    let certificate = v.resultant().mul_ref(&trace.certificate.inverse).distance(&F::one(&FiniteSpace { points: m }))?;
    if !(certificate <= s.tol.invert) {
        violations.push(format!("resultant certificate residual {certificate}"));
    }
    let success = violations.is_empty();
    Ok(Outcome {
        success,
        achieved_distance: Some(distance),
        stage_samples_total: Some(trace.total_samples()),
        stages: trace.stages.len(),
        certificate_residual: Some(certificate),
        oracle_disagreement: !common_root_oracle(&v),
        failure: (!success).then(|| json!({"reason": violations, "trace": trace.summary()})),
        ..Outcome::default()
    })
}

fn constants(s: &Setup) -> Result<Vec<Complex64>> {
    match &s.cfg.params.constants {
        None => Ok(vec![Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)]),
        Some(list) => {
            ensure!(!list.is_empty(), "constants must not be empty");
            Ok(list.iter().map(parse_complex).collect::<Result<_, _>>()?)
        }
    }
}

fn powers(s: &Setup) -> Vec<usize> {
    s.cfg.params.powers.clone().unwrap_or_else(|| vec![2, 3])
}

/// Trial `i` takes `epsilons[i mod E]` and the `(power, constant)` group
/// `⌊i / E⌋`, cycling through all groups.
fn power_limits(s: &Setup, i: usize) -> Result<Outcome> {
    let epsilon = s.epsilon(i).expect("validated");
    let powers = powers(s);
    let constants = constants(s)?;
    let g = (i / s.cfg.epsilons.len()) % (powers.len() * constants.len());
    let (n, a) = (powers[g / constants.len()], constants[g % constants.len()]);
    let d = FiniteSpace { points: 1 };
    let zero = F::zero(&d);
    let alpha = MonicPoly::from_lower(d, vec![zero; n])?;
    let a_el = FiniteElement::from_scalar(&d, a);
    let repeats = s.cfg.params.repeats.unwrap_or(16);
    let group = format!("x^{n}, a = {}{:+}i", a.re, a.im);
    match power_envelope(&a_el, &alpha, &[epsilon], repeats, &s.perturb_config(epsilon, i)) {
        Ok(env) => Ok(Outcome {
            success: true,
            achieved_distance: Some(env[0]),
            group: Some(group),
            ..Outcome::default()
        }),
        Err(e) => Ok(Outcome { group: Some(group), ..Outcome::failed(e) }),
    }
}

fn matrix_trial(s: &Setup, i: usize) -> Result<Outcome> {
    let mut rng = s.instance_rng(i);
    let m = s.points(1)?;
    let k = s.cfg.params.matrix_size.unwrap_or(3);
    ensure!(k >= 1, "matrix_size must be at least 1");
    let epsilon = s.epsilon(i).expect("validated");
    let b = singular_matrix(&mut rng, m, k);
    let sigma = permutation(&mut rng, k);
    let mut search = stream_rng(s.cfg.seed, i as u64, BASE_STREAM);
    let p = match matrix_perturb(&b, epsilon, &sigma, &mut search, s.max_samples(), 0.5, &s.tol) {
        Ok(p) => p,
        Err(e) => return Ok(Outcome { stages: 1, ..Outcome::failed(e) }),
    };
    let mut violations = Vec::new();
    for r in 0..k {
        for c in 0..k {
            if c != sigma[r] && p.matrix.get(r, c) != b.get(r, c) {
                violations.push(format!("entry ({r}, {c}) off the permutation changed"));
            }
        }
    }
    if !(p.displacement < epsilon) {
        violations.push(format!("displacement {} is not below epsilon", p.displacement));
    }
    let success = violations.is_empty() && p.certificate.residual <= s.tol.invert;
    Ok(Outcome {
        success,
        achieved_distance: Some(p.displacement),
        stage_samples_total: Some(p.samples_used),
        stages: 1,
        certificate_residual: Some(p.certificate.residual),
        failure: (!success).then(|| json!({"reason": violations, "sigma": sigma})),
        ..Outcome::default()
    })
}

/// On a circle weight a random element with a zero on the circle is pushed
/// into the invertibles. On a proper annulus an element with unequal
/// boundary windings is probed inside its stability radius, then a
/// perturbation is attempted at `min(ε, radius)`.
fn beurling_dichotomy(s: &Setup, i: usize) -> Result<Outcome> {
    let mut rng = s.instance_rng(i);
    let w = s.weight()?;
    let annulus = w.radii();
    let epsilon = s.epsilon(i).expect("validated");
    let mut search = stream_rng(s.cfg.seed, i as u64, BASE_STREAM);
    let max_terms = s.cfg.params.max_terms.unwrap_or(6);
    if annulus.is_circle() {
        let x = circle_singular(&mut rng, &w, annulus.rho_plus, max_terms);
        let x = arens_core::AnyElement::Laurent(x);
        return Ok(match perturb_in_base(&x, epsilon, &mut search, s.max_samples(), 0.5, &s.tol) {
            Ok(p) => Outcome {
                success: p.distance < epsilon,
                achieved_distance: Some(p.distance),
                stage_samples_total: Some(p.samples_used),
                stages: 1,
                certificate_residual: Some(p.certificate.residual),
                group: Some("circle".into()),
                ..Outcome::default()
            },
            Err(e) => Outcome { stages: 1, group: Some("circle".into()), ..Outcome::failed(e) },
        });
    }
    let x = obstructed(&mut rng, &w);
    let verdict = obstruction_verdict(&x, &annulus, s.tol.annulus_rel)?;
    ensure!(verdict.is_obstructed(), "constructed element is not obstructed: {verdict:?}");
    let radius = verdict.stability_radius();
    let windings = verdict.windings();
    let mut probe = stream_rng(s.cfg.seed, i as u64, PROBE_STREAM);
    let mut changes = 0;
    for _ in 0..s.cfg.params.perturbations_per_element.unwrap_or(100) {
        let y = x.sample_ball(radius, &mut probe);
        if winding_pair(&y, &annulus, s.tol.annulus_rel).ok() != Some(windings) {
            changes += 1;
        }
    }
    let budget = epsilon.min(radius);
    let x = arens_core::AnyElement::Laurent(x);
    let attempt = perturb_in_base(&x, budget, &mut search, s.max_samples(), 0.5, &s.tol);
    let group = Some("obstructed".to_string());
    Ok(match attempt {
        Ok(p) => Outcome {
            success: true,
            achieved_distance: Some(p.distance),
            stage_samples_total: Some(p.samples_used),
            stages: 1,
            certificate_residual: Some(p.certificate.residual),
            winding_changes: changes,
            failure: Some(json!({"reason": "obstructed element perturbed to an invertible", "windings": windings})),
            group,
            ..Outcome::default()
        },
        Err(_) => Outcome {
            stage_samples_total: Some(s.max_samples()),
            stages: 1,
            winding_changes: changes,
            group,
            ..Outcome::default()
        },
    })
}

fn disc_inputs(s: &Setup) -> Result<(Vec<Vec<Complex64>>, Option<Vec<String>>)> {
    let p = &s.cfg.params;
    let polys = match &p.polynomials {
        Some(list) => list
            .iter()
            .map(|c| c.iter().map(parse_complex).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?,
        None => [-2.0, -1.0, 0.0].iter().map(|&c| vec![Complex64::new(c, 0.0), Complex64::new(1.0, 0.0)]).collect(),
    };
    ensure!(!polys.is_empty(), "polynomials must not be empty");
    let expected = match (&p.polynomials, &p.expected) {
        (_, Some(e)) => Some(e.clone()),
        (None, None) => Some(["in_closure", "in_closure", "not_in_closure"].map(String::from).to_vec()),
        (Some(_), None) => None,
    };
    Ok((polys, expected))
}

fn disc_closure(s: &Setup, i: usize) -> Result<Outcome> {
    let (polys, expected) = disc_inputs(s)?;
    let j = i % polys.len();
    let verdict = disc_closure_membership(&polys[j], s.tol.annulus_rel)?;
    let got = serde_json::to_value(verdict)?.as_str().unwrap_or_default().to_string();
    let success = expected.as_ref().map_or(true, |e| e[j] == got);
    Ok(Outcome {
        success,
        oracle_disagreement: !success,
        failure: (!success).then(|| json!({"reason": "unexpected verdict", "polynomial": j, "verdict": got})),
        group: Some(got),
        ..Outcome::default()
    })
}

fn circle_non_fullness(s: &Setup, i: usize) -> Result<Outcome> {
    let sizes = s.cfg.params.circle_points.clone().unwrap_or_else(|| vec![64, 256, 1024]);
    let m = sizes[i % sizes.len()];
    let report = circle_non_fullness_probe::<f64>(m, 1e-6);
    let success = report.verdict == FullnessVerdict::NonFullWitness;
    Ok(Outcome {
        success,
        achieved_distance: Some(report.relative_residual),
        failure: (!success).then(|| json!({"reason": "no non-fullness witness", "points": m, "verdict": report.verdict})),
        ..Outcome::default()
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

fn summarise(s: &Setup, rows: &[Row], outcomes: &[Outcome]) -> Summary {
    let cfg = &s.cfg;
    let successes = rows.iter().filter(|r| r.success).count();
    let success_rate = successes as f64 / rows.len() as f64;
    let mean_achieved_distance = mean(rows.iter().filter(|r| r.success).filter_map(|r| r.achieved_distance));
    let mean_samples_per_stage = mean(
        rows.iter()
            .zip(outcomes)
            .filter(|(_, o)| o.stages > 0)
            .filter_map(|(r, o)| r.stage_samples_total.map(|t| t as f64 / o.stages as f64)),
    );
    let failures = rows
        .iter()
        .zip(outcomes)
        .filter_map(|(r, o)| {
            o.failure.as_ref().map(|f| json!({"trial": r.trial, "epsilon": r.epsilon, "detail": f}))
        })
        .collect();

    let disagreements = outcomes.iter().filter(|o| o.oracle_disagreement).count() as u64;
    let winding_changes: u64 = outcomes.iter().map(|o| o.winding_changes).sum();
    let mut groups: std::collections::BTreeMap<String, (usize, usize)> = Default::default();
    for (r, o) in rows.iter().zip(outcomes) {
        if let Some(g) = &o.group {
            let e = groups.entry(g.clone()).or_default();
            e.0 += 1;
            e.1 += r.success as usize;
        }
    }
    let mut details = json!({
        "oracle_disagreements": disagreements,
        "groups": groups.iter().map(|(g, (n, ok))| (g.clone(), json!({"trials": n, "successes": ok}))).collect::<serde_json::Map<_, _>>(),
    });
    if cfg.kind == ExperimentKind::BeurlingDichotomy {
        details["winding_changes"] = json!(winding_changes);
    }
    let slopes = (cfg.kind == ExperimentKind::PowerLimits).then(|| power_slopes(rows, outcomes));
    if let Some(slopes) = &slopes {
        details["loglog_slopes"] = json!(slopes);
    }

    let t = &cfg.thresholds;
    let mut checks = Vec::new();
    let mut check = |name, limit: f64, value: f64, met: bool| checks.push(ThresholdCheck { name, limit, value, met });
    if let Some(l) = t.min_success_rate {
        check("min_success_rate", l, success_rate, success_rate >= l);
    }
    if let Some(l) = t.max_success_rate {
        check("max_success_rate", l, success_rate, success_rate <= l);
    }
    if let Some(l) = t.min_loglog_slope {
        let worst = slopes
            .as_ref()
            .map(|m| m.values().map(|v| v.unwrap_or(f64::NEG_INFINITY)).fold(f64::INFINITY, f64::min))
            .unwrap_or(f64::NEG_INFINITY);
        check("min_loglog_slope", l, worst, worst >= l);
    }
    if let Some(l) = t.max_winding_changes {
        check("max_winding_changes", l as f64, winding_changes as f64, winding_changes <= l);
    }
    if let Some(l) = t.max_oracle_disagreements {
        check("max_oracle_disagreements", l as f64, disagreements as f64, disagreements <= l);
    }
    let thresholds_met = checks.iter().all(|c| c.met);
    Summary {
        kind: cfg.kind,
        trials: cfg.trials,
        seed: cfg.seed,
        success_rate,
        mean_achieved_distance,
        mean_samples_per_stage,
        failures,
        details,
        threshold_checks: checks,
        thresholds_met,
    }
}

/// Per group, the fitted slope of the largest distance per `ε` against `ε`.
fn power_slopes(rows: &[Row], outcomes: &[Outcome]) -> std::collections::BTreeMap<String, Option<f64>> {
    let mut by_group: std::collections::BTreeMap<String, Vec<(f64, f64)>> = Default::default();
    for (r, o) in rows.iter().zip(outcomes) {
        if let (Some(g), Some(e), Some(d)) = (&o.group, r.epsilon, r.achieved_distance) {
            let points = by_group.entry(g.clone()).or_default();
            match points.iter_mut().find(|(pe, _)| *pe == e) {
                Some(p) => p.1 = p.1.max(d),
                None => points.push((e, d)),
            }
        }
    }
    by_group
        .into_iter()
        .map(|(g, pts)| {
            let (x, y): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            (g, fitted_loglog_slope(&x, &y))
        })
        .collect()
}

/// Loads a config file; `seed` overrides the configured seed.
pub fn load(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

//! Single-shot subcommands. Each takes a JSON request and returns a JSON
//! report; randomness comes from the global seed.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use arens_core::json::{
    complex_to_json, descriptor_to_json, element_to_json, parse_complex, parse_descriptor, parse_element, parse_weight,
    DescriptorJson, WeightJson,
};
use arens_core::{
    disc_closure_membership, gelfand_roots, matrix_perturb, obstruction_verdict, perturb_to_invertible,
    resultant_poly_in_c, resultant_via_multiplication_matrix, stream_rng, sylvester_matrix, AhElement, AlgebraPoly,
    AnyDescriptor, AnyElement, AnyWitness, BanachAlgebra, InvertError, InvertResult, PerturbConfig,
    SpectrumWitness, SquareMatrix, Tolerances,
};
use serde::Deserialize;
use serde_json::{json, Value};

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct RunContext {
    pub seed: u64,
    pub tol: Tolerances<f64>,
}

/// Inverses with more terms than this are summarised, not printed.
pub const MAX_PRINTED_TERMS: usize = 64;

type E = AnyElement<f64>;
type D = AnyDescriptor<f64>;

fn descriptor(v: &Value) -> Result<D> {
    let d: DescriptorJson = serde_json::from_value(v.clone()).context("bad descriptor")?;
    Ok(parse_descriptor(&d)?)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).with_context(|| format!("request needs \"{name}\""))
}

fn extension(d: &D) -> Result<&Arc<arens_core::AhDescriptor<E>>> {
    match d {
        AnyDescriptor::Extension(e) => Ok(e),
        other => bail!("expected an arens_hoffman descriptor, got {}", other.kind()),
    }
}

fn ah(x: E) -> Result<AhElement<E>> {
    match x {
        AnyElement::Extension(u) => Ok(u),
        _ => bail!("expected an extension element"),
    }
}

pub fn witness_to_json(w: &AnyWitness<f64>) -> Value {
    match w {
        AnyWitness::ZeroCoordinate(z) => json!({"kind": "zero_coordinate", "index": z.index}),
        AnyWitness::Spectrum(SpectrumWitness::ZeroElement) => json!({"kind": "zero_element"}),
        AnyWitness::Spectrum(SpectrumWitness::AnnulusRoot(z)) => {
            json!({"kind": "annulus_root", "root": complex_to_json(*z)})
        }
        AnyWitness::Resultant(r) => json!({
            "kind": "resultant",
            "resultant": element_to_json(&r.resultant),
            "base": witness_to_json(&r.base),
        }),
    }
}

/// Terms of `x`; Laurent elements count their trimmed support, others
/// their coordinates.
fn term_count(x: &E) -> usize {
    match x {
        AnyElement::Finite(f) => f.values().len(),
        AnyElement::Laurent(l) => l.trimmed().coeffs().len(),
        AnyElement::Extension(u) => u.rep().iter().map(term_count).sum(),
    }
}

pub fn inversion_to_json(r: &InvertResult<E>) -> Value {
    match r {
        Ok(c) => {
            let terms = term_count(&c.inverse);
            let mut out = json!({"status": "invertible", "residual": c.residual, "inverse_terms": terms});
            if terms <= MAX_PRINTED_TERMS {
                out["inverse"] = element_to_json(&c.inverse);
            }
            out
        }
        Err(InvertError::NotInvertible(w)) => json!({"status": "not_invertible", "witness": witness_to_json(w)}),
        Err(InvertError::NotRepresentable { terms, residual }) => {
            json!({"status": "not_representable", "terms": terms, "residual": residual})
        }
        Err(InvertError::CertificationFailure { residual }) => {
            json!({"status": "certification_failure", "residual": residual})
        }
    }
}

fn matrix_to_json(m: &SquareMatrix<E>) -> Value {
    Value::Array(m.rows().map(|row| Value::Array(row.iter().map(element_to_json).collect())).collect())
}

/// `{"descriptor": base, "alpha": [a_0, …, 1], "beta": [b_0, …, b_{n−1}]}`.
pub fn resultant(req: &Value, ctx: &RunContext) -> Result<Value> {
    let base = descriptor(field(req, "descriptor")?)?;
    let ext = parse_descriptor(&DescriptorJson::ArensHoffman {
        base: Box::new(serde_json::from_value(field(req, "descriptor")?.clone())?),
        alpha: field(req, "alpha")?.as_array().context("\"alpha\" must be a list")?.clone(),
        t: None,
    })?;
    let e = extension(&ext)?;
    let beta_items = field(req, "beta")?.as_array().context("\"beta\" must be a list")?;
    let coeffs = beta_items.iter().map(|v| parse_element(&base, v)).collect::<Result<Vec<_>, _>>()?;
    let beta = AlgebraPoly::new(base.clone(), coeffs)?;
    let u = AhElement::from_poly(e, &beta)?;
    let alpha = e.alpha();
    let p = resultant_poly_in_c(alpha, &u.rep()[1..])?;
    Ok(json!({
        "descriptor": serde_json::to_value(descriptor_to_json(&ext))?,
        "sylvester_matrix": matrix_to_json(&sylvester_matrix(alpha, &u.as_poly())?),
        "resultant": element_to_json(&u.resultant()),
        "via_multiplication_matrix": element_to_json(&resultant_via_multiplication_matrix(alpha, &u.as_poly())?),
        "resultant_polynomial_in_b0": p.full_coeffs().iter().map(element_to_json).collect::<Vec<_>>(),
        "inversion": inversion_to_json(&AnyElement::Extension(u.clone()).try_invert(&ctx.tol)),
    }))
}

/// `{"descriptor": arens_hoffman, "element": [...]}`.
pub fn ah_invert(req: &Value, ctx: &RunContext) -> Result<Value> {
    let d = descriptor(field(req, "descriptor")?)?;
    extension(&d)?;
    let u = ah(parse_element(&d, field(req, "element")?)?)?;
    Ok(json!({
        "resultant": element_to_json(&u.resultant()),
        "inversion": inversion_to_json(&AnyElement::Extension(u.clone()).try_invert(&ctx.tol)),
    }))
}

#[derive(Deserialize)]
struct PerturbRequest {
    descriptor: Value,
    element: Value,
    epsilon: f64,
    #[serde(default)]
    max_samples_per_stage: Option<usize>,
}

/// `{"descriptor": arens_hoffman, "element": [...], "epsilon": ε}`.
pub fn perturb(req: &Value, ctx: &RunContext) -> Result<Value> {
    let r: PerturbRequest = serde_json::from_value(req.clone())?;
    let d = descriptor(&r.descriptor)?;
    extension(&d)?;
    let u = ah(parse_element(&d, &r.element)?)?;
    let mut cfg = PerturbConfig::new(r.epsilon, ctx.seed);
    cfg.tolerances = ctx.tol;
    if let Some(m) = r.max_samples_per_stage {
        cfg.max_samples_per_stage = m;
    }
    let (perturbed, trace) = perturb_to_invertible(&u, &cfg)?;
    Ok(json!({
        "perturbed": element_to_json(&AnyElement::Extension(perturbed.clone())),
        "resultant": element_to_json(&perturbed.resultant()),
        "trace": serde_json::to_value(trace.summary())?,
        "stage_values": trace.stages.iter().map(|s| element_to_json(&s.value)).collect::<Vec<_>>(),
    }))
}

#[derive(Deserialize)]
struct MatrixRequest {
    descriptor: Value,
    matrix: Vec<Vec<Value>>,
    sigma: Vec<usize>,
    epsilon: f64,
    #[serde(default = "default_samples")]
    max_samples: usize,
}

fn default_samples() -> usize {
    200
}

/// `{"descriptor": d, "matrix": [[...]], "sigma": [σ(0), …], "epsilon": ε}`.
pub fn matrix(req: &Value, ctx: &RunContext) -> Result<Value> {
    let r: MatrixRequest = serde_json::from_value(req.clone())?;
    let d = descriptor(&r.descriptor)?;
    let rows = r
        .matrix
        .iter()
        .map(|row| row.iter().map(|v| parse_element(&d, v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|row| row.len() != rows.len()) {
        bail!("matrix must be square");
    }
    let b = SquareMatrix::from_rows(rows);
    let mut rng = stream_rng(ctx.seed, 0, 0);
    let p = matrix_perturb(&b, r.epsilon, &r.sigma, &mut rng, r.max_samples, 0.5, &ctx.tol)?;
    Ok(json!({
        "matrix": matrix_to_json(&p.matrix),
        "s": complex_to_json(p.s),
        "determinant": element_to_json(&p.determinant),
        "determinant_inverse_residual": p.certificate.residual,
        "displacement": p.displacement,
        "samples_used": p.samples_used,
    }))
}

#[derive(Deserialize)]
struct BeurlingRequest {
    weight: WeightJson,
    element: Value,
}

/// `{"weight": {...}, "element": {"lo": k, "coeffs": [...]}}`.
pub fn beurling(req: &Value, ctx: &RunContext) -> Result<Value> {
    let r: BeurlingRequest = serde_json::from_value(req.clone())?;
    let w = Arc::new(parse_weight(&r.weight)?);
    let d = AnyDescriptor::Beurling(w.clone());
    let AnyElement::Laurent(x) = parse_element(&d, &r.element)? else { unreachable!() };
    let annulus = w.radii();
    let mut out = json!({"annulus": serde_json::to_value(annulus)?});
    match gelfand_roots(&x) {
        Ok(g) => {
            out["gelfand_roots"] = json!({
                "shift": g.shift,
                "roots": g.roots.iter().map(|&z| complex_to_json(z)).collect::<Vec<_>>(),
            });
        }
        Err(e) => out["gelfand_roots"] = json!({"error": e.to_string()}),
    }
    out["obstruction"] = match obstruction_verdict(&x, &annulus, ctx.tol.annulus_rel) {
        Ok(o) => serde_json::to_value(o)?,
        Err(e) => json!({"error": e.to_string()}),
    };
    out["inversion"] = inversion_to_json(&AnyElement::Laurent(x).try_invert(&ctx.tol));
    Ok(out)
}

/// A coefficient list (lowest first) or `{"coeffs": [...]}`.
pub fn disc_closure(req: &Value, ctx: &RunContext) -> Result<Value> {
    let list = req.get("coeffs").unwrap_or(req);
    let coeffs = list
        .as_array()
        .context("expected a coefficient list")?
        .iter()
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    let verdict = disc_closure_membership(&coeffs, ctx.tol.annulus_rel)?;
    Ok(json!({"verdict": serde_json::to_value(verdict)?}))
}

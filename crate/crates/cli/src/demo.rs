//! Worked examples printed with their intermediate values.

use std::fmt::Write;

use anyhow::{bail, Result};
use arens_core::fullness::{circle_non_fullness_probe, circle_points, rational_sample, SAMPLE_POLES};
use arens_core::{
    make_extension, stream_rng, sylvester_matrix, AhElement, BanachAlgebra, FiniteElement, FiniteSpace, MonicPoly, Ring,
};
use num_complex::Complex64;

use crate::instances::finite;
use crate::ops::RunContext;

pub const DEMOS: [&str; 3] = ["square-root-resultant", "circle-non-fullness", "x-bar-inverse"];

pub fn run(name: &str, ctx: &RunContext) -> Result<String> {
    match name {
        "square-root-resultant" => square_root_resultant(ctx),
        "circle-non-fullness" => circle_non_fullness(ctx),
        "x-bar-inverse" => x_bar_inverse(ctx),
        _ => bail!("unknown demo {name:?}; available: {}", DEMOS.join(", ")),
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

fn fmt_f(x: &FiniteElement<f64>) -> String {
    let parts: Vec<String> = x.values().iter().map(|&z| fmt_c(z)).collect();
    format!("({})", parts.join(", "))
}

/// `res(x² − a₀, b₀ + b₁x) = b₀² − a₀b₁²` on random inputs over `ℂ` and `ℂ³`.
fn square_root_resultant(ctx: &RunContext) -> Result<String> {
    let mut out = String::new();
    let mut rng = stream_rng(ctx.seed, 0, 0);
    writeln!(out, "resultant of α = x² − a₀ and β = b₀ + b₁x against b₀² − a₀b₁²")?;
    for points in [1, 1, 3] {
        let d = FiniteSpace { points };
        let a0 = finite(&mut rng, points, 2.0);
        let b0 = finite(&mut rng, points, 2.0);
        let b1 = finite(&mut rng, points, 2.0);
        let alpha = MonicPoly::from_lower(d, vec![a0.neg_ref(), FiniteElement::zero(&d)])?;
        let desc = make_extension(&d, alpha.clone(), None)?;
        let u = AhElement::from_coeffs(&desc, vec![b0.clone(), b1.clone()])?;
        let res = u.resultant();
        let formula = b0.mul_ref(&b0).sub_ref(&a0.mul_ref(&b1).mul_ref(&b1));
        writeln!(out, "\nbase ℂ^{points}, t = {:.6}", desc.t())?;
        writeln!(out, "  a₀ = {}", fmt_f(&a0))?;
        writeln!(out, "  b₀ = {}", fmt_f(&b0))?;
        writeln!(out, "  b₁ = {}", fmt_f(&b1))?;
        writeln!(out, "  Sylvester matrix:")?;
        for row in sylvester_matrix(&alpha, &u.as_poly())?.rows() {
            let cells: Vec<String> = row.iter().map(fmt_f).collect();
            writeln!(out, "    [{}]", cells.join("  "))?;
        }
        writeln!(out, "  det              = {}", fmt_f(&res))?;
        writeln!(out, "  b₀² − a₀b₁²      = {}", fmt_f(&formula))?;
        writeln!(out, "  relative error   = {:.3e}", res.distance(&formula)? / formula.norm().max(f64::MIN_POSITIVE))?;
    }
    Ok(out)
}

/// `z − 2` is invertible in `C(S¹)` but `1/(z − 2)` is not approximated by
/// rational functions whose poles avoid `S¹ ∪ {2}`.
fn circle_non_fullness(ctx: &RunContext) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "x = z − 2 on m equally spaced points of the unit circle")?;
    let poles: Vec<String> = SAMPLE_POLES.iter().map(|&(re, im)| fmt_c(Complex64::new(re, im))).collect();
    writeln!(out, "subalgebra sample: 1, z, z², z⁻¹, z⁻², 1/(z − p) for p in {}", poles.join(", "))?;
    for m in [16, 64, 256, 1024] {
        let points = circle_points::<f64>(m);
        let x = FiniteElement::new(points.iter().map(|&z| z - Complex64::new(2.0, 0.0)).collect());
        let inverse = x.try_invert(&ctx.tol).map(|c| c.residual);
        let report = circle_non_fullness_probe::<f64>(m, 1e-6);
        writeln!(out, "\nm = {m}: sample size {}", rational_sample(&points).len())?;
        match inverse {
            Ok(r) => writeln!(out, "  x invertible in C(X), residual {r:.3e}")?,
            Err(e) => writeln!(out, "  x not invertible: {e}")?,
        }
        writeln!(out, "  least-squares relative sup residual of x⁻¹: {:.6}", report.relative_residual)?;
        writeln!(out, "  verdict: {}", serde_json::to_value(report.verdict)?.as_str().unwrap_or("?"))?;
    }
    Ok(out)
}

/// In `ℂ[x]/(x² − 1)` the class `x̄` squares to one.
fn x_bar_inverse(ctx: &RunContext) -> Result<String> {
    let mut out = String::new();
    let d = FiniteSpace { points: 1 };
    let one = FiniteElement::from_scalar(&d, Complex64::new(1.0, 0.0));
    let alpha = MonicPoly::from_lower(d, vec![one.neg_ref(), FiniteElement::zero(&d)])?;
    let desc = make_extension(&d, alpha, None)?;
    let x = AhElement::x_bar(&desc);
    writeln!(out, "A = ℂ[x]/(x² − 1), t = {:.6}", desc.t())?;
    writeln!(out, "x̄ = [{}]", x.rep().iter().map(fmt_f).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "res(α, x) = {}", fmt_f(&x.resultant()))?;
    let square = x.mul_ref(&x);
    writeln!(out, "x̄·x̄ = [{}]", square.rep().iter().map(fmt_f).collect::<Vec<_>>().join(", "))?;
    let cert = x.try_invert(&ctx.tol).map_err(|e| anyhow::anyhow!("{e:?}"))?;
    writeln!(out, "x̄⁻¹ = [{}]", cert.inverse.rep().iter().map(fmt_f).collect::<Vec<_>>().join(", "))?;
    writeln!(out, "‖x̄·x̄⁻¹ − 1‖ = {:.3e}", cert.residual)?;
    writeln!(out, "‖x̄⁻¹ − x̄‖ = {:.3e}", cert.inverse.distance(&x)?)?;
    Ok(out)
}

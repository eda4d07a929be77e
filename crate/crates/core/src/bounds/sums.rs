use num_complex::Complex64;

use super::report::{BoundReport, ConstantUsed};
use crate::error::{invalid, Result};
use crate::geometry::{delta, sqrt_neg};
use crate::schrodinger::{EigRecord, Potential, SpectralParams};

fn one_dim(params: &SpectralParams) -> Result<()> {
    if params.d != 1 {
        return Err(invalid(format!("only d = 1 is supported, got d = {}", params.d)));
    }
    Ok(())
}

fn off_axis(e: Complex64) -> Result<f64> {
    let d = delta(e);
    if !(d > 0.0) {
        return Err(invalid(format!("{e} lies on the half-line [0, ∞)")));
    }
    Ok(d)
}

/// `|E|^{1/2} ≤ ½ ∫|V|` for a single eigenvalue (γ = 1/2).
pub fn check_davies(e: Complex64, v: &Potential, params: &SpectralParams) -> Result<BoundReport> {
    one_dim(params)?;
    if params.gamma != 0.5 {
        return Err(invalid(format!("this bound needs gamma = 1/2 in one dimension, got {}", params.gamma)));
    }
    let lhs = e.norm().sqrt();
    let rhs = v.lp_power(1.0)?;
    Ok(BoundReport::new("davies", params.into(), lhs, rhs, ConstantUsed::Fixed(0.5)).with_eig(e))
}

/// `δ(E)^{γ-1/2} |E|^{1/2} ≤ ½ ∫|V|^{γ+1/2}`.
pub fn check_main1(e: Complex64, v: &Potential, params: &SpectralParams) -> Result<BoundReport> {
    params.validate()?;
    let g = params.gamma;
    let lhs = delta(e).powf(g - 0.5) * e.norm().sqrt();
    let rhs = v.lp_power(params.q())?;
    Ok(BoundReport::new("main1", params.into(), lhs, rhs, ConstantUsed::Fixed(0.5)).with_eig(e))
}

/// `|Im E| ≤ D^{1/(γ-1/2)} (Re E)^{-(1/2)/(γ-1/2)} (∫|V|^{γ+1/2})^{1/(γ-1/2)}`
/// for `Re E ≥ 0`. Returns `None` when `Re E < 0`.
pub fn check_main1cor(e: Complex64, v: &Potential, params: &SpectralParams) -> Result<Option<BoundReport>> {
    params.validate()?;
    let g = params.gamma;
    if !(g > 0.5) {
        return Err(invalid(format!("needs gamma > 1/2, got {g}")));
    }
    if e.re < 0.0 {
        return Ok(None);
    }
    let k = 1.0 / (g - 0.5);
    let n = v.lp_power(params.q())?;
    let rhs = e.re.powf(-0.5 * k) * n.powf(k);
    let c = 0.5f64.powf(k);
    Ok(Some(BoundReport::new("main1cor", params.into(), e.im.abs(), rhs, ConstantUsed::Fixed(c)).with_eig(e)))
}

/// `|E|^{(γ+1/2)/2} (Re √(-E))^{γ-1/2} ≤ ½ ((γ-1/2)/(γ+1/2))^{γ-1/2} ∫|V|^{γ+1/2}`.
pub fn check_dn(e: Complex64, v: &Potential, gamma: f64) -> Result<BoundReport> {
    if !(gamma > 0.5) {
        return Err(invalid(format!("needs gamma > 1/2, got {gamma}")));
    }
    let s = sqrt_neg(e)?;
    let lhs = e.norm().powf((gamma + 0.5) / 2.0) * s.re.powf(gamma - 0.5);
    let rhs = v.lp_power(gamma + 0.5)?;
    let c = 0.5 * ((gamma - 0.5) / (gamma + 0.5)).powf(gamma - 0.5);
    let params = SpectralParams::with_gamma(gamma);
    Ok(BoundReport::new("dn", (&params).into(), lhs, rhs, ConstantUsed::Fixed(c)).with_eig(e))
}

fn weighted(eigs: &[EigRecord], f: impl Fn(f64, f64) -> f64) -> f64 {
    eigs.iter().map(|r| r.mult as f64 * f(r.delta, r.modulus())).sum()
}

/// Eigenvalue sum for γ = 1/2: `(Σ δ(E) |E|^{ε/2})^{1/(2+ε)}` against `∫|V|`.
pub fn check_ltfrsa(eigs: &[EigRecord], v: &Potential, params: &SpectralParams) -> Result<BoundReport> {
    one_dim(params)?;
    if params.gamma != 0.5 || !(params.eps > 0.0) {
        return Err(invalid("this sum is implemented for gamma = 1/2 and eps > 0 in one dimension"));
    }
    let eps = params.eps;
    let sum = weighted(eigs, |d, m| d * m.powf(eps / 2.0));
    let lhs = sum.powf(1.0 / (2.0 + eps));
    Ok(BoundReport::new("ltfrsa", params.into(), lhs, v.lp_power(1.0)?, ConstantUsed::Empirical))
}

// radius R with |E|^γ ≤ C ∫|V|^q ⇔ |E| ≤ R
fn split_radius(params: &SpectralParams, n: f64, factor: f64) -> f64 {
    (factor * params.split * n).powf(1.0 / params.gamma)
}

fn inside<'a>(eigs: &'a [EigRecord], r: f64) -> impl Iterator<Item = &'a EigRecord> {
    eigs.iter().filter(move |e| e.modulus() <= r)
}

fn outside<'a>(eigs: &'a [EigRecord], r: f64) -> impl Iterator<Item = &'a EigRecord> {
    eigs.iter().filter(move |e| e.modulus() >= r)
}

/// Inside and outside sums for γ > 1/2:
/// `(Σ_{|E|^γ ≤ CN} δ^{2γ+ε})^{γ/(2γ+ε)} ≲ N` and
/// `(Σ_{|E|^γ ≥ μCN} δ^{2γ+ε}/|E|^{2γ+ε-γ/q+ε'})^{γq/(γ-ε'q)} ≲ μ^{-ε'q/(γ-ε'q)} N`.
pub fn check_main2(eigs: &[EigRecord], v: &Potential, params: &SpectralParams) -> Result<(BoundReport, BoundReport)> {
    params.validate()?;
    let (g, q, eps, ep) = (params.gamma, params.q(), params.eps, params.eps_prime);
    if !(g > 0.5) {
        return Err(invalid(format!("needs gamma > 1/2, got {g}")));
    }
    if !(ep < g / q) {
        return Err(invalid(format!("eps_prime must lie in (0, {}), got {ep}", g / q)));
    }
    let n = v.lp_power(q)?;
    let s_in: f64 = inside(eigs, split_radius(params, n, 1.0)).map(|e| e.mult as f64 * e.delta.powf(2.0 * g + eps)).sum();
    let lhs_in = s_in.powf(g / (2.0 * g + eps));
    let k = 2.0 * g + eps - g / q + ep;
    let s_out: f64 = outside(eigs, split_radius(params, n, params.mu))
        .map(|e| e.mult as f64 * e.delta.powf(2.0 * g + eps) / e.modulus().powf(k))
        .sum();
    let lhs_out = s_out.powf(g * q / (g - ep * q));
    let rhs_out = params.mu.powf(-ep * q / (g - ep * q)) * n;
    Ok((
        BoundReport::new("main2_inside", params.into(), lhs_in, n, ConstantUsed::Empirical),
        BoundReport::new("main2_outside", params.into(), lhs_out, rhs_out, ConstantUsed::Empirical),
    ))
}

/// `(Σ_{|E|^γ ≤ CN} δ^q)^{γ/q} ≲ N` and
/// `(Σ_{|E|^γ ≥ μCN} δ^q/|E|^{1/2+ε'})^{γ/(γ-ε')} ≲ μ^{-ε'/(γ-ε')} N`.
pub fn check_main3(eigs: &[EigRecord], v: &Potential, params: &SpectralParams) -> Result<(BoundReport, BoundReport)> {
    params.validate()?;
    let (g, q, ep) = (params.gamma, params.q(), params.eps_prime);
    if !(ep < g) {
        return Err(invalid(format!("eps_prime must lie in (0, {g}), got {ep}")));
    }
    let n = v.lp_power(q)?;
    let s_in: f64 = inside(eigs, split_radius(params, n, 1.0)).map(|e| e.mult as f64 * e.delta.powf(q)).sum();
    let s_out: f64 = outside(eigs, split_radius(params, n, params.mu))
        .map(|e| e.mult as f64 * e.delta.powf(q) / e.modulus().powf(0.5 + ep))
        .sum();
    Ok((
        BoundReport::new("main3_inside", params.into(), s_in.powf(g / q), n, ConstantUsed::Empirical),
        BoundReport::new(
            "main3_outside",
            params.into(),
            s_out.powf(g / (g - ep)),
            params.mu.powf(-ep / (g - ep)) * n,
            ConstantUsed::Empirical,
        ),
    ))
}

/// `(Σ δ(E))^{1/2} ≲ ∫|V|` over all eigenvalues.
pub fn check_main3_corollary(eigs: &[EigRecord], v: &Potential) -> Result<BoundReport> {
    let params = SpectralParams::with_gamma(0.5);
    let lhs = weighted(eigs, |d, _| d).sqrt();
    Ok(BoundReport::new("main3_corollary", (&params).into(), lhs, v.lp_power(1.0)?, ConstantUsed::Empirical))
}

/// `Σ δ^q/(|E|+a)^{2γ+1} ≲ a^{-2γ-1/2} N` at `a = params.a`.
pub fn check_main3proofkey(eigs: &[EigRecord], v: &Potential, params: &SpectralParams) -> Result<BoundReport> {
    params.validate()?;
    let (g, q, a) = (params.gamma, params.q(), params.a);
    let lhs = weighted(eigs, |d, m| d.powf(q) / (m + a).powf(2.0 * g + 1.0));
    let rhs = a.powf(-2.0 * g - 0.5) * v.lp_power(q)?;
    Ok(BoundReport::new("main3proofkey", params.into(), lhs, rhs, ConstantUsed::Empirical))
}

/// The comparison sums for γ ≥ 3/2 in one dimension: the small-eigenvalue
/// sum `(Σ_in δ^{q+ε}/|E|^{1/2})^{γ/(γ+ε)}`, the large-eigenvalue sum
/// `(Σ_out δ^{q+ε}/|E|^{1/2+2ε})^{γ/(γ-ε)}` (for ε < γ) and the averaged
/// sum `Σ δ^{q+ε}/|E|^{1/2+ε}`, each against `N`. The variant requiring
/// `γ < 1/2` does not apply in one dimension and is not produced.
pub fn check_dhk(eigs: &[EigRecord], v: &Potential, params: &SpectralParams) -> Result<Vec<BoundReport>> {
    params.validate()?;
    let (g, q, eps) = (params.gamma, params.q(), params.eps);
    if !(g >= 1.5) {
        return Err(invalid(format!("needs gamma >= 3/2 in one dimension, got {g}")));
    }
    let n = v.lp_power(q)?;
    let r = split_radius(params, n, 1.0);
    let mut out = Vec::new();
    let s2: f64 = inside(eigs, r).map(|e| e.mult as f64 * e.delta.powf(q + eps) / e.modulus().sqrt()).sum();
    out.push(BoundReport::new("dhk2", params.into(), s2.powf(g / (g + eps)), n, ConstantUsed::Empirical));
    if eps < g {
        let s3: f64 = outside(eigs, r)
            .map(|e| e.mult as f64 * e.delta.powf(q + eps) / e.modulus().powf(0.5 + 2.0 * eps))
            .sum();
        out.push(BoundReport::new("dhk3", params.into(), s3.powf(g / (g - eps)), n, ConstantUsed::Empirical));
    }
    let avg = weighted(eigs, |d, m| d.powf(q + eps) / m.powf(0.5 + eps));
    out.push(BoundReport::new("dhk_average", params.into(), avg, n, ConstantUsed::Empirical));
    Ok(out)
}

/// Terms of the comparison `δ^{q+ε}/|E|^{1/2+2ε} = (δ^q/|E|^{1/2+ε}) (δ/|E|)^ε`:
/// returns `(left, δ^q/|E|^{1/2+ε}, (δ/|E|)^ε)`.
pub fn dhk_comparison_terms(e: Complex64, gamma: f64, eps: f64) -> Result<(f64, f64, f64)> {
    let d = off_axis(e)?;
    let m = e.norm();
    let q = gamma + 0.5;
    Ok((d.powf(q + eps) / m.powf(0.5 + 2.0 * eps), d.powf(q) / m.powf(0.5 + eps), (d / m).powf(eps)))
}

/// Reports for every eigenvalue of a list, single-eigenvalue bounds only.
pub fn pointwise_reports(eigs: &[EigRecord], v: &Potential, params: &SpectralParams) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for r in eigs {
        out.push(check_main1(r.e, v, params)?);
        if params.gamma == 0.5 {
            out.push(check_davies(r.e, v, params)?);
        } else {
            if let Some(c) = check_main1cor(r.e, v, params)? {
                out.push(c);
            }
            out.push(check_dn(r.e, v, params.gamma)?);
        }
    }
    Ok(out)
}

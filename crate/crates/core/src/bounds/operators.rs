use num_complex::Complex64;

use super::report::{BoundReport, ConstantUsed, ReportParams};
use crate::determinants::{det_n, gohberg_rouche_mult, AnalyticFamily};
use crate::error::{invalid, Error, Result};
use crate::geometry::{delta, dist_to_segment, psi, resolvent_dist_lower};
use crate::numerics::{eig, inverse, schatten_norm, schatten_norm_of_values, singular_values, CMatrix, Contour, TridiagonalLu};
use crate::schrodinger::{nystrom_resolvent, BirmanSchwinger, BsMode, Grid1D, Potential, SpectralParams};
use crate::zeros::{find_zeros, ZeroSearch};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn same_grid(a: &Potential, b: &Potential) -> Result<()> {
    let (g, h) = (a.grid(), b.grid());
    if g.n != h.n || (g.x0 - h.x0).abs() > 1e-12 || (g.x1 - h.x1).abs() > 1e-12 {
        return Err(Error::DimensionMismatch("weights live on different grids".into()));
    }
    Ok(())
}

/// `diag(W1) G_z diag(W2)` by Nyström quadrature, restricted to the supports.
pub fn weighted_resolvent(w1: &Potential, w2: &Potential, z: Complex64) -> Result<CMatrix> {
    same_grid(w1, w2)?;
    let s1 = w1.support();
    let s2 = w2.support();
    let g = nystrom_resolvent(w1.grid(), z)?;
    let (a, b) = (w1.values(), w2.values());
    Ok(CMatrix::from_fn(s1.len(), s2.len(), |i, j| a[s1[i]] * g[(s1[i], s2[j])] * b[s2[j]]))
}

/// `‖W1 (-d²/dx² - z)⁻¹ W2‖_{2q} ≤ 2^{-1/q} δ(z)^{-1+1/q} |z|^{-1/(2q)} ‖W1‖_{2q} ‖W2‖_{2q}`
/// with `q = γ + 1/2`, Nyström discretization.
pub fn check_prop_res(w1: &Potential, w2: &Potential, z: Complex64, params: &SpectralParams) -> Result<BoundReport> {
    params.validate()?;
    let q = params.q();
    let p = 2.0 * q;
    let k = weighted_resolvent(w1, w2, z)?;
    let lhs = if k.rows() == 0 || k.cols() == 0 { 0.0 } else { schatten_norm(&k, p)? };
    let rhs = delta(z).powf(-1.0 + 1.0 / q) * z.norm().powf(-1.0 / p) * w1.lp_norm(p)? * w2.lp_norm(p)?;
    Ok(BoundReport::new("prop_res", params.into(), lhs, rhs, ConstantUsed::Fixed(2f64.powf(-1.0 / q))).with_eig(z))
}

/// Hilbert–Schmidt endpoint `‖W1 (-d²/dx² - z)⁻¹ W2‖_2 ≤ ½ |z|^{-1/2} ‖W1‖_2 ‖W2‖_2`.
pub fn check_frsa_endpoint(w1: &Potential, w2: &Potential, z: Complex64) -> Result<BoundReport> {
    let mut r = check_prop_res(w1, w2, z, &SpectralParams::with_gamma(0.5))?;
    r.name = "frsa_endpoint".into();
    Ok(r)
}

/// Operator norm bound `‖W1 (-d²/dx² - z)⁻¹ W2‖ ≤ δ(z)⁻¹ ‖W1‖_∞ ‖W2‖_∞`.
pub fn check_trivial_resolvent(w1: &Potential, w2: &Potential, z: Complex64) -> Result<BoundReport> {
    let k = weighted_resolvent(w1, w2, z)?;
    let lhs = if k.rows() == 0 || k.cols() == 0 { 0.0 } else { schatten_norm(&k, f64::INFINITY)? };
    let rhs = w1.sup_norm() * w2.sup_norm() / delta(z);
    Ok(BoundReport::new("trivial_resolvent", ReportParams::default(), lhs, rhs, ConstantUsed::Fixed(1.0)).with_eig(z))
}

// columns of (H0 + a)⁻¹ at the given indices, Dirichlet Laplacian on `grid`
fn shifted_resolvent_columns(grid: &Grid1D, a: f64, idx: &[usize]) -> Result<Vec<Vec<Complex64>>> {
    let n = grid.n;
    let ih2 = 1.0 / (grid.h * grid.h);
    let off = vec![c(-ih2); n - 1];
    let diag = vec![c(2.0 * ih2 + a); n];
    let lu = TridiagonalLu::new(&off, &diag, &off)?;
    Ok(idx
        .iter()
        .map(|&j| {
            let mut col = vec![c(0.0); n];
            col[j] = c(1.0);
            lu.solve_in_place(&mut col);
            col
        })
        .collect())
}

/// `‖W (H0 + a)^{-1/2}‖ ≲ a^{-γ/(2γ+1)} ‖W‖_{2γ+1}`, with the left side
/// computed as `‖W (H0+a)⁻¹ W*‖^{1/2}`.
pub fn check_bssobolev(w: &Potential, a: f64, params: &SpectralParams) -> Result<BoundReport> {
    params.validate()?;
    if !(a > 0.0) {
        return Err(invalid("a must be positive"));
    }
    let g = params.gamma;
    let s = w.support();
    let lhs = if s.is_empty() {
        0.0
    } else {
        let cols = shifted_resolvent_columns(w.grid(), a, &s)?;
        let wv = w.values();
        let m = CMatrix::from_fn(s.len(), s.len(), |i, j| wv[s[i]] * cols[j][s[i]] * wv[s[j]].conj());
        singular_values(&m)[0].sqrt()
    };
    let rhs = a.powf(-g / (2.0 * g + 1.0)) * w.lp_norm(2.0 * g + 1.0)?;
    let mut p = *params;
    p.a = a;
    Ok(BoundReport::new("bssobolev", (&p).into(), lhs, rhs, ConstantUsed::Empirical))
}

/// `(2π)⁻¹ ∫ (p² + a)^{-r} dp = a^{1/2-r} Γ(r-1/2) / (2 √π Γ(r))` for `r > 1/2`.
pub fn momentum_integral(a: f64, r: f64) -> f64 {
    a.powf(0.5 - r) * libm::tgamma(r - 0.5) / (2.0 * std::f64::consts::PI.sqrt() * libm::tgamma(r))
}

/// `‖(H0 + a)⁻¹ √|V|‖_{2q}^{2q} ≤ (2π)⁻¹ ∫(p²+a)^{-2q} dp · ∫|V|^q`.
pub fn check_kss(v: &Potential, a: f64, params: &SpectralParams) -> Result<BoundReport> {
    params.validate()?;
    if !(a > 0.0) {
        return Err(invalid("a must be positive"));
    }
    let q = params.q();
    let s = v.support();
    let lhs = if s.is_empty() {
        0.0
    } else {
        // Gram matrix of the columns R e_j √|V_j|; its eigenvalues are σ²
        let cols = shifted_resolvent_columns(v.grid(), a, &s)?;
        let av = v.abs_root();
        let gram = CMatrix::from_fn(s.len(), s.len(), |i, j| {
            let dot: Complex64 = cols[i].iter().zip(&cols[j]).map(|(x, y)| x.conj() * y).sum();
            dot * av[s[i]] * av[s[j]]
        });
        let lam = singular_values(&gram);
        schatten_norm_of_values(&lam, q)?.powf(q)
    };
    let rhs = momentum_integral(a, 2.0 * q) * v.lp_power(q)?;
    let mut p = *params;
    p.a = a;
    Ok(BoundReport::new("kss", (&p).into(), lhs, rhs, ConstantUsed::Fixed(1.0)))
}

/// The three members of the chain
/// `8^{-p} Σ δ^p/(|E|+a)^{2p} ≤ Σ dist((E+a)⁻¹, [0, 1/a])^p ≤ ‖(H+a)⁻¹ - (H0+a)⁻¹‖_p^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HansmannChain {
    pub first: f64,
    pub second: f64,
    pub third: f64,
    /// Whether the first inequality holds term by term.
    pub termwise: bool,
}

impl HansmannChain {
    pub fn reports(&self, a: f64, p: f64) -> [BoundReport; 2] {
        let params = ReportParams { a: Some(a), p: Some(p), ..Default::default() };
        [
            BoundReport::new("hansmann_distance", params, self.first, self.second, ConstantUsed::Fixed(1.0)),
            BoundReport::new("hansmann_schatten", params, self.second, self.third, ConstantUsed::Fixed(1.0)),
        ]
    }

    pub fn holds(&self) -> bool {
        self.termwise && self.first <= self.second * (1.0 + 1e-12) && self.second <= self.third * (1.0 + 1e-10) + 1e-300
    }
}

/// Evaluates the chain for `H = H0 + V` with `H0` Hermitian and nonnegative.
pub fn check_hansmann_chain(h0: &CMatrix, v: &CMatrix, a: f64, p: f64) -> Result<HansmannChain> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if !(a > 0.0) {
        return Err(invalid("a must be positive"));
    }
    let herm = h0.try_sub(&h0.adjoint())?.max_abs();
    if herm > 1e-12 * h0.max_abs().max(1.0) {
        return Err(invalid("H0 is not Hermitian"));
    }
    let h = h0.try_add(v)?;
    let n = h.rows();
    let eigs = eig(&h)?;
    let mut first = 0.0;
    let mut second = 0.0;
    let mut termwise = true;
    for e in &eigs {
        let t1 = (delta(*e) / (8.0 * (e.norm() + a) * (e.norm() + a))).powf(p);
        let inv = (e + a).inv();
        let t2 = dist_to_segment(inv, a)?.powf(p);
        // the pointwise lower bound on the distance
        let lower = resolvent_dist_lower(*e, a)?.powf(p);
        if !(t1 <= lower * (1.0 + 1e-12) && lower <= t2 * (1.0 + 1e-9) + 1e-300) {
            termwise = false;
        }
        first += t1;
        second += t2;
    }
    let ra = inverse(&h.shift(c(a)))?;
    let r0 = inverse(&h0.shift(c(a)))?;
    let diff = ra.try_sub(&r0)?;
    let third = if n == 0 { 0.0 } else { schatten_norm(&diff, p)?.powf(p) };
    Ok(HansmannChain { first, second, third, termwise })
}

/// Relative residual of
/// `(H - z)⁻¹ = (H0 - z)⁻¹ - (H0 - z)⁻¹ G* (1 + K(z))⁻¹ G0 (H0 - z)⁻¹`
/// with `H = H0 + G* G0` and `K(z) = G0 (H0 - z)⁻¹ G*`.
pub fn check_resolvent_identity(h0: &CMatrix, g: &CMatrix, g0: &CMatrix, z: Complex64) -> Result<f64> {
    if g.rows() != g0.rows() || g.cols() != h0.cols() || g0.cols() != h0.cols() {
        return Err(Error::DimensionMismatch(format!(
            "G is {}x{}, G0 is {}x{}, H0 is {}x{}",
            g.rows(),
            g.cols(),
            g0.rows(),
            g0.cols(),
            h0.rows(),
            h0.cols()
        )));
    }
    let gs = g.adjoint();
    let h = h0.try_add(&gs.matmul(g0)?)?;
    let lhs = inverse(&h.shift(-z))?;
    let r0 = inverse(&h0.shift(-z))?;
    let k = g0.matmul(&r0)?.matmul(&gs)?;
    let mid = inverse(&k.shift(c(1.0)))?;
    let corr = r0.matmul(&gs)?.matmul(&mid)?.matmul(g0)?.matmul(&r0)?;
    let rhs = r0.try_sub(&corr)?;
    let scale = lhs.frobenius_norm().max(r0.frobenius_norm()).max(f64::MIN_POSITIVE);
    Ok(lhs.try_sub(&rhs)?.frobenius_norm() / scale)
}

/// Birman–Schwinger check at one eigenvalue: the smallest singular value
/// of `1 + K(E)` relative to `1 + ‖K(E)‖`, and the multiplicity of the
/// zero of the determinant inside a small circle.
#[derive(Debug, Clone, PartialEq)]
pub struct BsCheck {
    pub report: BoundReport,
    pub sigma_min: f64,
    pub scale: f64,
    pub multiplicity: u64,
}

/// Threshold on `σ_min(1 + K(E)) / (1 + ‖K(E)‖)` for a detected eigenvalue.
pub const BS_TOLERANCE: f64 = 1e-8;

pub fn check_bs_principle(v: &Potential, e: Complex64, radius: f64) -> Result<BsCheck> {
    if !(radius > 0.0) || delta(e) <= radius {
        return Err(invalid(format!("the circle of radius {radius} around {e} reaches the half-line")));
    }
    let bs = BirmanSchwinger::new(v, BsMode::Discrete);
    let k = bs.matrix(e)?;
    let (sigma_min, scale) = if k.rows() == 0 {
        (1.0, 1.0)
    } else {
        let sk = singular_values(&k);
        let s1 = singular_values(&k.shift(c(1.0)));
        (*s1.last().unwrap_or(&1.0), 1.0 + sk[0])
    };
    let family = AnalyticFamily::birman_schwinger(v, BsMode::Discrete);
    let multiplicity = if k.rows() == 0 { 0 } else { gohberg_rouche_mult(&family, &Contour::circle(e, radius)?)? };
    let report = BoundReport::new("bs_principle", ReportParams::default(), sigma_min, scale, ConstantUsed::Fixed(BS_TOLERANCE))
        .with_eig(e);
    Ok(BsCheck { report, sigma_min, scale, multiplicity })
}

/// Zeros of `z ↦ det₂(1 + K(z))` in the region `ψ_a(|w| < radius)`, found
/// on the disk side of the conformal map. Returns the zeros in the
/// spectral variable with their orders.
pub fn birman_schwinger_zeros(v: &Potential, a: f64, radius: f64, min_cell: f64) -> Result<Vec<(Complex64, u32)>> {
    let bs = BirmanSchwinger::new(v, BsMode::Discrete);
    if bs.dim() == 0 {
        return Ok(Vec::new());
    }
    let g = |w: Complex64| -> Complex64 {
        psi(a, w)
            .and_then(|z| bs.matrix(z))
            .and_then(|k| det_n(&k, 2))
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let zeros = find_zeros(&g, &ZeroSearch::new(radius, min_cell))?;
    zeros.into_iter().map(|z| Ok((psi(a, z.w)?, z.order))).collect()
}

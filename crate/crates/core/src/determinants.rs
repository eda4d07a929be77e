//! Regularized determinants, zero orders of analytic matrix families and
//! the correction polynomial relating `det_n` of a product to its factors.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::numerics::contour::integer_contour_integral;
use crate::numerics::{det, eig, singular_values, winding_number, CMatrix, Contour, Lu};
use crate::schrodinger::{BirmanSchwinger, BsMode, Potential};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        return Err(invalid("determinant order must be at least 1"));
    }
    Ok(())
}

/// `det_n(1+K) = Π (1+λ) exp(Σ_{m<n} (-1)^m λ^m / m)` over the eigenvalues
/// of `K`.
pub fn det_n(k: &CMatrix, n: u32) -> Result<Complex64> {
    check_order(n)?;
    let lambdas = eig(k)?;
    let mut out = one();
    for l in lambdas {
        let mut s = Complex64::new(0.0, 0.0);
        let mut pow = one();
        for m in 1..n {
            pow *= l;
            let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
            s += pow * (sign / m as f64);
        }
        out *= (one() + l) * s.exp();
    }
    Ok(out)
}

/// Same value as [`det_n`] computed as `det(1+K) exp(Σ (-1)^m tr K^m / m)`
/// with an LU determinant and matrix powers.
pub fn det_n_by_traces(k: &CMatrix, n: u32) -> Result<Complex64> {
    check_order(n)?;
    k.require_square()?;
    let d = det(&k.shift(one()))?;
    let mut s = Complex64::new(0.0, 0.0);
    let mut pow = CMatrix::identity(k.rows());
    for m in 1..n {
        pow = pow.matmul(k)?;
        let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
        s += pow.trace() * (sign / m as f64);
    }
    Ok(d * s.exp())
}

type MatFn = dyn Fn(Complex64) -> Result<CMatrix> + Send + Sync;

/// Where an [`AnalyticFamily`] is defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `C \ [0, ∞)`.
    SlitPlane,
    Disk { center: Complex64, radius: f64 },
    Plane,
}

impl Domain {
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Domain::SlitPlane => !(z.im == 0.0 && z.re >= 0.0),
            Domain::Disk { center, radius } => (z - center).norm() < radius,
            Domain::Plane => true,
        }
    }
}

/// An analytic family `z ↦ K(z)` of square matrices; the family of
/// interest is `W(z) = 1 + K(z)`.
#[derive(Clone)]
pub struct AnalyticFamily {
    eval: Arc<MatFn>,
    deriv: Option<Arc<MatFn>>,
    pub domain: Domain,
}

impl std::fmt::Debug for AnalyticFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticFamily")
            .field("domain", &self.domain)
            .field("exact_derivative", &self.deriv.is_some())
            .finish()
    }
}

impl AnalyticFamily {
    pub fn new(domain: Domain, eval: impl Fn(Complex64) -> Result<CMatrix> + Send + Sync + 'static) -> Self {
        AnalyticFamily { eval: Arc::new(eval), deriv: None, domain }
    }

    pub fn with_derivative(mut self, deriv: impl Fn(Complex64) -> Result<CMatrix> + Send + Sync + 'static) -> Self {
        self.deriv = Some(Arc::new(deriv));
        self
    }

    /// The Birman–Schwinger family of `v`, with its exact derivative.
    pub fn birman_schwinger(v: &Potential, mode: BsMode) -> Self {
        let bs = Arc::new(BirmanSchwinger::new(v, mode));
        let b1 = Arc::clone(&bs);
        AnalyticFamily::new(Domain::SlitPlane, move |z| bs.matrix(z))
            .with_derivative(move |z| Ok(b1.matrix_and_derivative(z)?.1))
    }

    pub fn eval(&self, z: Complex64) -> Result<CMatrix> {
        if !self.domain.contains(z) {
            return Err(invalid(format!("{z} is outside the domain of the family")));
        }
        (self.eval)(z)
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    /// `K'(z)`, exact if supplied, otherwise a five-point difference with step `h`.
    pub fn derivative(&self, z: Complex64, h: f64) -> Result<CMatrix> {
        if let Some(d) = &self.deriv {
            return d(z);
        }
        let f = |t: f64| self.eval(z + t);
        let (a, b, c, d) = (f(-2.0 * h)?, f(-h)?, f(h)?, f(2.0 * h)?);
        let num = &(&(&a - &b.scale(Complex64::new(8.0, 0.0))) + &c.scale(Complex64::new(8.0, 0.0))) - &d;
        Ok(num.scale(Complex64::new(1.0 / (12.0 * h), 0.0)))
    }

    /// `det_n(1 + K(z))`.
    pub fn det_n(&self, z: Complex64, n: u32) -> Result<Complex64> {
        det_n(&self.eval(z)?, n)
    }
}

fn check_contour_in_domain(family: &AnalyticFamily, contour: &Contour) -> Result<()> {
    let probes = 64;
    for k in 0..probes {
        let z = contour.point(k, probes);
        if !family.domain.contains(z) {
            return Err(invalid(format!("contour point {z} leaves the domain of the family")));
        }
    }
    if let Domain::SlitPlane = family.domain {
        if crate::geometry::delta(contour.center) <= contour.radius {
            return Err(invalid("contour crosses the half-line [0, ∞)"));
        }
    }
    Ok(())
}

/// Order of the zero of `z ↦ det_n(1 + K(z))` at `z0`, as the winding
/// number of the determinant around `contour` (which must enclose `z0` and
/// no other zero).
pub fn zero_order(family: &AnalyticFamily, z0: Complex64, contour: &Contour, n: u32) -> Result<u64> {
    check_order(n)?;
    if !contour.contains(z0) {
        return Err(invalid(format!("contour does not enclose {z0}")));
    }
    check_contour_in_domain(family, contour)?;
    let f = |z: Complex64| family.det_n(z, n).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let w = winding_number(f, contour)?;
    if w < 0 {
        return Err(Error::ZeroSearch(format!("negative winding {w}: the family has a pole inside")));
    }
    Ok(w as u64)
}

/// Total algebraic multiplicity inside `contour` via the trace integral
/// `(1/2πi)∮ tr[(1+K)⁻¹ K'] dz`.
pub fn gohberg_rouche_mult(family: &AnalyticFamily, contour: &Contour) -> Result<u64> {
    check_contour_in_domain(family, contour)?;
    let h = 1e-4 * contour.radius;
    let w = integer_contour_integral(contour, |z| {
        let k = family.eval(z)?;
        let lu = Lu::new(&k.shift(one()))?;
        if lu.pivot_ratio() < 1e-12 {
            let min_abs = singular_values(&k.shift(one())).last().copied().unwrap_or(0.0);
            return Err(Error::ZeroOnContour { min_abs, at: z });
        }
        let dk = family.derivative(z, h)?;
        let x = lu.solve_matrix(&dk)?;
        Ok(x.trace())
    })?;
    if w < 0 {
        return Err(Error::ZeroSearch(format!("negative multiplicity {w}")));
    }
    Ok(w as u64)
}

/// Builds `K(z) = W(z) - 1` with
/// `W(z) = E(z) (P0 + Σ (z-z0)^{k_i} P_i) G(z)`, coordinate projections
/// `P_i = e_i e_iᵀ` and random affine invertible `E`, `G`. The size is
/// `r + 3`. `E` and `G` are drawn so that they stay invertible on the disk
/// `|z - z0| ≤ 1`; the eigenvalue at `z0` then has multiplicity `Σ k_i`
/// and there are no others in that disk.
pub fn jordan_test_family(z0: Complex64, multiplicities: &[u32], seed: u64) -> Result<AnalyticFamily> {
    jordan_family_impl(z0, multiplicities, Some(seed))
}

/// [`jordan_test_family`] with `E = G = 1`.
pub fn jordan_diagonal_family(z0: Complex64, multiplicities: &[u32]) -> Result<AnalyticFamily> {
    jordan_family_impl(z0, multiplicities, None)
}

fn jordan_family_impl(z0: Complex64, ks: &[u32], seed: Option<u64>) -> Result<AnalyticFamily> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(invalid("multiplicities must be a non-empty list of positive integers"));
    }
    if ks.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid("multiplicities must be non-decreasing"));
    }
    let r = ks.len();
    let n = r + 3;
    let (e0, e1, g0, g1) = match seed {
        None => (CMatrix::identity(n), CMatrix::zeros(n, n), CMatrix::identity(n), CMatrix::zeros(n, n)),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let scale = 1.0 / (n as f64).sqrt();
            let mut draw = |amp: f64| CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (amp * scale));
            let mut found = None;
            for _ in 0..50 {
                let (a, b, c, d) = (draw(0.3), draw(0.1), draw(0.3), draw(0.1));
                let e0 = a.shift(one());
                let g0 = c.shift(one());
                // σ_min(E(z)) ≥ σ_min(E(z0)) - |z - z0| ‖E1‖ on the unit disk around z0
                let ok = |m0: &CMatrix, m1: &CMatrix| {
                    let smin = singular_values(m0).last().copied().unwrap_or(0.0);
                    let n1 = singular_values(m1).first().copied().unwrap_or(0.0);
                    smin > 2.0 * n1 + 0.1
                };
                if ok(&e0, &b) && ok(&g0, &d) {
                    found = Some((e0, b, g0, d));
                    break;
                }
            }
            found.ok_or_else(|| Error::ZeroSearch("could not draw invertible factors".into()))?
        }
    };
    let ks: Vec<u32> = ks.to_vec();
    let middle = move |z: Complex64| -> (CMatrix, CMatrix) {
        let t = z - z0;
        let mut d = CMatrix::identity(n);
        let mut dd = CMatrix::zeros(n, n);
        for (i, &k) in ks.iter().enumerate() {
            d[(i, i)] = t.powu(k);
            dd[(i, i)] = t.powu(k - 1) * k as f64;
        }
        (d, dd)
    };
    let (e0c, e1c, g0c, g1c) = (e0.clone(), e1.clone(), g0.clone(), g1.clone());
    let mid = Arc::new(middle);
    let mid2 = Arc::clone(&mid);
    let eval = move |z: Complex64| -> Result<CMatrix> {
        let t = z - z0;
        let e = e0.try_add(&e1.scale(t))?;
        let g = g0.try_add(&g1.scale(t))?;
        let (d, _) = mid(z);
        Ok(e.matmul(&d)?.matmul(&g)?.shift(-one()))
    };
    let deriv = move |z: Complex64| -> Result<CMatrix> {
        let t = z - z0;
        let e = e0c.try_add(&e1c.scale(t))?;
        let g = g0c.try_add(&g1c.scale(t))?;
        let (d, dd) = mid2(z);
        let a = e1c.matmul(&d)?.matmul(&g)?;
        let b = e.matmul(&dd)?.matmul(&g)?;
        let c = e.matmul(&d)?.matmul(&g1c)?;
        a.try_add(&b)?.try_add(&c)
    };
    Ok(AnalyticFamily::new(Domain::Plane, eval).with_derivative(deriv))
}

fn require_same_square(ms: &[&CMatrix]) -> Result<usize> {
    let n = ms[0].rows();
    for m in ms {
        m.require_square()?;
        if m.rows() != n {
            return Err(Error::DimensionMismatch("K, F, L must have the same size".into()));
        }
    }
    Ok(n)
}

/// `p_n(K,F,L) = Σ_{m=1}^{n-1} ((-1)^m/m) (A^m - B^m)` with
/// `1 + A = (1+K)(1+F)(1+L)` and `1 + B = (1+K)(1+L)`.
pub fn detprod_correction(k: &CMatrix, f: &CMatrix, l: &CMatrix, n: u32) -> Result<CMatrix> {
    check_order(n)?;
    let size = require_same_square(&[k, f, l])?;
    let kf = k.matmul(f)?;
    let kl = k.matmul(l)?;
    let fl = f.matmul(l)?;
    let kfl = kf.matmul(l)?;
    let a = k.try_add(f)?.try_add(l)?.try_add(&kf)?.try_add(&kl)?.try_add(&fl)?.try_add(&kfl)?;
    let b = k.try_add(l)?.try_add(&kl)?;
    let mut out = CMatrix::zeros(size, size);
    let mut pa = CMatrix::identity(size);
    let mut pb = CMatrix::identity(size);
    for m in 1..n {
        pa = pa.matmul(&a)?;
        pb = pb.matmul(&b)?;
        let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
        out = out.try_add(&pa.try_sub(&pb)?.scale(Complex64::new(sign / m as f64, 0.0)))?;
    }
    Ok(out)
}

/// Relative residual of `det_n((1+K)(1+F)(1+L)) = det(1+F) det_n((1+K)(1+L)) e^{tr p_n}`.
pub fn verify_detprod(k: &CMatrix, f: &CMatrix, l: &CMatrix, n: u32) -> Result<f64> {
    let size = require_same_square(&[k, f, l])?;
    let id = CMatrix::identity(size);
    let prod3 = k.shift(one()).matmul(&f.shift(one()))?.matmul(&l.shift(one()))?;
    let lhs = det_n(&prod3.try_sub(&id)?, n)?;
    let prod2 = k.shift(one()).matmul(&l.shift(one()))?;
    let p = detprod_correction(k, f, l, n)?;
    let rhs = det(&f.shift(one()))? * det_n(&prod2.try_sub(&id)?, n)? * p.trace().exp();
    Ok((lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0))
}

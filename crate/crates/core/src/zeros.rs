//! Zeros of analytic functions on the unit disk and the weighted zero sums
//! that control eigenvalues of analytic operator families.

use std::cell::Cell as Counter;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundReport, ConstantUsed, ReportParams};
use crate::error::{invalid, Error, Result};
use crate::schrodinger::EigRecord;

/// A zero of an analytic function in the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskZero {
    pub w: Complex64,
    pub order: u32,
}

impl DiskZero {
    pub fn new(w: Complex64, order: u32) -> Result<Self> {
        if !(w.norm() < 1.0) || order == 0 {
            return Err(invalid(format!("disk zero needs |w| < 1 and positive order, got {w} of order {order}")));
        }
        Ok(DiskZero { w, order })
    }
}

/// Growth data `‖K(z)‖_p ≤ M δ(z)^{-ρ} |z|^{-σ}` of an analytic family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AFParams {
    pub p: f64,
    pub rho: f64,
    pub sigma: f64,
    pub m: f64,
}

impl AFParams {
    pub fn new(p: f64, rho: f64, sigma: f64, m: f64) -> Result<Self> {
        let a = AFParams { p, rho, sigma, m };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) {
            return Err(Error::InvalidExponent(self.p));
        }
        if !(self.rho >= 0.0) || !(self.rho + self.sigma > 0.0) {
            return Err(invalid(format!("need rho >= 0 and rho + sigma > 0, got rho = {}, sigma = {}", self.rho, self.sigma)));
        }
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(invalid(format!("M must be positive, got {}", self.m)));
        }
        Ok(())
    }

    /// The radius `M^{1/(ρ+σ)}` separating small and large eigenvalues.
    pub fn radius(&self) -> f64 {
        self.m.powf(1.0 / (self.rho + self.sigma))
    }

    /// Exponent `pρ + 1 + ε` on δ.
    pub fn s(&self, eps: f64) -> f64 {
        self.p * self.rho + 1.0 + eps
    }

    /// `(pρ + 2pσ - 1 + ε)₊`.
    pub fn t(&self, eps: f64) -> f64 {
        (self.p * self.rho + 2.0 * self.p * self.sigma - 1.0 + eps).max(0.0)
    }
}

/// Settings for [`find_zeros`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSearch {
    /// Zeros are searched in `|w| ≤ radius`.
    pub radius: f64,
    /// Cells smaller than this are not subdivided further.
    pub min_cell: f64,
    /// Maximal number of function evaluations.
    pub max_evals: usize,
}

impl ZeroSearch {
    pub fn new(radius: f64, min_cell: f64) -> Self {
        ZeroSearch { radius, min_cell, max_evals: 2_000_000 }
    }
}

// polar cell; `r0 == 0` means the full disk of radius r1
#[derive(Debug, Clone, Copy)]
struct PolarCell {
    r0: f64,
    r1: f64,
    t0: f64,
    t1: f64,
}

impl PolarCell {
    fn is_disk(&self) -> bool {
        self.r0 == 0.0
    }

    fn size(&self) -> f64 {
        if self.is_disk() {
            2.0 * self.r1
        } else {
            (self.r1 - self.r0).max(self.r1 * (self.t1 - self.t0))
        }
    }

    fn center(&self) -> Complex64 {
        if self.is_disk() {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(0.5 * (self.r0 + self.r1), 0.5 * (self.t0 + self.t1))
        }
    }

    fn contains(&self, w: Complex64, slack: f64) -> bool {
        let r = w.norm();
        if self.is_disk() {
            return r <= self.r1 + slack;
        }
        if r < self.r0 - slack || r > self.r1 + slack {
            return false;
        }
        let mut t = w.arg();
        while t < self.t0 {
            t += TAU;
        }
        while t > self.t0 + TAU {
            t -= TAU;
        }
        let pad = slack / r.max(1e-300);
        t <= self.t1 + pad || t - TAU >= self.t0 - pad
    }

    fn children(&self, f: f64) -> Vec<PolarCell> {
        if self.is_disk() {
            let rm = f * self.r1;
            let t0 = 0.37 * f;
            let mut out = vec![PolarCell { r0: 0.0, r1: rm, t0: 0.0, t1: TAU }];
            for k in 0..4 {
                let a = t0 + k as f64 * PI / 2.0;
                out.push(PolarCell { r0: rm, r1: self.r1, t0: a, t1: a + PI / 2.0 });
            }
            out
        } else {
            let rm = self.r0 + f * (self.r1 - self.r0);
            let tm = self.t0 + f * (self.t1 - self.t0);
            vec![
                PolarCell { r0: self.r0, r1: rm, t0: self.t0, t1: tm },
                PolarCell { r0: self.r0, r1: rm, t0: tm, t1: self.t1 },
                PolarCell { r0: rm, r1: self.r1, t0: self.t0, t1: tm },
                PolarCell { r0: rm, r1: self.r1, t0: tm, t1: self.t1 },
            ]
        }
    }
}

struct Tracker<'a> {
    g: &'a dyn Fn(Complex64) -> Complex64,
    evals: Counter<usize>,
    max_evals: usize,
}

impl Tracker<'_> {
    fn eval(&self, w: Complex64) -> Result<Complex64> {
        let k = self.evals.get() + 1;
        self.evals.set(k);
        if k > self.max_evals {
            return Err(Error::ZeroSearch(format!("evaluation budget of {} exhausted", self.max_evals)));
        }
        let v = (self.g)(w);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::ZeroSearch(format!("non-finite value at w = {w}")));
        }
        if v.norm() == 0.0 {
            return Err(Error::ZeroOnContour { min_abs: 0.0, at: w });
        }
        Ok(v)
    }

    // accumulated argument change along a parametrized edge
    fn edge(&self, p: &dyn Fn(f64) -> Complex64) -> Result<f64> {
        const START: usize = 64;
        let mut total = 0.0;
        let mut prev = self.eval(p(0.0))?;
        for k in 1..=START {
            let (sa, sb) = ((k - 1) as f64 / START as f64, k as f64 / START as f64);
            let next = self.eval(p(sb))?;
            total += self.refine(p, sa, sb, prev, next, 0)?;
            prev = next;
        }
        Ok(total)
    }

    fn refine(&self, p: &dyn Fn(f64) -> Complex64, sa: f64, sb: f64, ga: Complex64, gb: Complex64, depth: u32) -> Result<f64> {
        let sm = 0.5 * (sa + sb);
        let gm = self.eval(p(sm))?;
        let d1 = (gm / ga).arg();
        let d2 = (gb / gm).arg();
        let d = (gb / ga).arg();
        // the midpoint must also be close to the chord, which rules out a
        // full turn of g hiding between samples
        let chord = (gm - 0.5 * (ga + gb)).norm() < 0.25 * ga.norm().min(gb.norm()).min(gm.norm());
        if chord && d1.abs() < 0.5 && d2.abs() < 0.5 && (d1 + d2 - d).abs() < 1e-9 {
            return Ok(d1 + d2);
        }
        if depth > 40 {
            return Err(Error::ZeroOnContour { min_abs: ga.norm().min(gb.norm()).min(gm.norm()), at: p(sm) });
        }
        Ok(self.refine(p, sa, sm, ga, gm, depth + 1)? + self.refine(p, sm, sb, gm, gb, depth + 1)?)
    }

    fn winding(&self, c: &PolarCell) -> Result<i64> {
        let raw = if c.is_disk() {
            let r = c.r1;
            self.edge(&|s| Complex64::from_polar(r, TAU * s))?
        } else {
            let PolarCell { r0, r1, t0, t1 } = *c;
            self.edge(&|s| Complex64::from_polar(r1, t0 + s * (t1 - t0)))?
                + self.edge(&|s| Complex64::from_polar(r1 + s * (r0 - r1), t1))?
                + self.edge(&|s| Complex64::from_polar(r0, t1 + s * (t0 - t1)))?
                + self.edge(&|s| Complex64::from_polar(r0 + s * (r1 - r0), t0))?
        } / TAU;
        let k = raw.round();
        if (raw - k).abs() > 0.05 {
            return Err(Error::WindingNotInteger { raw: Complex64::new(raw, 0.0), nodes: self.evals.get() });
        }
        Ok(k as i64)
    }

    // Newton with multiplicity `m`, derivative by central differences
    fn polish(&self, w0: Complex64, m: u32, scale: f64) -> Result<Complex64> {
        let mut w = w0;
        for _ in 0..60 {
            let h = 1e-4 * scale.max(1e-6);
            let g = (self.g)(w);
            if g.norm() == 0.0 {
                return Ok(w);
            }
            let fp = self.eval(w + h)?;
            let fm = self.eval(w - h)?;
            let fpi = self.eval(w + Complex64::new(0.0, h))?;
            let fmi = self.eval(w - Complex64::new(0.0, h))?;
            // average of the real and imaginary direction quotients
            let dg = 0.5 * ((fp - fm) / (2.0 * h) + (fpi - fmi) / Complex64::new(0.0, 2.0 * h));
            if dg.norm() == 0.0 {
                break;
            }
            let step = g / dg * m as f64;
            w -= step;
            // outside the disk g may not be defined; the caller rejects w
            if w.norm() >= 1.0 {
                break;
            }
            if step.norm() < 1e-15 * w.norm().max(1e-3) {
                break;
            }
        }
        Ok(w)
    }
}

/// Zeros of `g` in `|w| ≤ search.radius` with their orders.
///
/// The disk is split into polar cells. The winding number of `g` around
/// each cell comes from phase tracking along its boundary; cells with
/// winding zero are dropped, cells with winding one are polished by Newton
/// iteration, larger windings are subdivided until the cell is smaller than
/// `search.min_cell`. A zero on a cell boundary triggers a retry with a
/// shifted split point.
pub fn find_zeros(g: &dyn Fn(Complex64) -> Complex64, search: &ZeroSearch) -> Result<Vec<DiskZero>> {
    if !(search.radius > 0.0 && search.radius < 1.0) || !(search.min_cell > 0.0) {
        return Err(invalid("zero search needs 0 < radius < 1 and a positive cell size"));
    }
    let tr = Tracker { g, evals: Counter::new(0), max_evals: search.max_evals };
    let root = PolarCell { r0: 0.0, r1: search.radius, t0: 0.0, t1: TAU };
    let total = tr.winding(&root)?;
    let mut out = Vec::new();
    let mut stack = vec![(root, total)];
    while let Some((cell, wn)) = stack.pop() {
        if wn == 0 {
            continue;
        }
        if wn < 0 {
            return Err(Error::ZeroSearch(format!("negative winding {wn}: the function has poles")));
        }
        let size = cell.size();
        if wn == 1 || size <= search.min_cell {
            let w = tr.polish(cell.center(), wn as u32, size)?;
            // a Newton step can jump to a neighbouring zero, so the result
            // has to stay in the cell
            if cell.contains(w, 1e-6 * size) {
                out.push(DiskZero { w, order: wn as u32 });
                continue;
            }
            if size <= search.min_cell {
                out.push(DiskZero { w: cell.center(), order: wn as u32 });
                continue;
            }
        }
        let mut split = None;
        for f in [0.5, 0.47, 0.53, 0.41, 0.59, 0.45] {
            let kids = cell.children(f);
            match kids.iter().map(|k| tr.winding(k)).collect::<Result<Vec<_>>>() {
                Ok(ws) => {
                    if ws.iter().sum::<i64>() != wn {
                        log::debug!("winding of children {ws:?} does not add up to {wn} at split {f}");
                        continue;
                    }
                    split = Some(kids.into_iter().zip(ws).collect::<Vec<_>>());
                    break;
                }
                Err(Error::ZeroOnContour { .. }) | Err(Error::WindingNotInteger { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        match split {
            Some(kids) => stack.extend(kids),
            None => {
                return Err(Error::ZeroSearch(format!(
                    "zero on the boundary of the cell around {} after retries",
                    cell.center()
                )))
            }
        }
    }
    let found: i64 = out.iter().map(|z| z.order as i64).sum();
    if found != total {
        return Err(Error::ZeroSearch(format!("found total order {found}, winding number {total}")));
    }
    out.sort_by(|a, b| a.w.norm().total_cmp(&b.w.norm()).then(a.w.arg().total_cmp(&b.w.arg())));
    log::debug!("zero search used {} evaluations", tr.evals.get());
    Ok(out)
}

/// Zeros of `g` with `|w| ≤ 1 - tol`; cells are refined down to size `tol`.
pub fn find_zeros_in_disk(g: &dyn Fn(Complex64) -> Complex64, tol: f64) -> Result<Vec<DiskZero>> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(invalid(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    find_zeros(g, &ZeroSearch::new(1.0 - tol, tol))
}

/// Finite Blaschke product with the given zeros, normalized so that the
/// value at the origin is positive when no zero sits there.
pub fn blaschke(zeros: &[DiskZero]) -> impl Fn(Complex64) -> Complex64 + '_ {
    move |w| {
        let one = Complex64::new(1.0, 0.0);
        zeros.iter().fold(one, |acc, z| {
            let f = if z.w.norm() == 0.0 { w } else { (z.w.norm() / z.w) * (z.w - w) / (one - z.w.conj() * w) };
            acc * f.powu(z.order)
        })
    }
}

/// `Σ (1-|w|)^{α+1+ε} |w+1|^{(β-1+ε)₊}`, counting orders.
pub fn bgk_sum(zeros: &[DiskZero], alpha: f64, beta: f64, eps: f64) -> f64 {
    let b = (beta - 1.0 + eps).max(0.0);
    zeros
        .iter()
        .map(|z| z.order as f64 * (1.0 - z.w.norm()).powf(alpha + 1.0 + eps) * (z.w + 1.0).norm().powf(b))
        .sum()
}

/// The α = 0 form with exponent one on `1-|w|`.
pub fn bgk_sum_alpha0(zeros: &[DiskZero], beta: f64, eps: f64) -> f64 {
    let b = (beta - 1.0 + eps).max(0.0);
    zeros.iter().map(|z| z.order as f64 * (1.0 - z.w.norm()) * (z.w + 1.0).norm().powf(b)).sum()
}

/// `Σ_{|z| ≤ M^{1/(ρ+σ)}} δ^{s} |z|^{(t-s)/2}` with `s = pρ+1+ε`,
/// `t = (pρ+2pσ-1+ε)₊`.
pub fn af_small_sum(eigs: &[EigRecord], params: &AFParams, eps: f64) -> f64 {
    let (s, t) = (params.s(eps), params.t(eps));
    let r = params.radius();
    eigs.iter()
        .filter(|e| e.modulus() <= r)
        .map(|e| e.mult as f64 * e.delta.powf(s) * e.modulus().powf((t - s) / 2.0))
        .sum()
}

/// Constant-free right side `M^{(s+t)/(2(ρ+σ))}` of [`af_small_sum`].
pub fn af_small_rhs_core(params: &AFParams, eps: f64) -> f64 {
    params.m.powf((params.s(eps) + params.t(eps)) / (2.0 * (params.rho + params.sigma)))
}

/// `Σ_{|z| ≥ ν M^{1/(ρ+σ)}} δ^{s} |z|^{ρ+σ-s-ε'}`.
pub fn af_large_sum(eigs: &[EigRecord], params: &AFParams, eps: f64, eps_prime: f64, nu: f64) -> f64 {
    let s = params.s(eps);
    let r = nu * params.radius();
    let k = params.rho + params.sigma - s - eps_prime;
    eigs.iter()
        .filter(|e| e.modulus() >= r)
        .map(|e| e.mult as f64 * e.delta.powf(s) * e.modulus().powf(k))
        .sum()
}

/// `ν^{-ε'} M^{(ρ+σ-ε')/(ρ+σ)}`.
pub fn af_large_rhs_core(params: &AFParams, eps_prime: f64, nu: f64) -> f64 {
    let rs = params.rho + params.sigma;
    nu.powf(-eps_prime) * params.m.powf((rs - eps_prime) / rs)
}

/// The ρ = 0 case: every eigenvalue lies in `|z| ≤ M^{1/σ}` and
/// `Σ δ |z|^{-1/2 + (2pσ-1+ε)₊/2}` is compared with `M^{(1+(2pσ-1+ε)₊)/(2σ)}`.
/// The report is marked unsatisfied if an eigenvalue escapes the disk.
pub fn af_rho0_check(eigs: &[EigRecord], params: &AFParams, eps: f64) -> Result<BoundReport> {
    params.validate()?;
    if params.rho != 0.0 || !(params.sigma > 0.0) {
        return Err(invalid("af_rho0_check needs rho = 0 and sigma > 0"));
    }
    let t = params.t(eps);
    let r = params.m.powf(1.0 / params.sigma);
    let escaped = eigs.iter().filter(|e| e.modulus() > r * (1.0 + 1e-10)).count();
    let lhs: f64 = eigs.iter().map(|e| e.mult as f64 * e.delta * e.modulus().powf(-0.5 + t / 2.0)).sum();
    let rhs = params.m.powf((1.0 + t) / (2.0 * params.sigma));
    let mut rep = BoundReport::new("af_rho0", ReportParams::from(params), lhs, rhs, ConstantUsed::Empirical);
    if escaped > 0 {
        log::warn!("{escaped} eigenvalues outside the disk |z| <= M^(1/sigma)");
        rep.satisfied = Some(false);
    }
    Ok(rep)
}

/// `Σ δ^{s} |z|^{(t-s)/2} / (|z|+a)^{s+t/2}`.
pub fn afmain_sum(eigs: &[EigRecord], params: &AFParams, eps: f64, a: f64) -> f64 {
    let (s, t) = (params.s(eps), params.t(eps));
    eigs.iter()
        .map(|e| {
            let z = e.modulus();
            e.mult as f64 * e.delta.powf(s) * z.powf((t - s) / 2.0) / (z + a).powf(s + t / 2.0)
        })
        .sum()
}

/// Constant-free right side `M a^{-(ρ+σ) - s/2}` of [`afmain_sum`].
pub fn afmain_rhs_core(params: &AFParams, eps: f64, a: f64) -> f64 {
    params.m * a.powf(-(params.rho + params.sigma) - params.s(eps) / 2.0)
}

/// Implied constant of [`afmain_sum`] at `a`, or `None` when the right side vanishes.
pub fn afmain_constant(eigs: &[EigRecord], params: &AFParams, eps: f64, a: f64) -> Option<f64> {
    let rhs = afmain_rhs_core(params, eps, a);
    (rhs > 0.0 && rhs.is_finite()).then(|| afmain_sum(eigs, params, eps, a) / rhs)
}

/// Scan of the threshold in `a` for the `a`-uniform family of inequalities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AThreshold {
    /// Smallest `a` of the grid beyond which the implied constant never
    /// exceeds its value there by more than the factor `1 + tol`.
    pub a: f64,
    pub constant: f64,
    /// `(a, implied constant)` over the whole grid.
    pub scan: Vec<(f64, f64)>,
}

/// Scans `a = 2, 4, ..., 64`. `None` for an empty spectrum or when the
/// constant keeps growing up to the end of the grid.
pub fn afmain_threshold(eigs: &[EigRecord], params: &AFParams, eps: f64, tol: f64) -> Option<AThreshold> {
    let scan: Vec<(f64, f64)> = (1..=6)
        .map(|k| 2f64.powi(k))
        .filter_map(|a| afmain_constant(eigs, params, eps, a).map(|c| (a, c)))
        .collect();
    // the last grid point alone says nothing about larger a
    let i = (0..scan.len().saturating_sub(1)).find(|&i| {
        let c0 = scan[i].1;
        c0 > 0.0 && scan[i..].iter().all(|&(_, c)| c <= c0 * (1.0 + tol))
    })?;
    Some(AThreshold { a: scan[i].0, constant: scan[i].1, scan })
}

/// Simple records for a list of points.
pub fn records(points: &[Complex64]) -> Vec<EigRecord> {
    points.iter().map(|&z| EigRecord::new(z, 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::psi_inv;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_zero() {
        let z = find_zeros_in_disk(&|w| w - 0.3, 1e-3).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].order, 1);
        assert!((z[0].w - 0.3).norm() < 1e-12);
    }

    #[test]
    fn polynomial_orders() {
        let g = |w: Complex64| (w - c(0.0, 0.2)).powu(2) * (w + 0.5);
        let z = find_zeros_in_disk(&g, 1e-3).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!((z[0].order, z[1].order), (2, 1));
        assert!((z[0].w - c(0.0, 0.2)).norm() < 1e-6);
        assert!((z[1].w + 0.5).norm() < 1e-12);
    }

    #[test]
    fn no_zeros() {
        assert!(find_zeros_in_disk(&|w| w.exp(), 1e-3).unwrap().is_empty());
    }

    #[test]
    fn blaschke_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let deg = rng.gen_range(1..=5);
            let zs: Vec<DiskZero> = (0..deg)
                .map(|_| DiskZero::new(Complex64::from_polar(rng.gen_range(0.05..0.95), rng.gen_range(0.0..TAU)), 1).unwrap())
                .collect();
            let b = blaschke(&zs);
            let found = find_zeros_in_disk(&b, 1e-3).unwrap();
            assert_eq!(found.len(), deg);
            for z in &zs {
                let best = found.iter().map(|f| (f.w - z.w).norm()).fold(f64::INFINITY, f64::min);
                assert!(best < 1e-8, "{best} {zs:?} {found:?}");
            }
        }
    }

    #[test]
    fn blaschke_is_inner() {
        let zs = [DiskZero::new(c(0.3, 0.4), 2).unwrap(), DiskZero::new(c(-0.7, 0.0), 1).unwrap()];
        let b = blaschke(&zs);
        for k in 0..32 {
            let w = Complex64::from_polar(1.0, k as f64 * 0.2);
            assert!((b(w).norm() - 1.0).abs() < 1e-12);
        }
        assert!(b(c(0.0, 0.0)).im.abs() < 1e-15 && b(c(0.0, 0.0)).re > 0.0);
    }

    #[test]
    fn bgk_examples() {
        assert_eq!(bgk_sum(&[], 1.0, 1.0, 0.1), 0.0);
        let z0 = [DiskZero::new(c(0.0, 0.0), 1).unwrap()];
        assert!((bgk_sum(&z0, 0.0, 0.0, 0.1) - 1.0).abs() < 1e-15);
        assert!((bgk_sum_alpha0(&z0, 0.0, 0.1) - 1.0).abs() < 1e-15);
        let z2 = [DiskZero::new(c(0.5, 0.0), 2).unwrap()];
        let want = 2.0 * 0.5f64.powf(2.1) * 1.5f64.powf(1.1);
        assert!((bgk_sum(&z2, 1.0, 2.0, 0.1) - want).abs() < 1e-14);
    }

    #[test]
    fn af_examples() {
        let p = AFParams::new(1.0, 0.5, 0.5, 1.0).unwrap();
        assert_eq!(af_small_sum(&[], &p, 0.1), 0.0);
        assert!((af_small_sum(&records(&[c(-1.0, 0.0)]), &p, 0.1) - 1.0).abs() < 1e-15);
        assert_eq!(af_large_sum(&[], &p, 0.1, 0.1, 1.0), 0.0);
        // z = -4: δ = 4, s = 1.6, exponent 1 - 1.6 - 0.1 = -0.7
        let got = af_large_sum(&records(&[c(-4.0, 0.0)]), &p, 0.1, 0.1, 2.0);
        assert!((got - 4f64.powf(1.6) * 4f64.powf(-0.7)).abs() < 1e-13);
        assert_eq!(af_large_sum(&records(&[c(-1.5, 0.0)]), &p, 0.1, 0.1, 2.0), 0.0);
        assert!(AFParams::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(AFParams::new(0.5, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn afmain_hand_value_and_monotone() {
        let p = AFParams::new(2.0, 0.25, 0.25, 1.0).unwrap();
        let e = records(&[c(1.0, 1.0)]);
        let (s, t) = (p.s(0.1), p.t(0.1));
        let z = 2f64.sqrt();
        let want = 1.0 * z.powf((t - s) / 2.0) / (z + 3.0).powf(s + t / 2.0);
        assert!((afmain_sum(&e, &p, 0.1, 3.0) - want).abs() < 1e-15);
        let many = records(&[c(1.0, 1.0), c(-2.0, 0.5), c(4.0, -0.1)]);
        let mut last = f64::INFINITY;
        for a in [1.0, 2.0, 4.0, 8.0, 16.0] {
            let v = afmain_sum(&many, &p, 0.1, a);
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn afmain_threshold_scan() {
        let p = AFParams::new(1.0, 0.0, 0.5, 1.0).unwrap();
        assert!(afmain_threshold(&[], &p, 0.1, 0.05).is_none());
        // for |z| ≪ a the constant decays like a^{ρ+σ-(s+t)/2} = a^{-0.1}
        let e = records(&[c(-0.01, 0.0), c(0.02, 0.01)]);
        let th = afmain_threshold(&e, &p, 0.1, 0.05).unwrap();
        assert_eq!(th.scan.len(), 6);
        assert!(th.a >= 2.0 && th.a <= 64.0);
        let (a, c0) = (th.a, th.constant);
        assert_eq!(a, 2.0);
        assert!(th.scan.iter().all(|x| x.1 <= c0 * 1.05));
        // a far eigenvalue makes the constant grow until a passes |z|
        let far = records(&[c(-0.01, 0.0), c(4.0, 2.0)]);
        let th = afmain_threshold(&far, &p, 0.1, 0.05).unwrap();
        assert!(th.a > 2.0 && th.a < 64.0, "{th:?}");
        let farther = records(&[c(300.0, 100.0)]);
        assert!(afmain_threshold(&farther, &p, 0.1, 0.05).is_none());
    }

    #[test]
    fn rank_one_rho0() {
        for mu in [0.5, 1.0, 2.0] {
            let p = AFParams::new(1.0, 0.0, 0.5, mu).unwrap();
            let rep = af_rho0_check(&records(&[c(-mu * mu, 0.0)]), &p, 0.1).unwrap();
            assert!((rep.ratio - 1.0).abs() < 1e-12);
            assert_ne!(rep.satisfied, Some(false));
        }
        let p = AFParams::new(1.0, 0.0, 0.5, 1.0).unwrap();
        assert_eq!(af_rho0_check(&records(&[c(-1.5, 0.0)]), &p, 0.1).unwrap().satisfied, Some(false));
    }

    fn eig_strategy() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-5.0..5.0f64, -3.0..3.0f64), 0..8)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, if b == 0.0 { 0.1 } else { b })).collect())
    }

    proptest! {
        #[test]
        fn sums_permutation_invariant_and_additive(a in eig_strategy(), b in eig_strategy()) {
            let p = AFParams::new(1.5, 0.3, 0.4, 2.0).unwrap();
            let ra = records(&a);
            let rb = records(&b);
            let mut all = ra.clone();
            all.extend(rb.iter().cloned());
            let mut rev = all.clone();
            rev.reverse();
            for f in [
                &|e: &[EigRecord]| af_small_sum(e, &p, 0.1),
                &|e: &[EigRecord]| af_large_sum(e, &p, 0.1, 0.2, 1.5),
                &|e: &[EigRecord]| afmain_sum(e, &p, 0.1, 3.0),
            ] as [&dyn Fn(&[EigRecord]) -> f64; 3] {
                let whole = f(&all);
                prop_assert!((whole - f(&rev)).abs() <= 1e-12 * whole.max(1.0));
                prop_assert!((whole - f(&ra) - f(&rb)).abs() <= 1e-12 * whole.max(1.0));
            }
        }

        #[test]
        fn transplant_inequality(pts in eig_strategy(), a in 0.5..20.0f64, rho in 0.0..1.0f64, sigma in 0.1..1.0f64, p in 1.0..3.0f64) {
            let params = AFParams::new(p, rho, sigma, 1.0).unwrap();
            let eps = 0.1;
            let (s, t) = (params.s(eps), params.t(eps));
            let zeros: Vec<DiskZero> = pts.iter().map(|&z| DiskZero::new(psi_inv(a, z).unwrap(), 1).unwrap()).collect();
            let lhs = bgk_sum(&zeros, p * rho, p * rho + 2.0 * p * sigma, eps);
            let rhs = 4f64.powf(-s) * 2f64.powf(t / 2.0) * a.powf(s / 2.0) * afmain_sum(&records(&pts), &params, eps, a);
            prop_assert!(lhs >= rhs * (1.0 - 1e-12), "{} < {}", lhs, rhs);
        }
    }
}

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use super::potential::Potential;
use crate::error::{invalid, Error, Result};
use crate::geometry::delta;
use crate::numerics::{eig, eig_symmetric_tridiagonal, CMatrix};

/// Dirichlet second-difference matrix `-u''` for `n` points at spacing `h`.
pub fn laplacian_dirichlet(n: usize, h: f64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    let (d, o) = (2.0 / (h * h), -1.0 / (h * h));
    for i in 0..n {
        m[(i, i)] = Complex64::new(d, 0.0);
        if i + 1 < n {
            m[(i, i + 1)] = Complex64::new(o, 0.0);
            m[(i + 1, i)] = Complex64::new(o, 0.0);
        }
    }
    m
}

pub fn assemble_h0(grid: &Grid1D) -> CMatrix {
    laplacian_dirichlet(grid.n, grid.h)
}

/// `H0 + diag(V)`.
pub fn assemble_h(grid: &Grid1D, v: &Potential) -> Result<CMatrix> {
    if !grid.same_as(v.grid()) {
        return Err(Error::DimensionMismatch("potential lives on a different grid".into()));
    }
    let mut h = assemble_h0(grid);
    for (i, vi) in v.values().iter().enumerate() {
        h[(i, i)] += vi;
    }
    Ok(h)
}

/// An eigenvalue off `[0, ∞)` with its distance to the half-line and
/// algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigRecord {
    pub e: Complex64,
    pub delta: f64,
    pub mult: usize,
}

impl EigRecord {
    pub fn new(e: Complex64, mult: usize) -> Self {
        EigRecord { e, delta: delta(e), mult: mult.max(1) }
    }

    pub fn modulus(&self) -> f64 {
        self.e.norm()
    }
}

/// Exponent bundle shared by the eigenvalue-sum bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub d: u32,
    pub gamma: f64,
    pub eps: f64,
    pub eps_prime: f64,
    pub mu: f64,
    pub nu: f64,
    pub a: f64,
    /// Disk-split constant `C`: eigenvalues with `|E|^γ ≤ C ∫|V|^q` count as inside.
    pub split: f64,
}

impl Default for SpectralParams {
    fn default() -> Self {
        SpectralParams { d: 1, gamma: 1.0, eps: 0.1, eps_prime: 0.1, mu: 1.0, nu: 1.0, a: 1.0, split: 1.0 }
    }
}

impl SpectralParams {
    pub fn with_gamma(gamma: f64) -> Self {
        SpectralParams { gamma, ..Default::default() }
    }

    /// `γ + d/2`, the Lebesgue exponent of the potential.
    pub fn q(&self) -> f64 {
        self.gamma + self.d as f64 / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        if self.d != 1 {
            return Err(invalid(format!("only d = 1 is supported, got d = {}", self.d)));
        }
        if !(self.gamma >= 0.5) {
            return Err(invalid(format!("gamma must be >= 1/2 in one dimension, got {}", self.gamma)));
        }
        if !(self.eps > 0.0) || !(self.eps_prime > 0.0) {
            return Err(invalid("eps and eps_prime must be positive"));
        }
        if !(self.mu >= 1.0) || !(self.nu >= 1.0) {
            return Err(invalid("mu and nu must be >= 1"));
        }
        if !(self.a > 0.0) {
            return Err(invalid("a must be positive"));
        }
        if !(self.split > 0.0) {
            return Err(invalid("split constant must be positive"));
        }
        Ok(())
    }
}

/// Which computed eigenvalues count as genuine off-axis eigenvalues.
///
/// On a Dirichlet box of length `L` the continuum `[0, ∞)` is replaced by
/// box states whose distance to the half-line is at most about `2‖V‖₁/L`;
/// `delta_floor` removes them. Near the top of the lattice band the
/// discretization produces mirror bound states with no continuum
/// counterpart; `e_max` removes everything with `|E|` beyond the range in
/// which the lattice dispersion is within 2% of `k²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralWindow {
    pub delta_floor: f64,
    pub e_max: f64,
    pub cluster_rel_tol: f64,
}

impl SpectralWindow {
    pub fn new(delta_floor: f64) -> Self {
        SpectralWindow { delta_floor, e_max: f64::INFINITY, cluster_rel_tol: 1e-6 }
    }

    pub fn for_potential(v: &Potential) -> Self {
        let g = v.grid();
        let l1 = v.lp_power(1.0).unwrap_or(0.0);
        SpectralWindow {
            delta_floor: (4.0 * l1 / g.length()).max(1e-12),
            e_max: 0.25 / (g.h * g.h),
            cluster_rel_tol: 1e-6,
        }
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.delta_floor = floor;
        self
    }
}

/// Summary of the eigenvalues dropped by a [`SpectralWindow`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OffaxisFilter {
    pub kept: usize,
    pub below_floor: usize,
    pub above_cutoff: usize,
}

/// Groups eigenvalues by single linkage at distance `tol`; each group
/// becomes one record at its mean with multiplicity equal to its size.
pub fn cluster_eigenvalues(values: &[Complex64], tol: f64) -> Vec<EigRecord> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(values[i]);
    }
    let mut out: Vec<EigRecord> = groups
        .into_values()
        .map(|g| EigRecord::new(g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect();
    sort_records(&mut out);
    out
}

fn sort_records(r: &mut [EigRecord]) {
    r.sort_by(|a, b| {
        a.e.re
            .partial_cmp(&b.e.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.e.im.partial_cmp(&b.e.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

pub(crate) fn filter_window(values: &[Complex64], window: &SpectralWindow, scale: f64) -> (Vec<EigRecord>, OffaxisFilter) {
    let mut stats = OffaxisFilter::default();
    let mut kept = Vec::new();
    for &e in values {
        if delta(e) <= window.delta_floor {
            stats.below_floor += 1;
            log::debug!("discarded eigenvalue {e} below the delta floor {}", window.delta_floor);
        } else if e.norm() > window.e_max {
            stats.above_cutoff += 1;
            log::debug!("discarded eigenvalue {e} beyond |E| = {}", window.e_max);
        } else {
            kept.push(e);
        }
    }
    let recs = cluster_eigenvalues(&kept, window.cluster_rel_tol * scale);
    stats.kept = recs.iter().map(|r| r.mult).sum();
    (recs, stats)
}

/// Eigenvalues of `h` with `δ(E) > delta_floor`, clustered at
/// `1e-6 ‖h‖∞` into records with multiplicities.
pub fn eigenvalues_offaxis(h: &CMatrix, delta_floor: f64) -> Result<Vec<EigRecord>> {
    if !(delta_floor >= 0.0) {
        return Err(invalid("delta floor must be non-negative"));
    }
    let values = eig(h)?;
    Ok(filter_window(&values, &SpectralWindow::new(delta_floor), h.norm_inf()).0)
}

/// All eigenvalues of `H = H0 + V`, using the tridiagonal solver when it
/// succeeds and the dense QR solver otherwise.
pub(crate) fn full_spectrum(v: &Potential) -> Result<Vec<Complex64>> {
    let g = v.grid();
    let inv_h2 = 1.0 / (g.h * g.h);
    let d: Vec<Complex64> = v.values().iter().map(|vi| vi + 2.0 * inv_h2).collect();
    let e = vec![Complex64::new(-inv_h2, 0.0); g.n - 1];
    match eig_symmetric_tridiagonal(&d, &e) {
        Some(vals) => Ok(vals),
        None => {
            log::debug!("tridiagonal QL broke down; using dense QR");
            eig(&assemble_h(g, v)?)
        }
    }
}

/// Off-axis spectrum of `H0 + V` restricted to `window`.
pub fn offaxis_spectrum(v: &Potential, window: &SpectralWindow) -> Result<Vec<EigRecord>> {
    Ok(offaxis_spectrum_with_stats(v, window)?.0)
}

pub(crate) fn offaxis_spectrum_with_stats(v: &Potential, window: &SpectralWindow) -> Result<(Vec<EigRecord>, OffaxisFilter)> {
    let vals = full_spectrum(v)?;
    let g = v.grid();
    let scale = 4.0 / (g.h * g.h) + v.sup_norm();
    Ok(filter_window(&vals, window, scale))
}

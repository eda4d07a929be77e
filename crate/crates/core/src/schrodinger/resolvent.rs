use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use super::potential::Potential;
use crate::error::{invalid, Result};
use crate::geometry::sqrt_neg;
use crate::numerics::{CMatrix, TridiagonalLu};

/// Kernel of `(-d²/dx² - z)⁻¹` on the line, `e^{-s|x-y|}/(2s)` with `s = √(-z)`.
pub fn free_resolvent_kernel_1d(z: Complex64, x: f64, y: f64) -> Result<Complex64> {
    let s = sqrt_neg(z)?;
    Ok((-s * (x - y).abs()).exp() / (2.0 * s))
}

/// `G_z(x_i, x_j) h` on the points of `grid`.
pub fn nystrom_resolvent(grid: &Grid1D, z: Complex64) -> Result<CMatrix> {
    let s = sqrt_neg(z)?;
    let xs = grid.points();
    let h = grid.h;
    Ok(CMatrix::from_fn(grid.n, grid.n, |i, j| (-s * (xs[i] - xs[j]).abs()).exp() / (2.0 * s) * h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BsMode {
    /// `√V (H0 - z)⁻¹ √|V|` with the discrete Dirichlet Laplacian.
    Discrete,
    /// Quadrature of the continuum kernel.
    Nystrom,
}

/// Birman–Schwinger family `z ↦ K(z)` of a potential, restricted to the
/// support of `V`. Rows and columns off the support vanish identically, so
/// the restriction has the same nonzero spectrum and the same determinants.
#[derive(Debug, Clone)]
pub struct BirmanSchwinger {
    grid: Grid1D,
    support: Vec<usize>,
    sv: Vec<Complex64>,
    av: Vec<f64>,
    mode: BsMode,
}

impl BirmanSchwinger {
    pub fn new(v: &Potential, mode: BsMode) -> Self {
        let support = v.support();
        let sv_all = v.signed_root();
        let av_all = v.abs_root();
        BirmanSchwinger {
            grid: *v.grid(),
            sv: support.iter().map(|&i| sv_all[i]).collect(),
            av: support.iter().map(|&i| av_all[i]).collect(),
            support,
            mode,
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn mode(&self) -> BsMode {
        self.mode
    }

    /// Columns of `(H0 - z)⁻¹` at the support indices (`n × |S|`).
    fn resolvent_columns(&self, z: Complex64) -> Result<Vec<Vec<Complex64>>> {
        sqrt_neg(z)?;
        let n = self.grid.n;
        let ih2 = 1.0 / (self.grid.h * self.grid.h);
        let off = vec![Complex64::new(-ih2, 0.0); n - 1];
        let diag = vec![Complex64::new(2.0 * ih2, 0.0) - z; n];
        let lu = TridiagonalLu::new(&off, &diag, &off)?;
        Ok(self
            .support
            .iter()
            .map(|&j| {
                let mut col = vec![Complex64::new(0.0, 0.0); n];
                col[j] = Complex64::new(1.0, 0.0);
                lu.solve_in_place(&mut col);
                col
            })
            .collect())
    }

    /// `K(z)` on the support.
    pub fn matrix(&self, z: Complex64) -> Result<CMatrix> {
        let m = self.dim();
        match self.mode {
            BsMode::Discrete => {
                let cols = self.resolvent_columns(z)?;
                Ok(CMatrix::from_fn(m, m, |a, b| self.sv[a] * cols[b][self.support[a]] * self.av[b]))
            }
            BsMode::Nystrom => {
                let s = sqrt_neg(z)?;
                let h = self.grid.h;
                let xs: Vec<f64> = self.support.iter().map(|&i| self.grid.x(i)).collect();
                Ok(CMatrix::from_fn(m, m, |a, b| {
                    self.sv[a] * (-s * (xs[a] - xs[b]).abs()).exp() / (2.0 * s) * self.av[b] * h
                }))
            }
        }
    }

    /// `K(z)` and `K'(z)`, both on the support.
    pub fn matrix_and_derivative(&self, z: Complex64) -> Result<(CMatrix, CMatrix)> {
        let m = self.dim();
        match self.mode {
            BsMode::Discrete => {
                let cols = self.resolvent_columns(z)?;
                let k = CMatrix::from_fn(m, m, |a, b| self.sv[a] * cols[b][self.support[a]] * self.av[b]);
                // (H0-z)⁻² restricted to S is Rᵀ R for the symmetric resolvent R
                let mut dk = CMatrix::zeros(m, m);
                for a in 0..m {
                    for b in a..m {
                        let r2: Complex64 = cols[a].iter().zip(&cols[b]).map(|(x, y)| x * y).sum();
                        dk[(a, b)] = self.sv[a] * r2 * self.av[b];
                        dk[(b, a)] = self.sv[b] * r2 * self.av[a];
                    }
                }
                Ok((k, dk))
            }
            BsMode::Nystrom => {
                let s = sqrt_neg(z)?;
                let h = self.grid.h;
                let xs: Vec<f64> = self.support.iter().map(|&i| self.grid.x(i)).collect();
                let k = self.matrix(z)?;
                let dk = CMatrix::from_fn(m, m, |a, b| {
                    let r = (xs[a] - xs[b]).abs();
                    let dg = (-s * r).exp() * (s * r + 1.0) / (4.0 * s * s * s);
                    self.sv[a] * dg * self.av[b] * h
                });
                Ok((k, dk))
            }
        }
    }

    /// `K(z)` embedded in the full `n × n` grid space.
    pub fn full_matrix(&self, z: Complex64) -> Result<CMatrix> {
        let k = self.matrix(z)?;
        let mut out = CMatrix::zeros(self.grid.n, self.grid.n);
        for (a, &i) in self.support.iter().enumerate() {
            for (b, &j) in self.support.iter().enumerate() {
                out[(i, j)] = k[(a, b)];
            }
        }
        Ok(out)
    }
}

/// The Birman–Schwinger operator `√V (H0 - z)⁻¹ √|V|` as an `n × n` matrix.
pub fn birman_schwinger(v: &Potential, z: Complex64, mode: BsMode) -> Result<CMatrix> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(invalid(format!("z = {z} lies on the spectrum of H0")));
    }
    BirmanSchwinger::new(v, mode).full_matrix(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{eig, schatten_norm, solve};
    use crate::schrodinger::operator::{assemble_h, assemble_h0};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_examples() {
        let g = free_resolvent_kernel_1d(c(-1.0, 0.0), 0.3, 1.1).unwrap();
        assert!((g - c((-0.8f64).exp() / 2.0, 0.0)).norm() < 1e-15);
        assert!((free_resolvent_kernel_1d(c(-4.0, 0.0), 2.0, 2.0).unwrap() - c(0.25, 0.0)).norm() < 1e-15);
        assert!(free_resolvent_kernel_1d(c(1.0, 0.0), 0.0, 1.0).is_err());
        let z = c(0.7, -0.3);
        assert_eq!(free_resolvent_kernel_1d(z, 0.2, -1.3).unwrap(), free_resolvent_kernel_1d(z, -1.3, 0.2).unwrap());
    }

    #[test]
    fn nystrom_applied_to_bump_matches_matrix_resolvent() {
        // f supported well inside the box, so the Dirichlet walls do not matter
        let z = c(-1.0, 0.5);
        let f = |x: f64| (-(x * x) * 4.0).exp();
        let err = |n: usize| {
            let g = Grid1D::new(-12.0, 12.0, n).unwrap();
            let fv: Vec<Complex64> = g.points().iter().map(|&x| c(f(x), 0.0)).collect();
            let a = nystrom_resolvent(&g, z).unwrap().matvec(&fv).unwrap();
            let b = solve(&assemble_h0(&g).shift(-z), &fv).unwrap();
            a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
        };
        let (e1, e2) = (err(239), err(479));
        assert!(e2 < 1e-3);
        assert!(e1 / e2 > 3.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn zero_potential_gives_zero_operator() {
        let g = Grid1D::new(-1.0, 1.0, 10).unwrap();
        let k = birman_schwinger(&Potential::zero(&g), c(-1.0, 0.0), BsMode::Discrete).unwrap();
        assert_eq!(k.max_abs(), 0.0);
    }

    #[test]
    fn negative_potential_symmetrized_spectrum_is_nonpositive() {
        let g = Grid1D::new(-4.0, 4.0, 60).unwrap();
        let v = Potential::gaussian(&g, 0.0, 0.7, c(-2.0, 0.0)).unwrap();
        let k = BirmanSchwinger::new(&v, BsMode::Discrete).matrix(c(-0.5, 0.0)).unwrap();
        for e in eig(&k).unwrap() {
            assert!(e.im.abs() < 1e-10 && e.re <= 1e-12);
        }
    }

    #[test]
    fn minus_one_is_eigenvalue_at_eigenvalues_of_h() {
        let g = Grid1D::new(-6.0, 6.0, 80).unwrap();
        let v = Potential::well(&g, c(2.0, 0.6), 1.0).unwrap();
        let h = assemble_h(&g, &v).unwrap();
        let e = eig(&h).unwrap().into_iter().filter(|z| z.re < -0.2).collect::<Vec<_>>();
        assert!(!e.is_empty());
        for z in e {
            let k = BirmanSchwinger::new(&v, BsMode::Discrete).matrix(z).unwrap();
            let ev = eig(&k).unwrap();
            let best = ev.iter().map(|l| (l + 1.0).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-8, "{best}");
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let g = Grid1D::new(-3.0, 3.0, 50).unwrap();
        let v = Potential::gaussian(&g, 0.2, 0.5, c(1.0, -1.5)).unwrap();
        let z = c(-0.8, 0.4);
        for mode in [BsMode::Discrete, BsMode::Nystrom] {
            let bs = BirmanSchwinger::new(&v, mode);
            let (_, dk) = bs.matrix_and_derivative(z).unwrap();
            let h = 1e-5;
            let fd = (&bs.matrix(z + h).unwrap() - &bs.matrix(z - h).unwrap()).scale(c(0.5 / h, 0.0));
            assert!((&fd - &dk).frobenius_norm() < 1e-6 * dk.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn discrete_and_nystrom_converge() {
        let z = c(-1.0, 1.0);
        let diff = |n: usize| {
            let g = Grid1D::new(-8.0, 8.0, n).unwrap();
            let v = Potential::gaussian(&g, 0.0, 0.5, c(1.0, 1.0)).unwrap();
            let a = BirmanSchwinger::new(&v, BsMode::Discrete).matrix(z).unwrap();
            let b = BirmanSchwinger::new(&v, BsMode::Nystrom).matrix(z).unwrap();
            schatten_norm(&(&a - &b), f64::INFINITY).unwrap()
        };
        let (d1, d2, d3) = (diff(79), diff(159), diff(319));
        assert!(d2 < d1 && d3 < d2);
        assert!(d1 / d2 > 1.8 && d2 / d3 > 1.8, "{d1} {d2} {d3}");
    }
}

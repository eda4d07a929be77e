use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    odd: bool,
    pivot_ratio: f64,
}

impl Lu {
    /// Factorizes `a`. Singular matrices are still factorized; use
    /// [`Lu::pivot_ratio`] or the checked [`Lu::solve`] to detect them.
    pub fn new(a: &CMatrix) -> Result<Self> {
        a.require_square()?;
        a.check_finite()?;
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                odd = !odd;
            }
            if pmax == 0.0 {
                continue;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f == zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        let diag: Vec<f64> = (0..n).map(|i| lu[(i, i)].norm()).collect();
        let max = diag.iter().copied().fold(0.0, f64::max);
        let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
        let pivot_ratio = if n == 0 { 1.0 } else if max == 0.0 { 0.0 } else { min / max };
        Ok(Lu { lu, perm, odd, pivot_ratio })
    }

    /// Smallest over largest pivot modulus; a cheap condition indicator.
    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_ratio
    }

    pub fn is_singular(&self) -> bool {
        let n = self.lu.rows().max(1) as f64;
        self.pivot_ratio <= n * f64::EPSILON
    }

    pub fn det(&self) -> Complex64 {
        let p: Complex64 = self.lu.diag().iter().product();
        if self.odd {
            -p
        } else {
            p
        }
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.lu.rows();
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!("rhs of length {} for order {n}", b.len())));
        }
        if self.is_singular() {
            return Err(Error::Singular {
                condition_indicator: self.pivot_ratio,
            });
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut s = x[i];
            for j in 0..i {
                s -= row[j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut s = x[i];
            for j in i + 1..n {
                s -= row[j] * x[j];
            }
            x[i] = s / row[i];
        }
        Ok(x)
    }

    pub fn solve_matrix(&self, b: &CMatrix) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let x = self.solve(&b.col(j))?;
            for (i, xi) in x.into_iter().enumerate() {
                out[(i, j)] = xi;
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        self.solve_matrix(&CMatrix::identity(self.lu.rows()))
    }
}

/// Solves `A x = b` by LU with partial pivoting.
pub fn solve(a: &CMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    Lu::new(a)?.solve(b)
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    Lu::new(a)?.inverse()
}

pub fn det(a: &CMatrix) -> Result<Complex64> {
    Ok(Lu::new(a)?.det())
}

/// LU with partial pivoting for a tridiagonal matrix, in the layout of
/// LAPACK's `gttrf` (one extra superdiagonal of fill).
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    /// `sub`, `diag`, `sup` are the sub-, main and superdiagonals.
    pub fn new(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 || sub.len() + 1 != n || sup.len() + 1 != n {
            return Err(Error::DimensionMismatch("tridiagonal band lengths".into()));
        }
        let mut dl = sub.to_vec();
        let mut d = diag.to_vec();
        let mut du = sup.to_vec();
        let mut du2 = vec![zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if d[i].norm() >= dl[i].norm() {
                if d[i] != zero() {
                    let f = dl[i] / d[i];
                    dl[i] = f;
                    d[i + 1] -= f * du[i];
                }
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let t = du[i];
                du[i] = d[i + 1];
                d[i + 1] = t - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        let max = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let min = d.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if max == 0.0 || min <= n as f64 * f64::EPSILON * max {
            return Err(Error::Singular {
                condition_indicator: if max == 0.0 { 0.0 } else { min / max },
            });
        }
        Ok(TridiagonalLu { dl, d, du, du2, swapped })
    }

    pub fn order(&self) -> usize {
        self.d.len()
    }

    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            let t = b[i];
            b[i + 1] -= self.dl[i] * t;
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A positively oriented circle sampled at `nodes` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

/// Upper limit for node doubling in [`winding_number`].
pub const MAX_NODES: usize = 8192;

impl Contour {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!("contour radius must be positive, got {radius}")));
        }
        if nodes < 16 {
            return Err(Error::InvalidParameter(format!("contour needs at least 16 nodes, got {nodes}")));
        }
        Ok(Contour { center, radius, nodes })
    }

    /// Circle with the default 256 starting nodes.
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        Contour::new(center, radius, 256)
    }

    pub fn point(&self, k: usize, total: usize) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, 2.0 * PI * k as f64 / total as f64)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }
}

/// Integral `(1/2πi)∮ g dz` evaluated with nested trapezoidal rules.
///
/// `g` is sampled at `N` nodes starting from `contour.nodes`, doubling up to
/// [`MAX_NODES`]; the result is accepted once two consecutive levels round
/// to the same integer and the finer one is within 0.1 of it.
pub(crate) fn integer_contour_integral(
    contour: &Contour,
    mut g: impl FnMut(Complex64) -> Result<Complex64>,
) -> Result<i64> {
    let mut n = contour.nodes;
    // sums over the nodes of the coarse level, stored as Σ g(z_k)(z_k - c)
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let z = contour.point(k, n);
        acc += g(z)? * (z - contour.center);
    }
    let mut prev = acc / n as f64;
    loop {
        let fine = 2 * n;
        if fine > MAX_NODES {
            let raw = prev;
            return Err(Error::WindingNotInteger { raw, nodes: n });
        }
        for k in 0..n {
            let z = contour.point(2 * k + 1, fine);
            acc += g(z)? * (z - contour.center);
        }
        let cur = acc / fine as f64;
        let r = cur.re.round();
        let resid = (cur - Complex64::new(r, 0.0)).norm();
        let prev_r = prev.re.round();
        if resid < 0.1 && r == prev_r && (prev - Complex64::new(prev_r, 0.0)).norm() < 0.5 {
            return Ok(r as i64);
        }
        prev = cur;
        n = fine;
    }
}

fn check_not_small(fz: Complex64, z: Complex64, floor: f64) -> Result<()> {
    if !(fz.norm() > floor) || !fz.re.is_finite() || !fz.im.is_finite() {
        return Err(Error::ZeroOnContour { min_abs: fz.norm(), at: z });
    }
    Ok(())
}

/// Floor below which `|f|` on the contour counts as a zero: a tiny fraction
/// of the largest sampled value.
fn contour_floor(contour: &Contour, f: &dyn Fn(Complex64) -> Complex64) -> f64 {
    let max = (0..contour.nodes)
        .map(|k| f(contour.point(k, contour.nodes)).norm())
        .fold(0.0, f64::max);
    1e-12 * max
}

/// Number of zeros minus poles of `f` inside the contour, with `f'`
/// estimated by a five-point central difference of step `1e-4 * radius`.
pub fn winding_number(f: impl Fn(Complex64) -> Complex64, contour: &Contour) -> Result<i64> {
    let floor = contour_floor(contour, &f);
    let h = 1e-4 * contour.radius;
    integer_contour_integral(contour, |z| {
        let fz = f(z);
        check_not_small(fz, z, floor)?;
        let df = super::derivative_fd(&f, z, h);
        Ok(df / fz)
    })
}

/// As [`winding_number`] with an exact derivative.
pub fn winding_number_with_derivative(
    f: impl Fn(Complex64) -> Complex64,
    df: impl Fn(Complex64) -> Complex64,
    contour: &Contour,
) -> Result<i64> {
    let floor = contour_floor(contour, &f);
    integer_contour_integral(contour, |z| {
        let fz = f(z);
        check_not_small(fz, z, floor)?;
        Ok(df(z) / fz)
    })
}

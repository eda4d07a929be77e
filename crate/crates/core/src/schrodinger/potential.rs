use std::io::{Read, Write};

use num_complex::Complex64;

use super::grid::Grid1D;
use crate::error::{invalid, Error, Result};

/// Complex potential sampled at the interior points of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    grid: Grid1D,
    values: Vec<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl Potential {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::DimensionMismatch(format!("{} samples on a grid of {} points", values.len(), grid.n)));
        }
        if let Some(i) = values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid(format!("potential sample {i} is not finite")));
        }
        Ok(Potential { grid, values })
    }

    pub fn zero(grid: &Grid1D) -> Self {
        Potential { grid: *grid, values: vec![zero(); grid.n] }
    }

    /// Point samples of `f`.
    pub fn from_fn(grid: &Grid1D, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Potential::new(*grid, grid.points().into_iter().map(f).collect())
    }

    /// `c` on `[a, b]`, zero elsewhere. Each sample is the average over its
    /// cell, so `h Σ V_i` equals `c (b - a)` exactly when `[a, b]` lies
    /// inside the box.
    pub fn constant_on(grid: &Grid1D, a: f64, b: f64, c: Complex64) -> Result<Self> {
        if !(a < b) {
            return Err(invalid(format!("empty interval [{a}, {b}]")));
        }
        let h = grid.h;
        let values = grid
            .points()
            .into_iter()
            .map(|x| {
                let lo = (x - 0.5 * h).max(a);
                let hi = (x + 0.5 * h).min(b);
                if hi > lo {
                    c * ((hi - lo) / h)
                } else {
                    zero()
                }
            })
            .collect();
        Potential::new(*grid, values)
    }

    /// Square well `-(c/ℓ) 1_[0,ℓ]`; `‖V‖₁ = |c|`.
    pub fn well(grid: &Grid1D, c: Complex64, ell: f64) -> Result<Self> {
        if !(ell > 0.0) {
            return Err(invalid(format!("well width must be positive, got {ell}")));
        }
        Potential::constant_on(grid, 0.0, ell, -c / ell)
    }

    /// Piecewise constant values on equal consecutive pieces of `[a, b]`.
    pub fn piecewise(grid: &Grid1D, a: f64, b: f64, pieces: &[Complex64]) -> Result<Self> {
        let mut v = Potential::zero(grid);
        let w = (b - a) / pieces.len().max(1) as f64;
        for (k, &c) in pieces.iter().enumerate() {
            let p = Potential::constant_on(grid, a + k as f64 * w, a + (k + 1) as f64 * w, c)?;
            v = v.add(&p)?;
        }
        Ok(v)
    }

    /// `amp · exp(-(x-center)²/(2 width²))`, cut off beyond four widths.
    pub fn gaussian(grid: &Grid1D, center: f64, width: f64, amp: Complex64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(invalid(format!("gaussian width must be positive, got {width}")));
        }
        Potential::from_fn(grid, |x| {
            let t = (x - center) / width;
            if t.abs() > 4.0 {
                zero()
            } else {
                amp * (-0.5 * t * t).exp()
            }
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn add(&self, other: &Potential) -> Result<Potential> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::DimensionMismatch("potentials live on different grids".into()));
        }
        Ok(Potential {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, s: Complex64) -> Potential {
        Potential { grid: self.grid, values: self.values.iter().map(|v| v * s).collect() }
    }

    /// `h Σ |V_i|^p`, the midpoint rule for `∫|V|^p`.
    pub fn lp_power(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(self.grid.h * self.values.iter().map(|v| v.norm().powf(p)).sum::<f64>())
    }

    /// `(h Σ |V_i|^p)^(1/p)`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        Ok(self.lp_power(p)?.powf(1.0 / p))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Signed root `V/√|V|`, zero where `V` vanishes.
    pub fn signed_root(&self) -> Vec<Complex64> {
        self.values
            .iter()
            .map(|&v| if v == zero() { zero() } else { v / v.norm().sqrt() })
            .collect()
    }

    pub fn abs_root(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm().sqrt()).collect()
    }

    /// Indices with `V_i ≠ 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == zero())
    }

    /// Writes `x,re_v,im_v` rows with a header.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["x", "re_v", "im_v"])?;
        for (i, v) in self.values.iter().enumerate() {
            wr.write_record(&[format!("{:.17e}", self.grid.x(i)), format!("{:.17e}", v.re), format!("{:.17e}", v.im)])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads the format of [`Potential::write_csv`]. The grid is recovered
    /// from the (uniformly spaced) `x` column.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let field = |k: usize| -> Result<f64> {
                rec.get(k)
                    .ok_or_else(|| invalid("potential CSV row needs 3 columns"))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| invalid(format!("bad number in potential CSV: {e}")))
            };
            xs.push(field(0)?);
            vs.push(Complex64::new(field(1)?, field(2)?));
        }
        if xs.len() < 8 {
            return Err(invalid("potential CSV needs at least 8 rows"));
        }
        let n = xs.len();
        let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
        for k in 1..n {
            if ((xs[k] - xs[k - 1]) - h).abs() > 1e-9 * h.abs().max(1.0) {
                return Err(invalid("potential CSV x column is not uniformly spaced"));
            }
        }
        let grid = Grid1D::new(xs[0] - h, xs[n - 1] + h, n)?;
        Potential::new(grid, vs)
    }
}

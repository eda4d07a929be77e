use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Uniform grid of `n` interior points `x0 + (i+1) h` with `h = (x1-x0)/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub x0: f64,
    pub x1: f64,
    pub n: usize,
    pub h: f64,
}

impl Grid1D {
    pub fn new(x0: f64, x1: f64, n: usize) -> Result<Self> {
        if !(x0 < x1) || !x0.is_finite() || !x1.is_finite() {
            return Err(invalid(format!("grid needs x0 < x1, got [{x0}, {x1}]")));
        }
        if n < 8 {
            return Err(invalid(format!("grid needs at least 8 interior points, got {n}")));
        }
        Ok(Grid1D { x0, x1, n, h: (x1 - x0) / (n + 1) as f64 })
    }

    /// Grid whose points are the centers of `n` equal cells tiling `[a, b]`,
    /// so that `h * Σ f(x_i)` is the midpoint rule on `[a, b]`.
    pub fn cell_centered(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a < b) {
            return Err(invalid(format!("cell-centered grid needs a < b, got [{a}, {b}]")));
        }
        let h = (b - a) / n as f64;
        let mut g = Grid1D::new(a - 0.5 * h, b + 0.5 * h, n)?;
        g.h = h;
        Ok(g)
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + (i + 1) as f64 * self.h
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x1 - self.x0
    }

    /// Same box with `factor` times as many cells.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Grid1D::new(self.x0, self.x1, (self.n + 1) * factor - 1)
    }

    pub(crate) fn same_as(&self, other: &Grid1D) -> bool {
        self.n == other.n
            && (self.x0 - other.x0).abs() <= 1e-12 * self.length()
            && (self.x1 - other.x1).abs() <= 1e-12 * self.length()
    }
}

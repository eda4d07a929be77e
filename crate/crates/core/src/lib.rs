//! Numerical checks of eigenvalue bounds for Schrödinger operators
//! `-d²/dx² + V` with complex potentials on the line.
//!
//! The crate discretizes the operator on a Dirichlet box, computes the
//! off-axis spectrum, builds Birman–Schwinger operators and regularized
//! determinants, and evaluates Lieb–Thirring-type eigenvalue sums against
//! their right-hand sides. Each evaluation is returned as a
//! [`bounds::BoundReport`].
//!
//! ```
//! use schrodinger_bounds::prelude::*;
//!
//! let grid = Grid1D::new(-40.0, 40.0, 800).unwrap();
//! let v = Potential::well(&grid, c64(1.0, 0.0), 1.0).unwrap();
//! let eigs = offaxis_spectrum(&v, &SpectralWindow::for_potential(&v)).unwrap();
//! assert_eq!(eigs.len(), 1);
//! let r = check_davies(eigs[0].e, &v, &SpectralParams::with_gamma(0.5)).unwrap();
//! assert!(r.ratio <= 1.0);
//! ```

pub mod bounds;
pub mod determinants;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod numerics;
pub mod schrodinger;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand constructor for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub mod prelude {
    pub use crate::bounds::*;
    pub use crate::c64;
    pub use crate::determinants::*;
    pub use crate::geometry::*;
    pub use crate::numerics::*;
    pub use crate::schrodinger::*;
    pub use crate::zeros::*;
    pub use crate::{Complex64, Error, Result};
}

//! Dense complex linear algebra.

pub(crate) mod contour;
mod eig;
mod lu;
mod matrix;
mod svd;

pub use contour::{winding_number, winding_number_with_derivative, Contour};
pub use eig::{eig, eig_symmetric_tridiagonal, hessenberg};
pub use lu::{det, inverse, solve, Lu, TridiagonalLu};
pub use matrix::CMatrix;
pub use svd::{schatten_norm, schatten_norm_of_values, singular_values};

/// Five-point central difference of a scalar analytic function.
pub fn derivative_fd(f: &dyn Fn(num_complex::Complex64) -> num_complex::Complex64, z: num_complex::Complex64, h: f64) -> num_complex::Complex64 {
    (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h)
}

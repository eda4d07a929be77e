//! Scalar geometry of the slit plane `C \ [0, ∞)` and the unit disk.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Distance from `z` to the half-line `[0, ∞)`.
#[inline]
pub fn delta(z: Complex64) -> f64 {
    if z.re >= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

/// A point together with its distance to `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineDistance {
    pub z: Complex64,
    pub delta: f64,
}

impl From<Complex64> for HalfLineDistance {
    fn from(z: Complex64) -> Self {
        HalfLineDistance { z, delta: delta(z) }
    }
}

fn on_half_line(z: Complex64) -> bool {
    z.im == 0.0 && z.re >= 0.0
}

/// `√(-z)` on the branch with positive real part.
pub fn sqrt_neg(z: Complex64) -> Result<Complex64> {
    if on_half_line(z) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::OnHalfLine(z));
    }
    let w = (-z).sqrt();
    // the principal root already has Re >= 0; Re = 0 happens only on the cut
    Ok(if w.re < 0.0 { -w } else { w })
}

fn check_disk(w: Complex64) -> Result<()> {
    if !(w.norm() < 1.0) {
        return Err(Error::OutsideDisk(w));
    }
    Ok(())
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(invalid(format!("a must be positive, got {a}")));
    }
    Ok(())
}

/// Conformal map of the unit disk onto the slit plane, `ψ(0) = -a`.
pub fn psi(a: f64, w: Complex64) -> Result<Complex64> {
    check_a(a)?;
    check_disk(w)?;
    let q = (1.0 + w) / (1.0 - w);
    Ok(-a * q * q)
}

/// Inverse of [`psi`].
pub fn psi_inv(a: f64, z: Complex64) -> Result<Complex64> {
    check_a(a)?;
    let s = sqrt_neg(z)?;
    let ra = a.sqrt();
    Ok((s - ra) / (s + ra))
}

/// Derivative of [`psi`] in `w`.
pub fn psi_prime(a: f64, w: Complex64) -> Result<Complex64> {
    check_a(a)?;
    check_disk(w)?;
    Ok(-4.0 * a * (1.0 + w) / (1.0 - w).powi(3))
}

/// Koebe lower bound `|ψ'(w)|(1-|w|)/4` for `δ(ψ(w))`.
pub fn koebe_lower(a: f64, w: Complex64) -> Result<f64> {
    check_a(a)?;
    check_disk(w)?;
    Ok(a * (1.0 + w).norm() * (1.0 - w.norm()) / (1.0 - w).norm().powi(3))
}

/// Lower bound for `|1 + ψ⁻¹(z)|` in terms of `|z|`.
pub fn one_plus_psi_inv_lower(a: f64, z: Complex64) -> f64 {
    let m = z.norm();
    2f64.sqrt() * m.sqrt() / (m + a).sqrt()
}

/// Lower bound for `1 - |ψ⁻¹(z)|` in terms of `δ(z)` and `|z|`.
pub fn one_minus_abs_psi_inv_lower(a: f64, z: Complex64) -> f64 {
    let m = z.norm();
    delta(z) * a.sqrt() / (4.0 * m.sqrt() * (m + a))
}

/// Distance from `x` to the real segment `[0, 1/a]`.
pub fn dist_to_segment(x: Complex64, a: f64) -> Result<f64> {
    check_a(a)?;
    let t = x.re.clamp(0.0, 1.0 / a);
    Ok((x - Complex64::new(t, 0.0)).norm())
}

/// Lower bound `δ(E) / (8 |E+a| (|E|+a))` for `dist((E+a)⁻¹, [0, 1/a])`.
pub fn resolvent_dist_lower(e: Complex64, a: f64) -> Result<f64> {
    check_a(a)?;
    let ea = (e + a).norm();
    if ea == 0.0 {
        return Err(invalid("E = -a has no resolvent"));
    }
    Ok(delta(e) / (8.0 * ea * (e.norm() + a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(c(-1.0, 0.0)), 1.0);
        assert_eq!(delta(c(1.0, 1.0)), 1.0);
        assert_eq!(delta(c(-3.0, 4.0)), 5.0);
    }

    #[test]
    fn sqrt_neg_examples() {
        assert_eq!(sqrt_neg(c(-1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(sqrt_neg(c(-4.0, 0.0)).unwrap(), c(2.0, 0.0));
        let w = sqrt_neg(c(0.0, 1.0)).unwrap();
        assert!(w.re > 0.0);
        assert!((w * w + c(0.0, 1.0)).norm() < 1e-14);
        assert!(matches!(sqrt_neg(c(2.0, 0.0)), Err(Error::OnHalfLine(_))));
        assert!(sqrt_neg(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn psi_examples() {
        let a = 2.5;
        assert_eq!(psi(a, c(0.0, 0.0)).unwrap(), c(-a, 0.0));
        assert!((psi(a, c(0.5, 0.0)).unwrap() - c(-9.0 * a, 0.0)).norm() < 1e-14);
        assert!(psi_inv(a, c(-a, 0.0)).unwrap().norm() < 1e-15);
        assert!((psi_inv(a, c(-9.0 * a, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!(matches!(psi(a, c(1.0, 0.0)), Err(Error::OutsideDisk(_))));
        assert!(matches!(psi_inv(a, c(3.0, 0.0)), Err(Error::OnHalfLine(_))));
    }

    #[test]
    fn psi_prime_matches_difference_quotient() {
        let (a, w) = (1.7, c(0.2, -0.4));
        let h = 1e-6;
        let fd = (psi(a, w + h).unwrap() - psi(a, w - h).unwrap()) / (2.0 * h);
        assert!((fd - psi_prime(a, w).unwrap()).norm() < 1e-7);
    }

    #[test]
    fn koebe_examples() {
        let a = 3.0;
        assert!((koebe_lower(a, c(0.0, 0.0)).unwrap() - a).abs() < 1e-15);
        assert!((koebe_lower(a, c(0.5, 0.0)).unwrap() - 6.0 * a).abs() < 1e-12);
    }

    #[test]
    fn koebe_on_polar_grid() {
        for a in [0.5, 1.0, 4.0] {
            for i in 0..64 {
                let r = (1.0 - 1e-3) * i as f64 / 63.0;
                for j in 0..128 {
                    let w = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / 128.0);
                    let z = psi(a, w).unwrap();
                    assert!(koebe_lower(a, w).unwrap() <= delta(z) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn segment_and_resolvent_examples() {
        let a = 2.0;
        assert!((dist_to_segment(c(-1.0 / a, 0.0), a).unwrap() - 1.0 / a).abs() < 1e-15);
        assert!((dist_to_segment(c(1.0 / (2.0 * a), 1.0), a).unwrap() - 1.0).abs() < 1e-15);
        let low = resolvent_dist_lower(c(-3.0, 0.0), 1.0).unwrap();
        assert!((low - 3.0 / 64.0).abs() < 1e-15);
        assert!(low <= dist_to_segment(1.0 / c(-2.0, 0.0), 1.0).unwrap());
        assert_eq!(resolvent_dist_lower(c(5.0, 0.0), 1.0).unwrap(), 0.0);
        assert!(resolvent_dist_lower(c(-1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn segment_distance_matches_sampling() {
        let a = 1.3;
        for &x in &[c(0.2, 0.3), c(-0.4, -0.1), c(2.0, 0.05), c(0.5, 0.0)] {
            let brute = (0..=100_000)
                .map(|k| (x - c(k as f64 / 100_000.0 / a, 0.0)).norm())
                .fold(f64::INFINITY, f64::min);
            assert!((brute - dist_to_segment(x, a).unwrap()).abs() < 1e-6);
        }
    }

    fn off_axis() -> impl Strategy<Value = Complex64> {
        (-50.0..50.0f64, -50.0..50.0f64)
            .prop_filter("off the half-line", |(x, y)| *y != 0.0 || *x < 0.0)
            .prop_map(|(x, y)| c(x, y))
    }

    proptest! {
        #[test]
        fn delta_bounded_by_modulus(x in -1e3..1e3f64, y in -1e3..1e3f64) {
            let z = c(x, y);
            prop_assert!(delta(z) <= z.norm());
            prop_assert_eq!(delta(z) == 0.0, y == 0.0 && x >= 0.0);
        }

        #[test]
        fn delta_scales_quadratically(z in off_axis(), lam in 0.1..10.0f64) {
            let d = delta(z * lam * lam);
            prop_assert!((d - lam * lam * delta(z)).abs() <= 1e-12 * d.max(1.0));
        }

        #[test]
        fn sqrt_neg_branch(z in off_axis()) {
            let w = sqrt_neg(z).unwrap();
            prop_assert!(w.re > 0.0);
            prop_assert!((w * w + z).norm() <= 1e-12 * z.norm().max(1.0));
        }

        #[test]
        fn psi_round_trip(r in 0.0..0.999f64, t in 0.0..std::f64::consts::TAU, a in 0.1..10.0f64) {
            let w = Complex64::from_polar(r, t);
            let z = psi(a, w).unwrap();
            prop_assert!(delta(z) > 0.0);
            let back = psi_inv(a, z).unwrap();
            prop_assert!(back.norm() < 1.0);
            prop_assert!((back - w).norm() <= 1e-12 / (1.0 - r));
        }

        #[test]
        fn psi_inv_round_trip(z in off_axis(), a in 0.1..10.0f64) {
            let w = psi_inv(a, z).unwrap();
            prop_assert!(w.norm() < 1.0);
            prop_assert!((psi(a, w).unwrap() - z).norm() <= 1e-10 * z.norm().max(1.0));
        }

        #[test]
        fn koebe_guarantee(r in 0.0..0.999f64, t in 0.0..std::f64::consts::TAU, a in 0.1..10.0f64) {
            let w = Complex64::from_polar(r, t);
            prop_assert!(koebe_lower(a, w).unwrap() <= delta(psi(a, w).unwrap()) * (1.0 + 1e-12));
        }

        #[test]
        fn transplant_lower_bounds(z in off_axis(), a in 0.1..10.0f64) {
            let w = psi_inv(a, z).unwrap();
            prop_assert!(one_plus_psi_inv_lower(a, z) <= (1.0 + w).norm() * (1.0 + 1e-12));
            prop_assert!(one_minus_abs_psi_inv_lower(a, z) <= (1.0 - w.norm()) * (1.0 + 1e-9) + 1e-15);
        }

        #[test]
        fn resolvent_distance_bound(z in off_axis(), a in 1.0..20.0f64) {
            prop_assume!((z + a).norm() > 1e-9);
            let x = 1.0 / (z + a);
            prop_assert!(resolvent_dist_lower(z, a).unwrap() <= dist_to_segment(x, a).unwrap() * (1.0 + 1e-12));
        }
    }
}

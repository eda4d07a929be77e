use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Singular values in descending order.
///
/// One-sided Jacobi: columns are rotated pairwise until mutually
/// orthogonal, and the column norms are the singular values. This works
/// directly on `A` rather than on `A*A`, so small singular values keep full
/// relative accuracy.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Vec::new();
    }
    // work on the orientation with at most as many columns as rows
    let work = if n > m { a.adjoint() } else { a.clone() };
    let (m, n) = (work.rows(), work.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| work.col(j)).collect();
    let tol = 1e-15;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = Complex64::new(0.0, 0.0);
                    for i in 0..m {
                        alpha += cp[i].norm_sqr();
                        beta += cq[i].norm_sqr();
                        gamma += cp[i].conj() * cq[i];
                    }
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for i in 0..m {
                    let x = cp[i];
                    let y = cq[i] * phase;
                    cp[i] = x * c - y * s;
                    cq[i] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// `l^p` norm of a list of singular values; `p = f64::INFINITY` gives the max.
pub fn schatten_norm_of_values(sv: &[f64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let max = sv.iter().copied().fold(0.0, f64::max);
    if p.is_infinite() || max == 0.0 {
        return Ok(max);
    }
    // scale by the largest value to avoid overflow for large p
    let s: f64 = sv.iter().map(|x| (x / max).powf(p)).sum();
    Ok(max * s.powf(1.0 / p))
}

/// Schatten `p`-norm, `p >= 1` or `p = f64::INFINITY`.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    schatten_norm_of_values(&singular_values(a), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::eig;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random(r: usize, k: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(r, k, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn identity_and_rank_one() {
        assert_eq!(singular_values(&CMatrix::identity(3)), vec![1.0, 1.0, 1.0]);
        let u = [c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.0)];
        let v = [c(2.0, 0.0), c(0.0, -1.0), c(0.5, 0.5)];
        let a = CMatrix::from_fn(3, 3, |i, j| u[i] * v[j].conj());
        let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let sv = singular_values(&a);
        assert!((sv[0] - nu * nv).abs() < 1e-12);
        assert!(sv[1] < 1e-12 && sv[2] < 1e-12);
        assert_eq!(singular_values(&CMatrix::zeros(2, 2)), vec![0.0, 0.0]);
    }

    #[test]
    fn matches_gram_eigenvalues() {
        let a = random(4, 4, 1);
        let gram = &a.adjoint() * &a;
        let mut ev: Vec<f64> = eig(&gram).unwrap().iter().map(|z| z.re.max(0.0).sqrt()).collect();
        ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (s, e) in singular_values(&a).iter().zip(&ev) {
            assert!((s - e).abs() < 1e-10);
        }
    }

    #[test]
    fn rectangular_orientations_agree() {
        let a = random(3, 5, 2);
        let s1 = singular_values(&a);
        let s2 = singular_values(&a.adjoint());
        assert_eq!(s1.len(), 3);
        for (x, y) in s1.iter().zip(&s2) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn schatten_examples() {
        let i2 = CMatrix::identity(2);
        assert!((schatten_norm(&i2, 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(schatten_norm(&i2, f64::INFINITY).unwrap(), 1.0);
        assert!(matches!(schatten_norm(&i2, 0.5), Err(Error::InvalidExponent(_))));
        let a = random(3, 3, 3);
        let s1: f64 = singular_values(&a).iter().sum();
        assert!((schatten_norm(&a, 1.0).unwrap() - s1).abs() < 1e-12);
    }
}

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Reduces `a` to upper Hessenberg form by Householder reflections.
///
/// Only the similarity-transformed matrix is returned; the reflectors are
/// discarded because callers here never need eigenvectors.
pub fn hessenberg(a: &CMatrix) -> Result<CMatrix> {
    a.require_square()?;
    let n = a.rows();
    let mut h = a.clone();
    if n < 3 || is_hessenberg(&h) {
        return Ok(h);
    }
    let mut v = vec![zero(); n];
    for k in 0..n - 2 {
        let norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi /= vnorm;
        }
        // H <- (I - 2vv*) H
        for j in k..n {
            let mut s = zero();
            for i in k + 1..n {
                s += v[i].conj() * h[(i, j)];
            }
            s *= 2.0;
            for i in k + 1..n {
                h[(i, j)] -= v[i] * s;
            }
        }
        // H <- H (I - 2vv*)
        for i in 0..n {
            let mut s = zero();
            for j in k + 1..n {
                s += h[(i, j)] * v[j];
            }
            s *= 2.0;
            for j in k + 1..n {
                h[(i, j)] -= s * v[j].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = zero();
        }
    }
    Ok(h)
}

fn is_hessenberg(h: &CMatrix) -> bool {
    let n = h.rows();
    (0..n).all(|i| (0..i.saturating_sub(1)).all(|j| h[(i, j)] == zero()))
}

/// Givens rotation `[c s; -conj(s) c]` with real `c` mapping `(a, b)` to `(r, 0)`.
#[inline]
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, zero());
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// All eigenvalues of a square complex matrix, repeated by multiplicity.
///
/// Householder reduction to Hessenberg form followed by single-shift QR
/// with Wilkinson shifts and deflation. The order of the returned values
/// follows the deflation order and carries no meaning.
pub fn eig(a: &CMatrix) -> Result<Vec<Complex64>> {
    a.require_square()?;
    a.check_finite()?;
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(a)?;
    let norm = h.frobenius_norm();
    let mut eigs = vec![zero(); n];
    if norm == 0.0 {
        return Ok(eigs);
    }
    let cap = 100 * n.max(1);
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eigs[0] = h[(0, 0)];
            break;
        }
        // locate the start of the unreduced block ending at `hi`
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut scale = h[(l, l)].norm() + h[(l - 1, l - 1)].norm();
            if scale == 0.0 {
                scale = norm;
            }
            if sub <= EPS * scale {
                h[(l, l - 1)] = zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eigs[hi] = h[(hi, hi)];
            hi -= 1;
            its = 0;
            continue;
        }
        total += 1;
        its += 1;
        if total > cap {
            return Err(Error::NoConvergence {
                iterations: total,
                unresolved: hi + 1,
            });
        }
        let shift = if its % 10 == 0 {
            // exceptional shift to break cycles
            let s = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(0.75 * s, 0.4 * s)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in l..=hi {
            h[(k, k)] -= shift;
        }
        rot.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            rot.push((c, s));
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = l + idx;
            for i in l..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for k in l..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(eigs)
}

/// Eigenvalues of the complex symmetric tridiagonal matrix with diagonal
/// `d` and off-diagonal `e` (`e.len() == d.len() - 1`).
///
/// Implicit QL with complex orthogonal rotations. These rotations are not
/// unitary and can break down; in that case `None` is returned and the
/// caller should use [`eig`] on the assembled matrix instead.
pub fn eig_symmetric_tridiagonal(d: &[Complex64], e: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = d.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if e.len() + 1 != n {
        return None;
    }
    let mut d = d.to_vec();
    let mut e: Vec<Complex64> = e.iter().copied().chain(std::iter::once(zero())).collect();
    let trace: Complex64 = d.iter().sum();
    let scale = d.iter().chain(e.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let one = Complex64::new(1.0, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= EPS * dd.max(EPS * scale) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (e[l] * 2.0);
            let mut r = (g * g + one).sqrt();
            if (g - r).norm() > (g + r).norm() {
                r = -r;
            }
            g = d[m] - d[l] + e[l] / (g + r);
            let (mut s, mut c, mut p) = (one, one, zero());
            let mut broke_early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                let mag = f.norm() + g.norm();
                if r.norm() <= 1e-300 {
                    d[i + 1] -= p;
                    e[m] = zero();
                    broke_early = true;
                    break;
                }
                if r.norm() < 1e-6 * mag {
                    // near-isotropic vector: the rotation would amplify rounding
                    return None;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + c * b * 2.0;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if broke_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = zero();
        }
    }
    let sum: Complex64 = d.iter().sum();
    if !d.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return None;
    }
    if (sum - trace).norm() > 1e-9 * (scale * n as f64).max(1.0) {
        return None;
    }
    Some(d)
}

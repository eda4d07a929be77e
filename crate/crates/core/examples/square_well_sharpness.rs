//! The single-eigenvalue bound `|E|^{1/2} ≤ ½ ‖V‖₁` is attained in the
//! limit of narrow square wells `-(1/ℓ) 1_[0,ℓ]`.
//!
//! `cargo run --release --example square_well_sharpness`

use schrodinger_bounds::prelude::*;

// ground state of a real well of depth v0 and width ell: κ = k tan(kℓ/2), k² + κ² = v0
fn ground_state(v0: f64, ell: f64) -> f64 {
    let f = |k: f64| k * (0.5 * k * ell).tan() - (v0 - k * k).max(0.0).sqrt();
    let hi = v0.sqrt().min(std::f64::consts::PI / ell * (1.0 - 1e-12));
    let (mut a, mut b) = (1e-12, hi);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(m) > 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    let k = 0.5 * (a + b);
    -(v0 - k * k)
}

fn main() -> Result<()> {
    let grid = Grid1D::new(-20.0, 20.0, 3999)?;
    let params = SpectralParams::with_gamma(0.5);
    println!("{:>6} {:>12} {:>12} {:>10} {:>10}", "ℓ", "E exact", "E lattice", "ratio", "ratio h");
    for ell in [0.2, 0.05, 0.01] {
        let e = ground_state(1.0 / ell, ell);
        let v = Potential::well(&grid, c64(1.0, 0.0), ell)?;
        let eigs = offaxis_spectrum(&v, &SpectralWindow::for_potential(&v))?;
        let lat = eigs.iter().map(|r| r.e).min_by(|a, b| a.re.total_cmp(&b.re)).expect("one bound state");
        let exact = e.abs().sqrt() / 0.5;
        let r = check_davies(lat, &v, &params)?;
        println!("{ell:>6} {e:>12.8} {:>12.8} {exact:>10.6} {:>10.6}", lat.re, r.normalized().unwrap());
    }
    Ok(())
}

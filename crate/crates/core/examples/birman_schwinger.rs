//! Eigenvalues of `H` are exactly the points where `-1` is an eigenvalue
//! of the Birman–Schwinger operator, with matching multiplicities.
//!
//! `cargo run --release --example birman_schwinger`

use schrodinger_bounds::prelude::*;

fn main() -> Result<()> {
    let grid = Grid1D::new(-12.0, 12.0, 160)?;
    let v = Potential::piecewise(&grid, -1.0, 1.0, &[c64(-2.0, 1.0), c64(-1.0, -1.5), c64(-2.5, 0.5)])?;
    let eigs = offaxis_spectrum(&v, &SpectralWindow::for_potential(&v))?;
    for r in &eigs {
        let radius = 0.25 * r.delta.min(1.0);
        let chk = check_bs_principle(&v, r.e, radius.min(0.05))?;
        println!(
            "E = {:.6}  σ_min(1+K)/(1+‖K‖) = {:.2e}  order {} (mult {})",
            r.e,
            chk.sigma_min / chk.scale,
            chk.multiplicity,
            r.mult
        );
    }

    // the converse: zeros of det₂(1 + K) found on the disk side of the conformal map
    // box states close to the half-line are zeros too, so compare with
    // the unfiltered spectrum
    let all = offaxis_spectrum(&v, &SpectralWindow::new(0.0))?;
    let zeros = birman_schwinger_zeros(&v, 1.0, 0.97, 1e-4)?;
    for (z, order) in &zeros {
        let nearest = all.iter().map(|r| (r.e - z).norm()).fold(f64::INFINITY, f64::min);
        println!("det₂ zero {z:.6} of order {order}, nearest eigenvalue at distance {nearest:.1e}");
    }
    Ok(())
}

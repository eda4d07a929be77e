//! Off-axis eigenvalues of `-d²/dx² + V` for a complex Gaussian bump.
//!
//! `cargo run --example spectrum`

use schrodinger_bounds::prelude::*;

fn main() -> Result<()> {
    let grid = Grid1D::new(-30.0, 30.0, 400)?;
    let v = Potential::gaussian(&grid, 0.0, 0.6, c64(-3.0, 1.5))?;
    let window = SpectralWindow::for_potential(&v);
    println!("grid h = {:.4}, ‖V‖₁ = {:.4}", grid.h, v.lp_power(1.0)?);
    println!("window: δ > {:.3e}, |E| < {:.1}", window.delta_floor, window.e_max);
    let eigs = offaxis_spectrum(&v, &window)?;
    println!("{:>12} {:>12} {:>10} {:>4}", "Re E", "Im E", "δ(E)", "mult");
    for r in &eigs {
        println!("{:>12.6} {:>12.6} {:>10.6} {:>4}", r.e.re, r.e.im, r.delta, r.mult);
    }

    // the same potential on a finer grid moves the eigenvalues by O(h²)
    let fine = grid.refined(2)?;
    let vf = Potential::gaussian(&fine, 0.0, 0.6, c64(-3.0, 1.5))?;
    let ef = offaxis_spectrum(&vf, &SpectralWindow::for_potential(&vf))?;
    for (a, b) in eigs.iter().zip(&ef) {
        println!("refinement shift {:.2e}", (a.e - b.e).norm());
    }
    Ok(())
}

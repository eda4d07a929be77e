//! Eigenvalue sums over a random ensemble with their implied constants.
//!
//! `cargo run --release --example lieb_thirring_sums`

use schrodinger_bounds::prelude::*;

fn main() -> Result<()> {
    let grid = Grid1D::new(-40.0, 40.0, 320)?;
    let spec = EnsembleSpec { family: Family::Gauss, count: 30, grid, target_l1: Some(4.0) };
    let pots = potential_ensemble(17, &spec)?;
    let params = SpectralParams { gamma: 1.0, mu: 2.0, ..Default::default() };
    let mut worst: Vec<(String, f64)> = Vec::new();
    for v in &pots {
        let eigs = offaxis_spectrum(v, &SpectralWindow::for_potential(v))?;
        let (m2i, m2o) = check_main2(&eigs, v, &params)?;
        let (m3i, m3o) = check_main3(&eigs, v, &params)?;
        let mut reps = vec![m2i, m2o, m3i, m3o, check_main3proofkey(&eigs, v, &params)?];
        reps.push(check_ltfrsa(&eigs, v, &SpectralParams::with_gamma(0.5))?);
        reps.push(check_main3_corollary(&eigs, v)?);
        for r in reps {
            match worst.iter_mut().find(|(n, _)| *n == r.name) {
                Some(w) => w.1 = w.1.max(r.ratio),
                None => worst.push((r.name.clone(), r.ratio)),
            }
        }
    }
    for (name, c) in worst {
        println!("{name:<16} largest implied constant {c:.4e}");
    }
    Ok(())
}

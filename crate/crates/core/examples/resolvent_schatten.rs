//! Schatten bounds on weighted free resolvents: the explicit one-dimensional
//! estimate, the Sobolev-type bound and the momentum-integral bound.
//!
//! `cargo run --release --example resolvent_schatten`

use schrodinger_bounds::prelude::*;

fn main() -> Result<()> {
    let grid = Grid1D::cell_centered(-2.0, 2.0, 160)?;
    let w = Potential::constant_on(&grid, -1.0, 1.0, c64(1.0, 0.0))?;
    let params = SpectralParams::with_gamma(1.0);
    for z in [c64(-1.0, 0.0), c64(2.0, 0.5), c64(-0.3, 3.0)] {
        let r = check_prop_res(&w, &w, z, &params)?;
        println!("z = {z}: ‖W R(z) W‖_(2q) = {:.5e}, normalized {:.4}", r.lhs, r.normalized().unwrap());
    }

    let g = Grid1D::new(-15.0, 15.0, 300)?;
    let v = Potential::gaussian(&g, 0.0, 0.5, c64(1.0, -2.0))?;
    for a in [1.0, 2.0, 4.0, 8.0] {
        let k = check_kss(&v, a, &params)?;
        let s = check_bssobolev(&v, a, &params)?;
        println!("a = {a}: kss ratio {:.4}, Sobolev-type ratio {:.4}", k.ratio, s.ratio);
    }
    println!("momentum integral at a = 2, r = 3: {:.10}", momentum_integral(2.0, 3.0));
    Ok(())
}

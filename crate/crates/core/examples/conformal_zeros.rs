//! Zeros of analytic functions on the disk, Blaschke products and the
//! weighted zero sums that transfer to eigenvalue sums.
//!
//! `cargo run --example conformal_zeros`

use schrodinger_bounds::prelude::*;

fn main() -> Result<()> {
    let zs = [
        DiskZero::new(c64(0.5, 0.3), 1)?,
        DiskZero::new(c64(-0.2, -0.7), 2)?,
        DiskZero::new(c64(0.9, 0.05), 1)?,
    ];
    let b = blaschke(&zs);
    for z in find_zeros_in_disk(&b, 1e-3)? {
        println!("zero {:.10} of order {}", z.w, z.order);
    }
    println!("zero sum α=1, β=1, ε=0.1: {:.6}", bgk_sum(&zs, 1.0, 1.0, 0.1));

    // map the zeros to the slit plane and compare the two sums
    let af = AFParams::new(3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0)?;
    let a = 4.0;
    let eps = 0.1;
    let pts: Vec<Complex64> = zs.iter().map(|z| psi(a, z.w)).collect::<Result<_>>()?;
    let disk_side = bgk_sum(&zs, af.p * af.rho, af.p * (af.rho + 2.0 * af.sigma), eps);
    let plane_side = afmain_sum(&records(&pts), &af, eps, a);
    let (s, t) = (af.s(eps), af.t(eps));
    let factor = 4f64.powf(-s) * 2f64.powf(t / 2.0) * a.powf(s / 2.0);
    println!("disk sum {disk_side:.6e} ≥ {factor:.3e} × plane sum {plane_side:.6e} = {:.6e}", factor * plane_side);

    // smallest a on 2..64 from which the implied constant stops growing
    for a in [2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
        if let Some(c) = afmain_constant(&records(&pts), &af, eps, a) {
            println!("a = {a:>4}: implied constant {c:.4e}");
        }
    }
    match afmain_threshold(&records(&pts), &af, eps, 0.05) {
        Some(th) => println!("threshold a = {} with constant {:.4e}", th.a, th.constant),
        None => println!("the constant still grows at a = 64"),
    }
    Ok(())
}

//! Regularized determinants: the trace formula, the product identity and
//! zero orders on families with prescribed Jordan structure.
//!
//! `cargo run --example regularized_determinants`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schrodinger_bounds::prelude::*;

fn random(n: usize, rng: &mut ChaCha8Rng, amp: f64) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-amp..amp), rng.gen_range(-amp..amp)))
}

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let k = random(6, &mut rng, 0.3);
    for n in 1..=4 {
        println!("det_{n}(1+K) = {:.10}  (by traces {:.10})", det_n(&k, n)?, det_n_by_traces(&k, n)?);
    }

    let l = random(6, &mut rng, 0.3);
    let u: Vec<Complex64> = (0..6).map(|_| c64(rng.gen_range(-0.5..0.5), 0.0)).collect();
    let f = CMatrix::from_fn(6, 6, |i, j| u[i] * u[(j + 1) % 6]);
    for n in [2, 3] {
        println!("product identity residual at n = {n}: {:.1e}", verify_detprod(&k, &f, &l, n)?);
    }

    let z0 = c64(0.3, 0.2);
    for ms in [vec![1], vec![2], vec![1, 2], vec![1, 1, 3]] {
        let fam = jordan_test_family(z0, &ms, 9)?;
        let contour = Contour::circle(z0, 0.3)?;
        println!(
            "Jordan blocks {ms:?}: zero order {}, trace integral {}",
            zero_order(&fam, z0, &contour, 2)?,
            gohberg_rouche_mult(&fam, &contour)?
        );
    }
    Ok(())
}

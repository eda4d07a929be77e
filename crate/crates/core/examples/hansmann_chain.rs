//! The chain of inequalities between eigenvalue distances and the Schatten
//! norm of the resolvent difference, on random matrices.
//!
//! `cargo run --example hansmann_chain`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schrodinger_bounds::prelude::*;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 12;
    // H0 = B* B is Hermitian and nonnegative
    let b = CMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h0 = b.adjoint().matmul(&b)?;
    let v = CMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)));
    for p in [1.0, 1.5, 2.0] {
        for a in [1.0, 4.0, 16.0] {
            let ch = check_hansmann_chain(&h0, &v, a, p)?;
            println!(
                "p = {p}, a = {a:>4}: {:.4e} ≤ {:.4e} ≤ {:.4e}  holds: {}",
                ch.first,
                ch.second,
                ch.third,
                ch.holds()
            );
        }
    }
    Ok(())
}

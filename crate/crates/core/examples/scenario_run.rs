//! Runs a scenario file in memory and prints its summary; pass a path or
//! use the bundled `scenarios/boxes.toml`.
//!
//! `cargo run --release --example scenario_run -- examples/scenarios/boxes.toml`

use std::path::PathBuf;

use schrodinger_bounds::harness::{evaluate, spectrum_svg, summary_text, Scenario};

fn main() -> schrodinger_bounds::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/scenarios/boxes.toml"));
    let scenario = Scenario::from_file(&path)?;
    let out = evaluate(&scenario)?;
    print!("{}", summary_text(&scenario, &out));
    let svg = spectrum_svg(&out.reports);
    println!("figure: {} bytes, {} eigenvalues", svg.len(), svg.matches("class=\"eig\"").count());
    Ok(())
}

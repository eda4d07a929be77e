//! Scenario files, ensemble runs, report artifacts, figures and parameter
//! sweeps. This is the library side of the `sbound` binary.
//!
//! A scenario is a TOML file. Unknown keys are rejected.
//!
//! ```toml
//! name = "boxes"
//! seed = 1                     # required
//! output_dir = "out/boxes"     # optional, SBOUND_OUT_DIR wins
//!
//! [ensemble]
//! family = "box"               # box | gauss | well | well(c, l)
//! count = 50
//! grid = { x0 = -15.0, x1 = 15.0, n = 300 }
//! target_l1 = 2.0              # optional rescaling of each draw
//!
//! [window]                     # optional overrides
//! delta_floor = 1e-3
//! e_max = 400.0
//!
//! [constants]
//! mode = "known"               # known | empirical
//! fixed = { main1 = 0.5 }      # asserted constants per report name
//!
//! [[theorem]]
//! name = "main1"               # see TheoremKind
//! gamma = [0.5, 1.0, 2.0]      # each of gamma, eps, eps_prime, mu, nu, a, split
//! slack = 0.05                 # takes a list; the product is evaluated
//!
//! [sweep]
//! a = [1.0, 2.0, 4.0]          # also mu, nu, gamma and n (for the h axis)
//! ```

mod plot;
mod run;
mod scenario;
mod selftest;
mod sweep;

pub use plot::{envelope, envelope_amplitude, report_eigenvalues, spectrum_svg, split_radii};
pub use run::{
    evaluate, evaluate_instance, run, schrodinger_af_params, summary_text, theorem_reports, write_artifacts,
    InstanceResult, RunOutput,
};
pub use scenario::{
    ConstantMode, ConstantsSection, EnsembleSection, GridSpec, Scenario, SweepSection, TheoremKind, TheoremSection,
    WindowSection, OUT_DIR_ENV,
};
pub use selftest::{selftest, FixtureResult};
pub use sweep::{fit_power_law, print_fits, sweep, write_sweep, PowerFit, SweepAxis, SweepOutput, TrendRow};

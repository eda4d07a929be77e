use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schrodinger_bounds::bounds::read_reports_csv;
use schrodinger_bounds::harness::{self, Scenario, SweepAxis};
use schrodinger_bounds::Error;

/// Eigenvalue bound checks for Schrödinger operators with complex potentials.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a scenario and write reports, summary and figure.
    Run { scenario: PathBuf },
    /// Evaluate a scenario along one parameter axis.
    Sweep {
        scenario: PathBuf,
        /// One of a, mu, nu, gamma, h.
        #[arg(long)]
        axis: String,
    },
    /// Draw the spectrum figure from a reports.csv.
    Plot {
        reports: PathBuf,
        /// Output file; defaults to spectrum.svg next to the reports.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the built-in fixtures.
    Selftest,
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Config(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run { scenario } => {
            let s = match Scenario::from_file(&scenario) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let (out, dir) = match harness::run(&s) {
                Ok(x) => x,
                Err(e) => return fail(e),
            };
            print!("{}", harness::summary_text(&s, &out));
            println!("artifacts in {}", dir.display());
            let failures = out.failures();
            if failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failing reports: {}", failures.join(", "));
                ExitCode::from(1)
            }
        }
        Cmd::Sweep { scenario, axis } => {
            let res = axis.parse::<SweepAxis>().and_then(|axis| {
                let s = Scenario::from_file(&scenario)?;
                let out = harness::sweep(&s, axis)?;
                let dir = s.output_dir();
                harness::write_sweep(&out, &dir)?;
                harness::print_fits(&out, std::io::stdout())?;
                println!("trend table in {}", dir.join(format!("sweep_{axis}.csv")).display());
                Ok(())
            });
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Cmd::Plot { reports, out } => {
            let res = std::fs::File::open(&reports).map_err(Error::from).and_then(read_reports_csv).and_then(|r| {
                let path = out.unwrap_or_else(|| reports.with_file_name("spectrum.svg"));
                std::fs::write(&path, harness::spectrum_svg(&r))?;
                println!("wrote {}", path.display());
                Ok(())
            });
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Cmd::Selftest => match harness::selftest() {
            Ok(results) => {
                let mut ok = true;
                for r in &results {
                    println!("{} {:<16} {}", if r.passed { "pass" } else { "FAIL" }, r.name, r.detail);
                    ok &= r.passed;
                }
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(e),
        },
    }
}

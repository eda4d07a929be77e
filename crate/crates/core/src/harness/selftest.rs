use super::plot::spectrum_svg;
use super::run::evaluate;
use super::scenario::Scenario;
use crate::error::Result;

const BASE: &str = r#"
name = "selftest"
seed = 20240611

[ensemble]
family = "box"
count = 4
grid = { x0 = -30.0, x1 = 30.0, n = 240 }

[[theorem]]
name = "main1"
gamma = [0.5, 1.0, 2.0]
slack = 0.05
"#;

/// Outcome of one fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn fixture(name: &'static str, passed: bool, detail: String) -> FixtureResult {
    FixtureResult { name, passed, detail }
}

/// Runs the built-in fixtures in memory: an empty ensemble must pass with
/// no reports, a deliberately wrong constant must fail, a repeated seed
/// must give identical CSV bytes, and an empty report set must still
/// produce a plot with axes.
pub fn selftest() -> Result<Vec<FixtureResult>> {
    let mut out = Vec::new();

    let empty = Scenario::from_str(&BASE.replace("count = 4", "count = 0"))?;
    let r = evaluate(&empty)?;
    out.push(fixture("empty_ensemble", r.passed() && r.reports.is_empty(), format!("{} reports", r.reports.len())));

    let wrong = Scenario::from_str(&format!("{BASE}\n[constants]\nfixed = {{ main1 = 1e-6 }}\n"))?;
    let r = evaluate(&wrong)?;
    let fails = r.failures();
    out.push(fixture("known_failure", !r.passed(), format!("{} failed assertions", fails.len())));

    let s = Scenario::from_str(BASE)?;
    let (a, b) = (evaluate(&s)?.csv_bytes()?, evaluate(&s)?.csv_bytes()?);
    out.push(fixture("determinism", a == b && !a.is_empty(), format!("{} bytes", a.len())));

    let r = evaluate(&s)?;
    out.push(fixture("bounds_hold", r.passed(), format!("{} reports", r.reports.len())));

    let svg = spectrum_svg(&[]);
    out.push(fixture("empty_plot", svg.contains("class=\"axis\"") && !svg.contains("class=\"eig\""), String::new()));
    Ok(out)
}

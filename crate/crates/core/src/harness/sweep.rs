use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::run::evaluate;
use super::scenario::Scenario;
use crate::error::{Error, Result};

/// Parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    A,
    Mu,
    Nu,
    Gamma,
    /// Grid step, driven by the `n` list.
    H,
}

impl FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(SweepAxis::A),
            "mu" => Ok(SweepAxis::Mu),
            "nu" => Ok(SweepAxis::Nu),
            "gamma" => Ok(SweepAxis::Gamma),
            "h" => Ok(SweepAxis::H),
            _ => Err(Error::Config(format!("unknown sweep axis '{s}' (expected a, mu, nu, gamma or h)"))),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::A => "a",
            SweepAxis::Mu => "mu",
            SweepAxis::Nu => "nu",
            SweepAxis::Gamma => "gamma",
            SweepAxis::H => "h",
        })
    }
}

/// Aggregates of one report name at one axis value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub axis: String,
    pub value: f64,
    pub name: String,
    pub count: usize,
    pub ratio_median: f64,
    pub ratio_max: f64,
    pub lhs_median: f64,
    pub rhs_median: f64,
}

/// Least-squares fit `ln y = slope ln x + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerFit {
    pub name: String,
    pub quantity: String,
    pub points: usize,
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub axis: SweepAxis,
    pub rows: Vec<TrendRow>,
    pub fits: Vec<PowerFit>,
}

/// Power-law fit over the pairs with positive finite coordinates. `None`
/// with fewer than two distinct abscissae.
pub fn fit_power_law(points: &[(f64, f64)]) -> Option<(f64, f64, f64, usize)> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let rss: f64 = pts.iter().map(|p| (p.1 - slope * p.0 - icpt).powi(2)).sum();
    Some((slope, icpt, (rss / n).sqrt(), pts.len()))
}

fn median(mut v: Vec<f64>) -> f64 {
    v.retain(|x| !x.is_nan());
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn axis_values(s: &Scenario, axis: SweepAxis) -> Result<Vec<f64>> {
    let vals = match axis {
        SweepAxis::A => s.sweep.a.clone(),
        SweepAxis::Mu => s.sweep.mu.clone(),
        SweepAxis::Nu => s.sweep.nu.clone(),
        SweepAxis::Gamma => s.sweep.gamma.clone(),
        SweepAxis::H => s.sweep.n.as_ref().map(|ns| ns.iter().map(|&n| n as f64).collect()),
    };
    let vals = vals.ok_or_else(|| Error::Config(format!("no [sweep] values for axis {axis}")))?;
    if vals.is_empty() {
        return Err(Error::Config(format!("degenerate grid: sweep axis {axis} is empty")));
    }
    for (i, v) in vals.iter().enumerate() {
        if !(*v > 0.0) || !v.is_finite() {
            return Err(Error::Config(format!("degenerate grid: sweep value {v} on axis {axis}")));
        }
        if vals[..i].contains(v) {
            return Err(Error::Config(format!("degenerate grid: repeated value {v} on axis {axis}")));
        }
    }
    Ok(vals)
}

fn with_axis(s: &Scenario, axis: SweepAxis, value: f64) -> Result<(Scenario, f64)> {
    let mut t = s.clone();
    let mut x = value;
    for th in &mut t.theorems {
        let slot = match axis {
            SweepAxis::A => &mut th.a,
            SweepAxis::Mu => &mut th.mu,
            SweepAxis::Nu => &mut th.nu,
            SweepAxis::Gamma => &mut th.gamma,
            SweepAxis::H => continue,
        };
        *slot = Some(vec![value]);
    }
    if axis == SweepAxis::H {
        t.ensemble.grid.n = value as usize;
        t.validate()?;
        x = t.grid().h;
    } else {
        t.validate()?;
    }
    Ok((t, x))
}

/// Evaluates the scenario along one axis and fits power laws to the
/// median left side, median right side and largest implied constant of
/// every report name.
pub fn sweep(scenario: &Scenario, axis: SweepAxis) -> Result<SweepOutput> {
    let mut rows = Vec::new();
    for v in axis_values(scenario, axis)? {
        let (s, x) = with_axis(scenario, axis, v)?;
        let out = evaluate(&s)?;
        let mut groups: BTreeMap<&str, Vec<_>> = BTreeMap::new();
        for r in &out.reports {
            groups.entry(r.name.as_str()).or_default().push(r);
        }
        for (name, reps) in groups {
            rows.push(TrendRow {
                axis: axis.to_string(),
                value: x,
                name: name.to_string(),
                count: reps.len(),
                ratio_median: median(reps.iter().map(|r| r.ratio).collect()),
                ratio_max: reps.iter().map(|r| r.ratio).filter(|x| x.is_finite()).fold(0.0, f64::max),
                lhs_median: median(reps.iter().map(|r| r.lhs).collect()),
                rhs_median: median(reps.iter().map(|r| r.rhs_core).collect()),
            });
        }
    }
    let mut names: Vec<&str> = rows.iter().map(|r| r.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    let mut fits = Vec::new();
    for name in names {
        let sel: Vec<&TrendRow> = rows.iter().filter(|r| r.name == name).collect();
        let quantities: [(&str, fn(&TrendRow) -> f64); 3] =
            [("lhs_median", |r| r.lhs_median), ("rhs_median", |r| r.rhs_median), ("ratio_max", |r| r.ratio_max)];
        for (q, get) in quantities {
            let pts: Vec<(f64, f64)> = sel.iter().map(|r| (r.value, get(r))).collect();
            if let Some((exponent, intercept, residual, points)) = fit_power_law(&pts) {
                fits.push(PowerFit { name: name.to_string(), quantity: q.to_string(), points, exponent, intercept, residual });
            }
        }
    }
    Ok(SweepOutput { axis, rows, fits })
}

/// Writes `sweep_<axis>.csv` and `sweep_<axis>_fits.csv` into `dir`.
pub fn write_sweep(out: &SweepOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut w = csv::Writer::from_writer(File::create(dir.join(format!("sweep_{}.csv", out.axis)))?);
    for r in &out.rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let mut w = csv::Writer::from_writer(File::create(dir.join(format!("sweep_{}_fits.csv", out.axis)))?);
    for f in &out.fits {
        w.serialize(f)?;
    }
    w.flush()?;
    Ok(())
}

/// One line per fit, for the terminal.
pub fn print_fits<W: Write>(out: &SweepOutput, mut w: W) -> Result<()> {
    for f in &out.fits {
        writeln!(
            w,
            "{:<16} {:<11} exponent {:>10.6} residual {:.3e} ({} points)",
            f.name, f.quantity, f.exponent, f.residual, f.points
        )?;
    }
    Ok(())
}

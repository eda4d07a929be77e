use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::plot::spectrum_svg;
use super::scenario::{ConstantMode, Scenario, TheoremKind, TheoremSection};
use crate::bounds::{
    check_bssobolev, check_davies, check_dhk, check_dn, check_kss, check_ltfrsa, check_main1, check_main1cor,
    check_main2, check_main3, check_main3_corollary, check_main3proofkey, write_reports_csv, write_reports_json,
    BoundReport, ConstantUsed, ReportParams,
};
use crate::error::Result;
use crate::schrodinger::{offaxis_spectrum_with_stats, potential_ensemble, EigRecord, Potential, SpectralParams};
use crate::zeros::{af_large_rhs_core, af_large_sum, af_small_rhs_core, af_small_sum, AFParams};

/// Growth data of the Birman–Schwinger family of `-d²/dx² + V` in one
/// dimension: `p = 2q`, `ρ = (γ-1/2)/q`, `σ = 1/(2q)`, `M = 2^{-1/q} N^{1/q}`
/// with `N = ∫|V|^q`. `None` for the zero potential.
pub fn schrodinger_af_params(params: &SpectralParams, n: f64) -> Option<AFParams> {
    let q = params.q();
    AFParams::new(2.0 * q, (params.gamma - 0.5) / q, 0.5 / q, 2f64.powf(-1.0 / q) * n.powf(1.0 / q)).ok()
}

fn af_report(name: &str, params: &SpectralParams, af: &AFParams, lhs: f64, rhs: f64) -> BoundReport {
    let mut rp = ReportParams::from(params);
    rp.p = Some(af.p);
    rp.rho = Some(af.rho);
    rp.sigma = Some(af.sigma);
    rp.m = Some(af.m);
    BoundReport::new(name, rp, lhs, rhs, ConstantUsed::Empirical)
}

/// Reports of one theorem at one parameter point, before constants and
/// slack are applied.
pub fn theorem_reports(
    kind: TheoremKind,
    eigs: &[EigRecord],
    v: &Potential,
    params: &SpectralParams,
) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    match kind {
        TheoremKind::Davies => {
            for r in eigs {
                out.push(check_davies(r.e, v, params)?);
            }
        }
        TheoremKind::Main1 => {
            for r in eigs {
                out.push(check_main1(r.e, v, params)?);
            }
        }
        TheoremKind::Main1cor => {
            for r in eigs {
                out.extend(check_main1cor(r.e, v, params)?);
            }
        }
        TheoremKind::Dn => {
            for r in eigs {
                let mut rep = check_dn(r.e, v, params.gamma)?;
                rep.params = params.into();
                out.push(rep);
            }
        }
        TheoremKind::Ltfrsa => out.push(check_ltfrsa(eigs, v, params)?),
        TheoremKind::Main2 => {
            let (a, b) = check_main2(eigs, v, params)?;
            out.extend([a, b]);
        }
        TheoremKind::Main3 => {
            let (a, b) = check_main3(eigs, v, params)?;
            out.extend([a, b]);
        }
        TheoremKind::Main3Corollary => out.push(check_main3_corollary(eigs, v)?),
        TheoremKind::Main3proofkey => out.push(check_main3proofkey(eigs, v, params)?),
        TheoremKind::Dhk => out.extend(check_dhk(eigs, v, params)?),
        TheoremKind::Kss => out.push(check_kss(v, params.a, params)?),
        TheoremKind::Bssobolev => {
            let w = Potential::new(v.grid().clone(), v.abs_root().into_iter().map(|x| x.into()).collect())?;
            out.push(check_bssobolev(&w, params.a, params)?);
        }
        TheoremKind::AfSmall | TheoremKind::AfLarge => {
            let n = v.lp_power(params.q())?;
            if let Some(af) = schrodinger_af_params(params, n) {
                out.push(if kind == TheoremKind::AfSmall {
                    af_report("af_small", params, &af, af_small_sum(eigs, &af, params.eps), af_small_rhs_core(&af, params.eps))
                } else {
                    let lhs = af_large_sum(eigs, &af, params.eps, params.eps_prime, params.nu);
                    af_report("af_large", params, &af, lhs, af_large_rhs_core(&af, params.eps_prime, params.nu))
                });
            }
        }
    }
    Ok(out)
}

fn finish(mut r: BoundReport, section: &TheoremSection, scenario: &Scenario, k: usize) -> BoundReport {
    if scenario.constants.mode == ConstantMode::Empirical {
        r = r.with_constant(ConstantUsed::Empirical);
    }
    if let Some(&c) = scenario.constants.fixed.get(&r.name).or_else(|| scenario.constants.fixed.get(section.name.as_str())) {
        r = r.with_constant(ConstantUsed::Fixed(c));
    }
    r.with_slack(section.slack).with_instance(k)
}

/// Everything computed for one ensemble member.
#[derive(Debug, Clone)]
pub struct InstanceResult {
    pub index: usize,
    pub eigs: Vec<EigRecord>,
    pub reports: Vec<BoundReport>,
}

/// Evaluates every theorem of `scenario` on one potential.
pub fn evaluate_instance(scenario: &Scenario, index: usize, v: &Potential) -> Result<InstanceResult> {
    let window = scenario.window_for(v);
    let (eigs, filt) = offaxis_spectrum_with_stats(v, &window)?;
    log::debug!(
        "instance {index}: {} eigenvalues kept, {} below the floor, {} above the cutoff",
        filt.kept,
        filt.below_floor,
        filt.above_cutoff
    );
    let mut reports = Vec::new();
    for section in &scenario.theorems {
        for params in section.param_grid() {
            for r in theorem_reports(section.name, &eigs, v, &params)? {
                reports.push(finish(r, section, scenario, index));
            }
        }
    }
    Ok(InstanceResult { index, eigs, reports })
}

/// Result of evaluating a whole scenario in memory.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub instances: Vec<InstanceResult>,
    pub reports: Vec<BoundReport>,
}

impl RunOutput {
    /// Identifiers `row:name:instance` of failed hard assertions, where
    /// `row` is the 1-based data row in `reports.csv`.
    pub fn failures(&self) -> Vec<String> {
        self.reports
            .iter()
            .enumerate()
            .filter(|(_, r)| r.failed())
            .map(|(i, r)| format!("{}:{}:{}", i + 1, r.name, r.instance.map(|k| k.to_string()).unwrap_or_default()))
            .collect()
    }

    pub fn passed(&self) -> bool {
        !self.reports.iter().any(BoundReport::failed)
    }

    pub fn csv_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        write_reports_csv(&self.reports, &mut buf)?;
        Ok(buf)
    }
}

/// Draws the ensemble and evaluates all instances. Instances run in
/// parallel; the merge is ordered by instance index.
pub fn evaluate(scenario: &Scenario) -> Result<RunOutput> {
    let pots = potential_ensemble(scenario.seed, &scenario.ensemble_spec())?;
    let instances: Vec<InstanceResult> = pots
        .par_iter()
        .enumerate()
        .map(|(k, v)| evaluate_instance(scenario, k, v))
        .collect::<Result<_>>()?;
    let reports = instances.iter().flat_map(|i| i.reports.iter().cloned()).collect();
    Ok(RunOutput { instances, reports })
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let x = p * (sorted.len() - 1) as f64;
    let (i, f) = (x.floor() as usize, x - x.floor());
    if i + 1 < sorted.len() {
        sorted[i] * (1.0 - f) + sorted[i + 1] * f
    } else {
        sorted[i]
    }
}

/// Per-report-name counts and implied-constant quantiles.
pub fn summary_text(scenario: &Scenario, out: &RunOutput) -> String {
    let mut groups: BTreeMap<&str, Vec<&BoundReport>> = BTreeMap::new();
    for r in &out.reports {
        groups.entry(r.name.as_str()).or_default().push(r);
    }
    let mut s = String::new();
    let _ = writeln!(s, "scenario {} (seed {}, {} instances)", scenario.name, scenario.seed, out.instances.len());
    let eig_count: usize = out.instances.iter().map(|i| i.eigs.len()).sum();
    let _ = writeln!(s, "off-axis eigenvalues: {eig_count}");
    let _ = writeln!(
        s,
        "{:<16} {:>7} {:>7} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "name", "reports", "failed", "min", "median", "q90", "max", "constant"
    );
    for (name, reps) in &groups {
        let mut ratios: Vec<f64> = reps.iter().map(|r| r.ratio).filter(|x| x.is_finite()).collect();
        ratios.sort_by(f64::total_cmp);
        let failed = reps.iter().filter(|r| r.failed()).count();
        let constant = match reps[0].constant_used {
            ConstantUsed::Fixed(c) if reps.iter().all(|r| r.constant_used == reps[0].constant_used) => format!("{c:.6e}"),
            ConstantUsed::Fixed(_) => "mixed".to_string(),
            ConstantUsed::Empirical => "empirical".to_string(),
        };
        let _ = writeln!(
            s,
            "{:<16} {:>7} {:>7} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12}",
            name,
            reps.len(),
            failed,
            quantile(&ratios, 0.0),
            quantile(&ratios, 0.5),
            quantile(&ratios, 0.9),
            quantile(&ratios, 1.0),
            constant
        );
    }
    let fails = out.failures();
    if fails.is_empty() {
        let _ = writeln!(s, "all hard assertions hold");
    } else {
        let _ = writeln!(s, "{} failed assertions:", fails.len());
        for f in fails {
            let _ = writeln!(s, "  {f}");
        }
    }
    s
}

/// Writes `reports.csv`, `reports.json`, `summary.txt` and `spectrum.svg`
/// into `dir`.
pub fn write_artifacts(scenario: &Scenario, out: &RunOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_reports_csv(&out.reports, BufWriter::new(File::create(dir.join("reports.csv"))?))?;
    write_reports_json(&out.reports, BufWriter::new(File::create(dir.join("reports.json"))?))?;
    fs::write(dir.join("summary.txt"), summary_text(scenario, out))?;
    fs::write(dir.join("spectrum.svg"), spectrum_svg(&out.reports))?;
    Ok(())
}

/// Evaluates a scenario and writes its artifacts. Returns the output and
/// the directory used.
pub fn run(scenario: &Scenario) -> Result<(RunOutput, PathBuf)> {
    let out = evaluate(scenario)?;
    let dir = scenario.output_dir();
    write_artifacts(scenario, &out, &dir)?;
    Ok((out, dir))
}

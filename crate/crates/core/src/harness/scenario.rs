use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::schrodinger::{EnsembleSpec, Family, Grid1D, SpectralParams, SpectralWindow};

/// Environment variable overriding the output directory of a scenario.
pub const OUT_DIR_ENV: &str = "SBOUND_OUT_DIR";

fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Inequalities a scenario can evaluate on each instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremKind {
    Davies,
    Main1,
    Main1cor,
    Dn,
    Ltfrsa,
    Main2,
    Main3,
    Main3Corollary,
    Main3proofkey,
    Dhk,
    Kss,
    Bssobolev,
    AfSmall,
    AfLarge,
}

impl TheoremKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremKind::Davies => "davies",
            TheoremKind::Main1 => "main1",
            TheoremKind::Main1cor => "main1cor",
            TheoremKind::Dn => "dn",
            TheoremKind::Ltfrsa => "ltfrsa",
            TheoremKind::Main2 => "main2",
            TheoremKind::Main3 => "main3",
            TheoremKind::Main3Corollary => "main3_corollary",
            TheoremKind::Main3proofkey => "main3proofkey",
            TheoremKind::Dhk => "dhk",
            TheoremKind::Kss => "kss",
            TheoremKind::Bssobolev => "bssobolev",
            TheoremKind::AfSmall => "af_small",
            TheoremKind::AfLarge => "af_large",
        }
    }

    fn default_gamma(&self) -> f64 {
        match self {
            TheoremKind::Davies | TheoremKind::Ltfrsa | TheoremKind::Main3Corollary => 0.5,
            TheoremKind::Dhk => 1.5,
            _ => 1.0,
        }
    }

    /// Range check beyond [`SpectralParams::validate`].
    fn check(&self, p: &SpectralParams) -> std::result::Result<(), String> {
        let (g, q) = (p.gamma, p.q());
        match self {
            TheoremKind::Davies | TheoremKind::Ltfrsa | TheoremKind::Main3Corollary if g != 0.5 => {
                Err(format!("{} needs gamma = 0.5", self.as_str()))
            }
            TheoremKind::Main1cor | TheoremKind::Dn | TheoremKind::AfSmall | TheoremKind::AfLarge if g <= 0.5 => {
                Err(format!("{} needs gamma > 0.5", self.as_str()))
            }
            TheoremKind::Main2 if g <= 0.5 || p.eps_prime >= g / q => {
                Err(format!("main2 needs gamma > 0.5 and eps_prime < gamma/(gamma+1/2) = {}", g / q))
            }
            TheoremKind::Main3 if p.eps_prime >= g => Err("main3 needs eps_prime < gamma".to_string()),
            TheoremKind::Dhk if g < 1.5 => Err("dhk needs gamma >= 1.5".to_string()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x0: f64,
    pub x1: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    pub family: Family,
    pub count: usize,
    pub grid: GridSpec,
    pub target_l1: Option<f64>,
}

/// Optional overrides of the spectral window derived from the potential.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    pub delta_floor: Option<f64>,
    pub e_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantMode {
    /// Known constants are asserted, the rest are reported as implied constants.
    #[default]
    Known,
    /// Nothing is asserted.
    Empirical,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSection {
    #[serde(default)]
    pub mode: ConstantMode,
    /// Fixed constants per report name, asserted in any mode.
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremSection {
    pub name: TheoremKind,
    pub gamma: Option<Vec<f64>>,
    pub eps: Option<Vec<f64>>,
    pub eps_prime: Option<Vec<f64>>,
    pub mu: Option<Vec<f64>>,
    pub nu: Option<Vec<f64>>,
    pub a: Option<Vec<f64>>,
    pub split: Option<Vec<f64>>,
    #[serde(default)]
    pub slack: f64,
}

impl TheoremSection {
    /// All parameter combinations, in a fixed order.
    pub fn param_grid(&self) -> Vec<SpectralParams> {
        let d = SpectralParams::default();
        let pick = |v: &Option<Vec<f64>>, def: f64| v.clone().unwrap_or_else(|| vec![def]);
        let mut out = Vec::new();
        for &gamma in &pick(&self.gamma, self.name.default_gamma()) {
            for &eps in &pick(&self.eps, d.eps) {
                for &eps_prime in &pick(&self.eps_prime, d.eps_prime) {
                    for &mu in &pick(&self.mu, d.mu) {
                        for &nu in &pick(&self.nu, d.nu) {
                            for &a in &pick(&self.a, d.a) {
                                for &split in &pick(&self.split, d.split) {
                                    out.push(SpectralParams { d: 1, gamma, eps, eps_prime, mu, nu, a, split });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Axis values for `sweep`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub a: Option<Vec<f64>>,
    pub mu: Option<Vec<f64>>,
    pub nu: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
    /// Grid sizes `n`; the step is `(x1 - x0)/(n + 1)`.
    pub n: Option<Vec<usize>>,
}

/// A scenario file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    pub ensemble: EnsembleSection,
    #[serde(default)]
    pub window: WindowSection,
    #[serde(default)]
    pub constants: ConstantsSection,
    #[serde(default, rename = "theorem")]
    pub theorems: Vec<TheoremSection>,
    #[serde(default)]
    pub sweep: SweepSection,
}

impl Scenario {
    pub fn from_str(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
        Scenario::from_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(config("scenario name is empty"));
        }
        let g = &self.ensemble.grid;
        Grid1D::new(g.x0, g.x1, g.n).map_err(|e| config(e.to_string()))?;
        if let Some(t) = self.ensemble.target_l1 {
            if !(t > 0.0) {
                return Err(config("target_l1 must be positive"));
            }
        }
        for t in &self.theorems {
            if !(t.slack >= 0.0) {
                return Err(config(format!("{}: slack must be nonnegative", t.name)));
            }
            for p in t.param_grid() {
                p.validate().map_err(|e| config(format!("{}: {e}", t.name)))?;
                t.name.check(&p).map_err(config)?;
            }
        }
        for (k, v) in &self.constants.fixed {
            if !(*v > 0.0) {
                return Err(config(format!("fixed constant for {k} must be positive")));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Grid1D {
        let g = &self.ensemble.grid;
        Grid1D::new(g.x0, g.x1, g.n).expect("validated grid")
    }

    pub fn ensemble_spec(&self) -> EnsembleSpec {
        EnsembleSpec {
            family: self.ensemble.family.clone(),
            count: self.ensemble.count,
            grid: self.grid(),
            target_l1: self.ensemble.target_l1,
        }
    }

    pub fn window_for(&self, v: &crate::schrodinger::Potential) -> SpectralWindow {
        let mut w = SpectralWindow::for_potential(v);
        if let Some(f) = self.window.delta_floor {
            w.delta_floor = f;
        }
        if let Some(e) = self.window.e_max {
            w.e_max = e;
        }
        w
    }

    /// Output directory: the environment override, then the file setting,
    /// then `sbound-out/<name>`.
    pub fn output_dir(&self) -> PathBuf {
        if let Ok(d) = std::env::var(OUT_DIR_ENV) {
            if !d.is_empty() {
                return PathBuf::from(d);
            }
        }
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("sbound-out").join(&self.name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
        # smallest useful scenario
        name = "basic"
        seed = 7

        [ensemble]
        family = "box"
        count = 3
        grid = { x0 = -20.0, x1 = 20.0, n = 200 }

        [[theorem]]
        name = "main1"
        gamma = [0.5, 1.0]
        slack = 0.05

        [[theorem]]
        name = "main3"
        eps_prime = [0.1, 0.2]
        mu = [1.0, 2.0]
    "#;

    #[test]
    fn parses_and_expands() {
        let s = Scenario::from_str(BASIC).unwrap();
        assert_eq!(s.theorems.len(), 2);
        assert_eq!(s.theorems[0].param_grid().len(), 2);
        assert_eq!(s.theorems[1].param_grid().len(), 4);
        assert_eq!(s.constants.mode, ConstantMode::Known);
        assert_eq!(s.ensemble_spec().grid.n, 200);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = BASIC.replace("seed = 7", "seed = 7\ncolour = 1");
        assert!(matches!(Scenario::from_str(&bad), Err(Error::Config(_))));
        let bad = BASIC.replace("slack = 0.05", "slak = 0.05");
        assert!(matches!(Scenario::from_str(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn seed_is_mandatory() {
        let bad = BASIC.replace("seed = 7", "");
        assert!(matches!(Scenario::from_str(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn ranges_are_checked() {
        let bad = BASIC.replace("gamma = [0.5, 1.0]", "gamma = [0.25]");
        assert!(Scenario::from_str(&bad).is_err());
        let bad = BASIC.replace("name = \"main1\"", "name = \"dhk\"");
        assert!(Scenario::from_str(&bad).is_err());
        let bad = BASIC.replace("family = \"box\"", "family = \"square\"");
        assert!(Scenario::from_str(&bad).is_err());
        let bad = BASIC.replace("n = 200", "n = 3");
        assert!(Scenario::from_str(&bad).is_err());
    }
}

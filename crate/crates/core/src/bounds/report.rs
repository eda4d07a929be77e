use std::fmt;
use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::schrodinger::SpectralParams;
use crate::zeros::AFParams;

/// Constant multiplying the constant-free right side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstantUsed {
    Fixed(f64),
    /// No value is asserted; the ratio is the implied constant.
    Empirical,
}

impl fmt::Display for ConstantUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantUsed::Fixed(c) => write!(f, "{c}"),
            ConstantUsed::Empirical => write!(f, "empirical"),
        }
    }
}

impl std::str::FromStr for ConstantUsed {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "empirical" => Ok(ConstantUsed::Empirical),
            t => t.parse().map(ConstantUsed::Fixed).map_err(|_| invalid(format!("bad constant '{s}'"))),
        }
    }
}

impl Serialize for ConstantUsed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ConstantUsed::Fixed(c) => s.serialize_f64(*c),
            ConstantUsed::Empirical => s.serialize_str("empirical"),
        }
    }
}

impl<'de> Deserialize<'de> for ConstantUsed {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(c) => Ok(ConstantUsed::Fixed(c)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Flat parameter record; fields that do not apply stay empty.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub d: Option<u32>,
    pub gamma: Option<f64>,
    pub eps: Option<f64>,
    pub eps_prime: Option<f64>,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub a: Option<f64>,
    pub split: Option<f64>,
    pub p: Option<f64>,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
    pub m: Option<f64>,
}

impl From<&SpectralParams> for ReportParams {
    fn from(s: &SpectralParams) -> Self {
        ReportParams {
            d: Some(s.d),
            gamma: Some(s.gamma),
            eps: Some(s.eps),
            eps_prime: Some(s.eps_prime),
            mu: Some(s.mu),
            nu: Some(s.nu),
            a: Some(s.a),
            split: Some(s.split),
            ..Default::default()
        }
    }
}

impl From<&AFParams> for ReportParams {
    fn from(s: &AFParams) -> Self {
        ReportParams { p: Some(s.p), rho: Some(s.rho), sigma: Some(s.sigma), m: Some(s.m), ..Default::default() }
    }
}

/// Outcome of evaluating one inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub instance: Option<usize>,
    pub params: ReportParams,
    /// The eigenvalue a single-eigenvalue bound refers to.
    pub eig: Option<Complex64>,
    pub lhs: f64,
    pub rhs_core: f64,
    pub constant_used: ConstantUsed,
    /// Relative slack allowed on top of the constant.
    pub slack: f64,
    /// `lhs / rhs_core`, the implied constant.
    pub ratio: f64,
    pub satisfied: Option<bool>,
}

fn ratio(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else if rhs > 0.0 {
        lhs / rhs
    } else {
        f64::INFINITY
    }
}

impl BoundReport {
    pub fn new(name: &str, params: ReportParams, lhs: f64, rhs_core: f64, constant_used: ConstantUsed) -> Self {
        let mut r = BoundReport {
            name: name.to_string(),
            instance: None,
            params,
            eig: None,
            lhs,
            rhs_core,
            constant_used,
            slack: 0.0,
            ratio: ratio(lhs, rhs_core),
            satisfied: None,
        };
        r.evaluate();
        r
    }

    fn evaluate(&mut self) {
        self.ratio = ratio(self.lhs, self.rhs_core);
        if let ConstantUsed::Fixed(c) = self.constant_used {
            // rounding allowance for cases of exact equality
            self.satisfied = Some(self.lhs <= c * self.rhs_core * (1.0 + self.slack) * (1.0 + 1e-12));
        }
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack = slack;
        self.evaluate();
        self
    }

    pub fn with_constant(mut self, c: ConstantUsed) -> Self {
        self.constant_used = c;
        if c == ConstantUsed::Empirical {
            self.satisfied = None;
        }
        self.evaluate();
        self
    }

    pub fn with_instance(mut self, k: usize) -> Self {
        self.instance = Some(k);
        self
    }

    pub fn with_eig(mut self, e: Complex64) -> Self {
        self.eig = Some(e);
        self
    }

    /// `lhs / (C rhs_core)` when a constant is fixed.
    pub fn normalized(&self) -> Option<f64> {
        match self.constant_used {
            ConstantUsed::Fixed(c) if c > 0.0 => Some(self.ratio / c),
            _ => None,
        }
    }

    /// A failed hard assertion.
    pub fn failed(&self) -> bool {
        self.satisfied == Some(false)
    }
}

const HEADER: [&str; 22] = [
    "name", "instance", "d", "gamma", "eps", "eps_prime", "mu", "nu", "a", "split", "p", "rho", "sigma", "m", "e_re",
    "e_im", "lhs", "rhs_core", "constant_used", "slack", "ratio", "satisfied",
];

fn opt<T: fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes reports as CSV with a fixed column order.
pub fn write_reports_csv<W: Write>(reports: &[BoundReport], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(HEADER)?;
    for r in reports {
        let p = &r.params;
        wr.write_record([
            r.name.clone(),
            opt(r.instance),
            opt(p.d),
            opt(p.gamma),
            opt(p.eps),
            opt(p.eps_prime),
            opt(p.mu),
            opt(p.nu),
            opt(p.a),
            opt(p.split),
            opt(p.p),
            opt(p.rho),
            opt(p.sigma),
            opt(p.m),
            opt(r.eig.map(|e| e.re)),
            opt(r.eig.map(|e| e.im)),
            r.lhs.to_string(),
            r.rhs_core.to_string(),
            r.constant_used.to_string(),
            r.slack.to_string(),
            r.ratio.to_string(),
            opt(r.satisfied),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

/// Reads the output of [`write_reports_csv`].
pub fn read_reports_csv<R: Read>(r: R) -> Result<Vec<BoundReport>> {
    let mut rd = csv::Reader::from_reader(r);
    let head = rd.headers()?.clone();
    if head.iter().collect::<Vec<_>>() != HEADER {
        return Err(invalid("reports CSV has an unexpected header"));
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let f = |k: usize| -> Result<Option<f64>> {
            let s = rec.get(k).unwrap_or("").trim();
            if s.is_empty() {
                return Ok(None);
            }
            s.parse::<f64>().map(Some).map_err(|_| invalid(format!("bad number '{s}' in column {}", HEADER[k])))
        };
        let req = |k: usize| -> Result<f64> { f(k)?.ok_or_else(|| invalid(format!("missing {}", HEADER[k]))) };
        let eig = match (f(14)?, f(15)?) {
            (Some(re), Some(im)) => Some(Complex64::new(re, im)),
            _ => None,
        };
        let satisfied = match rec.get(21).unwrap_or("").trim() {
            "" => None,
            "true" => Some(true),
            "false" => Some(false),
            s => return Err(invalid(format!("bad satisfied flag '{s}'"))),
        };
        out.push(BoundReport {
            name: rec.get(0).unwrap_or("").to_string(),
            instance: f(1)?.map(|x| x as usize),
            params: ReportParams {
                d: f(2)?.map(|x| x as u32),
                gamma: f(3)?,
                eps: f(4)?,
                eps_prime: f(5)?,
                mu: f(6)?,
                nu: f(7)?,
                a: f(8)?,
                split: f(9)?,
                p: f(10)?,
                rho: f(11)?,
                sigma: f(12)?,
                m: f(13)?,
            },
            eig,
            lhs: req(16)?,
            rhs_core: req(17)?,
            constant_used: rec.get(18).unwrap_or("").parse()?,
            slack: req(19)?,
            ratio: req(20)?,
            satisfied,
        });
    }
    Ok(out)
}

/// Writes reports as a JSON array, one object per report.
pub fn write_reports_json<W: Write>(reports: &[BoundReport], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, reports)?;
    writeln!(w)?;
    Ok(())
}

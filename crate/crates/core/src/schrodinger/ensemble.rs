use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::Grid1D;
use super::potential::Potential;
use crate::error::{invalid, Error, Result};

/// Random potential families.
///
/// * `box`: 2 to 6 equal pieces on an interval of width in `[1, 3]` near
///   the origin, each piece constant with real and imaginary parts uniform
///   in `[-2, 2]`.
/// * `gauss`: 1 to 3 bumps with centers in `[-1.5, 1.5]`, widths in
///   `[0.25, 0.8]` and amplitudes uniform in the complex box `[-2, 2]²`.
/// * `well`: `-(c/ℓ) 1_[0,ℓ]`. With `c` and `ℓ` given the family is
///   deterministic; the bare name draws `Re c ∈ [0.5, 3]`, `Im c ∈ [-2, 2]`,
///   `ℓ ∈ [0.3, 2]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Family {
    Box,
    Gauss,
    Well(Option<(Complex64, f64)>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Box => write!(f, "box"),
            Family::Gauss => write!(f, "gauss"),
            Family::Well(None) => write!(f, "well"),
            Family::Well(Some((c, l))) => write!(f, "well({}{:+}i, {l})", c.re, c.im),
        }
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Family {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Parses `1`, `-2.5`, `0.3i`, `1+0.5i`, `1-2i`, `i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || invalid(format!("cannot parse complex number '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let num = |u: &str| -> Result<f64> {
        match u {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => u.parse::<f64>().map_err(|_| bad()),
        }
    };
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => Ok(Complex64::new(num(&body[..k])?, num(&body[k..])?)),
            None => Ok(Complex64::new(0.0, num(body)?)),
        }
    } else {
        Ok(Complex64::new(num(&t)?, 0.0))
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "box" => return Ok(Family::Box),
            "gauss" => return Ok(Family::Gauss),
            "well" => return Ok(Family::Well(None)),
            _ => {}
        }
        if let Some(args) = t.strip_prefix("well(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 2 {
                return Err(invalid(format!("well family needs two arguments: '{s}'")));
            }
            let c = parse_complex(parts[0])?;
            let ell: f64 = parts[1].trim().parse().map_err(|_| invalid(format!("bad well width in '{s}'")))?;
            if !(ell > 0.0) {
                return Err(invalid("well width must be positive"));
            }
            return Ok(Family::Well(Some((c, ell))));
        }
        Err(Error::UnknownFamily(t.to_string()))
    }
}

/// A seeded ensemble description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub family: Family,
    pub count: usize,
    pub grid: Grid1D,
    /// Rescale each draw so that `‖V‖₁` equals this value.
    pub target_l1: Option<f64>,
}

fn uniform_c(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn draw(family: &Family, grid: &Grid1D, rng: &mut ChaCha8Rng) -> Result<Potential> {
    match family {
        Family::Box => {
            let pieces = rng.gen_range(2..=6);
            let w = rng.gen_range(1.0..3.0);
            let a = -0.5 * w + rng.gen_range(-0.5..0.5);
            let vals: Vec<Complex64> = (0..pieces).map(|_| uniform_c(rng, 2.0)).collect();
            Potential::piecewise(grid, a, a + w, &vals)
        }
        Family::Gauss => {
            let bumps = rng.gen_range(1..=3);
            let mut v = Potential::zero(grid);
            for _ in 0..bumps {
                let center = rng.gen_range(-1.5..1.5);
                let width = rng.gen_range(0.25..0.8);
                let amp = uniform_c(rng, 2.0);
                v = v.add(&Potential::gaussian(grid, center, width, amp)?)?;
            }
            Ok(v)
        }
        Family::Well(Some((c, ell))) => Potential::well(grid, *c, *ell),
        Family::Well(None) => {
            let c = Complex64::new(rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
            let ell = rng.gen_range(0.3..2.0);
            Potential::well(grid, c, ell)
        }
    }
}

/// Draws `spec.count` potentials. Instance `k` uses its own ChaCha8 stream
/// derived from `(seed, k)`, so a prefix of a larger ensemble equals the
/// smaller ensemble.
pub fn potential_ensemble(seed: u64, spec: &EnsembleSpec) -> Result<Vec<Potential>> {
    (0..spec.count)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64 + 1);
            let v = draw(&spec.family, &spec.grid, &mut rng)?;
            match spec.target_l1 {
                Some(t) => {
                    let l1 = v.lp_power(1.0)?;
                    if l1 == 0.0 {
                        Ok(v)
                    } else {
                        Ok(v.scaled(Complex64::new(t / l1, 0.0)))
                    }
                }
                None => Ok(v),
            }
        })
        .collect()
}

//! Run configuration: flat `key=value` file merged with command-line flags.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qaffine::{Precision, Tolerance, XBranch};

use crate::Failure;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub precision: Precision,
    /// Explicit tolerance; `None` uses the per-check defaults.
    pub tol: Option<Tolerance>,
    pub seed: u64,
    pub points: usize,
    pub out: Option<PathBuf>,
    pub q: Option<Complex64>,
    pub g: Option<Complex64>,
    pub alpha: Complex64,
    pub alphatilde: Complex64,
    pub xplus: Option<Complex64>,
    pub gamma: Option<Complex64>,
    pub branch: XBranch,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision: Precision::Standard,
            tol: None,
            seed: 1,
            points: 20,
            out: None,
            q: None,
            g: None,
            alpha: Complex64::new(1.2, 0.3),
            alphatilde: Complex64::new(0.7, -0.4),
            xplus: None,
            gamma: None,
            branch: XBranch::Big,
        }
    }
}

/// Flag values that override the file; `None` leaves the file value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision: Option<String>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub out: Option<PathBuf>,
    pub q: Option<String>,
    pub g: Option<String>,
    pub alpha: Option<String>,
    pub alphatilde: Option<String>,
    pub xplus: Option<String>,
    pub gamma: Option<String>,
    pub branch: Option<String>,
}

/// Parses `re+imi` literals such as `2.0+1.0i`, `-0.5i` or `3`.
pub fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    s.trim().parse::<Complex64>().map_err(|_| Failure::usage(format!("malformed complex literal '{s}'")))
}

pub fn parse_precision(s: &str) -> Result<Precision, Failure> {
    Precision::parse(s.trim()).ok_or_else(|| Failure::usage(format!("precision must be standard or extended, got '{s}'")))
}

pub fn parse_branch(s: &str) -> Result<XBranch, Failure> {
    match s.trim() {
        "big" => Ok(XBranch::Big),
        "small" => Ok(XBranch::Small),
        other => Err(Failure::usage(format!("branch must be big or small, got '{other}'"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.trim().parse().map_err(|_| Failure::usage(format!("bad value for {key}: '{v}'")))
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path, cfg: &mut RunConfig) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    let (mut abs, mut rel) = (None, None);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("{}:{}: expected key=value", path.display(), lineno + 1)))?;
        match k.trim() {
            "precision" => cfg.precision = parse_precision(v)?,
            "abs_eps" => abs = Some(parse_num::<f64>("abs_eps", v)?),
            "rel_eps" => rel = Some(parse_num::<f64>("rel_eps", v)?),
            "seed" => cfg.seed = parse_num("seed", v)?,
            "points" => cfg.points = parse_num("points", v)?,
            "q" => cfg.q = Some(parse_complex(v)?),
            "g" => cfg.g = Some(parse_complex(v)?),
            "alpha" => cfg.alpha = parse_complex(v)?,
            "alphatilde" => cfg.alphatilde = parse_complex(v)?,
            "xplus" => cfg.xplus = Some(parse_complex(v)?),
            "gamma" => cfg.gamma = Some(parse_complex(v)?),
            "branch" => cfg.branch = parse_branch(v)?,
            other => return Err(Failure::usage(format!("unknown config key '{other}'"))),
        }
    }
    if abs.is_some() || rel.is_some() {
        let a = abs.or(rel).unwrap_or(1e-10);
        let r = rel.unwrap_or(a);
        cfg.tol = Some(Tolerance::new(a, r).map_err(|e| Failure::usage(e.to_string()))?);
    }
    Ok(())
}

/// Defaults, then the config file, then flags.
pub fn resolve(config: Option<&Path>, o: &Overrides) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(p) = config {
        read_config_file(p, &mut cfg)?;
    }
    if let Some(p) = &o.precision {
        cfg.precision = parse_precision(p)?;
    }
    if let Some(t) = o.tol {
        cfg.tol = Some(Tolerance::new(t, t).map_err(|e| Failure::usage(e.to_string()))?);
    }
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    if let Some(n) = o.points {
        cfg.points = n;
    }
    if o.out.is_some() {
        cfg.out = o.out.clone();
    }
    let set = |slot: &mut Option<Complex64>, v: &Option<String>| -> Result<(), Failure> {
        if let Some(s) = v {
            *slot = Some(parse_complex(s)?);
        }
        Ok(())
    };
    set(&mut cfg.q, &o.q)?;
    set(&mut cfg.g, &o.g)?;
    set(&mut cfg.xplus, &o.xplus)?;
    set(&mut cfg.gamma, &o.gamma)?;
    if let Some(s) = &o.alpha {
        cfg.alpha = parse_complex(s)?;
    }
    if let Some(s) = &o.alphatilde {
        cfg.alphatilde = parse_complex(s)?;
    }
    if let Some(b) = &o.branch {
        cfg.branch = parse_branch(b)?;
    }
    if cfg.points == 0 {
        return Err(Failure::usage("points must be at least 1"));
    }
    Ok(cfg)
}

impl RunConfig {
    /// Check threshold: the explicit tolerance if given, else the default for
    /// the working precision.
    pub fn threshold(&self, standard: f64, extended: f64) -> f64 {
        match (self.tol, self.precision) {
            (Some(t), _) => t.abs_eps,
            (None, Precision::Standard) => standard,
            (None, Precision::Extended) => extended,
        }
    }

    /// Null-space tolerance.
    pub fn null_tol(&self) -> Tolerance {
        self.tol.unwrap_or_else(|| Tolerance::for_precision(self.precision))
    }
}

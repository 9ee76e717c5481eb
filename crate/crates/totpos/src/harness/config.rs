//! Flat key-value configuration for the probe harness. The file format is
//! line-oriented: `[section]` headers named after library modules, then
//! `key = value` pairs. Unknown sections or keys are hard errors so that a
//! config always means what it says.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Mode, ToleranceProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::usage(format!("unknown format '{other}' (expected json or csv)"))),
        }
    }
}

/// The probe suites the harness can run, one per headline property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Exact rational reproduction of the hinge-kernel determinants.
    ExactReproduction,
    /// Straight-line homotopy violation intervals.
    Homotopy,
    /// TP / rank / negative-minor trichotomy of hinge-kernel powers.
    PowerTrichotomy,
    /// One shift (or argument scale) witnesses all bad powers at once.
    ShiftScaleWitness,
    /// Predicted vs observed sign-regularity signatures.
    SignatureLaw,
    /// Contiguous-minor and Hankel-window oracles vs full minor scans.
    OracleEquivalence,
    /// Entrywise-power positivity / monotonicity / convexity thresholds.
    LoewnerThresholds,
    /// Zero locations of the cosine-window transform powers.
    TransformZeros,
    /// Sector bound and convergence of the Riemann-sum polynomials.
    SectorBound,
    /// Closed-form transform identities and the integer-power analyses.
    TransformIdentities,
    /// Zero-count bound for power combinations.
    DescartesBound,
    /// Order-3 nonnegativity threshold for translation-kernel powers.
    Tn3Power,
}

pub const ALL_SUITES: [Suite; 12] = [
    Suite::ExactReproduction,
    Suite::Homotopy,
    Suite::PowerTrichotomy,
    Suite::ShiftScaleWitness,
    Suite::SignatureLaw,
    Suite::OracleEquivalence,
    Suite::LoewnerThresholds,
    Suite::TransformZeros,
    Suite::SectorBound,
    Suite::TransformIdentities,
    Suite::DescartesBound,
    Suite::Tn3Power,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::ExactReproduction => "exact_reproduction",
            Suite::Homotopy => "homotopy",
            Suite::PowerTrichotomy => "power_trichotomy",
            Suite::ShiftScaleWitness => "shift_scale_witness",
            Suite::SignatureLaw => "signature_law",
            Suite::OracleEquivalence => "oracle_equivalence",
            Suite::LoewnerThresholds => "loewner_thresholds",
            Suite::TransformZeros => "transform_zeros",
            Suite::SectorBound => "sector_bound",
            Suite::TransformIdentities => "transform_identities",
            Suite::DescartesBound => "descartes_bound",
            Suite::Tn3Power => "tn3_power",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        ALL_SUITES
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown suite '{s}'")))
    }
}

/// Everything a probe run needs: scalar mode, tolerances, the seed for the
/// single random stream, suite selection with trial counts, and output
/// destination. Identical configs (plus seed) produce identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeConfig {
    pub mode: Mode,
    pub profile: ToleranceProfile,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Random tuple pairs per matrix order in the trichotomy suite.
    pub trichotomy_trials: usize,
    pub signature_trials: usize,
    pub fekete_trials: usize,
    pub hankel_trials: usize,
    pub descartes_trials: usize,
    /// Matrix orders exercised by the threshold suite.
    pub loewner_orders: Vec<usize>,
    pub loewner_alpha_step: f64,
    /// Cosine-window powers whose transform zeros are located.
    pub laplace_alphas: Vec<f64>,
    /// Grid for the complex zero scan, columns x rows.
    pub strip_grid: (usize, usize),
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ProbeConfig {
    fn default() -> ProbeConfig {
        ProbeConfig {
            mode: Mode::Float,
            profile: ToleranceProfile::default(),
            seed: 7,
            suites: ALL_SUITES.to_vec(),
            trichotomy_trials: 50,
            signature_trials: 100,
            fekete_trials: 500,
            hankel_trials: 200,
            descartes_trials: 500,
            loewner_orders: vec![3, 4],
            loewner_alpha_step: 0.1,
            laplace_alphas: vec![0.5, 1.0, 2.0, 3.5],
            strip_grid: (101, 101),
            out: None,
            format: OutputFormat::Json,
        }
    }
}

fn parse_list<T: FromStr>(value: &str, what: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| Error::usage(format!("bad {what} entry '{s}'"))))
        .collect()
}

impl ProbeConfig {
    /// Parses the flat key-value config text. Sections mirror module names;
    /// any unknown section or key is an error.
    pub fn parse(text: &str) -> Result<ProbeConfig> {
        let mut cfg = ProbeConfig::default();
        let mut section = String::from("harness");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| Error::usage(format!("line {}: unterminated section", lineno + 1)))?
                    .trim();
                match name {
                    "harness" | "numerics" | "probes" | "tptest" | "loewner" | "laplace" => {
                        section = name.to_string();
                    }
                    other => return Err(Error::usage(format!("unknown section '[{other}]'"))),
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::usage(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            cfg.apply(&section, key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, section: &str, key: &str, value: &str) -> Result<()> {
        let bad_key = || Error::usage(format!("unknown key '{key}' in section [{section}]"));
        let num = |what: &str| -> Result<f64> {
            value.parse::<f64>().map_err(|_| Error::usage(format!("bad {what} '{value}'")))
        };
        match (section, key) {
            ("harness", "mode") => self.mode = value.parse()?,
            ("harness", "seed") => {
                self.seed = value.parse().map_err(|_| Error::usage(format!("bad seed '{value}'")))?;
            }
            ("harness", "format") => self.format = value.parse()?,
            ("harness", "out") => self.out = Some(PathBuf::from(value)),
            ("numerics", "abs_eps") => self.profile.abs_eps = num("abs_eps")?,
            ("numerics", "rel_eps") => self.profile.rel_eps = num("rel_eps")?,
            ("numerics", "zero_band") => self.profile.zero_band = num("zero_band")?,
            ("probes", "suites") => self.suites = parse_list(value, "suite")?,
            ("probes", "trichotomy_trials") => self.trichotomy_trials = parse_usize(value)?,
            ("probes", "descartes_trials") => self.descartes_trials = parse_usize(value)?,
            ("tptest", "signature_trials") => self.signature_trials = parse_usize(value)?,
            ("tptest", "fekete_trials") => self.fekete_trials = parse_usize(value)?,
            ("tptest", "hankel_trials") => self.hankel_trials = parse_usize(value)?,
            ("loewner", "orders") => self.loewner_orders = parse_list(value, "order")?,
            ("loewner", "alpha_step") => self.loewner_alpha_step = num("alpha_step")?,
            ("laplace", "alphas") => self.laplace_alphas = parse_list(value, "alpha")?,
            ("laplace", "grid") => {
                let (a, b) = value
                    .split_once('x')
                    .ok_or_else(|| Error::usage(format!("bad grid '{value}', expected NxM")))?;
                self.strip_grid = (parse_usize(a.trim())?, parse_usize(b.trim())?);
            }
            _ => return Err(bad_key()),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::usage("no suites selected"));
        }
        if !(self.profile.abs_eps > 0.0 && self.profile.rel_eps > 0.0 && self.profile.zero_band > 0.0)
        {
            return Err(Error::usage("tolerances must be positive"));
        }
        if self.loewner_alpha_step <= 0.0 {
            return Err(Error::usage("alpha step must be positive"));
        }
        if self.strip_grid.0 < 3 || self.strip_grid.1 < 3 {
            return Err(Error::usage("strip grid must be at least 3x3"));
        }
        Ok(())
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::usage(format!("bad count '{s}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_overrides() {
        let cfg = ProbeConfig::parse(
            "[harness]\nmode = exact\nseed = 42\n\n[probes]\nsuites = homotopy, tn3_power\ntrichotomy_trials = 5\n\n[laplace]\ngrid = 51x61\n",
        )
        .unwrap();
        assert_eq!(cfg.mode, Mode::Exact);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.suites, vec![Suite::Homotopy, Suite::Tn3Power]);
        assert_eq!(cfg.trichotomy_trials, 5);
        assert_eq!(cfg.strip_grid, (51, 61));
    }

    #[test]
    fn unknown_keys_and_sections_fail() {
        assert!(ProbeConfig::parse("[harness]\nbogus = 1\n").is_err());
        assert!(ProbeConfig::parse("[nonsense]\n").is_err());
        assert!(ProbeConfig::parse("[probes]\nsuites = not_a_suite\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = ProbeConfig::parse("# top comment\n\n[harness]\nseed = 3 # trailing\n").unwrap();
        assert_eq!(cfg.seed, 3);
    }
}

//! Command-line front end: probe suites, signature checks, oracle
//! comparisons, homotopy intervals, Laplace transform evaluation, and
//! matrix dumps.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;

use totpos::error::{Error, Result};
use totpos::harness::{self, ProbeConfig, Suite};
use totpos::kernels::{sample_matrix, IncreasingTuple, KernelSpec, KernelVariant};
use totpos::laplace;
use totpos::numerics::Mode;
use totpos::probes;
use totpos::tptest;

#[derive(Parser)]
#[command(name = "totpos", version, about = "Total-positivity checkers for kernel samples and their entrywise powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Flat key-value config file ([section] headers, key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed for the random stream (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scalar mode: exact | float | extended.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: json | csv.
    #[arg(long, global = true)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run probe suites and emit a versioned JSON report.
    Probe {
        #[command(flatten)]
        common: CommonOpts,
        /// Suites to run (default: all). Names as in the report.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<String>,
    },
    /// Compare predicted and observed minor-sign signatures of a
    /// hinge-kernel power on given tuples.
    Signature {
        #[command(flatten)]
        common: CommonOpts,
        /// Entrywise power.
        #[arg(long)]
        alpha: f64,
        /// Comma-separated strictly increasing x coordinates.
        #[arg(long, value_delimiter = ',')]
        xs: Vec<f64>,
        /// Comma-separated strictly increasing y coordinates (default: xs).
        #[arg(long, value_delimiter = ',')]
        ys: Vec<f64>,
    },
    /// Run both total-positivity oracles (contiguous minors vs full scan)
    /// on a kernel sample and report whether they agree.
    FeketeCompare {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        kernel: KernelOpts,
        #[arg(long, value_delimiter = ',')]
        xs: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        ys: Vec<f64>,
    },
    /// Positivity failures along the straight-line homotopy from x to ε·y.
    Homotopy {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, value_delimiter = ',')]
        xs: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        ys: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// Number of grid steps in t.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
    /// Evaluate the bilateral Laplace transform of a kernel at a point,
    /// by closed form and by adaptive quadrature.
    Laplace {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        kernel: KernelOpts,
        /// Real part of s.
        #[arg(long, default_value_t = 0.0)]
        s_re: f64,
        /// Imaginary part of s.
        #[arg(long, default_value_t = 0.0)]
        s_im: f64,
        /// Quadrature refinement level (higher is tighter).
        #[arg(long, default_value_t = 2)]
        refinement: u32,
    },
    /// Sample a kernel on tuples and dump the matrix (CSV or JSON).
    Emit {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        kernel: KernelOpts,
        #[arg(long, value_delimiter = ',')]
        xs: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        ys: Vec<f64>,
    },
}

#[derive(Args)]
struct KernelOpts {
    /// Kernel name: jks | omega | omega_qr | cosine_w | m_kernel | gaussian | lambda_d.
    #[arg(long, default_value = "jks")]
    kernel: String,
    /// Optional entrywise power.
    #[arg(long)]
    alpha: Option<f64>,
    /// First rate for omega_qr.
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    /// Second rate for omega_qr.
    #[arg(long, default_value_t = 2.0)]
    r: f64,
}

impl KernelOpts {
    fn spec(&self) -> Result<KernelSpec> {
        let variant = match self.kernel.as_str() {
            "jks" => KernelVariant::Jks,
            "omega" => KernelVariant::Omega,
            "omega_qr" => KernelVariant::OmegaQr { q: self.q, r: self.r },
            "cosine_w" => KernelVariant::CosineW,
            "m_kernel" => KernelVariant::MKernel,
            "gaussian" => KernelVariant::Gaussian,
            "lambda_d" => KernelVariant::LambdaD { d: totpos::numerics::Scalar::ratio(1, 2) },
            other => return Err(Error::usage(format!("unknown kernel '{other}'"))),
        };
        match self.alpha {
            Some(alpha) => KernelSpec::powered(variant, alpha),
            None => KernelSpec::new(variant),
        }
    }
}

fn load_config(common: &CommonOpts) -> Result<ProbeConfig> {
    let mut cfg = match &common.config {
        Some(path) => ProbeConfig::parse(&std::fs::read_to_string(path)?)?,
        None => ProbeConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(mode) = &common.mode {
        cfg.mode = Mode::from_str(mode)?;
    }
    if let Some(out) = &common.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = &common.format {
        cfg.format = format.parse()?;
    }
    Ok(cfg)
}

fn write_output(cfg: &ProbeConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn tuple(values: &[f64]) -> Result<IncreasingTuple> {
    IncreasingTuple::from_f64s(values)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Probe { common, suites } => {
            let mut cfg = load_config(&common)?;
            if !suites.is_empty() {
                cfg.suites = suites.iter().map(|s| Suite::from_str(s)).collect::<Result<_>>()?;
            }
            cfg.validate()?;
            let report = harness::run_suite(&cfg);
            let clean = report.is_clean();
            write_output(&cfg, &serde_json::to_string_pretty(&report)?)?;
            for probe in &report.probes {
                eprintln!(
                    "{:<22} {:?} (violations: {})",
                    probe.name, probe.status, probe.violations
                );
            }
            Ok(clean)
        }
        Command::Signature { common, alpha, xs, ys } => {
            let cfg = load_config(&common)?;
            let xt = tuple(&xs)?;
            let yt = if ys.is_empty() { xt.clone() } else { tuple(&ys)? };
            if xt.len() != yt.len() {
                return Err(Error::usage("xs and ys must have the same length"));
            }
            let spec = KernelSpec::powered(KernelVariant::Jks, alpha)?;
            let m = sample_matrix(&spec, &xt, &yt)?;
            let predicted = tptest::predicted_signature(xt.len(), alpha);
            let observed = tptest::observed_signature(&m, &cfg.profile);
            let agree = matches!(&observed, Ok(sig) if *sig == predicted);
            let doc = serde_json::json!({
                "alpha": alpha,
                "predicted": predicted,
                "observed": match &observed {
                    Ok(sig) => serde_json::to_value(sig)?,
                    Err(conflict) => serde_json::json!({ "sign_conflict_at_order": conflict.order }),
                },
                "agree": agree,
            });
            write_output(&cfg, &serde_json::to_string_pretty(&doc)?)?;
            Ok(agree)
        }
        Command::FeketeCompare { common, kernel, xs, ys } => {
            let cfg = load_config(&common)?;
            let xt = tuple(&xs)?;
            let yt = if ys.is_empty() { xt.clone() } else { tuple(&ys)? };
            let m = sample_matrix(&kernel.spec()?, &xt, &yt)?;
            let p = xt.len().min(yt.len());
            let fekete = tptest::fekete_tp(&m, p, &cfg.profile)?;
            let full = tptest::minor_scan(&m, p, &cfg.profile)?;
            let agree = (fekete.status == tptest::TPStatus::TP) == (full.status == tptest::TPStatus::TP);
            let doc = serde_json::json!({
                "contiguous": fekete,
                "full_scan": full,
                "agree": agree,
            });
            write_output(&cfg, &serde_json::to_string_pretty(&doc)?)?;
            Ok(agree)
        }
        Command::Homotopy { common, xs, ys, epsilon, grid } => {
            let cfg = load_config(&common)?;
            let report = probes::homotopy_violations(&xs, &ys, epsilon, grid)?;
            let delta = probes::homotopy_delta(&xs, &ys)?;
            let doc = serde_json::json!({
                "violations": report,
                "certified_epsilon": delta,
            });
            write_output(&cfg, &serde_json::to_string_pretty(&doc)?)?;
            Ok(true)
        }
        Command::Laplace { common, kernel, s_re, s_im, refinement } => {
            let cfg = load_config(&common)?;
            let spec = kernel.spec()?;
            let s = Complex64::new(s_re, s_im);
            let closed = laplace::closed_form_transform(&spec, s).ok();
            let quad = laplace::quadrature_transform(&spec, s, refinement)?;
            let doc = serde_json::json!({
                "closed_form": closed,
                "quadrature": quad,
            });
            write_output(&cfg, &serde_json::to_string_pretty(&doc)?)?;
            Ok(true)
        }
        Command::Emit { common, kernel, xs, ys } => {
            let cfg = load_config(&common)?;
            let xt = tuple(&xs)?;
            let yt = if ys.is_empty() { xt.clone() } else { tuple(&ys)? };
            let text = harness::emit_matrix(&kernel.spec()?, &xt, &yt, cfg.format)?;
            match &cfg.out {
                Some(path) => std::fs::write(path, &text)?,
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

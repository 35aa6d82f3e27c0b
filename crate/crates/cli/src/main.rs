//! `jcpure` command-line runner: time sweeps, Wigner snapshots, and the
//! cross-model verification bundle.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! usage or configuration errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jcpure::observables::GridSpec;
use jcpure::runner;
use jcpure::verify::{self, VerifyOptions};
use jcpure::ScenarioConfig;

#[derive(Parser)]
#[command(name = "jcpure", version, about = "Jaynes-Cummings dynamics with mixed initial states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a time grid and write entropy/inversion columns as CSV.
    Simulate(RunArgs),
    /// Evaluate the Wigner function on a phase-space grid at one time.
    Wigner(WignerArgs),
    /// Run the cross-model verification bundle and report margins.
    Verify(VerifyArgs),
}

/// Config file plus per-field overrides; flags mirror the JSON field names.
#[derive(Args, Clone)]
struct ConfigArgs {
    /// JSON config file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Scenario: field_mixture | atom_mixture | two_atom_bell |
    /// two_atom_field_entangled.
    #[arg(long)]
    scenario: Option<String>,

    /// Mixture weight in [0, 1].
    #[arg(long = "C")]
    c: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    alpha_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_im: Option<f64>,

    /// Atom-field coupling constant.
    #[arg(long)]
    lambda: Option<f64>,

    /// Sweep end time (inclusive).
    #[arg(long)]
    t_max: Option<f64>,

    /// Number of time-grid points (both endpoints included).
    #[arg(long)]
    steps: Option<usize>,

    /// Fock truncation dimension; 0 picks it automatically.
    #[arg(long = "N")]
    n: Option<usize>,

    /// Worker threads for the sweep (defaults to the rayon heuristic).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// Output CSV path; "-" writes to standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct WignerArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// Snapshot time in units of 1/lambda (default: the collision time).
    #[arg(long)]
    t: Option<f64>,

    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    x_min: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    x_max: f64,
    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    p_min: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    p_max: f64,

    /// Grid points per axis.
    #[arg(long, default_value_t = 201)]
    res: usize,

    /// Output CSV path; "-" writes to standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// Negative-control hook: swap the A2/A3 identification inside the
    /// two-atom equivalence check. The run must then fail.
    #[arg(long, hide = true)]
    corrupt_basis_map: bool,
}

fn build_config(args: &ConfigArgs) -> Result<ScenarioConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            ScenarioConfig::from_json(&text).map_err(|e| e.to_string())?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(s) = &args.scenario {
        // reuse the serde names so file and flag spellings agree
        cfg.scenario = serde_scenario(s)?;
    }
    if let Some(v) = args.c {
        cfg.c = v;
    }
    if let Some(v) = args.alpha_re {
        cfg.alpha_re = v;
    }
    if let Some(v) = args.alpha_im {
        cfg.alpha_im = v;
    }
    if let Some(v) = args.beta_re {
        cfg.beta_re = v;
    }
    if let Some(v) = args.beta_im {
        cfg.beta_im = v;
    }
    if let Some(v) = args.lambda {
        cfg.lambda = v;
    }
    if let Some(v) = args.t_max {
        cfg.t_max = v;
    }
    if let Some(v) = args.steps {
        cfg.steps = v;
    }
    if let Some(v) = args.n {
        cfg.n = v;
    }
    if let Some(threads) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    cfg.effective().map_err(|e| e.to_string())
}

fn serde_scenario(name: &str) -> Result<jcpure::ScenarioKind, String> {
    serde_json_str(name).ok_or_else(|| {
        format!(
            "unknown scenario {name:?} (expected field_mixture, atom_mixture, \
             two_atom_bell or two_atom_field_entangled)"
        )
    })
}

fn serde_json_str(name: &str) -> Option<jcpure::ScenarioKind> {
    match name {
        "field_mixture" => Some(jcpure::ScenarioKind::FieldMixture),
        "atom_mixture" => Some(jcpure::ScenarioKind::AtomMixture),
        "two_atom_bell" => Some(jcpure::ScenarioKind::TwoAtomBell),
        "two_atom_field_entangled" => Some(jcpure::ScenarioKind::TwoAtomFieldEntangled),
        _ => None,
    }
}

fn open_out(path: &str) -> Result<Box<dyn Write>, String> {
    if path == "-" {
        Ok(Box::new(std::io::stdout().lock()))
    } else {
        let file = fs::File::create(path).map_err(|e| format!("cannot create {path}: {e}"))?;
        Ok(Box::new(std::io::BufWriter::new(file)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Simulate(args) => {
            let cfg = build_config(&args.config)?;
            let rows = runner::simulate(&cfg).map_err(|e| e.to_string())?;
            let mut out = open_out(&args.out)?;
            runner::write_simulation_csv(&cfg, &rows, &mut out).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Wigner(args) => {
            let cfg = build_config(&args.config)?;
            let t = args.t.unwrap_or(12.54 / cfg.lambda);
            let spec = GridSpec {
                x_min: args.x_min,
                x_max: args.x_max,
                p_min: args.p_min,
                p_max: args.p_max,
                resolution: args.res,
            };
            let grid = runner::wigner_at(&cfg, t, &spec).map_err(|e| e.to_string())?;
            let mut out = open_out(&args.out)?;
            runner::write_wigner_csv(&cfg, t, &grid, &mut out).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let cfg = build_config(&args.config)?;
            let opts = VerifyOptions {
                corrupt_basis_map: args.corrupt_basis_map,
            };
            let report = verify::run(&cfg, &opts).map_err(|e| e.to_string())?;
            for check in &report.checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", check.name, check.detail);
            }
            if report.all_passed() {
                println!("verify: all {} checks passed", report.checks.len());
                Ok(ExitCode::SUCCESS)
            } else {
                let first = report.first_failure().expect("some check failed");
                println!("verify: FAILED at {}", first.name);
                Ok(ExitCode::from(1))
            }
        }
    }
}

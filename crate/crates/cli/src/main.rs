use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use varwave::estimator::{estimate_half, Parity};
use varwave::harness::{
    estimate_to_csv, parse_series_csv, report_rows, reproduce_table, rows_to_csv, run_cell_with,
    two_column_data, Execution, RiskReport, SimulationSpec, TableOptions,
};
use varwave::models::{normalize_variance, synthesize};
use varwave::{estimate, EstimatorConfig, VarianceEstimate};

#[derive(Parser)]
#[command(
    name = "varwave",
    version,
    about = "Wavelet estimation of the variance function in heteroscedastic regression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the variance function of an observation series.
    Estimate(EstimateArgs),
    /// Monte Carlo risk of one (mean, variance, n) cell.
    Simulate(SimulateArgs),
    /// Reproduce a published risk table.
    Table(TableArgs),
    /// Run the built-in invariant checks.
    Selftest,
    /// Write estimate and truth for one simulated sample as gnuplot data.
    Overlay(OverlayArgs),
}

/// Estimator flags. Unset flags fall back to the config file, then to the
/// library defaults.
#[derive(Args, Default)]
struct EstimatorFlags {
    /// Wavelet filter (haar, daub4, daub8, symmlet8, coiflet3).
    #[arg(long)]
    wavelet: Option<String>,
    /// Block exponent in (0, 1).
    #[arg(long)]
    r: Option<f64>,
    /// Coarsest level.
    #[arg(long)]
    j0: Option<u32>,
    /// all_levels or theoretical.
    #[arg(long)]
    truncation: Option<String>,
    /// Multiplier on the universal threshold.
    #[arg(long)]
    threshold_scale: Option<f64>,
    /// wrap or drop.
    #[arg(long)]
    odd_boundary: Option<String>,
    /// Clamp negative estimates at zero.
    #[arg(long)]
    clamp_negative: bool,
}

impl EstimatorFlags {
    fn merge_into(&self, obj: &mut Map<String, Value>) {
        let mut set = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                obj.insert(key.to_string(), v);
            }
        };
        set("filter", self.wavelet.clone().map(Value::from));
        set("r", self.r.map(Value::from));
        set("j0", self.j0.map(Value::from));
        set("truncation", self.truncation.clone().map(Value::from));
        set("threshold_scale", self.threshold_scale.map(Value::from));
        set("odd_boundary", self.odd_boundary.clone().map(Value::from));
        if self.clamp_negative {
            set("clamp_negative", Some(Value::Bool(true)));
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    /// CSV with one observation per row (a `y` column or the last column).
    #[arg(long)]
    input: PathBuf,
    /// Output CSV with columns x,vhat; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON file with estimator settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// even, odd or combined.
    #[arg(long, default_value = "combined")]
    half: String,
    #[command(flatten)]
    estimator: EstimatorFlags,
}

#[derive(Args)]
struct SpecFlags {
    /// JSON file with SimulationSpec fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Mean function: zero, sin20, bumps, blocks, doppler.
    #[arg(long)]
    mean: Option<String>,
    /// Variance function: v1, v2, bumps, doppler.
    #[arg(long)]
    var: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// gaussian, rademacher or uniform.
    #[arg(long)]
    noise: Option<String>,
    #[command(flatten)]
    estimator: EstimatorFlags,
}

impl SpecFlags {
    fn spec(&self, reps: Option<usize>, kernel: bool) -> Result<SimulationSpec> {
        let mut root = match &self.config {
            Some(path) => read_json_object(path)?,
            None => Map::new(),
        };
        let mut set = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                root.insert(key.to_string(), v);
            }
        };
        set("mean", self.mean.clone().map(Value::from));
        set("var", self.var.clone().map(Value::from));
        set("n", self.n.map(Value::from));
        set("reps", reps.map(Value::from));
        set("seed", self.seed.map(Value::from));
        set("noise", self.noise.clone().map(Value::from));
        if kernel && !root.contains_key("baseline") {
            root.insert("baseline".into(), json!({}));
        }
        let est = root.entry("estimator").or_insert_with(|| json!({}));
        let Value::Object(est) = est else {
            bail!("`estimator` in the config must be an object")
        };
        self.estimator.merge_into(est);
        let text = Value::Object(root).to_string();
        SimulationSpec::from_json(&text).context("invalid simulation settings")
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    spec: SpecFlags,
    #[arg(long)]
    reps: Option<usize>,
    /// Also run the cross-validated kernel estimator on the same data.
    #[arg(long)]
    kernel: bool,
    /// Run replications on one thread.
    #[arg(long)]
    serial: bool,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Table number: 1, 2 or 3.
    #[arg(long)]
    which: u8,
    #[arg(long, default_value_t = 500)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 4096)]
    n: usize,
    #[arg(long)]
    serial: bool,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an aligned markdown rendering.
    #[arg(long)]
    markdown: Option<PathBuf>,
}

#[derive(Args)]
struct OverlayArgs {
    #[command(flatten)]
    spec: SpecFlags,
    /// gnuplot data file: index 0 holds the estimate, index 1 the truth.
    #[arg(long)]
    output: PathBuf,
}

fn read_json_object(path: &Path) -> Result<Map<String, Value>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))? {
        Value::Object(map) => Ok(map),
        _ => bail!("{} must contain a JSON object", path.display()),
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn execution(serial: bool) -> Execution {
    if serial {
        Execution::Serial
    } else {
        Execution::Parallel
    }
}

fn run_estimate(args: &EstimateArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => read_json_object(path)?,
        None => Map::new(),
    };
    args.estimator.merge_into(&mut cfg);
    let config: EstimatorConfig =
        serde_json::from_value(Value::Object(cfg)).context("invalid estimator settings")?;
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let y = parse_series_csv(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let est: VarianceEstimate = match args.half.as_str() {
        "combined" => estimate(&y, &config)?,
        "even" => estimate_half(&y, Parity::Even, &config)?,
        "odd" => estimate_half(&y, Parity::Odd, &config)?,
        other => bail!("unknown half `{other}`; use even, odd or combined"),
    };
    write_or_print(args.output.as_deref(), &estimate_to_csv(&est))
}

fn summary(report: &RiskReport) -> String {
    let s = &report.spec;
    let mut out = format!(
        "{} x {} at n = {}, {} replications, seed {} ({} filter, r = {}, j0 = {})\n  wavelet MISE {:.6} (se {:.6})\n",
        s.mean, s.var, s.n, s.reps, s.seed, s.estimator.filter, s.estimator.r, s.estimator.j0,
        report.wavelet.mise_mean, report.wavelet.mise_se
    );
    if let Some(k) = &report.kernel {
        out.push_str(&format!(
            "  kernel  MISE {:.6} (se {:.6}), ratio kernel/wavelet {:.3}\n",
            k.mise_mean,
            k.mise_se,
            k.mise_mean / report.wavelet.mise_mean
        ));
    }
    out.push_str(&format!("  {:.2}s wall clock\n", report.wallclock_secs));
    out
}

fn run_simulate(args: &SimulateArgs) -> Result<()> {
    let spec = args.spec.spec(args.reps, args.kernel)?;
    let report = run_cell_with(&spec, execution(args.serial))?;
    write_or_print(args.output.as_deref(), &rows_to_csv(&report_rows(&report)))?;
    eprint!("{}", summary(&report));
    Ok(())
}

fn run_table(args: &TableArgs) -> Result<()> {
    let options = TableOptions {
        n: args.n,
        execution: execution(args.serial),
        ..TableOptions::new(args.reps, args.seed)
    };
    let artifact = reproduce_table(args.which, &options)?;
    write_or_print(args.output.as_deref(), &artifact.to_csv())?;
    let md = artifact.to_markdown();
    match &args.markdown {
        Some(p) => fs::write(p, &md).with_context(|| format!("writing {}", p.display()))?,
        None => eprint!("{md}"),
    }
    Ok(())
}

fn run_selftest() -> Result<bool> {
    let checks = varwave::selftest::run();
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!(
            "{} {}: {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("{} checks, {failed} failed", checks.len());
    Ok(failed == 0)
}

fn run_overlay(args: &OverlayArgs) -> Result<()> {
    let spec = args.spec.spec(Some(1), false)?;
    let variance = normalize_variance(spec.var);
    let sample = synthesize(spec.mean, variance, spec.n, spec.noise, spec.seed)?;
    let est = estimate(&sample.y, &spec.estimator)?;
    let truth = sample.variance_on_estimation_grid();
    let mut text = two_column_data(
        &est.grid,
        &est.values,
        &format!("estimate: {} x {}, n = {}", spec.mean, spec.var, spec.n),
    );
    text.push_str("\n\n");
    text.push_str(&two_column_data(
        &est.grid,
        &truth,
        "true variance function",
    ));
    fs::write(&args.output, text).with_context(|| format!("writing {}", args.output.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(a) => run_estimate(a).map(|_| true),
        Command::Simulate(a) => run_simulate(a).map(|_| true),
        Command::Table(a) => run_table(a).map(|_| true),
        Command::Selftest => run_selftest(),
        Command::Overlay(a) => run_overlay(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

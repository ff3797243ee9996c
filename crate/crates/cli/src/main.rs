//! `asinh-survival`: evaluate, sample, fit and study the arcsinh family from
//! the command line.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use asinh_survival::experiments::{emit_curves, run_robustness_study, ExperimentConfig};
use asinh_survival::fitting::{fit_mle, FitOptions, FitResult, Sample};
use asinh_survival::format::{fmt_g17, fmt_opt};
use asinh_survival::rng::stream;
use asinh_survival::{Distribution, Error, Family, Params};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "asinh-survival", version, about = "Heavy-tailed arcsinh survival distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a distribution function at one or more points.
    Eval(EvalArgs),
    /// Draw a seeded sample, one value per row.
    Sample(SampleArgs),
    /// Fit families to data by maximum likelihood.
    Fit(FitArgs),
    /// Run the outlier-robustness study.
    Experiment(ExperimentArgs),
    /// Emit exponential, generalised-exponential and Lomax density curves.
    Curves(CurvesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum What {
    Pdf,
    Cdf,
    Survival,
    Hazard,
    Quantile,
    Moment,
    Mode,
    Entropy,
}

impl What {
    fn name(self) -> &'static str {
        match self {
            What::Pdf => "pdf",
            What::Cdf => "cdf",
            What::Survival => "survival",
            What::Hazard => "hazard",
            What::Quantile => "quantile",
            What::Moment => "moment",
            What::Mode => "mode",
            What::Entropy => "entropy",
        }
    }
}

#[derive(Args)]
struct DistArgs {
    /// Family: genexp, genweibull, gengamma, genexp2, exp, lomax, burr12, cgamma.
    #[arg(long)]
    dist: Family,
    /// Tail index ν.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    nu: f64,
    /// Shape β.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    /// Scale τ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    tau: f64,
    /// Location η.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
}

impl DistArgs {
    fn handle(&self) -> Result<Distribution, CliError> {
        let params = Params {
            nu: self.nu,
            beta: self.beta,
            tau: self.tau,
            eta: self.eta,
        };
        Distribution::new(self.dist, params).map_err(|e| CliError::param(&e))
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long, value_enum)]
    what: What,
    /// Comma-separated evaluation points (moment orders for `moment`).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    at: Vec<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Number of draws.
    #[arg(short = 'n', default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct FitArgs {
    /// Data file: optional header `x`, then one value per line.
    data: PathBuf,
    /// Comma-separated families to fit.
    #[arg(long, value_delimiter = ',', default_values_t = [Family::Exponential, Family::Lomax, Family::GenExp])]
    dist: Vec<Family>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [10, 100, 1000])]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [20.0, 10.0])]
    outliers: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    reps: usize,
    #[arg(long, default_value_t = ExperimentConfig::default().base_seed)]
    seed: u64,
    /// Scale of the clean exponential samples.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Also run the cells without outliers.
    #[arg(long)]
    clean: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    #[arg(long, default_value_t = 10.0)]
    xmax: f64,
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Emit log₁₀ densities.
    #[arg(long)]
    log: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Self {
            code: 3,
            message: format!("{}: {err}", path.display()),
        }
    }

    /// Library errors about distribution parameters name the parameter
    /// first (`nu = -1 ...`); report them against the matching flag.
    fn param(err: &Error) -> Self {
        let text = err.to_string();
        let inner = text.strip_prefix("domain error: ").unwrap_or(&text);
        let flag = inner.split(" = ").next().unwrap_or("");
        match flag {
            "nu" | "beta" | "tau" | "eta" => Self::usage(format!("--{flag}: {text}")),
            _ => Self::usage(text),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Sample(a) => cmd_sample(&a),
        Command::Fit(a) => cmd_fit(&a),
        Command::Experiment(a) => cmd_experiment(&a),
        Command::Curves(a) => cmd_curves(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serialises");
    s.push('\n');
    s
}

fn cmd_eval(a: &EvalArgs) -> Result<(), CliError> {
    let d = a.dist.handle()?;
    let pointless = matches!(a.what, What::Mode | What::Entropy);
    if a.at.is_empty() && !pointless {
        return Err(CliError::usage(format!("--at: required for --what {}", a.what.name())));
    }
    let at: Vec<Option<f64>> = if a.at.is_empty() {
        vec![None]
    } else {
        a.at.iter().copied().map(Some).collect()
    };

    let mut values = Vec::with_capacity(at.len());
    for &x in &at {
        let at_err = |e: Error| {
            CliError::usage(format!("--at: {}: {e}", x.map(fmt_g17).unwrap_or_default()))
        };
        let v = match (a.what, x) {
            (What::Pdf, Some(x)) => Some(d.pdf(x)),
            (What::Cdf, Some(x)) => Some(d.cdf(x)),
            (What::Survival, Some(x)) => Some(d.survival(x)),
            (What::Hazard, Some(x)) => Some(d.hazard(x)),
            (What::Quantile, Some(p)) => Some(d.quantile(p).map_err(at_err)?),
            (What::Moment, Some(n)) => d.moment(n).map_err(|e| match e {
                Error::Unsupported { .. } => CliError::usage(format!("--what moment: {e}")),
                e => at_err(e),
            })?,
            (What::Mode, _) => Some(d.mode()),
            (What::Entropy, _) => Some(d.entropy().map_err(|e| CliError::usage(format!("--what entropy: {e}")))?),
            (_, None) => unreachable!("points required"),
        };
        if let (Some(x), Some(v)) = (x, v) {
            if v.is_nan() {
                return Err(CliError::usage(format!("--at: {} is not a number", fmt_g17(x))));
            }
        }
        values.push(v);
    }

    let name = a.what.name();
    let text = match a.out.format {
        Format::Csv => {
            let mut s = format!("at,{name}\n");
            for (x, v) in at.iter().zip(&values) {
                let _ = writeln!(s, "{},{}", x.map(fmt_g17).unwrap_or_default(), fmt_opt(*v));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = at
                .iter()
                .zip(&values)
                .map(|(x, v)| {
                    let value = match v {
                        Some(v) => json!(v),
                        None => json!("undefined"),
                    };
                    json!({ "at": x, name: value })
                })
                .collect();
            json_text(&Value::Array(rows))
        }
    };
    emit(a.out.out.as_deref(), &text)
}

fn cmd_sample(a: &SampleArgs) -> Result<(), CliError> {
    let d = a.dist.handle()?;
    let draws = d.sample(a.n, &mut stream(a.seed));
    let text = match a.out.format {
        Format::Csv => {
            let mut s = String::with_capacity(24 * (a.n + 1));
            s.push_str("x\n");
            for x in &draws {
                s.push_str(&fmt_g17(*x));
                s.push('\n');
            }
            s
        }
        Format::Json => json_text(&json!(draws)),
    };
    emit(a.out.out.as_deref(), &text)
}

/// Parses the data format: an optional `x` header, then one finite value
/// ≥ 0 per line. Blank lines are skipped. Row numbers in errors are
/// 1-based file lines.
fn parse_data(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let field = line.trim();
        if field.is_empty() || (i == 0 && field.eq_ignore_ascii_case("x")) {
            continue;
        }
        let v: f64 = field
            .parse()
            .map_err(|_| CliError::usage(format!("data row {}: cannot parse {field:?} as a number", i + 1)))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::usage(format!("data row {}: {field} is not a finite value >= 0", i + 1)));
        }
        values.push(v);
    }
    Ok(values)
}

fn fit_json(fit: &FitResult) -> Value {
    let p = &fit.estimates;
    let mut obj = json!({
        "family": fit.family.name(),
        "tau_hat": p.tau,
        "nu_hat": if fit.family.uses_nu() { json!(p.nu) } else { Value::Null },
        "neg_log_lik": fit.neg_log_lik,
        "converged": fit.converged,
        "at_nu_bound": fit.at_nu_bound,
    });
    if fit.family.uses_beta() {
        obj["beta_hat"] = json!(p.beta);
    }
    obj
}

fn cmd_fit(a: &FitArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&a.data).map_err(|e| CliError::io(&a.data, e))?;
    let values = parse_data(&text)?;
    if values.is_empty() {
        return Err(CliError::usage(format!("{}: no observations", a.data.display())));
    }
    let name = a.data.display().to_string();
    let sample = Sample::new(name, values).map_err(|e| CliError::usage(e.to_string()))?;
    let options = FitOptions::default();
    let mut fits = Vec::with_capacity(a.dist.len());
    for &family in &a.dist {
        let fit = fit_mle(family, &sample, &options).map_err(|e| CliError::usage(format!("--dist {family}: {e}")))?;
        fits.push(fit);
    }
    fits.sort_by(|x, y| x.neg_log_lik.total_cmp(&y.neg_log_lik));

    let text = match a.format {
        Format::Json => json_text(&Value::Array(fits.iter().map(fit_json).collect())),
        Format::Csv => {
            let mut s = String::from("family,tau_hat,nu_hat,beta_hat,neg_log_lik,converged,at_nu_bound\n");
            for f in &fits {
                let p = &f.estimates;
                let opt = |used: bool, v: f64| if used { fmt_g17(v) } else { String::new() };
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    f.family,
                    fmt_g17(p.tau),
                    opt(f.family.uses_nu(), p.nu),
                    opt(f.family.uses_beta(), p.beta),
                    fmt_g17(f.neg_log_lik),
                    f.converged,
                    f.at_nu_bound
                );
            }
            s
        }
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_experiment(a: &ExperimentArgs) -> Result<(), CliError> {
    let config = ExperimentConfig {
        sample_sizes: a.sizes.clone(),
        outlier_values: a.outliers.clone(),
        true_tau: a.tau,
        replications: a.reps,
        base_seed: a.seed,
        include_clean: a.clean,
    };
    let report = run_robustness_study(&config).map_err(|e| {
        let text = e.to_string();
        let inner = text.strip_prefix("domain error: ").unwrap_or(&text).to_string();
        CliError::usage(format!("--{inner}"))
    })?;
    let text = match a.out.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json() + "\n",
    };
    emit(a.out.out.as_deref(), &text)
}

fn cmd_curves(a: &CurvesArgs) -> Result<(), CliError> {
    let table = emit_curves(a.nu, a.xmax, a.points, a.log).map_err(|e| {
        let text = e.to_string();
        let inner = text.strip_prefix("domain error: ").unwrap_or(&text).to_string();
        CliError::usage(format!("--{inner}"))
    })?;
    let text = match a.out.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json() + "\n",
    };
    emit(a.out.out.as_deref(), &text)
}

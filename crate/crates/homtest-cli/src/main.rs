//! `homtest` — command-line front end for the homogeneity test.
//!
//! Subcommands:
//!
//! * `calibrate` — print the rejection threshold for a case at one or
//!   more nominal levels;
//! * `test`      — run the test on a newline-delimited data file and
//!   report the full decision record;
//! * `simulate`  — Monte Carlo estimate of the null rejection rate over
//!   a grid of levels and sample sizes;
//! * `figures`   — emit the CSV data tables behind the standard plots.
//!
//! Exit codes: `0` success (for `test`: homogeneity retained), `3` the
//! test rejected homogeneity, `2` invalid arguments or an unreadable /
//! malformed input file, `1` a numerical routine failed.
//!
//! All floating-point values in CSV output carry 12 significant digits,
//! and every output is byte-deterministic given identical arguments
//! (including `--seed`).

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use homtest::asymptotics::{self, CaseSpec};
use homtest::numerics;
use homtest::sampling::read_sample;
use homtest::testing::{self, Decision, Mode};
use homtest::Error;

// ---------------------------------------------------------------------------
// Argument declarations
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "homtest",
    version,
    about = "Bayesian marginal-likelihood-ratio test of normal homogeneity",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print rejection thresholds for a case at the requested level(s)
    Calibrate(CalibrateArgs),
    /// Test a data file for homogeneity and print the decision record
    Test(TestArgs),
    /// Estimate the null rejection rate by Monte Carlo
    Simulate(SimulateArgs),
    /// Emit figure data tables as CSV
    Figures(FiguresArgs),
}

/// Flags shared by every subcommand. All of them are optional at the
/// clap layer so a `--config` file can supply defaults; explicit flags
/// always win over config values.
#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Prior family: ratio | ratio-mean | full
    #[arg(long)]
    case: Option<String>,

    /// Standardized component mean (required by --case ratio)
    #[arg(long)]
    beta0: Option<f64>,

    /// Half-width of the uniform prior on the standardized mean
    /// (required by --case ratio-mean)
    #[arg(long)]
    b0: Option<f64>,

    /// Radius of the uniform disc prior on the standardized
    /// (mean, precision) pair (required by --case full)
    #[arg(long)]
    r0: Option<f64>,

    /// Nominal level(s), comma separated (e.g. 0.1,0.05,0.01)
    #[arg(long = "level", alias = "levels", value_delimiter = ',', value_name = "LEVEL")]
    level: Option<Vec<f64>>,

    /// Statistic mode: asymptotic | exact
    #[arg(long)]
    mode: Option<String>,

    /// Output file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format: json | csv
    #[arg(long)]
    format: Option<String>,

    /// Flat key=value file supplying defaults for unset flags
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TestArgs {
    /// Newline-delimited decimal data file (one observation per line)
    #[arg(value_name = "FILE")]
    file: PathBuf,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Sample size(s), comma separated
    #[arg(long = "n", value_delimiter = ',', value_name = "N")]
    n: Option<Vec<usize>>,

    /// Monte Carlo replications per (level, n) cell (at least 100)
    #[arg(long)]
    reps: Option<u32>,

    /// Base RNG seed (default 0)
    #[arg(long)]
    seed: Option<u64>,

    /// Fixed rejection threshold; skips internal calibration when given
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Figure name: level-vs-threshold | threshold-vs-beta | bayes-factor
    #[arg(value_name = "WHICH")]
    which: String,

    #[command(flatten)]
    common: CommonArgs,
}

// ---------------------------------------------------------------------------
// Failure plumbing
// ---------------------------------------------------------------------------

const EXIT_NUMERIC: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_REJECT: i32 = 3;

/// A terminal failure: message for stderr plus the process exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage_err(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            // Input-file problems are argument-level failures.
            Error::Io(_) | Error::Parse { .. } => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

const CALIBRATE_USAGE: &str = "usage: homtest calibrate --case <ratio|ratio-mean|full> \
     --<beta0|b0|r0> <VALUE> --level <L1[,L2,...]> [--format json|csv] [--out FILE] [--config FILE]";
const TEST_USAGE: &str = "usage: homtest test <FILE> --case <ratio|ratio-mean|full> \
     --<beta0|b0|r0> <VALUE> --level <L> [--mode asymptotic|exact] [--out FILE] [--config FILE]";
const SIMULATE_USAGE: &str = "usage: homtest simulate --case <ratio|ratio-mean|full> \
     --<beta0|b0|r0> <VALUE> --levels <L1[,L2,...]> --n <N1[,N2,...]> --reps <R> \
     [--seed S] [--mode asymptotic|exact] [--threshold T] [--format csv|json] [--out FILE] [--config FILE]";
const FIGURES_USAGE: &str = "usage: homtest figures <level-vs-threshold|threshold-vs-beta|bayes-factor> \
     [--out FILE]";

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Calibrate(args) => cmd_calibrate(args).map_err(|f| f.with_usage(CALIBRATE_USAGE)),
        Cmd::Test(args) => cmd_test(args).map_err(|f| f.with_usage(TEST_USAGE)),
        Cmd::Simulate(args) => cmd_simulate(args).map_err(|f| f.with_usage(SIMULATE_USAGE)),
        Cmd::Figures(args) => cmd_figures(args).map_err(|f| f.with_usage(FIGURES_USAGE)),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

impl Failure {
    /// Append the subcommand usage line to argument-level failures.
    fn with_usage(mut self, usage: &str) -> Self {
        if self.code == EXIT_USAGE {
            self.message.push('\n');
            self.message.push_str(usage);
        }
        self
    }
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

/// Parsed `--config` file: flat `key=value` lines, `#` comments and blank
/// lines ignored. Keys mirror the long flag names.
struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let mut entries = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                usage_err(format!("cannot read config file {}: {e}", path.display()))
            })?;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(usage_err(format!(
                        "config file {}, line {}: expected key=value, got {line:?}",
                        path.display(),
                        idx + 1
                    )));
                };
                let key = key.trim().to_string();
                if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                    return Err(usage_err(format!(
                        "config file {}, line {}: duplicate key {key:?}",
                        path.display(),
                        idx + 1
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    /// Error out if unconsumed (unknown) keys remain.
    fn finish(self) -> Result<(), Failure> {
        if self.entries.is_empty() {
            Ok(())
        } else {
            let keys: Vec<_> = self.entries.keys().cloned().collect();
            Err(usage_err(format!(
                "unknown config key(s): {}",
                keys.join(", ")
            )))
        }
    }
}

fn parse_cfg<T: FromStr>(key: &str, raw: &str) -> Result<T, Failure>
where
    T::Err: std::fmt::Display,
{
    raw.parse::<T>()
        .map_err(|e| usage_err(format!("config key {key}: cannot parse {raw:?}: {e}")))
}

/// Flag value if set, else the (parsed) config value, else `None`.
/// Consumes the config key either way so `finish()` stays clean when a
/// flag shadows a config entry.
fn merge<T: FromStr>(
    flag: Option<T>,
    cfg: &mut ConfigMap,
    key: &str,
) -> Result<Option<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    let from_cfg = cfg.take(key);
    if flag.is_some() {
        return Ok(flag);
    }
    from_cfg.map(|raw| parse_cfg(key, &raw)).transpose()
}

/// Comma-separated list variant of [`merge`].
fn merge_list<T: FromStr>(
    flag: Option<Vec<T>>,
    cfg: &mut ConfigMap,
    keys: &[&str],
) -> Result<Option<Vec<T>>, Failure>
where
    T::Err: std::fmt::Display,
{
    let mut from_cfg = None;
    for key in keys {
        if let Some(raw) = cfg.take(key) {
            if from_cfg.is_none() {
                from_cfg = Some((key.to_string(), raw));
            }
        }
    }
    if flag.is_some() {
        return Ok(flag);
    }
    from_cfg
        .map(|(key, raw)| {
            raw.split(',')
                .map(|piece| parse_cfg(&key, piece.trim()))
                .collect::<Result<Vec<T>, Failure>>()
        })
        .transpose()
}

// ---------------------------------------------------------------------------
// Shared resolution
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// Fully resolved common options (flags merged with config).
struct Resolved {
    case: CaseSpec,
    levels: Vec<f64>,
    mode: Mode,
    format: Option<Format>,
    out: Option<PathBuf>,
}

fn resolve_common(common: CommonArgs, cfg: &mut ConfigMap) -> Result<Resolved, Failure> {
    let case_name = merge(common.case, cfg, "case")?;
    let beta0 = merge(common.beta0, cfg, "beta0")?;
    let b0 = merge(common.b0, cfg, "b0")?;
    let r0 = merge(common.r0, cfg, "r0")?;
    let levels = merge_list(common.level, cfg, &["level", "levels"])?;
    let mode = merge(common.mode, cfg, "mode")?;
    let format = merge(common.format, cfg, "format")?;
    let out = merge(common.out, cfg, "out")?;

    let case = resolve_case(case_name.as_deref(), beta0, b0, r0)?;

    let levels = levels.unwrap_or_default();
    for &level in &levels {
        if !(level.is_finite() && 0.0 < level && level < 1.0) {
            return Err(usage_err(format!(
                "level must lie strictly between 0 and 1, got {level}"
            )));
        }
    }

    let mode = match mode.as_deref() {
        None => Mode::Asymptotic,
        Some("asymptotic") => Mode::Asymptotic,
        Some("exact") => Mode::Exact,
        Some(other) => {
            return Err(usage_err(format!(
                "unknown mode {other:?}; expected asymptotic or exact"
            )))
        }
    };

    let format = match format.as_deref() {
        None => None,
        Some("json") => Some(Format::Json),
        Some("csv") => Some(Format::Csv),
        Some(other) => {
            return Err(usage_err(format!(
                "unknown format {other:?}; expected json or csv"
            )))
        }
    };

    Ok(Resolved {
        case,
        levels,
        mode,
        format,
        out,
    })
}

/// Build the case specification, enforcing that exactly one
/// hyperparameter is present and that it matches the case selector.
fn resolve_case(
    case: Option<&str>,
    beta0: Option<f64>,
    b0: Option<f64>,
    r0: Option<f64>,
) -> Result<CaseSpec, Failure> {
    let Some(name) = case else {
        return Err(usage_err("missing --case (ratio | ratio-mean | full)"));
    };
    let given: Vec<&str> = [
        beta0.map(|_| "--beta0"),
        b0.map(|_| "--b0"),
        r0.map(|_| "--r0"),
    ]
    .into_iter()
    .flatten()
    .collect();
    if given.len() != 1 {
        return Err(usage_err(format!(
            "exactly one of --beta0/--b0/--r0 must be given (got {})",
            if given.is_empty() {
                "none".to_string()
            } else {
                given.join(", ")
            }
        )));
    }
    let spec = match (name, beta0, b0, r0) {
        ("ratio", Some(beta0), None, None) => CaseSpec::Case1 { beta0 },
        ("ratio-mean", None, Some(b0), None) => CaseSpec::Case2 { b0 },
        ("full", None, None, Some(r0)) => CaseSpec::Case3 { r0 },
        ("ratio" | "ratio-mean" | "full", ..) => {
            let wanted = match name {
                "ratio" => "--beta0",
                "ratio-mean" => "--b0",
                _ => "--r0",
            };
            return Err(usage_err(format!(
                "case {name} takes {wanted}, not {}",
                given[0]
            )));
        }
        (other, ..) => {
            return Err(usage_err(format!(
                "unknown case {other:?}; expected ratio, ratio-mean or full"
            )));
        }
    };
    spec.validate()
        .map_err(|e| usage_err(e.to_string()))?;
    Ok(spec)
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

/// 12-significant-digit decimal serialization used in all CSV output.
fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// RFC-4180-style field quoting (only when the field needs it; none of
/// the values emitted today do).
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure {
            code: EXIT_NUMERIC,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Asymptotic => "asymptotic",
        Mode::Exact => "exact",
    }
}

// ---------------------------------------------------------------------------
// calibrate
// ---------------------------------------------------------------------------

fn cmd_calibrate(args: CalibrateArgs) -> Result<i32, Failure> {
    let config_path = args.common.config.clone();
    let mut cfg = ConfigMap::load(config_path.as_deref())?;
    let resolved = resolve_common(args.common, &mut cfg)?;
    cfg.finish()?;

    if resolved.levels.is_empty() {
        return Err(usage_err("missing --level"));
    }

    let mut rows = Vec::with_capacity(resolved.levels.len());
    for &level in &resolved.levels {
        let threshold = testing::calibrate_threshold(&resolved.case, level)?;
        rows.push((level, threshold));
    }

    let body = match resolved.format.unwrap_or(Format::Json) {
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|&(level, threshold)| {
                    serde_json::json!({
                        "case": resolved.case.name(),
                        "hyper": resolved.case.hyper(),
                        "level": level,
                        "threshold": threshold,
                    })
                })
                .collect();
            let value = if objects.len() == 1 {
                objects.into_iter().next().expect("one element")
            } else {
                serde_json::Value::Array(objects)
            };
            let mut text = serde_json::to_string_pretty(&value).expect("static keys");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut text = String::from("case,hyper,level,threshold\n");
            for &(level, threshold) in &rows {
                let fields = [
                    resolved.case.name().to_string(),
                    fmt_sig(resolved.case.hyper()),
                    fmt_sig(level),
                    fmt_sig(threshold),
                ];
                text.push_str(&csv_row(&fields));
                text.push('\n');
            }
            text
        }
    };
    emit(resolved.out.as_deref(), &body)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

fn cmd_test(args: TestArgs) -> Result<i32, Failure> {
    let config_path = args.common.config.clone();
    let mut cfg = ConfigMap::load(config_path.as_deref())?;
    let resolved = resolve_common(args.common, &mut cfg)?;
    cfg.finish()?;

    if resolved.levels.len() != 1 {
        return Err(usage_err(
            "test requires exactly one --level".to_string(),
        ));
    }
    if resolved.format == Some(Format::Csv) {
        return Err(usage_err("test emits a JSON report; --format csv is not supported"));
    }
    let level = resolved.levels[0];

    let sample = read_sample(&args.file)?;
    let report = testing::run_test(&sample, &resolved.case, level, resolved.mode)?;

    let mut body = serde_json::to_string_pretty(&report).map_err(|e| Failure {
        code: EXIT_NUMERIC,
        message: format!("cannot serialize report: {e}"),
    })?;
    body.push('\n');
    emit(resolved.out.as_deref(), &body)?;

    Ok(match report.decision {
        Decision::RetainNull => 0,
        Decision::RejectNull => EXIT_REJECT,
    })
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn cmd_simulate(args: SimulateArgs) -> Result<i32, Failure> {
    let config_path = args.common.config.clone();
    let mut cfg = ConfigMap::load(config_path.as_deref())?;
    let resolved = resolve_common(args.common, &mut cfg)?;
    let ns = merge_list(args.n, &mut cfg, &["n"])?.unwrap_or_default();
    let reps = merge(args.reps, &mut cfg, "reps")?;
    let seed = merge(args.seed, &mut cfg, "seed")?.unwrap_or(0);
    let fixed_threshold = merge(args.threshold, &mut cfg, "threshold")?;
    cfg.finish()?;

    if resolved.levels.is_empty() {
        return Err(usage_err("missing --levels"));
    }
    if ns.is_empty() {
        return Err(usage_err("missing --n"));
    }
    if ns.iter().any(|&n| n == 0) {
        return Err(usage_err("sample size n must be at least 1"));
    }
    let Some(reps) = reps else {
        return Err(usage_err("missing --reps"));
    };
    if reps < 100 {
        return Err(usage_err(format!(
            "reps must be at least 100 for a usable standard error, got {reps}"
        )));
    }
    if let Some(t) = fixed_threshold {
        if !t.is_finite() {
            return Err(usage_err(format!("threshold must be finite, got {t}")));
        }
    }

    struct Row {
        level: f64,
        threshold: f64,
        n: usize,
        p_hat: f64,
        se: f64,
    }

    let mut rows = Vec::with_capacity(resolved.levels.len() * ns.len());
    for &level in &resolved.levels {
        let threshold = match fixed_threshold {
            Some(t) => t,
            None => testing::calibrate_threshold(&resolved.case, level)?,
        };
        for &n in &ns {
            let est = testing::estimate_rejection_rate(
                &resolved.case,
                n,
                threshold,
                reps,
                seed,
                resolved.mode,
            )?;
            rows.push(Row {
                level,
                threshold,
                n,
                p_hat: est.p_hat,
                se: est.se,
            });
        }
    }

    let body = match resolved.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = String::from("case,hyper,level,threshold,n,reps,seed,mode,p_hat,se\n");
            for row in &rows {
                let fields = [
                    resolved.case.name().to_string(),
                    fmt_sig(resolved.case.hyper()),
                    fmt_sig(row.level),
                    fmt_sig(row.threshold),
                    row.n.to_string(),
                    reps.to_string(),
                    seed.to_string(),
                    mode_name(resolved.mode).to_string(),
                    fmt_sig(row.p_hat),
                    fmt_sig(row.se),
                ];
                text.push_str(&csv_row(&fields));
                text.push('\n');
            }
            text
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "case": resolved.case.name(),
                        "hyper": resolved.case.hyper(),
                        "level": row.level,
                        "threshold": row.threshold,
                        "n": row.n,
                        "reps": reps,
                        "seed": seed,
                        "mode": mode_name(resolved.mode),
                        "p_hat": row.p_hat,
                        "se": row.se,
                    })
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&serde_json::Value::Array(objects))
                .expect("static keys");
            text.push('\n');
            text
        }
    };
    emit(resolved.out.as_deref(), &body)?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

fn cmd_figures(args: FiguresArgs) -> Result<i32, Failure> {
    let config_path = args.common.config.clone();
    let mut cfg = ConfigMap::load(config_path.as_deref())?;
    // Figures take no case/level flags; reject anything stray so a typo
    // does not silently produce the default grid.
    let stray = [
        args.common.case.is_some(),
        args.common.beta0.is_some(),
        args.common.b0.is_some(),
        args.common.r0.is_some(),
        args.common.level.is_some(),
        args.common.mode.is_some(),
    ];
    if stray.iter().any(|&s| s) {
        return Err(usage_err(
            "figures takes only --out (grids and hyperparameters are fixed)",
        ));
    }
    if matches!(args.common.format.as_deref(), Some(f) if f != "csv") {
        return Err(usage_err("figure tables are CSV only"));
    }
    let out = merge(args.common.out, &mut cfg, "out")?;
    cfg.finish()?;

    let body = match args.which.as_str() {
        "level-vs-threshold" => figure_level_vs_threshold()?,
        "threshold-vs-beta" => figure_threshold_vs_beta()?,
        "bayes-factor" => figure_bayes_factor()?,
        other => {
            return Err(usage_err(format!(
                "unknown figure {other:?}; expected level-vs-threshold, threshold-vs-beta or bayes-factor"
            )));
        }
    };
    emit(out.as_deref(), &body)?;
    Ok(0)
}

/// Threshold/level operating curves for the fixed-mean case: for each
/// slope in {0.5, 1, 1.5, 2}, sweep the rejection boundary over a grid
/// and report (threshold, upper-tail level) pairs.
fn figure_level_vs_threshold() -> Result<String, Failure> {
    let mut text = String::from("beta0,threshold,level\n");
    for &beta0 in &[0.5, 1.0, 1.5, 2.0] {
        for j in 0..=160u32 {
            let xi = f64::from(j) / 20.0 - 4.0;
            let threshold = asymptotics::case1_l_closed(xi, beta0)?;
            let level = 0.5 * numerics::erfc(xi / SQRT_2)?;
            writeln!(
                text,
                "{}",
                csv_row(&[fmt_sig(beta0), fmt_sig(threshold), fmt_sig(level)])
            )
            .expect("string write cannot fail");
        }
    }
    Ok(text)
}

/// 5%-level threshold as a function of the fixed standardized mean.
fn figure_threshold_vs_beta() -> Result<String, Failure> {
    let z95 = numerics::normal_quantile(0.95)?;
    let mut text = String::from("beta0,threshold_5pct\n");
    for k in 0..=78u32 {
        let beta0 = (f64::from(k) + 2.0) / 20.0;
        let threshold = asymptotics::case1_l_closed(z95, beta0)?;
        writeln!(text, "{}", csv_row(&[fmt_sig(beta0), fmt_sig(threshold)]))
            .expect("string write cannot fail");
    }
    Ok(text)
}

/// Log Bayes factor in favor of homogeneity as a function of the scaled
/// sample mean, for several prior half-widths.
fn figure_bayes_factor() -> Result<String, Failure> {
    let mut text = String::from("B0,xi,F\n");
    for &b0 in &[0.25, 0.5, 1.0, 2.0] {
        for j in 0..=80u32 {
            let xi = f64::from(j) / 10.0 - 4.0;
            let l = asymptotics::case2_l(xi, b0)?;
            let f = asymptotics::log_bayes_factor(l)?;
            writeln!(text, "{}", csv_row(&[fmt_sig(b0), fmt_sig(xi), fmt_sig(f)]))
                .expect("string write cannot fail");
        }
    }
    Ok(text)
}

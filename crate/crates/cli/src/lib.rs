//! Command-line front end for `qmux`.
//!
//! Every command renders to a string so that tests can drive the CLI
//! without spawning a process. [`run`] parses arguments and returns the
//! exit code along with what would have gone to stdout and stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qmux::cost::CostReport;
use qmux::format::{render_qmux, to_json, QmuxDocument};
use qmux::pla::{parse_pla, to_bool_func, to_multiplexer, PlaSemantics};
use qmux::rm::{literal_cost, rm_transform, BoolFunc, RankedPolarity};
use qmux::{
    forward_transform, multiplexer_cost, parse_any, rm_search, search, Bits, Error, Family, Form,
    GatePool, Multiplexer, Polarity, SearchConfig, SearchMode, SearchReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Semantic agreement required by `verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "qmux", version, about = "Polarity optimization for binary quantum multiplexers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search polarities for the cheapest FPQF or KQF form.
    Optimize(OptimizeArgs),
    /// Check that a polarized form realizes the same operators as the input.
    Verify(VerifyArgs),
    /// Rank FPRM or KRM polarities of a Boolean function by literal cost.
    Classical(ClassicalArgs),
    /// Write a random standard multiplexer.
    Generate(GenerateArgs),
    /// Price a multiplexer as written.
    Cost(CostArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SortArg {
    Polarity,
    Cost,
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// A `.qmux` or JSON multiplexer, or a `.pla` file.
    pub input: PathBuf,
    /// fpqf or kqf.
    #[arg(long, default_value = "fpqf")]
    pub family: Family,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Polarities drawn in random mode.
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// PLA output to optimize.
    #[arg(long, default_value_t = 0)]
    pub output_index: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Standard-form multiplexer.
    pub input: PathBuf,
    /// Polarity to transform with; defaults to the polarity of `--against`.
    #[arg(long)]
    pub polarity: Option<Polarity>,
    /// Polarized multiplexer to check instead of the computed transform.
    #[arg(long)]
    pub against: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub output_index: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ClassicalArgs {
    /// A `.pla` path, or a minterm string such as `01111111` (first
    /// variable most significant, minterm 0 first).
    pub input: String,
    /// fprm or krm.
    #[arg(long, default_value = "fprm")]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub output_index: usize,
    /// Only the `k` cheapest polarities.
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long, value_enum, default_value_t = SortArg::Polarity)]
    pub sort: SortArg,
    /// Add the XOR expression of each listed polarity.
    #[arg(long)]
    pub expressions: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub controls: usize,
    /// full, nvv or custom:<gate>,<gate>,...
    #[arg(long, default_value = "full")]
    pub pool: GatePool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// text (.qmux) or json.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CostArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub output_index: usize,
    #[command(flatten)]
    pub common: Common,
}

/// What a finished command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::SizeLimitExceeded { .. }) => EXIT_LIMIT,
            _ => EXIT_PARSE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Reproducibility record carried by every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub inputs: Vec<String>,
    pub config: serde_json::Value,
    pub version: &'static str,
    pub seeds: Vec<u64>,
    pub wall_time_secs: f64,
}

impl RunManifest {
    fn new(command: &'static str, inputs: Vec<String>, config: serde_json::Value, seeds: Vec<u64>) -> Self {
        RunManifest {
            command,
            inputs,
            config,
            version: env!("CARGO_PKG_VERSION"),
            seeds,
            wall_time_secs: 0.0,
        }
    }

    /// `#`-prefixed lines for text and CSV output.
    fn comment(&self) -> String {
        format!(
            "# qmux {} {} inputs={} seeds={:?} config={} wall={:.3}s\n",
            self.version,
            self.command,
            self.inputs.join(","),
            self.seeds,
            self.config,
            self.wall_time_secs
        )
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn is_pla(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pla"))
        || text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .is_some_and(|l| l.starts_with(".i") || l.starts_with(".o"))
}

fn pla_function(text: &str, output_index: usize) -> CliResult<BoolFunc> {
    let pla = parse_pla(text)?;
    let semantics = match pla.pla_type.as_deref() {
        Some("fr") => PlaSemantics::Fr,
        _ => PlaSemantics::F,
    };
    Ok(to_bool_func(&pla, output_index, semantics)?)
}

/// Loads a multiplexer from `.qmux`, JSON or PLA.
pub fn load_multiplexer(path: &Path, output_index: usize) -> CliResult<Multiplexer> {
    let text = read(path)?;
    if is_pla(path, &text) {
        return Ok(to_multiplexer(&pla_function(&text, output_index)?)?);
    }
    Ok(parse_any(&text)?)
}

fn emit(common: &Common, body: String) -> CliResult<String> {
    match &common.out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| CliError::Io(path.clone(), e))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn cmd_optimize(args: &OptimizeArgs) -> CliResult<String> {
    let start = Instant::now();
    let std = load_multiplexer(&args.input, args.output_index)?;
    let mode = match args.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Random => SearchMode::Random { samples: args.samples, seed: args.seed },
    };
    let cfg = SearchConfig { mode, ..SearchConfig::exhaustive(args.family) };
    let report = search(&std, &cfg)?;
    let best = forward_transform(&std, &report.best.polarity)?;
    let cost = multiplexer_cost(&best);
    let seeds = match mode {
        SearchMode::Random { seed, .. } => vec![seed],
        SearchMode::Exhaustive => vec![],
    };
    let mut manifest = RunManifest::new(
        "optimize",
        vec![args.input.display().to_string()],
        json!({ "family": args.family, "mode": mode, "output_index": args.output_index }),
        seeds,
    );
    manifest.wall_time_secs = start.elapsed().as_secs_f64();
    let body = match args.common.format {
        OutputFormat::Json => pretty(&json!({
            "manifest": manifest,
            "search": report,
            "best": QmuxDocument::from(&best),
            "cost": cost,
        })),
        OutputFormat::Csv => format!("{}{}\n{}\n", manifest.comment(), SearchReport::CSV_HEADER, report.csv_row()),
        OutputFormat::Text => format!(
            "{}best polarity: {}\n\n{}\n{}\n\n{}\n",
            manifest.comment(),
            report.best.polarity,
            render_qmux(&best),
            cost,
            report
        ),
    };
    emit(&args.common, body)
}

/// Returns the rendered report and whether verification passed.
pub fn cmd_verify(args: &VerifyArgs) -> CliResult<(String, bool)> {
    let start = Instant::now();
    let std = load_multiplexer(&args.input, args.output_index)?;
    if *std.form() != Form::Standard {
        return Err(Error::FormMismatch { expected: "standard", found: std.form().to_string() }.into());
    }
    let polarized = match (&args.against, &args.polarity) {
        (Some(path), p) => {
            let g = load_multiplexer(path, 0)?;
            match (g.form().polarity(), p) {
                (None, _) => {
                    return Err(Error::FormMismatch { expected: "fpqf or kqf", found: g.form().to_string() }.into())
                }
                (Some(found), Some(want)) if found != want => {
                    return Err(Error::InvalidPolarity(format!("--against has polarity {found}, not {want}")).into())
                }
                _ => g,
            }
        }
        (None, Some(p)) => forward_transform(&std, p)?,
        (None, None) => return Err(CliError::Usage("verify needs --polarity or --against".into())),
    };
    let deviation = polarized.max_semantic_deviation(&std)?;
    let pass = deviation <= VERIFY_TOLERANCE;
    let polarity = polarized.effective_polarity();
    let mut manifest = RunManifest::new(
        "verify",
        std::iter::once(&args.input)
            .chain(args.against.iter())
            .map(|p| p.display().to_string())
            .collect(),
        json!({ "polarity": polarity, "tolerance": VERIFY_TOLERANCE }),
        vec![],
    );
    manifest.wall_time_secs = start.elapsed().as_secs_f64();
    let verdict = if pass { "pass" } else { "fail" };
    let body = match args.common.format {
        OutputFormat::Json => pretty(&json!({
            "manifest": manifest,
            "polarity": polarity,
            "max_deviation": deviation,
            "states": 1usize << std.controls(),
            "pass": pass,
        })),
        OutputFormat::Csv => format!(
            "{}polarity,max_deviation,pass\n{},{:e},{}\n",
            manifest.comment(),
            polarity,
            deviation,
            pass
        ),
        OutputFormat::Text => format!(
            "{}{verdict}: polarity {polarity}, max deviation {deviation:.3e} over {} input states\n",
            manifest.comment(),
            1usize << std.controls()
        ),
    };
    Ok((emit(&args.common, body)?, pass))
}

fn classical_function(args: &ClassicalArgs) -> CliResult<BoolFunc> {
    let path = Path::new(&args.input);
    if path.exists() {
        return pla_function(&read(path)?, args.output_index);
    }
    let bits = if let Some(hex) = args.input.strip_prefix("0x") {
        Bits::from_hex(hex)?
    } else {
        args.input.parse::<Bits>()?
    };
    Ok(BoolFunc::from_minterms(bits)?)
}

pub fn cmd_classical(args: &ClassicalArgs) -> CliResult<String> {
    let start = Instant::now();
    let f = classical_function(args)?;
    let mut rows: Vec<RankedPolarity> = rm_search(&f, args.family)?;
    if let Some(k) = args.top {
        rows.truncate(k);
    }
    if args.sort == SortArg::Polarity {
        rows.sort_by_key(|r| r.polarity.ordinal(args.family));
    }
    let expressions: Vec<Option<String>> = rows
        .iter()
        .map(|r| {
            args.expressions.then(|| {
                let s = rm_transform(&f, &r.polarity).expect("variable count checked by search");
                debug_assert_eq!(literal_cost(&s), r.cost);
                s.expression()
            })
        })
        .collect();
    let mut manifest = RunManifest::new(
        "classical",
        vec![args.input.clone()],
        json!({ "family": args.family, "output_index": args.output_index, "top": args.top }),
        vec![],
    );
    manifest.wall_time_secs = start.elapsed().as_secs_f64();
    let body = match args.common.format {
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .zip(&expressions)
                .map(|(r, e)| json!({ "polarity": r.polarity, "cost": r.cost, "expression": e }))
                .collect();
            pretty(&json!({ "manifest": manifest, "variables": f.num_vars(), "rows": rows }))
        }
        OutputFormat::Csv => {
            let mut s = manifest.comment();
            s.push_str(if args.expressions { "polarity,cost,expression\n" } else { "polarity,cost\n" });
            for (r, e) in rows.iter().zip(&expressions) {
                match e {
                    Some(e) => s.push_str(&format!("{},{},\"{}\"\n", r.polarity, r.cost, e)),
                    None => s.push_str(&format!("{},{}\n", r.polarity, r.cost)),
                }
            }
            s
        }
        OutputFormat::Text => {
            let width = f.num_vars().max("polarity".len());
            let mut s = manifest.comment();
            s.push_str(&format!("{:<width$}  {:>6}\n", "polarity", "cost"));
            for (r, e) in rows.iter().zip(&expressions) {
                s.push_str(&format!("{:<width$}  {:>6}", r.polarity.to_string(), r.cost));
                if let Some(e) = e {
                    s.push_str("  ");
                    s.push_str(e);
                }
                s.push('\n');
            }
            s
        }
    };
    emit(&args.common, body)
}

pub fn cmd_generate(args: &GenerateArgs) -> CliResult<String> {
    let mux = qmux::generate(args.controls, &args.pool, args.seed)?;
    // No timing here: the same flags must give the same bytes.
    let body = match args.format {
        OutputFormat::Json => {
            let mut s = to_json(&mux);
            s.push('\n');
            s
        }
        OutputFormat::Text | OutputFormat::Csv => format!(
            "# qmux {} generate --controls {} --pool {} --seed {}\n{}",
            env!("CARGO_PKG_VERSION"),
            args.controls,
            args.pool,
            args.seed,
            render_qmux(&mux)
        ),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| CliError::Io(path.clone(), e))?;
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn cost_csv(report: &CostReport) -> String {
    let mut s = String::from("gate,controls,cost\n");
    for g in &report.per_gate {
        s.push_str(&format!("{},{},{}\n", g.index, g.controls, g.cost));
    }
    s.push_str(&format!("total,,{}\n", report.total));
    s
}

pub fn cmd_cost(args: &CostArgs) -> CliResult<String> {
    let start = Instant::now();
    let mux = load_multiplexer(&args.input, args.output_index)?;
    let report = multiplexer_cost(&mux);
    let mut manifest = RunManifest::new(
        "cost",
        vec![args.input.display().to_string()],
        json!({ "form": mux.form().to_string(), "output_index": args.output_index }),
        vec![],
    );
    manifest.wall_time_secs = start.elapsed().as_secs_f64();
    let body = match args.common.format {
        OutputFormat::Json => pretty(&json!({ "manifest": manifest, "form": mux.form().to_string(), "cost": report })),
        OutputFormat::Csv => format!("{}{}", manifest.comment(), cost_csv(&report)),
        OutputFormat::Text => format!("{}form: {}\n{}\n", manifest.comment(), mux.form(), report),
    };
    emit(&args.common, body)
}

/// Runs an already-parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Optimize(a) => cmd_optimize(a).map(|s| (s, EXIT_OK)),
        Command::Verify(a) => cmd_verify(a).map(|(s, pass)| (s, if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })),
        Command::Classical(a) => cmd_classical(a).map(|s| (s, EXIT_OK)),
        Command::Generate(a) => cmd_generate(a).map(|s| (s, EXIT_OK)),
        Command::Cost(a) => cmd_cost(a).map(|s| (s, EXIT_OK)),
    };
    match result {
        Ok((stdout, code)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses `args` (program name first) and runs the command. Usage errors
/// exit with 2, as does clap.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}

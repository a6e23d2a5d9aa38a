use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "curve-ideal", version, about = "Vanishing ideals of projective curves from sample points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a parametrized curve and write a points file.
    Sample(SampleArgs),
    /// Compute border and minimal generators of the ideal of a points file.
    Ideal(IdealArgs),
    /// Report the generator degree bound and point count for a curve profile.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct BoundSource {
    /// Largest generator degree to compute.
    #[arg(long, value_name = "N")]
    pub degree_bound: Option<usize>,
    /// Curve profile JSON from which the degree bound is derived.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct Backend {
    /// Exact rational arithmetic (rational points only).
    #[arg(long)]
    pub exact: bool,
    /// Floating-point SVD/QRP backend.
    #[arg(long)]
    pub approx: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output path; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    Substitution,
    Points,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Parametrization JSON file.
    pub param: PathBuf,
    /// Number of points; defaults to the least count the degree bound needs.
    #[arg(long, short = 'n', value_name = "H")]
    pub count: Option<usize>,
    /// First integer parameter for exact samples `(1 : t)`.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub start: i64,
    #[command(flatten)]
    pub bound: BoundSource,
    #[command(flatten)]
    pub backend: Backend,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Points JSON file.
    pub points: PathBuf,
    #[command(flatten)]
    pub bound: BoundSource,
    #[command(flatten)]
    pub backend: Backend,
    /// Relative threshold for numerical rank decisions.
    #[arg(long, default_value_t = curve_ideal::DEFAULT_TOL)]
    pub tol: f64,
    /// Imposed ranks `|N_k|`, e.g. `2=12,3=20`.
    #[arg(long, value_name = "K=R,...", value_parser = parse_ranks)]
    pub ranks: Option<BTreeMap<usize, usize>>,
    /// Keep only a minimal generating set.
    #[arg(long)]
    pub minimize: bool,
    /// Recover rational coefficients from approximate generators.
    #[arg(long)]
    pub rationalize: bool,
    /// Largest denominator accepted by --rationalize.
    #[arg(long, value_name = "N", default_value_t = 1_000_000, requires = "rationalize")]
    pub max_den: u64,
    #[arg(long, value_enum)]
    pub verify: Option<Verify>,
    /// Parametrization JSON, required by `--verify substitution`.
    #[arg(long, value_name = "FILE")]
    pub param: Option<PathBuf>,
    /// Exit with status 2 when any rank decision or recovery step is doubtful.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Curve profile JSON.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "d", "class", "genus"])]
    pub profile: Option<PathBuf>,
    /// Ambient dimension.
    #[arg(long, requires = "d")]
    pub n: Option<usize>,
    /// Curve degree.
    #[arg(long, requires = "n")]
    pub d: Option<usize>,
    /// Curve class, e.g. `canonical-nonhyperelliptic`.
    #[arg(long, value_parser = parse_class, requires = "genus")]
    pub class: Option<curve_ideal::CurveClass>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

fn parse_ranks(s: &str) -> Result<BTreeMap<usize, usize>, String> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, r) = item
            .split_once('=')
            .ok_or_else(|| format!("`{item}` is not of the form k=r"))?;
        let k: usize = k.trim().parse().map_err(|_| format!("bad degree in `{item}`"))?;
        let r: usize = r.trim().parse().map_err(|_| format!("bad rank in `{item}`"))?;
        if out.insert(k, r).is_some() {
            return Err(format!("degree {k} given twice"));
        }
    }
    Ok(out)
}

fn parse_class(s: &str) -> Result<curve_ideal::CurveClass, String> {
    serde_json::from_value(serde_json::Value::String(s.to_owned())).map_err(|_| {
        "expected one of generic, canonical-nonhyperelliptic, complete-series, bicanonical, \
         tricanonical-g2, hyperelliptic-d2g, hyperelliptic-d2g-1"
            .to_owned()
    })
}

/// Why a command did not finish cleanly.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or inconsistent input; exit status 1.
    Input(String),
    /// The computation ran but its result is not trustworthy; exit status 2.
    Confidence(Vec<String>),
}

impl From<curve_ideal::Error> for Failure {
    fn from(e: curve_ideal::Error) -> Self {
        use curve_ideal::Error::*;
        match e {
            NonFinite { .. } | IllConditioned { .. } => Failure::Confidence(vec![e.to_string()]),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn write_output(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // usage errors are input errors; clap's own status 2 is reserved here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Sample(a) => commands::sample(&a),
        Command::Ideal(a) => commands::ideal(&a),
        Command::Bounds(a) => commands::bounds(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Confidence(reasons)) => {
            for r in &reasons {
                eprintln!("doubtful: {r}");
            }
            ExitCode::from(2)
        }
    }
}

//! `lacunaria` command-line front end.
//!
//! Every subcommand prints a JSON report (or CSV with `--format csv`) on
//! standard output. Exit status: 0 on success, 2 on input errors, 3 when a
//! definite verdict was requested but the computation was inconclusive.

mod commands;
mod plot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lacunaria::frame::Interval;
use lacunaria::gamma::GammaSet;
use lacunaria::lacunary::LacunaryPolynomial;
use lacunaria::rational::{self, Rational};
use lacunaria::Config;

#[derive(Parser, Debug)]
#[command(name = "lacunaria", version, about = "Weighted integer exponentials, lacunary polynomials and Vandermonde matrices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads (falls back to LACUNARIA_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Optional key=value file overriding tolerances and grid defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report runtime_ms as 0 so that reports are byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The half-integer invariant r(Γ).
    RGamma(GammaArg),
    /// Descartes bound and exact positive-root count of a sparse polynomial.
    Descartes(DescartesArgs),
    /// Generalized Vandermonde determinant and total positivity.
    Vandermonde(VandermondeArgs),
    /// Real roots of det V((s, …, s+N-1); Γ) in a window.
    ScanDetRoots(ScanDetRootsArgs),
    /// Whether a point set is a uniqueness set for every P(M), #M = #points.
    UniquenessCheck(UniquenessCheckArgs),
    /// Random search over non-alternating sign patterns.
    UniquenessSearch(UniquenessSearchArgs),
    /// Trigonometric obstruction with vanishing Γ-derivatives on ℤ.
    Obstruction(ObstructionArgs),
    /// Exact orthogonal measure on a unit-spaced grid.
    GridMeasure(GridMeasureArgs),
    /// Frame bounds on L²(a, b).
    FrameBounds(FrameBoundsArgs),
    /// Completeness and frame radii.
    Radius(RadiusArgs),
    /// Nonzero function in L²(a, b) orthogonal to the system.
    Witness(WitnessArgs),
    /// Sinc-mollified frame ratio of an orthogonal measure.
    MollifiedRatio(MollifiedRatioArgs),
}

fn gamma_parser(s: &str) -> Result<GammaSet, String> {
    s.parse().map_err(|e: lacunaria::Error| e.to_string())
}

fn rational_parser(s: &str) -> Result<Rational, String> {
    rational::parse_rational(s).map_err(|e| e.to_string())
}

fn rational_list_parser(s: &str) -> Result<RationalList, String> {
    rational::parse_rational_list(s).map(RationalList).map_err(|e| e.to_string())
}

fn interval_parser(s: &str) -> Result<Interval, String> {
    s.parse().map_err(|e: lacunaria::Error| e.to_string())
}

fn poly_parser(s: &str) -> Result<LacunaryPolynomial, String> {
    s.parse().map_err(|e: lacunaria::Error| e.to_string())
}

#[derive(Clone, Debug)]
pub struct RationalList(pub Vec<Rational>);

impl std::fmt::Display for RationalList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Args, Debug)]
pub struct GammaArg {
    /// Gap set, comma separated and increasing, e.g. 0,2,5.
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
}

#[derive(Args, Debug)]
pub struct DescartesArgs {
    /// Polynomial such as "1*x^0 - 2*x^3 + 1*x^7".
    #[arg(long, value_parser = poly_parser, allow_hyphen_values = true)]
    pub poly: LacunaryPolynomial,
    /// Largest dense degree handed to the exact root counter.
    #[arg(long)]
    pub degree_cap: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VandermondeArgs {
    #[arg(long, value_parser = rational_list_parser, allow_hyphen_values = true)]
    pub nodes: RationalList,
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    /// Report the exact determinant.
    #[arg(long)]
    pub det: bool,
    /// Check that every minor is strictly positive.
    #[arg(long)]
    pub tp_check: bool,
}

#[derive(Args, Debug)]
pub struct ScanDetRootsArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    /// Open window lo,hi.
    #[arg(long, value_parser = interval_parser, allow_hyphen_values = true)]
    pub range: Interval,
    /// Isolation width 2^-bits.
    #[arg(long)]
    pub bits: Option<u32>,
}

#[derive(Args, Debug)]
pub struct UniquenessCheckArgs {
    #[arg(long, value_parser = rational_list_parser, allow_hyphen_values = true)]
    pub points: RationalList,
    /// Exponent sets are drawn from {0, …, cap}.
    #[arg(long)]
    pub cap: u32,
}

#[derive(Args, Debug)]
pub struct UniquenessSearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub cap: u32,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ObstructionArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    #[arg(long)]
    pub n_range: Option<i64>,
}

#[derive(Args, Debug)]
pub struct GridMeasureArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    /// First grid point.
    #[arg(long, value_parser = rational_parser, allow_hyphen_values = true, default_value = "0")]
    pub alpha: Rational,
    #[arg(long)]
    pub n_range: Option<i64>,
}

#[derive(Args, Debug)]
pub struct FrameBoundsArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    /// Interval a,b.
    #[arg(long, value_parser = interval_parser, allow_hyphen_values = true)]
    pub interval: Interval,
    /// Grid step on the unit t-interval.
    #[arg(long)]
    pub step: Option<f64>,
    /// Write an SVG plot of σ_min(t).
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Fr,
    Cr,
    Crc,
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, default_value_t = 1e-3)]
    pub resolution: f64,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    #[arg(long, value_parser = interval_parser, allow_hyphen_values = true)]
    pub interval: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Obstruction,
    Grid,
}

#[derive(Args, Debug)]
pub struct MollifiedRatioArgs {
    #[arg(long, value_parser = gamma_parser)]
    pub gamma: GammaSet,
    /// Mollifier width, 0 < r < 1/2.
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 64)]
    pub n_range: i64,
    /// Orthogonal measure to mollify.
    #[arg(long, value_enum, default_value_t = Source::Obstruction)]
    pub source: Source,
    /// Grid start for `--source grid`.
    #[arg(long, value_parser = rational_parser, allow_hyphen_values = true, default_value = "0")]
    pub alpha: Rational,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::RGamma(_) => "r-gamma",
            Command::Descartes(_) => "descartes",
            Command::Vandermonde(_) => "vandermonde",
            Command::ScanDetRoots(_) => "scan-det-roots",
            Command::UniquenessCheck(_) => "uniqueness-check",
            Command::UniquenessSearch(_) => "uniqueness-search",
            Command::Obstruction(_) => "obstruction",
            Command::GridMeasure(_) => "grid-measure",
            Command::FrameBounds(_) => "frame-bounds",
            Command::Radius(_) => "radius",
            Command::Witness(_) => "witness",
            Command::MollifiedRatio(_) => "mollified-ratio",
        }
    }
}

fn load_config(path: Option<&PathBuf>) -> Result<Config, String> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Config::from_key_values(&text).map_err(|e| e.to_string())
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<usize, String> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("LACUNARIA_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| format!("bad LACUNARIA_THREADS value {v:?}"))?),
            Err(_) => None,
        },
    };
    match n {
        Some(0) => Err("thread count must be positive".into()),
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| e.to_string())?;
            Ok(n)
        }
        None => Ok(rayon::current_num_threads()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let setup = load_config(cli.config.as_ref()).and_then(|cfg| Ok((cfg, thread_count(cli.threads)?)));
    let (cfg, threads) = match setup {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let start = Instant::now();
    let outcome = match commands::run(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let runtime_ms = if cli.no_timing { 0 } else { start.elapsed().as_millis() };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = match cli.format {
        Format::Json => {
            let r = report::report(cli.command.name(), &outcome, &cfg, threads, runtime_ms);
            report::write_json(&mut out, &r).map_err(|e| e.to_string())
        }
        Format::Csv => report::write_csv(&mut out, &outcome).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.inconclusive {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

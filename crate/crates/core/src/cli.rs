//! The `phipsi` command line.
//!
//! Every subcommand writes one artifact (CSV or JSON) to stdout or `--out`.
//! Exit codes: 0 success, 2 usage or argument error, 3 domain error,
//! 4 resource error, 5 budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::{ExactRatio, FactorContext};
use crate::constants::{c0, euler_gamma, leading_constant, mertens_minus, mertens_plus, six_over_pi_squared};
use crate::error::{Error, Result};
use crate::experiments::{density_histogram, prog_recip_sum, sweep_report, SweepConfig};
use crate::numeric::format_f64_17;
use crate::sieve::DEFAULT_SEGMENT_SIZE;
use crate::witness::{construct_witness, WitnessConfig, WitnessMode, DEFAULT_ROUNDS};

/// Smallest accepted `--segment-size`.
pub const MIN_SEGMENT_SIZE: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    BoundOnly,
}

impl From<ModeArg> for WitnessMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => WitnessMode::Exact,
            ModeArg::BoundOnly => WitnessMode::BoundOnly,
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Accepts plain integers and integral scientific notation such as `1e6`.
fn parse_natural(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 => Ok(v as u64),
        _ => Err(format!("{s:?} is not a natural number")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "phipsi", version, about = "Compositions of Euler's totient and Dedekind's psi")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Worker threads
    #[arg(long, global = true, default_value_t = default_workers())]
    pub workers: usize,
    /// Entries per sieve segment (at least 65536)
    #[arg(long, global = true, default_value_t = DEFAULT_SEGMENT_SIZE)]
    pub segment_size: usize,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format [default: json for witness, csv otherwise]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// φ, ψ, their compositions, I(n) and K(n) for one n
    Compute {
        #[arg(long, value_parser = parse_natural)]
        n: u64,
    },
    /// c₀ and the Mertens products up to a prime cutoff
    Constants {
        #[arg(long, value_parser = parse_natural, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// Average-order sweep over n ≤ x, one row per checkpoint
    Average {
        #[arg(long, value_parser = parse_natural)]
        x: u64,
        /// Comma-separated increasing checkpoints [default: x]
        #[arg(long, value_parser = parse_natural, value_delimiter = ',')]
        checkpoints: Vec<u64>,
        /// Constant in g(x) = c1·log₂x/log₃x
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        /// Constant in the ω > b3·log₂²x diagnostic
        #[arg(long, default_value_t = 4.0 * std::f64::consts::E.powi(3) * 1.1)]
        b3: f64,
    },
    /// Histogram of normalized I and K over √x < n ≤ x
    Density {
        #[arg(long, value_parser = parse_natural, default_value_t = 1_000_000)]
        x: u64,
    },
    /// The P ≡ 1, Q ≡ −1 (mod lcm(1..x)) construction
    Witness {
        #[arg(long, value_parser = parse_natural)]
        x: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Miller–Rabin rounds above 2^64
        #[arg(long, default_value_t = DEFAULT_ROUNDS)]
        rounds: u32,
    },
    /// S(x, m) = Σ 1/q over primes q ≤ x with m | q + 1
    Sumprog {
        #[arg(long, value_parser = parse_natural)]
        x: u64,
        #[arg(long, value_parser = parse_natural)]
        m: u64,
    },
}

/// What to run.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Compute { n: u64 },
    Constants { cutoff: u64 },
    Average { x: u64, checkpoints: Vec<u64> },
    Density { x: u64 },
    Witness { x: u64 },
    Sumprog { x: u64, m: u64 },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub c1: f64,
    pub b3: f64,
    pub rounds: u32,
    pub mode: WitnessMode,
    pub segment_size: usize,
    pub workers: usize,
    pub out_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let defaults = SweepConfig::default();
        let mut cfg = RunConfig {
            task: Task::Compute { n: 1 },
            c1: defaults.c1,
            b3: defaults.b3,
            rounds: DEFAULT_ROUNDS,
            mode: WitnessMode::Exact,
            segment_size: cli.common.segment_size,
            workers: cli.common.workers,
            out_path: cli.common.out,
            format: cli.common.format.unwrap_or(Format::Csv),
        };
        cfg.task = match cli.command {
            Command::Compute { n } => Task::Compute { n },
            Command::Constants { cutoff } => Task::Constants { cutoff },
            Command::Average { x, checkpoints, c1, b3 } => {
                cfg.c1 = c1;
                cfg.b3 = b3;
                Task::Average { x, checkpoints }
            }
            Command::Density { x } => Task::Density { x },
            Command::Witness { x, mode, rounds } => {
                cfg.mode = mode.into();
                cfg.rounds = rounds;
                cfg.format = cli.common.format.unwrap_or(Format::Json);
                Task::Witness { x }
            }
            Command::Sumprog { x, m } => Task::Sumprog { x, m },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::argument("--workers must be at least 1"));
        }
        if self.segment_size < MIN_SEGMENT_SIZE {
            return Err(Error::argument(format!("--segment-size must be at least {MIN_SEGMENT_SIZE}")));
        }
        if !(self.c1 > 0.0) || !(self.b3 > 0.0) {
            return Err(Error::argument("--c1 and --b3 must be positive"));
        }
        if self.rounds == 0 {
            return Err(Error::argument("--rounds must be at least 1"));
        }
        if let Task::Average { checkpoints, .. } = &self.task {
            if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::argument("--checkpoints must be strictly increasing"));
            }
        }
        Ok(())
    }

    fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            c1: self.c1,
            b3: self.b3,
            segment_size: self.segment_size,
            ..SweepConfig::default()
        }
    }
}

/// Runs the task on a pool of `workers` threads and returns the artifact.
pub fn run(cfg: &RunConfig) -> Result<Vec<u8>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::resource(format!("cannot start worker pool: {e}")))?;
    let text = pool.install(|| dispatch(cfg))?;
    Ok(text.into_bytes())
}

fn dispatch(cfg: &RunConfig) -> Result<String> {
    match &cfg.task {
        Task::Compute { n } => compute(*n, cfg.format),
        Task::Constants { cutoff } => constants(*cutoff, cfg.format),
        Task::Average { x, checkpoints } => {
            let report = sweep_report(*x, checkpoints, &cfg.sweep_config())?;
            Ok(match cfg.format {
                Format::Csv => report.to_csv(),
                Format::Json => to_json_text(&serde_json::to_value(&report).expect("serializable")),
            })
        }
        Task::Density { x } => {
            let hist = density_histogram(*x, &cfg.sweep_config())?;
            Ok(match cfg.format {
                Format::Csv => hist.to_csv(),
                Format::Json => to_json_text(&serde_json::to_value(&hist).expect("serializable")),
            })
        }
        Task::Witness { x } => {
            let wc = WitnessConfig {
                rounds: cfg.rounds,
                ..WitnessConfig::default()
            };
            let report = construct_witness(*x, cfg.mode, &wc)?;
            Ok(render(&report.to_json(), cfg.format))
        }
        Task::Sumprog { x, m } => {
            let s = prog_recip_sum(*x, *m)?;
            Ok(match cfg.format {
                Format::Csv => format!(
                    "x,m,S,normalized\n{x},{m},{},{}\n",
                    format_f64_17(s.sum),
                    format_f64_17(s.normalized)
                ),
                Format::Json => to_json_text(&json!({
                    "x": x, "m": m, "S": s.sum, "normalized": s.normalized,
                })),
            })
        }
    }
}

fn compute(n: u64, format: Format) -> Result<String> {
    let c = FactorContext::without_table().compositions(n)?;
    let int = |v: &BigUint| (v.to_string(), v.to_f64().unwrap_or(f64::INFINITY));
    let ratio = |r: ExactRatio| (r.to_string(), r.to_f64());
    let rows = [
        ("n", int(&BigUint::from(n))),
        ("phi(n)", int(c.phi_n.value())),
        ("psi(n)", int(c.psi_n.value())),
        ("phi(phi(n))", int(&c.phi_phi)),
        ("psi(phi(n))", int(&c.psi_phi)),
        ("phi(psi(n))", int(&c.phi_psi)),
        ("I(n)", ratio(c.i())),
        ("K(n)", ratio(c.k())),
    ];
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("quantity,exact,decimal\n");
            for (k, (v, f)) in &rows {
                out.push_str(&format!("{k},{v},{}\n", format_f64_17(*f)));
            }
            out
        }
        Format::Json => {
            let mut m = Map::new();
            for (k, (v, f)) in rows {
                m.insert(k.to_string(), json!({ "exact": v, "decimal": f }));
            }
            to_json_text(&Value::Object(m))
        }
    })
}

fn constants(cutoff: u64, format: Format) -> Result<String> {
    let c = c0(cutoff)?;
    let (lo, hi) = c.interval();
    let minus = mertens_minus(cutoff)?;
    let plus = mertens_plus(cutoff)?;
    let rows = [
        ("euler_gamma", euler_gamma()),
        ("six_over_pi_squared", six_over_pi_squared()),
        ("leading_constant", leading_constant()),
        ("c0", c.value),
        ("c0_tail_bound", c.tail_bound),
        ("c0_lower", lo),
        ("c0_upper", hi),
        ("largest_prime", c.cutoff as f64),
        ("mertens_minus", minus.product.value),
        ("mertens_minus_predicted", minus.predicted),
        ("mertens_minus_ratio", minus.ratio()),
        ("mertens_plus", plus.product.value),
        ("mertens_plus_predicted", plus.predicted),
        ("mertens_plus_ratio", plus.ratio()),
        ("mertens_product", minus.product.value * plus.product.value),
    ];
    Ok(match format {
        Format::Csv => {
            let mut out = format!("quantity,value\ncutoff,{cutoff}\n");
            for (k, v) in rows {
                out.push_str(&format!("{k},{}\n", format_f64_17(v)));
            }
            out
        }
        Format::Json => {
            let mut m = Map::new();
            m.insert("cutoff".into(), json!(cutoff));
            for (k, v) in rows {
                m.insert(k.into(), json!(v));
            }
            to_json_text(&Value::Object(m))
        }
    })
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// JSON as-is, or flattened to `key,value` lines with dotted keys.
fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => to_json_text(v),
        Format::Csv => {
            let mut out = String::from("key,value\n");
            flatten(v, "", &mut out);
            out
        }
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, inner) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(inner, &key, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
        Value::Null => out.push_str(&format!("{prefix},\n")),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}

/// Parses `args`, runs, writes the artifact, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let bytes = run(&cfg)?;
        write_output(cfg.out_path.as_ref(), &bytes)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| Error::resource(format!("cannot write output: {e}"));
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).map_err(io)?;
            stdout.flush().map_err(io)
        }
    }
}

//! Command-line front end for the `dirfp` binary.
//!
//! Every command writes one table, as CSV (default) or as a JSON array of
//! objects with the same keys. Floats in CSV carry 17 significant digits.
//!
//! Exit codes: `0` success, `1` verification failure or disagreement between
//! methods, `2` usage or domain error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::arith::{divisor_count_of, is_prime, isqrt, next_prime_at_least};
use crate::bilinear::{count_bruteforce, count_fast};
use crate::charsums::{acz_reference, parity_moments};
use crate::directions::{directions_fp_bruteforce, directions_fp_fast};
use crate::equidist::{estfrac_survey, sample_moduli, DEFAULT_SEED};
use crate::special::{curve, density, predict, Lambda};
use crate::verify::{run_suite, side_for, Suite};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dirfp", version, about = "Directions of [n]x[n] over F_p and related counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (default: one per core). Never changes any output value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for sampled moduli (SplitMix64).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fast,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Directions,
    Nsolutions,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of directions determined by [n]^2 in F_p^2.
    Dircount(InstanceArgs),
    /// Number of solutions of ad + bc = p in [n]^4.
    Nsolve(InstanceArgs),
    /// The density D(λ) next to λ² on a grid over (0, 1.2].
    Curve {
        #[arg(long, default_value_t = 0.01)]
        grid: f64,
    },
    /// Error terms over one prime per decade.
    Sweep(SweepArgs),
    /// Even and odd fourth moments of character sums.
    Moments {
        #[arg(long)]
        p: u64,
        /// Side lengths (default floor(√p) - 1).
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
    },
    /// Discrepancy of p·inv_b(a)/b mod 1.
    Equidist {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        b: Vec<u64>,
        /// Additional moduli drawn from [2, √p] with the seed.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Small)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u64>,
    /// Shape parameters in (0, 1]; each gives n = floor(λ√p).
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Vec<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Fast)]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1_000)]
    pub pmin: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub pmax: u64,
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Quantity::Directions)]
    pub quantity: Quantity,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

/// Column names and rows of one command's output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(headers: &'static [&'static str]) -> Self {
        Table { headers, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(self.headers)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .headers
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &rows).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

pub const DIRCOUNT_HEADERS: &[&str] =
    &["method", "p", "n", "lambda", "count_fp", "predicted", "abs_error", "rel_error"];
pub const NSOLVE_HEADERS: &[&str] =
    &["method", "p", "n", "lambda", "value", "predicted", "abs_error", "rel_error"];
pub const CURVE_HEADERS: &[&str] = &["lambda", "D_lambda", "lambda_squared"];
pub const SWEEP_HEADERS: &[&str] = &[
    "p",
    "lambda",
    "n",
    "exact",
    "main_term",
    "error",
    "error_over_p3_4",
    "error_over_sqrt_p",
];
pub const MOMENTS_HEADERS: &[&str] = &[
    "p",
    "n",
    "n1",
    "n_minus1",
    "even",
    "odd",
    "odd_over_even",
    "main_n1",
    "main_parity",
    "even_dev_over_n2",
    "odd_dev_over_n2",
];
pub const EQUIDIST_HEADERS: &[&str] =
    &["p", "b", "tau_b", "x", "len", "discrepancy", "et_bound", "normalizer", "ratio"];
pub const VERIFY_HEADERS: &[&str] = &["id", "name", "passed", "detail"];

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Tables go to `out` unless `--out` is given;
/// diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::Failed(msg)) => {
            let _ = writeln!(err, "dirfp: {msg}");
            EXIT_FAILURE
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Lib(e @ Error::Consistency(_)) => (EXIT_FAILURE, e.to_string()),
                Failure::Lib(e) => (EXIT_USAGE, e.to_string()),
                Failure::Io(e) => (EXIT_USAGE, e.to_string()),
            };
            let _ = writeln!(err, "dirfp: {msg}");
            code
        }
    }
}

enum Status {
    Ok,
    Failed(String),
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Status, Failure> {
    let (table, status) = match cli.threads {
        Some(0) => return Err(usage("--threads must be positive")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| usage(e.to_string()))?
            .install(|| build_table(cli))?,
        None => build_table(cli)?,
    };
    match &cli.out {
        Some(path) => {
            let mut f = io::BufWriter::new(File::create(path)?);
            table.write(cli.format, &mut f)?;
            f.flush()?;
        }
        None => table.write(cli.format, out)?,
    }
    Ok(status)
}

fn build_table(cli: &Cli) -> Result<(Table, Status), Failure> {
    match &cli.command {
        Command::Dircount(args) => instances(args, true),
        Command::Nsolve(args) => instances(args, false),
        Command::Curve { grid } => Ok((curve_table(*grid)?, Status::Ok)),
        Command::Sweep(args) => Ok((sweep_table(args)?, Status::Ok)),
        Command::Moments { p, n } => Ok((moments_table(*p, n)?, Status::Ok)),
        Command::Equidist { p, b, samples } => {
            Ok((equidist_table(*p, b, *samples, cli.seed)?, Status::Ok))
        }
        Command::Verify { suite } => Ok(verify_table(*suite)),
    }
}

fn ensure_prime(p: u64) -> Result<(), Failure> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p).into());
    }
    Ok(())
}

fn check_lambdas(lambdas: &[f64]) -> Result<(), Failure> {
    match lambdas.iter().find(|&&l| !(l > 0.0 && l <= 1.0)) {
        Some(l) => Err(usage(format!("lambda {l} is outside (0, 1]"))),
        None => Ok(()),
    }
}

fn sides(args: &InstanceArgs) -> Result<Vec<u64>, Failure> {
    check_lambdas(&args.lambdas)?;
    let mut ns = args.n.clone();
    ns.extend(args.lambdas.iter().map(|&l| side_for(args.p, l)));
    if ns.is_empty() {
        return Err(usage("give --n or --lambdas"));
    }
    if ns.contains(&0) {
        return Err(usage("n must be positive"));
    }
    Ok(ns)
}

fn fast_guard(p: u64, n: u64) -> Result<(), Failure> {
    if n.saturating_mul(n) > p {
        return Err(usage(format!(
            "n = {n} is not below sqrt(p) for p = {p}; use --method brute"
        )));
    }
    Ok(())
}

fn instances(args: &InstanceArgs, directions: bool) -> Result<(Table, Status), Failure> {
    let p = args.p;
    ensure_prime(p)?;
    let ns = sides(args)?;
    let methods: &[&str] = match args.method {
        MethodArg::Fast => &["fast"],
        MethodArg::Brute => &["brute"],
        MethodArg::Both => &["fast", "brute"],
    };
    let mut table = Table::new(if directions { DIRCOUNT_HEADERS } else { NSOLVE_HEADERS });
    let mut mismatches = Vec::new();
    for n in ns {
        let lambda = Lambda::from_instance(p, n)?;
        let predicted = if directions {
            density(lambda) * p as f64
        } else {
            predict(p, n)?.nsolutions_main
        };
        let mut values = Vec::new();
        for &m in methods {
            let value = match (directions, m) {
                (true, "fast") => directions_fp_fast(p, n)?.count_fp,
                (true, _) => directions_fp_bruteforce(p, n)?,
                (false, "fast") => {
                    fast_guard(p, n)?;
                    count_fast(p, n)?.value
                }
                (false, _) => count_bruteforce(p, n)?.value,
            };
            values.push(value);
            let abs = (value as f64 - predicted).abs();
            table.push(vec![
                Cell::Text(m.into()),
                Cell::Int(p),
                Cell::Int(n),
                Cell::Float(lambda.value()),
                Cell::Int(value),
                Cell::Float(predicted),
                Cell::Float(abs),
                Cell::Float(if predicted == 0.0 && abs == 0.0 { 0.0 } else { abs / predicted }),
            ]);
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            mismatches.push(format!("n = {n}: fast {} vs brute {}", values[0], values[1]));
        }
    }
    let status = if mismatches.is_empty() {
        Status::Ok
    } else {
        Status::Failed(format!("methods disagree at p = {p}: {}", mismatches.join("; ")))
    };
    Ok((table, status))
}

fn curve_table(step: f64) -> Result<Table, Failure> {
    let mut table = Table::new(CURVE_HEADERS);
    for r in curve(step)? {
        table.push(vec![
            Cell::Float(r.lambda),
            Cell::Float(r.d_lambda),
            Cell::Float(r.lambda_squared),
        ]);
    }
    Ok(table)
}

/// `next_prime_at_least(10^k)` for each power of ten in `[pmin, pmax]`, or
/// `next_prime_at_least(pmin)` when the range contains none.
pub fn sweep_primes(pmin: u64, pmax: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(1u64), |&d| d.checked_mul(10))
        .filter(|&d| d >= pmin && d <= pmax)
        .map(next_prime_at_least)
        .filter(|&p| p >= 3)
        .collect();
    if out.is_empty() {
        out.push(next_prime_at_least(pmin.max(3)));
    }
    out
}

fn sweep_table(args: &SweepArgs) -> Result<Table, Failure> {
    if args.lambdas.is_empty() {
        return Err(usage("--lambdas must list at least one value"));
    }
    check_lambdas(&args.lambdas)?;
    if args.pmin > args.pmax {
        return Err(usage("--pmin exceeds --pmax"));
    }
    let mut table = Table::new(SWEEP_HEADERS);
    for p in sweep_primes(args.pmin, args.pmax) {
        let pf = p as f64;
        for &l in &args.lambdas {
            let n = side_for(p, l);
            if n < 2 {
                return Err(usage(format!("lambda {l} gives n = {n} < 2 at p = {p}")));
            }
            let prediction = predict(p, n)?;
            let (exact, main) = match args.quantity {
                Quantity::Directions => (directions_fp_fast(p, n)?.count_fp, prediction.directions_main),
                Quantity::Nsolutions => (count_fast(p, n)?.value, prediction.nsolutions_main),
            };
            let error = exact as f64 - main;
            table.push(vec![
                Cell::Int(p),
                Cell::Float(l),
                Cell::Int(n),
                Cell::Int(exact),
                Cell::Float(main),
                Cell::Float(error),
                Cell::Float(error / pf.powf(0.75)),
                Cell::Float(error / pf.sqrt()),
            ]);
        }
    }
    Ok(table)
}

fn moments_table(p: u64, ns: &[u64]) -> Result<Table, Failure> {
    ensure_prime(p)?;
    let ns = if ns.is_empty() { vec![isqrt(p).saturating_sub(1).max(1)] } else { ns.to_vec() };
    let mut table = Table::new(MOMENTS_HEADERS);
    for n in ns {
        let r = parity_moments(p, n)?;
        let (full, half) = acz_reference(p, n).unwrap_or((f64::NAN, f64::NAN));
        let n2 = (n * n) as f64;
        table.push(vec![
            Cell::Int(p),
            Cell::Int(n),
            Cell::Int(r.n1),
            Cell::Int(r.n_minus1),
            Cell::Float(r.even_moment),
            Cell::Float(r.odd_moment),
            Cell::Float(r.odd_moment / r.even_moment),
            Cell::Float(full),
            Cell::Float(half),
            Cell::Float((r.even_moment - half) / n2),
            Cell::Float((r.odd_moment - half) / n2),
        ]);
    }
    Ok(table)
}

fn equidist_table(p: u64, bs: &[u64], samples: usize, seed: u64) -> Result<Table, Failure> {
    ensure_prime(p)?;
    let mut moduli = bs.to_vec();
    if samples > 0 {
        moduli.extend(sample_moduli(p, samples, seed)?);
    }
    if moduli.is_empty() {
        return Err(usage("give --b or --samples"));
    }
    let mut table = Table::new(EQUIDIST_HEADERS);
    for r in estfrac_survey(p, &moduli)? {
        debug_assert_eq!(r.tau_b, divisor_count_of(r.b));
        for row in &r.rows {
            table.push(vec![
                Cell::Int(p),
                Cell::Int(r.b),
                Cell::Int(r.tau_b),
                Cell::Float(row.x),
                Cell::Int(row.len),
                Cell::Float(row.discrepancy),
                Cell::Float(row.et_bound),
                Cell::Float(r.normalizer),
                Cell::Float(row.ratio),
            ]);
        }
    }
    Ok(table)
}

fn verify_table(suite: Suite) -> (Table, Status) {
    let mut table = Table::new(VERIFY_HEADERS);
    let mut failed = Vec::new();
    for o in run_suite(suite) {
        if !o.passed {
            failed.push(format!("{} ({})", o.id, o.name));
        }
        table.push(vec![
            Cell::Int(o.id as u64),
            Cell::Text(o.name.into()),
            Cell::Bool(o.passed),
            Cell::Text(o.detail),
        ]);
    }
    let status = if failed.is_empty() {
        Status::Ok
    } else {
        Status::Failed(format!("failed criteria: {}", failed.join(", ")))
    };
    (table, status)
}

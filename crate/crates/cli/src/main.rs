//! `nsphere`: sample points, run the statistical suites and time the samplers.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 bad flags,
//! 3 the method does not support the requested dimension, 4 output not writable.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};

use nsphere::bench::{self, BenchRecord, GridConfig};
use nsphere::verify::suites::{self, Suite, SuiteConfig, MIN_SUITE_SAMPLES};
use nsphere::{RngKind, RngStream, Sampler, SamplerKind};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_UNWRITABLE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "nsphere", version, about = "Uniform sampling on the n-sphere and in the n-ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw points and print them one per line
    Sample(SampleArgs),
    /// Run a goodness-of-fit battery and print one CSV row per test
    Verify(VerifyArgs),
    /// Time samplers over the dimension schedule and write CSV
    Bench(BenchArgs),
    /// Print the benchmark dimension schedule, one n per line
    Schedule(ScheduleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(clap::Args, Debug)]
struct StreamArgs {
    /// Random number generator (default: 64-bit Mersenne Twister)
    #[arg(long, default_value = "mt64", hide_default_value = true, value_parser = rng_parser())]
    rng: RngKind,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(clap::Args, Debug)]
struct SampleArgs {
    #[arg(long, value_parser = method_parser())]
    method: SamplerKind,
    /// Dimension of the ambient space
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[command(flatten)]
    stream: StreamArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = PossibleValuesParser::new(Suite::ALL.map(Suite::tag)).map(|s| s.parse::<Suite>().expect("listed suite")))]
    suite: Suite,
    /// Samples per test (at least 1000)
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(MIN_SUITE_SAMPLES as u64..))]
    samples: u64,
    #[command(flatten)]
    stream: StreamArgs,
    /// Per-test significance level
    #[arg(long, default_value_t = nsphere::verify::DEFAULT_ALPHA, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    /// Comma-separated methods (default: the Gaussian baseline and the three sorted-pair variants)
    #[arg(long, value_delimiter = ',', value_parser = method_parser(), hide_default_value = true,
          default_value = "muller,sorted-basic,sorted-bucket,sorted-insitu")]
    methods: Vec<SamplerKind>,
    /// Comma-separated generators (default: all)
    #[arg(long, value_delimiter = ',', value_parser = rng_parser(), hide_default_value = true,
          default_value = "mt32,mt64,lcg48,mt64x")]
    rngs: Vec<RngKind>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    max_n: u64,
    /// Vectors per cell; by default max(1000, 10^7/n)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    vectors: Option<u64>,
    /// Timed repetitions per cell; the median is reported
    #[arg(long, default_value_t = bench::DEFAULT_REPETITIONS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct ScheduleArgs {
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(2..))]
    max_n: u64,
}

fn method_parser() -> impl TypedValueParser<Value = SamplerKind> {
    PossibleValuesParser::new(SamplerKind::ALL.map(SamplerKind::tag))
        .map(|s| s.parse::<SamplerKind>().expect("listed method"))
}

fn rng_parser() -> impl TypedValueParser<Value = RngKind> {
    PossibleValuesParser::new(RngKind::ALL.map(RngKind::tag))
        .map(|s| s.parse::<RngKind>().expect("listed generator"))
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1), got {a}"))
    }
}

enum Failure {
    Code(u8, String),
    Io(Option<PathBuf>, io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(None, e)
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Io(Some(p.to_path_buf()), e)),
    }
}

fn write_point(out: &mut dyn Write, coords: &[f64], format: Format) -> io::Result<()> {
    let (open, close) = match format {
        Format::Csv => ("", ""),
        Format::Jsonl => ("[", "]"),
    };
    out.write_all(open.as_bytes())?;
    for (i, x) in coords.iter().enumerate() {
        if i > 0 {
            out.write_all(b",")?;
        }
        write!(out, "{x:.16e}")?;
    }
    out.write_all(close.as_bytes())?;
    out.write_all(b"\n")
}

fn cmd_sample(args: SampleArgs) -> Result<(), Failure> {
    let mut sampler = Sampler::<f64>::new(args.method, args.n)
        .map_err(|e| Failure::Code(EXIT_UNSUPPORTED, e.to_string()))?;
    let mut out = open_output(args.out.as_deref())?;
    let mut rng = RngStream::new(args.stream.rng, args.stream.seed);
    let mut point = vec![0.0f64; args.n];
    for _ in 0..args.count {
        sampler.fill(&mut rng, &mut point);
        write_point(&mut *out, &point, args.format)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let mut out = open_output(args.out.as_deref())?;
    let config = SuiteConfig {
        samples: args.samples as usize,
        rng: args.stream.rng,
        seed: args.stream.seed,
        alpha: args.alpha,
    };
    let outcome = suites::run_suite(args.suite, &config)
        .map_err(|e| Failure::Code(EXIT_USAGE, e.to_string()))?;
    writeln!(out, "{}", suites::CSV_HEADER)?;
    for row in &outcome.rows {
        writeln!(out, "{}", row.csv())?;
    }
    out.flush()?;
    let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
    eprintln!(
        "{}: {} tests, {} below alpha = {}, allowance {}: {verdict}",
        args.suite,
        outcome.rows.len(),
        outcome.failures(),
        args.alpha,
        outcome.allowance()
    );
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Code(EXIT_VERIFY_FAILED, String::new()))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let mut out = open_output(args.out.as_deref())?;
    let config = GridConfig {
        vectors: args.vectors.map(|v| v as usize),
        repetitions: args.reps as usize,
    };
    eprintln!("{:<14} {:<6} {:>7} {:>10} {:>14} {:>12}", "method", "rng", "n", "vectors", "ns/component", "draws/comp");
    let report = |r: &BenchRecord| {
        eprintln!(
            "{:<14} {:<6} {:>7} {:>10} {:>14.3} {:>12.4}",
            r.method.tag(),
            r.rng.tag(),
            r.n,
            r.vectors,
            r.seconds_per_component * 1e9,
            r.rng_draws_per_component
        );
    };
    let records = bench::run_grid_with(
        &args.methods,
        &args.rngs,
        args.max_n as usize,
        config,
        args.seed,
        report,
    )
    .map_err(|e| Failure::Code(EXIT_USAGE, e.to_string()))?;
    writeln!(out, "{}", bench::CSV_HEADER)?;
    for r in &records {
        writeln!(out, "{}", r.csv())?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_schedule(args: ScheduleArgs) -> Result<(), Failure> {
    let sched = bench::schedule(args.max_n as usize)
        .map_err(|e| Failure::Code(EXIT_USAGE, e.to_string()))?;
    let mut out = open_output(None)?;
    for n in sched.values {
        writeln!(out, "{n}")?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Schedule(a) => cmd_schedule(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Code(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
        Err(Failure::Io(path, e)) => {
            match path {
                Some(p) => eprintln!("error: cannot write {}: {e}", p.display()),
                None => eprintln!("error: {e}"),
            }
            ExitCode::from(EXIT_UNWRITABLE)
        }
    }
}

use clap::{Parser, Subcommand, ValueEnum};
use lacunary::benchgen::bench_generate;
use lacunary::output::{format_report, report_json};
use lacunary::{bounded_degree_factors, parse_poly, verify_report, Error, FactorConfig, Strategy};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lacunary",
    version,
    about = "Small factors of huge sparse polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every irreducible factor of degree at most d.
    Factor(FactorArgs),
    /// Print a generated benchmark polynomial.
    Generate {
        /// Scale in (0, 1], e.g. 1/100 or 0.01.
        #[arg(long, default_value = "1/100")]
        bench: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Variant,
    Lenstra,
    Paranoid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct FactorArgs {
    /// Degree bound.
    #[arg(short = 'd', long = "degree")]
    degree: usize,
    #[arg(long, value_enum, default_value = "variant")]
    strategy: StrategyArg,
    /// Append the timing table.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest dense span ever materialized (LACUNARY_MAX_SPAN takes precedence).
    #[arg(long)]
    max_span: Option<usize>,
    /// Check the result independently before printing it.
    #[arg(long)]
    verify: bool,
    /// Factor a generated benchmark polynomial of this scale instead of reading input.
    #[arg(long)]
    bench: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// A file containing the polynomial, or the polynomial itself; standard input if absent.
    input: Option<String>,
}

fn parse_scale(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("invalid scale '{s}'");
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let denom = BigInt::from(10).pow(frac.len() as u32);
        return Ok(BigRational::new(digits, denom));
    }
    s.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

fn read_input(arg: Option<&str>) -> Result<String, String> {
    match arg {
        Some(a) if Path::new(a).is_file() => {
            std::fs::read_to_string(a).map_err(|e| format!("cannot read {a}: {e}"))
        }
        Some(a) => Ok(a.to_string()),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(s)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Input(_) | Error::UndefinedBounds => EXIT_PARSE,
        e if e.is_resource_limit() => EXIT_RESOURCE,
        _ => EXIT_INTERNAL,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn max_span(flag: Option<usize>) -> Result<usize, String> {
    match std::env::var("LACUNARY_MAX_SPAN") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("invalid LACUNARY_MAX_SPAN '{v}'")),
        Err(_) => Ok(flag.unwrap_or(lacunary::sparse::DEFAULT_MAX_SPAN)),
    }
}

fn factor(args: FactorArgs) -> ExitCode {
    let f = if let Some(scale) = &args.bench {
        let scale = match parse_scale(scale) {
            Ok(s) => s,
            Err(e) => return fail(EXIT_PARSE, e),
        };
        match bench_generate(&scale, args.seed) {
            Ok(f) => f.to_rational(),
            Err(e) => return fail(exit_code(&e), e),
        }
    } else {
        let text = match read_input(args.input.as_deref()) {
            Ok(t) => t,
            Err(e) => return fail(EXIT_PARSE, e),
        };
        match parse_poly(&text) {
            Ok(f) => f,
            Err(e) => return fail(EXIT_PARSE, e),
        }
    };
    let max_span = match max_span(args.max_span) {
        Ok(m) => m,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let cfg = FactorConfig {
        strategy: match args.strategy {
            StrategyArg::Variant => Strategy::Variant,
            StrategyArg::Lenstra => Strategy::Lenstra,
            StrategyArg::Paranoid => Strategy::Paranoid,
        },
        max_span,
        ..FactorConfig::default()
    };
    let (report, stats) = match bounded_degree_factors(&f, args.degree, &cfg) {
        Ok(r) => r,
        Err(e) => return fail(exit_code(&e), e),
    };
    if args.verify && !verify_report(&f, &report) {
        return fail(EXIT_INTERNAL, "verification failed");
    }
    let stats = args.stats.then_some(&stats);
    match args.format {
        Format::Text => print!("{}", format_report(&report, stats)),
        Format::Json => println!("{}", report_json(&report, stats)),
    }
    if args.verify {
        eprintln!("verified");
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Factor(args) => factor(args),
        Command::Generate { bench, seed } => {
            let scale = match parse_scale(&bench) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            match bench_generate(&scale, seed) {
                Ok(f) => {
                    println!("{f}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(exit_code(&e), e),
            }
        }
    }
}

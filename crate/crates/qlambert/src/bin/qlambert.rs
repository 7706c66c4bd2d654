//! Command-line front end: expand DSL expressions, verify catalog
//! identities, explore the transformation group, print divisor tables.
//!
//! Exit codes: 0 success, 1 identity verification failure, 2 usage or
//! parse/evaluation errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qlambert::catalog::load_catalog;
use qlambert::dsl::{self, Bindings};
use qlambert::error::Error;
use qlambert::group;
use qlambert::numtheory::sigma;
use qlambert::report;
use qlambert::scalar::Rational;
use qlambert::verify::{verify_all, Status, VerifyOptions};
use qlambert::Param;

#[derive(Parser)]
#[command(name = "qlambert", version, about = "Exact q-series engine and identity verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a DSL expression and print its coefficients q^0..q^D
    Expand(ExpandArgs),
    /// Verify catalog identities by randomized exact coefficient comparison
    Verify(VerifyArgs),
    /// Print the order-24 transformation group with shortest words
    Group(GroupArgs),
    /// Print a CSV table of the divisor power sum sigma_k(n)
    Sigma(SigmaArgs),
}

#[derive(Args)]
struct ExpandArgs {
    /// Expression, e.g. "Y(q)" or "L($x, q; q^2)"
    expr: String,
    /// Truncation degree D
    #[arg(long, default_value_t = 60)]
    degree: usize,
    /// Bind a parameter: name=c (rational p/r) or name=c,e for c*q^e
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a single identity by id
    #[arg(long, conflicts_with = "all")]
    id: Option<String>,
    /// Verify every catalog identity
    #[arg(long)]
    all: bool,
    /// Working degree (default: each record's own)
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value_t = 5)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Catalog file (flag beats the QLAMBERT_CATALOG environment variable)
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SigmaArgs {
    /// Divisor power k in sigma_k
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Table upper bound (inclusive)
    #[arg(long, default_value_t = 30)]
    max: u64,
}

fn parse_binding(spec: &str) -> Result<(String, Param<Rational>), Error> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--bind expects name=value, got `{spec}`")))?;
    let (coeff_src, exp) = match value.split_once(',') {
        None => (value, 0usize),
        Some((c, e)) => {
            let exp = e
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad exponent in `{spec}`")))?;
            (c, exp)
        }
    };
    let coeff: Rational = coeff_src.trim().parse()?;
    Ok((name.trim().to_string(), Param::new(coeff, exp)))
}

fn cmd_expand(args: &ExpandArgs) -> Result<(), Error> {
    let expr = dsl::parse(&args.expr)?;
    let mut bindings = Bindings::default();
    for spec in &args.bind {
        let (name, param) = parse_binding(spec)?;
        bindings.params.insert(name, param);
    }
    let series = dsl::eval(&expr, args.degree, &bindings)?;
    match args.format {
        Format::Text => println!("{}", series.coeff_strings().join(", ")),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&series.coeff_strings()).expect("strings serialize")
        ),
        Format::Csv => {
            println!("k,coeff");
            for (k, c) in series.coeff_strings().iter().enumerate() {
                println!("{k},{c}");
            }
        }
    }
    Ok(())
}

fn catalog_path(args: &VerifyArgs) -> Option<PathBuf> {
    args.catalog
        .clone()
        .or_else(|| std::env::var_os("QLAMBERT_CATALOG").map(PathBuf::from))
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let records = load_catalog(catalog_path(args).as_deref())?;
    let selected: Vec<_> = match (&args.id, args.all) {
        (Some(id), _) => {
            let found: Vec<_> = records.iter().filter(|r| &r.id == id).cloned().collect();
            if found.is_empty() {
                return Err(Error::Config(format!("no catalog identity named `{id}`")));
            }
            found
        }
        (None, true) => records,
        (None, false) => {
            return Err(Error::Config(
                "pass --all or --id <name> to select identities".into(),
            ))
        }
    };
    let opts = VerifyOptions {
        degree: args.degree,
        trials: args.trials,
        seed: args.seed,
    };
    let reports = verify_all(&selected, &opts);
    match args.format {
        Format::Text => print!("{}", report::to_text(&reports)),
        Format::Json => println!("{}", report::to_json(&reports)),
        Format::Csv => print!("{}", report::to_csv(&reports)),
    }
    Ok(reports.iter().all(|r| r.status == Status::Pass))
}

fn cmd_group(args: &GroupArgs) {
    let elements = group::closure();
    let s = group::Monomial4::s();
    let t = group::Monomial4::t();
    let st = s.compose(&t);
    match args.format {
        Format::Json => {
            let rows: Vec<BTreeMap<&str, String>> = elements
                .iter()
                .map(|e| {
                    BTreeMap::from([
                        (
                            "word",
                            if e.word.is_empty() {
                                "I".to_string()
                            } else {
                                e.word.clone()
                            },
                        ),
                        ("image", e.element.to_string()),
                    ])
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&rows).expect("rows serialize")
            );
        }
        _ => {
            println!("order: {}", elements.len());
            for e in &elements {
                let word = if e.word.is_empty() { "I" } else { &e.word };
                println!("{word:<14} {}", e.element);
            }
            println!("S^2 = I: {}", ok(s.compose(&s).is_identity()));
            println!("T^2 = I: {}", ok(t.compose(&t).is_identity()));
            println!("(ST)^12 = I: {}", ok(st.order(24) == Some(12)));
            println!("order of ST: {}", st.order(24).unwrap());
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn cmd_sigma(args: &SigmaArgs) -> Result<(), Error> {
    if args.max < 1 {
        return Err(Error::Config("--max must be at least 1".into()));
    }
    println!("n,sigma_{}(n)", args.k);
    for n in 1..=args.max {
        println!("{n},{}", sigma(args.k, n));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Expand(args) => cmd_expand(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Group(args) => {
            cmd_group(args);
            Ok(true)
        }
        Command::Sigma(args) => cmd_sigma(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

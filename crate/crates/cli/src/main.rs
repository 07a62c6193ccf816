//! `otype`: evaluate maximal order types of wpo terms.
//!
//! In expressions, `A . B` is the lexicographic product with the RIGHT
//! operand `B` as the index: pairs compare on their `B` coordinate first.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use otype::check::{counterexample_demo, Suite};
use otype::poset::DEFAULT_ENUMERATION_CAP;
use otype::term::lex_product_term_expand;
use otype::{parse_term, proof_trace, SyntaxError, WpoTerm};
use serde_json::json;

#[derive(Parser)]
#[command(name = "otype", version, about = "Maximal order types of wpo terms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output; ordinals are canonical strings.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random cases per suite (defaults to each suite's own count).
    #[arg(long, global = true)]
    cases: Option<usize>,
    /// Largest index poset `trace` will expand.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Natural offsets sampled per block when validating a witness.
    #[arg(long, global = true, default_value_t = 20)]
    rank_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print o(T) in Cantor normal form.
    Eval { expr: String },
    /// Print o(T) = delta + m and the number k of maximal elements.
    Decompose { expr: String },
    /// Compare o(A) with o(B).
    Compare { a: String, b: String },
    /// Show the recursion on a finite index: `P . Q` with Q finite.
    Trace { expr: String },
    /// Run a property suite by name, or `all`.
    Check { suite: String },
    /// Show o((w+1) . antichain(2)) against o(w+1) * o(antichain(2)).
    Counterexample,
}

enum Failure {
    Input(String),
    Resource(String),
    Suite(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Suite(_) => 1,
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        if e.is_resource_limit() {
            Failure::Resource(e.to_string())
        } else {
            let at = e.position().map(|p| format!(" (position {p})")).unwrap_or_default();
            Failure::Input(format!("{e}{at}"))
        }
    }
}

fn parse(expr: &str) -> Result<WpoTerm, Failure> {
    Ok(parse_term(expr)?)
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Eval { expr } => {
            let o = parse(expr)?.o();
            Ok(if cli.json {
                json!({ "expr": expr, "o": o }).to_string()
            } else {
                o.to_string()
            })
        }
        Command::Decompose { expr } => {
            let d = parse(expr)?.delta_mk();
            Ok(if cli.json {
                json!({ "delta": d.delta, "m": d.m.to_string(), "k": d.k.to_string() }).to_string()
            } else {
                d.to_string()
            })
        }
        Command::Compare { a, b } => {
            let (x, y) = (parse(a)?.o(), parse(b)?.o());
            let order = match x.cmp(&y) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Ok(if cli.json {
                json!({ "a": x, "b": y, "order": order }).to_string()
            } else {
                order.to_string()
            })
        }
        Command::Trace { expr } => trace(cli, expr),
        Command::Check { suite } => check(cli, suite),
        Command::Counterexample => {
            let demo = counterexample_demo(cli.rank_cap);
            let out = if cli.json {
                serde_json::to_string_pretty(&demo).expect("serializable")
            } else {
                demo.render()
            };
            if demo.holds() {
                Ok(out)
            } else {
                Err(Failure::Suite(out))
            }
        }
    }
}

fn trace(cli: &Cli, expr: &str) -> Result<String, Failure> {
    let WpoTerm::Prod(base, index) = parse(expr)? else {
        return Err(Failure::Input("trace expects a product 'P . Q'".into()));
    };
    let q = lex_product_term_expand(&index).map_err(|e| Failure::Input(format!("index must be finite: {e}")))?;
    if q.len() > cli.cap {
        return Err(Failure::Resource(format!(
            "index has {} elements, over the cap of {} (raise --cap)",
            q.len(),
            cli.cap
        )));
    }
    let tree = proof_trace(&base.o(), &q);
    Ok(if cli.json {
        json!({ "base": base.o(), "index": q.to_string(), "o": tree.value }).to_string()
    } else {
        format!("o(P) = {}, Q = {q}\n{}", base.o(), tree.render().trim_end())
    })
}

fn check(cli: &Cli, name: &str) -> Result<String, Failure> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        let s = Suite::from_name(name).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Failure::Input(format!("unknown suite '{name}'; expected all or one of {}", names.join(", ")))
        })?;
        vec![s]
    };
    let reports: Vec<_> = suites.iter().map(|s| s.run(cli.seed, cli.cases)).collect();
    let out = if cli.json {
        serde_json::to_string_pretty(&reports).expect("serializable")
    } else {
        reports.iter().map(|r| r.summary()).collect::<Vec<_>>().join("\n")
    };
    if reports.iter().all(|r| r.passed()) {
        Ok(out)
    } else {
        Err(Failure::Suite(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Suite(out) => println!("{out}"),
                Failure::Input(msg) | Failure::Resource(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

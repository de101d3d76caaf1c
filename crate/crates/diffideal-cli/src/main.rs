//! `diffideal`: exact differential-algebra analyses from the command line.
//!
//! Exit codes: 0 success, 2 precondition or input error, 1 internal error or
//! golden mismatch.

mod commands;
mod envelope;
mod problem;
mod scenario;

use clap::{Parser, Subcommand};
use commands::{render_text, CommandContext};
use diffideal::ring::{MonomialOrder, OrderKind};
use diffideal::Error;
use envelope::Envelope;
use problem::{parse_problem, Problem, ProblemOptions};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "diffideal",
    about = "Derivations, differential ideals, Darboux polynomials, and rational first integrals over Q",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Problem file declaring the ring and derivation.
    #[arg(long, global = true)]
    problem: Option<std::path::PathBuf>,

    /// Degree bound for searches (default: problem file, then
    /// DIFFIDEAL_MAX_DEG, then 2).
    #[arg(long, global = true)]
    max_deg: Option<u32>,

    /// Monomial order used for printed polynomials.
    #[arg(long, global = true, value_parser = parse_order)]
    order: Option<OrderKind>,

    /// Comma-separated rational samples for `family`.
    #[arg(long = "c", global = true)]
    c_samples: Option<String>,

    /// Multiply the derivation by the least common multiple of image
    /// denominators (reported as the clearing factor).
    #[arg(long, global = true)]
    clear_denominators: bool,

    /// Emit the full report envelope as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Rewrite the scenario golden instead of comparing.
    #[arg(long, global = true)]
    bless: bool,
}

fn parse_order(text: &str) -> Result<OrderKind, String> {
    match text {
        "lex" => Ok(OrderKind::Lex),
        "grevlex" => Ok(OrderKind::GrevLex),
        other => Err(format!("unknown order `{other}` (lex or grevlex)")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Apply the derivation to a polynomial or rational function.
    Apply { expr: String },
    /// Test whether a rational function is a constant of the derivation.
    IsConstant { expr: String },
    /// Test whether the ideal generated by the given polynomials is closed
    /// under the derivation.
    IsDiffIdeal { generators: Vec<String> },
    /// Smallest differential ideal containing the given generators.
    DiffClosure { generators: Vec<String> },
    /// Bounded-degree search for Darboux pairs (w, z) with D(w) = z w.
    Darboux,
    /// Height-one differential primes: Darboux pairs with nonzero cofactor.
    Primes,
    /// Rational first integrals from the cofactor lattice.
    FirstIntegrals,
    /// Search evidence report: primes, constants, finiteness verdict.
    Report,
    /// The ideal family (f - c g) for a known constant f/g.
    Family { f: String, g: String },
    /// The localization witness t * D(X1) and its coverage checks.
    Witness,
    /// Run a bundled scenario and compare against its golden report.
    Scenario { name: String },
}

fn resolve_max_deg(cli: &Cli, options: &ProblemOptions) -> Result<u32, Error> {
    if let Some(d) = cli.max_deg {
        return Ok(d);
    }
    if let Some(d) = options.max_deg {
        return Ok(d);
    }
    if let Ok(text) = std::env::var("DIFFIDEAL_MAX_DEG") {
        return text
            .parse()
            .map_err(|_| Error::Precondition(format!("bad DIFFIDEAL_MAX_DEG `{text}`")));
    }
    Ok(2)
}

fn load_problem(cli: &Cli) -> Result<Problem, Error> {
    let path = cli.problem.as_ref().ok_or_else(|| {
        Error::Precondition("this command needs --problem FILE".into())
    })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text, cli.clear_denominators)
}

fn context(cli: &Cli) -> Result<CommandContext, Error> {
    let problem = load_problem(cli)?;
    let kind = cli
        .order
        .or(problem.options.order)
        .unwrap_or(OrderKind::GrevLex);
    let order = MonomialOrder::of_kind(kind, problem.ring.ring());
    let max_deg = resolve_max_deg(cli, &problem.options)?;
    Ok(CommandContext {
        problem,
        order,
        max_deg,
        json: cli.json,
    })
}

fn emit(envelope: &Envelope, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope.to_json()).expect("envelope serializes")
        );
    } else {
        print!("{}", render_text(envelope));
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let start = Instant::now();
    if let Command::Scenario { name } = &cli.command {
        let (results, completeness) = scenario::run_scenario(name)?;
        let matched = scenario::check_golden(name, &results, cli.bless)?;
        let envelope = Envelope {
            command: format!("scenario {name}"),
            inputs: serde_json::json!({ "scenario": name }),
            results,
            completeness,
            timing_ms: start.elapsed().as_millis(),
        };
        emit(&envelope, cli.json);
        return Ok(if matched {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        });
    }

    let ctx = context(cli)?;
    let mut envelope = match &cli.command {
        Command::Apply { expr } => ctx.apply(expr)?,
        Command::IsConstant { expr } => ctx.is_constant(expr)?,
        Command::IsDiffIdeal { generators } => ctx.is_diff_ideal(generators)?,
        Command::DiffClosure { generators } => ctx.diff_closure(generators)?,
        Command::Darboux => ctx.darboux()?,
        Command::Primes => ctx.primes()?,
        Command::FirstIntegrals => ctx.first_integrals()?,
        Command::Report => ctx.report()?,
        Command::Family { f, g } => ctx.family(f, g, cli.c_samples.as_deref())?,
        Command::Witness => ctx.witness()?,
        Command::Scenario { .. } => unreachable!("handled above"),
    };
    envelope.timing_ms = start.elapsed().as_millis();
    emit(&envelope, ctx.json);
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for(error: &Error) -> ExitCode {
    match error {
        // Internal-consistency alarms.
        Error::ClosureCapExceeded { .. } => ExitCode::from(1),
        // Everything else is a user-facing precondition or input problem.
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            exit_code_for(&error)
        }
    }
}

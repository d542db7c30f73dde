//! `tractorcalc`: identity suites, Proca solves, boundary operators and
//! enveloping-algebra queries from the command line.
//!
//! Exit status is 0 when every check passes, 1 when a verification or
//! residual check fails, and 2 for bad input. Errors are written to stderr
//! as a single JSON object.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use tractorcalc::boundary::BoundaryRequest;
use tractorcalc::num::{format_q, parse_q, Q};
use tractorcalc::sl2core::{
    casimir_products, normal_order, series_solutions, Generator, SeriesMode, SeriesOutput,
};
use tractorcalc::solver::{Backend, ProblemJson, SolutionJson};
use tractorcalc::verify::{registry, run, Tier};

#[derive(Parser)]
#[command(name = "tractorcalc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every registered identity on seeded random sections.
    Verify(VerifyArgs),
    /// Solve a Proca boundary problem given as JSON.
    Solve(SolveArgs),
    /// Evaluate a boundary operator (L, G, Q or the factorization check).
    Obstruction(InputArgs),
    /// Normal-ordered enveloping-algebra queries.
    Algebra(AlgebraArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Small grid: d ∈ {4, 5}, k ≤ 2, two seeds.
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    /// Full grid: d ∈ {4..7}, k ≤ 4, twenty seeds (the default).
    #[arg(long)]
    full: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Only identities of this family (sl2core, model, tractor, solver, boundary).
    #[arg(long)]
    family: Option<String>,
    /// Emit the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InputArgs {
    /// JSON input file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    /// Write the JSON result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Closed,
    Recursive,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Override the truncation order of the input.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value = "closed")]
    backend: BackendArg,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Query {
    /// `∏_{j ≤ N} c_j` in normal order.
    #[arg(long, value_name = "N")]
    product: Option<usize>,
    /// Normal order of a word in x, y, h, e.g. `yxyx`.
    #[arg(long)]
    word: Option<String>,
    /// Series solutions: bessel, frobenius, first, second or log_op.
    #[arg(long, value_name = "MODE")]
    series: Option<String>,
}

#[derive(Args)]
struct AlgebraArgs {
    #[command(flatten)]
    query: Query,
    /// `h0` for --series, as `p/q`.
    #[arg(long, default_value = "3/2")]
    h0: String,
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Plain ASCII (`x^2 y^2`) instead of `x²y²`.
    #[arg(long)]
    ascii: bool,
}

enum Failure {
    /// Bad input or an engine error on it.
    Config(String, String),
    /// A check ran and failed; the output was already written.
    Check,
}

impl From<tractorcalc::Error> for Failure {
    fn from(e: tractorcalc::Error) -> Self {
        let kind = match &e {
            tractorcalc::Error::ExcludedWeight { .. } => "excluded_weight",
            tractorcalc::Error::Degree { .. } => "degree",
            tractorcalc::Error::Precondition { .. } => "precondition",
            tractorcalc::Error::Unsupported(_) => "unsupported",
            tractorcalc::Error::Restriction(_) => "restriction",
            tractorcalc::Error::ScaleMismatch(_) => "scale_mismatch",
            tractorcalc::Error::Parse(_) => "parse",
        };
        Failure::Config(kind.into(), e.to_string())
    }
}

fn config(kind: &str, msg: impl ToString) -> Failure {
    Failure::Config(kind.into(), msg.to_string())
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| config("io", format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| config("io", e))?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))
            .map_err(|e| config("io", format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| config("json", e))
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let tier = if args.quick {
        Tier::quick()
    } else {
        Tier::full()
    };
    let ids: Vec<_> = registry()
        .into_iter()
        .filter(|i| args.family.as_deref().is_none_or(|f| i.family == f))
        .collect();
    if ids.is_empty() {
        return Err(config("config", "no identity matches the family filter"));
    }
    let report = run(&ids, &tier, args.seed);
    if args.json {
        emit(&to_json(&report)?);
    } else {
        emit(report.table().trim_end());
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn solve(args: &SolveArgs) -> Result<(), Failure> {
    let text = read_input(&args.io.input)?;
    let mut input: ProblemJson = serde_json::from_str(&text).map_err(|e| config("json", e))?;
    if let Some(order) = args.order {
        input.order = order;
    }
    let backend = match args.backend {
        BackendArg::Closed => Backend::Closed,
        BackendArg::Recursive => Backend::Recursive,
    };
    let solution = input.to_problem()?.solve_with(backend)?;
    write_output(&args.io.output, &to_json(&SolutionJson::from(&solution))?)?;
    if solution.meets_order() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn obstruction(args: &InputArgs) -> Result<(), Failure> {
    let text = read_input(&args.input)?;
    let request: BoundaryRequest = serde_json::from_str(&text).map_err(|e| config("json", e))?;
    let response = request.evaluate()?;
    write_output(&args.output, &to_json(&response)?)?;
    if response.verdict == "fail" {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn parse_word(word: &str) -> Result<Vec<Generator>, Failure> {
    word.chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .map(|c| match c {
            'x' => Ok(Generator::X),
            'y' => Ok(Generator::Y),
            'h' => Ok(Generator::H),
            _ => Err(config(
                "parse",
                format!("unknown generator {c:?} in {word:?}"),
            )),
        })
        .collect()
}

fn superscript(c: char) -> char {
    match c {
        '0' => '⁰',
        '1' => '¹',
        '2' => '²',
        '3' => '³',
        '4' => '⁴',
        '5' => '⁵',
        '6' => '⁶',
        '7' => '⁷',
        '8' => '⁸',
        '9' => '⁹',
        _ => c,
    }
}

/// `x^2 y^2 + 2 x y (h - 3)` → `x²y² + 2xy(h−3)`. Only integer powers are
/// set as superscripts; anything else keeps its `^(..)`.
fn pretty(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut depth = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' => {
                depth += 1;
                out.push(c);
            }
            ')' => {
                depth -= 1;
                out.push(c);
            }
            '^' if chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                while chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                    out.push(superscript(chars[i]));
                }
            }
            ' ' if depth == 0 && matches!(chars.get(i + 1), Some('+' | '-')) => {
                out.push_str(if chars[i + 1] == '+' { " + " } else { " − " });
                i += 2;
            }
            ' ' => {}
            '-' => out.push('−'),
            _ => out.push(c),
        }
        i += 1;
    }
    out
}

fn rationals(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

fn algebra(args: &AlgebraArgs) -> Result<(), Failure> {
    let show = |s: String| if args.ascii { s } else { pretty(&s) };
    if let Some(n) = args.query.product {
        emit(&show(casimir_products(n).to_string()));
    } else if let Some(word) = &args.query.word {
        emit(&show(normal_order(&parse_word(word)?)?.to_string()));
    } else if let Some(mode) = &args.query.series {
        let mode: SeriesMode = mode.parse()?;
        let h0 = parse_q(&args.h0)?;
        let out = match series_solutions(mode, &h0, args.order)? {
            SeriesOutput::Coefficients(c) => json!({ "coefficients": rationals(&c) }),
            SeriesOutput::Frobenius(f) => json!({
                "regular": rationals(&f.regular),
                "log_part": rationals(&f.log_part),
            }),
            SeriesOutput::Operator(op) => json!({ "operator": show(op.to_string()) }),
            SeriesOutput::Log(op) => json!({
                "regular": show(op.regular.to_string()),
                "log_part": show(op.log_part.to_string()),
            }),
        };
        emit(&to_json(&out)?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Solve(args) => solve(args),
        Command::Obstruction(args) => obstruction(args),
        Command::Algebra(args) => algebra(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Config(kind, message)) => {
            eprintln!("{}", json!({ "error": kind, "message": message }));
            ExitCode::from(2)
        }
    }
}

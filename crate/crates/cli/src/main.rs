use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tuza_core::construction::tuza_instance;
use tuza_core::hypergraph::{HypergraphDocument, Violation};
use tuza_core::rational::{self, to_text};
use tuza_core::table::BoundsReport;
use tuza_core::transversal::{greedy_transversal, tau_bruteforce, tau_exact};
use tuza_core::weights::{
    check_printed_scheme, check_scheme, fuzz_lemma, optimize_scheme, scheme_monotone_in_k, FuzzConfig,
    WeightScheme, TABLE2_DECIMALS,
};
use tuza_core::{BigRational, Error, Hypergraph};

#[derive(Parser)]
#[command(name = "tuza", version, about = "Transversal numbers and weight certificates for k-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the 13-block lower-bound instance for uniformity k.
    Construct {
        #[arg(long)]
        k: usize,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute the transversal number of an instance file.
    Tau {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Largest transversal size tried by the brute-force method.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check, optimise, fuzz or sweep weight schemes.
    Weights {
        #[command(subcommand)]
        command: WeightsCommand,
    },
    /// Compare known and proposed bounds on c_k.
    Table {
        #[arg(long, default_value = "7..17", value_parser = parse_range)]
        range: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WeightsCommand {
    /// Evaluate every constraint for a scheme exactly.
    Check {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve for the scheme with the smallest maximum weight.
    Optimize {
        #[arg(long)]
        k: usize,
        /// Normalisation constant.
        #[arg(long, default_value = "100")]
        c: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare C * tau(H) with w(H) on random instances.
    Fuzz {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Instantiate a fixed scheme over a range of k.
    Monotone {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long, value_parser = parse_range)]
        range: RangeInclusive<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct SchemeArg {
    /// `lemma7`, `table2:<k>` or a JSON file. Defaults to the published scheme for k.
    #[arg(long)]
    scheme: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Brute,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Markdown,
    Csv,
    Json,
}

/// Exit status 1: bad k, invalid scheme and other domain errors.
/// Exit status 2: unreadable or malformed input, unwritable output.
enum Failure {
    Domain(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) | Error::ParseRational { .. } | Error::InvalidHypergraph(_) => Failure::Input(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn emit(text: &str, output: Option<&Path>) -> CliResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Text => "text",
        Format::Markdown => "markdown",
        Format::Csv => "csv",
        Format::Json => "json",
    };
    Failure::Domain(format!("{command} does not support --format {name}"))
}

/// 1-based line of the `index`-th edge in the raw document, if it can be located.
fn edge_line(text: &str, index: usize) -> Option<usize> {
    let key = text.find("\"edges\"")?;
    let open = key + text[key..].find('[')?;
    let mut depth = 0usize;
    let mut seen = 0usize;
    for (offset, ch) in text[open..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == index {
                        return Some(text[..open + offset].matches('\n').count() + 1);
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

fn describe_violation(text: &str, v: &Violation) -> String {
    let edge = match v {
        Violation::VertexOutOfRange { edge, .. }
        | Violation::RepeatedVertex { edge, .. }
        | Violation::EmptyEdge { edge }
        | Violation::WrongCardinality { edge, .. } => *edge,
        Violation::DuplicateEdge { second, .. } => *second,
    };
    match edge_line(text, edge) {
        Some(line) => format!("line {line}: {v}"),
        None => v.to_string(),
    }
}

fn read_instance(path: &Path) -> CliResult<Hypergraph> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let doc = HypergraphDocument::from_json(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let violations = doc.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| describe_violation(&text, v)).collect();
        return Err(Failure::Input(format!("{}: invalid hypergraph\n  {}", path.display(), lines.join("\n  "))));
    }
    Ok(doc.into_hypergraph()?)
}

fn load_scheme(arg: &SchemeArg, k: usize) -> CliResult<WeightScheme> {
    let scheme = match arg.scheme.as_deref() {
        Some(name) if name == "lemma7" || name.starts_with("table2:") => WeightScheme::builtin(name)?,
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read scheme {path}: {e}")))?;
            match WeightScheme::from_json(&text) {
                Err(e @ Error::InvalidScheme(_)) => return Err(Failure::Domain(e.to_string())),
                other => other?,
            }
        }
        None if k == 7 => WeightScheme::lemma7(),
        None => match WeightScheme::table2(k) {
            Some(s) => s,
            None => optimize_scheme(k, &rational::int(100))?.scheme,
        },
    };
    Ok(scheme.with_k(k))
}

fn is_published_decimal(arg: &SchemeArg, k: usize) -> bool {
    match arg.scheme.as_deref() {
        Some(name) => name.starts_with("table2:"),
        None => k != 7 && WeightScheme::table2(k).is_some(),
    }
}

fn cmd_construct(k: usize, output: Option<&Path>) -> CliResult {
    let instance = tuza_instance(k)?;
    let json = instance.to_document().to_json();
    let h = &instance.graph;
    let summary = format!("n = {}, m = {}, k = {}", h.n(), h.m(), k);
    match output {
        Some(path) => {
            emit(&json, Some(path))?;
            println!("{summary}");
            println!("wrote {}", path.display());
        }
        None => {
            print!("{json}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_tau(input: &Path, method: Method, limit: Option<usize>, format: Format) -> CliResult {
    let h = read_instance(input)?;
    let (label, size, witness, nodes) = match method {
        Method::Exact => {
            let r = tau_exact(&h);
            ("tau", r.tau, r.witness, Some(r.nodes_explored))
        }
        Method::Brute => {
            let limit = limit.unwrap_or(h.n());
            let r = tau_bruteforce(&h, limit).map_err(|e| Failure::Domain(e.to_string()))?;
            ("tau", r.tau, r.witness, Some(r.nodes_explored))
        }
        Method::Greedy => {
            let g = greedy_transversal(&h);
            ("greedy", g.len(), g, None)
        }
    };
    match format {
        Format::Text => {
            println!("{label} = {size}");
            println!("witness = {witness:?}");
            println!("n = {}, m = {}", h.n(), h.m());
            if let Some(nodes) = nodes {
                let what = if method == Method::Brute { "subsets tested" } else { "nodes explored" };
                println!("{what} = {nodes}");
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "method": match method { Method::Exact => "exact", Method::Brute => "brute", Method::Greedy => "greedy" },
                "size": size,
                "witness": witness,
                "n": h.n(),
                "m": h.m(),
                "nodes": nodes,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
        other => return Err(unsupported(other, "tau")),
    }
    Ok(())
}

fn cmd_weights(command: &WeightsCommand) -> CliResult {
    match command {
        WeightsCommand::Check { k, scheme, out } => {
            let s = load_scheme(scheme, *k)?;
            let report = if is_published_decimal(scheme, *k) {
                check_printed_scheme(*k, &s, TABLE2_DECIMALS)?
            } else {
                check_scheme(*k, &s)?
            };
            let text = match out.format {
                Format::Text => report.to_text(),
                Format::Markdown => report.to_markdown(),
                Format::Json => report.to_json() + "\n",
                Format::Csv => return Err(unsupported(out.format, "weights check")),
            };
            emit(&text, out.output.as_deref())
        }
        WeightsCommand::Optimize { k, c, out } => {
            let c: BigRational = rational::parse(c)?;
            let o = optimize_scheme(*k, &c)?;
            let text = match out.format {
                Format::Text => format!(
                    "optimal bound: {} ({})\nbinding: {}\nsimplex pivots: {}\n\n{}",
                    to_text(o.bound()),
                    rational::fixed(o.bound(), 6, rational::Rounding::Nearest),
                    o.binding.join(", "),
                    o.outcome.pivots,
                    o.report.to_text()
                ),
                Format::Markdown => o.report.to_markdown(),
                Format::Json => {
                    let outcome: serde_json::Value = serde_json::from_str(&o.outcome.to_json()).expect("json");
                    let report: serde_json::Value = serde_json::from_str(&o.report.to_json()).expect("json");
                    let value = serde_json::json!({
                        "bound": to_text(o.bound()),
                        "binding": o.binding,
                        "outcome": outcome,
                        "report": report,
                    });
                    serde_json::to_string_pretty(&value).expect("json") + "\n"
                }
                Format::Csv => return Err(unsupported(out.format, "weights optimize")),
            };
            emit(&text, out.output.as_deref())
        }
        WeightsCommand::Fuzz { k, scheme, trials, seed, max_n, max_m, out } => {
            let s = load_scheme(scheme, *k)?;
            let config = FuzzConfig { trials: *trials, seed: *seed, max_n: *max_n, max_m: *max_m };
            let report = fuzz_lemma(*k, &s, config)?;
            let text = match out.format {
                Format::Text | Format::Markdown => report.to_text(),
                Format::Json => report.to_json() + "\n",
                Format::Csv => return Err(unsupported(out.format, "weights fuzz")),
            };
            emit(&text, out.output.as_deref())
        }
        WeightsCommand::Monotone { scheme, range, out } => {
            let s = load_scheme(scheme, *range.start())?;
            let report = scheme_monotone_in_k(&s, *range.start(), *range.end())?;
            let text = match out.format {
                Format::Text | Format::Markdown => report.to_text(),
                Format::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
                Format::Csv => return Err(unsupported(out.format, "weights monotone")),
            };
            emit(&text, out.output.as_deref())
        }
    }
}

fn cmd_table(range: RangeInclusive<usize>, format: Format, output: Option<&Path>) -> CliResult {
    let report = BoundsReport::build(range)?;
    let text = match format {
        Format::Text => report.to_text(),
        Format::Markdown => report.to_markdown(),
        Format::Csv => report.to_csv(),
        Format::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
    };
    emit(&text, output)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct { k, output } => cmd_construct(k, output.as_deref()),
        Command::Tau { input, method, limit, format } => cmd_tau(&input, method, limit, format),
        Command::Weights { command } => cmd_weights(&command),
        Command::Table { range, format, output } => cmd_table(range, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

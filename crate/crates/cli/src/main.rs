//! `lprog`: measure how far a partial search of a probabilistic transition
//! system has come toward verifying an LTL property.
//!
//! Every subcommand prints a report on standard output. Exit status is 0 on
//! success, 1 when the search has already found a violation and 2 for any
//! input or usage error.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lprog::sim::{curve_csv, CurveValue, GENERATOR};
use lprog::{
    build_minimal_extension, chain_of, find_violation, interval_estimate, model_from_json, parse, parse_rational,
    prog_exact_unchecked, prog_lower_bound, progress_curve, search_from_json, Error, Formula, Pts, Search, Strategy,
    Violation, Witness,
};
use serde_json::{json, Value};

use report::{rational, Report, Timing};

#[derive(Debug, Parser)]
#[command(name = "lprog", version, about = "Progress measures for partial probabilistic model checking")]
struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,

    /// Add a probability-one self-loop to every state without outgoing transitions.
    #[arg(long, global = true)]
    complete_final_states: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Bound,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Bfs,
    Dfs,
    Greedy,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Bfs => Strategy::Bfs,
            StrategyArg::Dfs => Strategy::Dfs,
            StrategyArg::Greedy => Strategy::Greedy,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a model file is well formed and stochastically complete.
    Validate { model: PathBuf },

    /// Progress of a search toward a formula.
    Progress {
        model: PathBuf,
        search: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },

    /// Whether a search already exhibits a violation of a formula.
    Violation {
        model: PathBuf,
        search: PathBuf,
        #[arg(long)]
        formula: String,
    },

    /// Progress curve of an exploration strategy over a list of budgets.
    Explore {
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Comma-separated transition budgets in ascending order.
        #[arg(long, value_delimiter = ',', required = true)]
        budgets: Vec<usize>,
        /// Also write the curve as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },

    /// Sampled interval on the probability of a formula in the minimal extension of a search.
    Estimate {
        model: PathBuf,
        search: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        seed: u64,
        /// Per-side failure probability as `num/den`.
        #[arg(long, default_value = "1/20")]
        delta: String,
    },
}

/// An input or usage error, reported on standard error with exit status 2.
#[derive(Debug)]
struct Failure(String);

impl Failure {
    fn at(path: &Path, err: impl std::fmt::Display) -> Self {
        Failure(format!("{}: {err}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Outcome {
    report: Report,
    violation: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut outcome) => {
            if cli.timing {
                outcome.report.timing = Some(Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
            }
            let text = match cli.format {
                Format::Json => outcome.report.to_json() + "\n",
                Format::Text => outcome.report.to_text(),
            };
            print!("{text}");
            ExitCode::from(if outcome.violation { 1 } else { 0 })
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate { model } => validate(cli, model),
        Command::Progress { model, search, formula, method } => progress(cli, model, search, formula, *method),
        Command::Violation { model, search, formula } => violation(cli, model, search, formula),
        Command::Explore { model, formula, strategy, budgets, csv } => {
            explore(cli, model, formula, (*strategy).into(), budgets, csv.as_deref())
        }
        Command::Estimate { model, search, formula, samples, horizon, seed, delta } => {
            estimate(cli, model, search, formula, *samples, *horizon, *seed, delta)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::at(path, e))
}

fn load_model(cli: &Cli, path: &Path) -> Result<Pts, Failure> {
    let model = model_from_json(&read(path)?).map_err(|e| Failure::at(path, e))?;
    let invalid = |v| Failure::at(path, Error::InvalidModel(v));
    if !cli.complete_final_states {
        model.validate_input().map_err(invalid)?;
        return Ok(model);
    }
    let reserved: Vec<_> =
        model.validate_input().err().into_iter().flatten().filter(|v| matches!(v, Violation::ReservedId(_))).collect();
    if !reserved.is_empty() {
        return Err(invalid(reserved));
    }
    let model = model.complete_final_states();
    model.validate().map_err(invalid)?;
    Ok(model)
}

fn load_search(path: &Path, model: &Pts) -> Result<Search, Failure> {
    let search = search_from_json(&read(path)?).map_err(|e| Failure::at(path, e))?;
    search.check_for(model).map_err(|e| Failure::at(path, e))?;
    Ok(search)
}

fn load_formula(text: &str, model: &Pts, report: &mut Report) -> Result<Formula, Failure> {
    let formula = parse(text).map_err(|e| {
        let caret = " ".repeat(text[..e.pos.min(text.len())].chars().count());
        Failure(format!("formula: {e}\n  {text}\n  {caret}^"))
    })?;
    if !formula.is_positive() {
        return Err(Error::NotPositive(text.to_string()).into());
    }
    for atom in formula.atoms().iter().filter(|a| !model.ap().contains(*a)) {
        report.warnings.push(format!("atom {atom} is not a proposition of the model and is false everywhere"));
    }
    Ok(formula)
}

fn inputs(report: &mut Report, model: &Path, search: Option<&Path>, formula: Option<&str>) {
    report.input("model", model.display().to_string());
    if let Some(s) = search {
        report.input("search", s.display().to_string());
    }
    if let Some(f) = formula {
        report.input("formula", f);
    }
}

fn witness(w: &Witness) -> Value {
    json!({ "prefix": w.prefix, "cycle": w.cycle })
}

fn validate(cli: &Cli, path: &Path) -> Result<Outcome, Failure> {
    let mut report = Report::new("validate");
    inputs(&mut report, path, None, None);
    let model = load_model(cli, path)?;
    report.result("valid", true);
    report.result("states", model.states().len());
    report.result("transitions", model.transitions().len());
    report.result("propositions", model.ap().iter().cloned().collect::<Vec<_>>());
    if cli.complete_final_states {
        let added: Vec<&String> = model.transitions().keys().filter(|id| id.starts_with("__")).collect();
        report.result("added_self_loops", json!(added));
    }
    Ok(Outcome { report, violation: false })
}

fn progress(cli: &Cli, model_path: &Path, search_path: &Path, text: &str, method: Method) -> Result<Outcome, Failure> {
    let mut report = Report::new("progress");
    inputs(&mut report, model_path, Some(search_path), Some(text));
    report.input("method", format!("{method:?}").to_lowercase());
    let model = load_model(cli, model_path)?;
    let search = load_search(search_path, &model)?;
    let formula = load_formula(text, &model, &mut report)?;
    if let Some(w) = find_violation(&model, &search, &formula)? {
        report.result("violation", true);
        report.result("witness", witness(&w));
        return Ok(Outcome { report, violation: true });
    }
    report.result("violation", false);
    if method != Method::Bound {
        report.result("exact", rational(&prog_exact_unchecked(&model, &search, &formula)?));
    }
    if method != Method::Exact {
        report.result("bound", rational(&prog_lower_bound(&model, &search)?));
    }
    Ok(Outcome { report, violation: false })
}

fn violation(cli: &Cli, model_path: &Path, search_path: &Path, text: &str) -> Result<Outcome, Failure> {
    let mut report = Report::new("violation");
    inputs(&mut report, model_path, Some(search_path), Some(text));
    let model = load_model(cli, model_path)?;
    let search = load_search(search_path, &model)?;
    let formula = load_formula(text, &model, &mut report)?;
    let found = find_violation(&model, &search, &formula)?;
    report.result("violation", found.is_some());
    if let Some(w) = &found {
        report.result("witness", witness(w));
    }
    Ok(Outcome { report, violation: found.is_some() })
}

fn explore(
    cli: &Cli,
    model_path: &Path,
    text: &str,
    strategy: Strategy,
    budgets: &[usize],
    csv: Option<&Path>,
) -> Result<Outcome, Failure> {
    let mut report = Report::new("explore");
    inputs(&mut report, model_path, None, Some(text));
    report.input("strategy", strategy.to_string());
    report.input("budgets", json!(budgets));
    let model = load_model(cli, model_path)?;
    let formula = load_formula(text, &model, &mut report)?;
    let rows = progress_curve(&model, &formula, strategy, budgets)?;
    if let Some(path) = csv {
        std::fs::write(path, curve_csv(&rows)).map_err(|e| Failure::at(path, e))?;
        report.input("csv", path.display().to_string());
    }
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let exact = match &r.exact {
                CurveValue::Progress(p) => rational(p),
                CurveValue::Violation => json!("VIOLATION"),
            };
            json!({
                "budget": r.budget,
                "search_size": r.search_size,
                "lower_bound": rational(&r.lower_bound),
                "exact": exact,
            })
        })
        .collect();
    report.result("rows", rows);
    Ok(Outcome { report, violation: false })
}

#[allow(clippy::too_many_arguments)]
fn estimate(
    cli: &Cli,
    model_path: &Path,
    search_path: &Path,
    text: &str,
    samples: usize,
    horizon: usize,
    seed: u64,
    delta: &str,
) -> Result<Outcome, Failure> {
    let mut report = Report::new("estimate");
    inputs(&mut report, model_path, Some(search_path), Some(text));
    let delta = parse_rational(delta).map_err(|e| Failure(format!("--delta: {e}")))?;
    let model = load_model(cli, model_path)?;
    let search = load_search(search_path, &model)?;
    let formula = load_formula(text, &model, &mut report)?;
    let (extension, _) = build_minimal_extension(&model, &search)?;
    let est = interval_estimate(&chain_of(&extension), &formula, samples, horizon, seed, &delta)?;
    report.result("generator", GENERATOR);
    report.result("seed", est.seed);
    report.result("horizon", horizon);
    report.result("n_samples", est.n_samples);
    report.result("n_definitely_sat", est.n_definitely_sat);
    report.result("n_definitely_unsat", est.n_definitely_unsat);
    report.result("n_unknown", est.n_unknown);
    report.result("confidence_delta", rational(&est.confidence_delta));
    report.result("slack", rational(&est.slack));
    report.result("lo", rational(&est.lo));
    report.result("hi", rational(&est.hi));
    Ok(Outcome { report, violation: false })
}

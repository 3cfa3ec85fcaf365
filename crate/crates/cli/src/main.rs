//! `vassiliev` command-line tool.
//!
//! Exit status: 0 on success or a passing suite, 1 on a failing suite, a
//! size bound or an I/O problem, 2 on usage or parse errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use vassiliev::chordalg::{
    self, complete_diagram, enumerate_chord_diagrams, four_term_relations, one_term_relations,
    solve_weight_systems, LinearRelation, WeightSystem,
};
use vassiliev::gaussdiag::GaussDiagram;
use vassiliev::invariants::conway::{conway_gauss, ConwayPolynomial};
use vassiliev::invariants::{formula_by_name, v4_weight_basis, GaussFormula};
use vassiliev::knotcodes::{builtin_table, load_table, parse_dt, parse_gauss, parse_pd, pd_to_gauss, KnotTableEntry};
use vassiliev::moves::{check_degree, check_fit, check_invariance, check_symbol, SuiteOptions, VerificationReport};
use vassiliev::rational::{self, Rational};
use vassiliev::Error;

/// Default master seed of `verify`.
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "vassiliev", version, about = "Vassiliev knot invariants from Gauss diagram formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one invariant on one knot diagram.
    Compute {
        /// Knot code text.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        code: Option<String>,
        /// Read the knot code from a file instead.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "gauss")]
        format: CodeFormat,
        #[arg(long, value_enum, default_value = "v2")]
        invariant: Invariant,
    },
    /// Dump chord diagrams, relation counts and a weight-system basis.
    Weights {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        constrain: Option<Constraint>,
        /// Include every 1T and 4T relation in the output.
        #[arg(long)]
        relations: bool,
    },
    /// Run a randomized verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "v4_1")]
        invariant: FormulaName,
        /// Trials, or move pairs for the fit suite. Defaults: 500 reidemeister,
        /// 100 degree and symbol, 200 fit.
        #[arg(long)]
        trials: Option<usize>,
        /// Maximum random walk length.
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of double points for the degree suite (default: one more
        /// than the formula's largest pattern).
        #[arg(long)]
        k: Option<usize>,
        /// Knot table to start walks from (default: the built-in table).
        #[arg(long)]
        table: Option<PathBuf>,
        /// Stop at the first batch of trials containing a failure.
        #[arg(long)]
        fail_fast: bool,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate invariants over a knot table.
    Table {
        /// CSV or JSON table (default: the built-in table through 8 crossings).
        #[arg(long)]
        file: Option<PathBuf>,
        /// Columns to compute; repeat or separate with commas.
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["v2", "c2"])]
        invariant: Vec<Invariant>,
        #[arg(long, value_enum, default_value = "csv")]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeFormat {
    Gauss,
    Pd,
    Dt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    #[value(name = "v2")]
    V2,
    #[value(name = "v4_1")]
    V41,
    #[value(name = "v4_2")]
    V42,
    /// The full Conway polynomial.
    Conway,
    /// Coefficient of z^2 in the Conway polynomial.
    C2,
    /// Coefficient of z^4 in the Conway polynomial.
    C4,
}

impl Invariant {
    fn name(self) -> &'static str {
        match self {
            Invariant::V2 => "v2",
            Invariant::V41 => "v4_1",
            Invariant::V42 => "v4_2",
            Invariant::Conway => "conway",
            Invariant::C2 => "c2",
            Invariant::C4 => "c4",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaName {
    #[value(name = "v2")]
    V2,
    #[value(name = "v4_1")]
    V41,
    #[value(name = "v4_2")]
    V42,
}

impl FormulaName {
    fn name(self) -> &'static str {
        match self {
            FormulaName::V2 => "v2",
            FormulaName::V41 => "v4_1",
            FormulaName::V42 => "v4_2",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Constraint {
    /// The weight of the complete diagram `abcdabcd` vanishes.
    K4Zero,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Reidemeister,
    Degree,
    Symbol,
    Fit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Csv,
    Json,
    Plain,
}

/// A failure with its exit status.
struct Fail {
    status: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail { status: if e.is_input_error() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Fail {
    Fail { status: 2, message: message.into() }
}

type CmdResult = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { code, file, format, invariant } => compute(code, file, format, invariant),
        Command::Weights { degree, constrain, relations } => weights(degree, constrain, relations),
        Command::Verify { suite, invariant, trials, steps, seed, k, table, fail_fast, json } => {
            let opts = SuiteOptions {
                trials: trials.unwrap_or(match suite {
                    Suite::Reidemeister => 500,
                    Suite::Degree | Suite::Symbol => 100,
                    Suite::Fit => 200,
                }),
                max_steps: steps,
                seed,
                fail_fast,
            };
            verify(suite, invariant, k, table, &opts, json)
        }
        Command::Table { file, invariant, output } => table(file, &invariant, output),
    };
    match result {
        Ok(status) => ExitCode::from(status),
        Err(Fail { status, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(status)
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn parse_code(text: &str, format: CodeFormat) -> Result<GaussDiagram, Error> {
    match format {
        CodeFormat::Gauss => parse_gauss(text),
        CodeFormat::Pd => parse_pd(text).map(|pd| pd_to_gauss(&pd)),
        CodeFormat::Dt => parse_dt(text).map(|pd| pd_to_gauss(&pd)),
    }
}

fn formula(name: &str) -> GaussFormula {
    formula_by_name(name).expect("command-line names are known formulas")
}

fn conway_json(c: &ConwayPolynomial) -> Value {
    json!({
        "polynomial": c.to_string(),
        "coefficients": c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

/// Value of `inv` on `g`, as a JSON value (a `"p/q"` string for rationals).
fn evaluate(inv: Invariant, g: &GaussDiagram) -> Result<Value, Error> {
    let rat = |r: Rational| json!(rational::to_string(&r));
    Ok(match inv {
        Invariant::V2 | Invariant::V41 | Invariant::V42 => rat(formula(inv.name()).evaluate(g)),
        Invariant::Conway => conway_json(&conway_gauss(g)?),
        Invariant::C2 => json!(conway_gauss(g)?.coeff(2).to_string()),
        Invariant::C4 => json!(conway_gauss(g)?.coeff(4).to_string()),
    })
}

fn compute(code: Option<String>, file: Option<PathBuf>, format: CodeFormat, inv: Invariant) -> CmdResult {
    let text = match (code, file) {
        (Some(code), _) => code,
        (None, Some(path)) => std::fs::read_to_string(path).map_err(Error::from)?.trim().to_string(),
        (None, None) => return Err(usage("one of --code or --file is required")),
    };
    let g = parse_code(&text, format)?;
    let value = evaluate(inv, &g)?;
    print_json(&json!({ "input": text, "invariant": inv.name(), "value": value }));
    Ok(0)
}

fn weights(degree: usize, constrain: Option<Constraint>, with_relations: bool) -> CmdResult {
    if degree == 0 || degree > chordalg::MAX_DEGREE {
        return Err(usage(format!("degree must be between 1 and {}", chordalg::MAX_DEGREE)));
    }
    let extra = match constrain {
        Some(Constraint::K4Zero) if degree != 4 => return Err(usage("k4-zero applies to degree 4 only")),
        Some(Constraint::K4Zero) => vec![LinearRelation::vanishing(complete_diagram(4))],
        None => Vec::new(),
    };
    let diagrams = enumerate_chord_diagrams(degree)?;
    let one = one_term_relations(degree)?;
    let four = four_term_relations(degree)?;
    let basis = solve_weight_systems(degree, &extra)?;
    let mut out = json!({
        "degree": degree,
        "constraint": constrain.map(|_| "k4-zero"),
        "diagrams": diagrams.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "relation_counts": { "one_term": one.len(), "four_term": four.len(), "extra": extra.len() },
        "dimension": basis.len(),
        "basis": basis.iter().map(WeightSystem::to_json).collect::<Vec<_>>(),
    });
    if with_relations {
        out["relations"] = json!({
            "one_term": one.iter().map(LinearRelation::to_json).collect::<Vec<_>>(),
            "four_term": four.iter().map(LinearRelation::to_json).collect::<Vec<_>>(),
        });
    }
    print_json(&out);
    Ok(0)
}

fn load(file: Option<PathBuf>) -> Result<Vec<KnotTableEntry>, Error> {
    match file {
        Some(path) => load_table(path),
        None => Ok(builtin_table()),
    }
}

fn symbol_weight(name: FormulaName) -> Result<WeightSystem, Error> {
    Ok(match name {
        FormulaName::V2 => solve_weight_systems(2, &[])?.remove(0),
        FormulaName::V41 => v4_weight_basis().0,
        FormulaName::V42 => v4_weight_basis().1,
    })
}

fn verify(
    suite: Suite,
    name: FormulaName,
    k: Option<usize>,
    table: Option<PathBuf>,
    opts: &SuiteOptions,
    as_json: bool,
) -> CmdResult {
    let table = load(table)?;
    if table.is_empty() {
        return Err(usage("knot table is empty"));
    }
    let f = formula(name.name());
    let report = match suite {
        Suite::Reidemeister => check_invariance(&f, &table, opts),
        Suite::Degree => check_degree(&f, k.unwrap_or(f.order() + 1), &table, opts),
        Suite::Symbol => check_symbol(&f, &symbol_weight(name)?, &table, opts),
        Suite::Fit => check_fit(&f, &table, opts),
    };
    if as_json {
        print_json(&serde_json::to_value(&report).expect("reports serialize"));
    } else {
        print!("{}", summary(&report));
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn summary(r: &VerificationReport) -> String {
    let mut s = format!(
        "{} {}: {} after {} trials (seed {}, {} ms)\n",
        r.suite,
        r.invariant,
        if r.passed { "PASS" } else { "FAIL" },
        r.trials,
        r.seed,
        r.elapsed_ms
    );
    for (key, v) in &r.stats {
        let _ = writeln!(s, "  {key}: {v}");
    }
    for f in r.failures.iter().take(5) {
        let _ = writeln!(s, "  trial {} (seed {}, {}): expected {}, got {}\n    {}", f.trial, f.seed, f.knot, f.expected, f.got, f.input);
    }
    if r.failures.len() > 5 {
        let _ = writeln!(s, "  ... {} more failures", r.failures.len() - 5);
    }
    s
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) => o.get("polynomial").and_then(Value::as_str).unwrap_or_default().to_string(),
        other => other.to_string(),
    }
}

struct Row {
    name: String,
    crossings: usize,
    cells: Vec<Result<Value, String>>,
}

fn table(file: Option<PathBuf>, invariants: &[Invariant], output: Output) -> CmdResult {
    let from_file = file.is_some();
    let mut entries = load(file)?;
    if !from_file {
        entries.retain(|e| e.pd.n() <= 8);
    }
    let rows: Vec<Row> = entries
        .par_iter()
        .map(|e| {
            let g = pd_to_gauss(&e.pd);
            let cells = invariants
                .iter()
                .map(|&inv| {
                    let v = evaluate(inv, &g).map_err(|err| err.to_string())?;
                    match e.known_values.get(inv.name()) {
                        Some(known) if cell_text(&v) != rational::to_string(known) => Err(format!(
                            "{} is {}, table says {}",
                            inv.name(),
                            cell_text(&v),
                            rational::to_string(known)
                        )),
                        _ => Ok(v),
                    }
                })
                .collect();
            Row { name: e.name.clone(), crossings: e.pd.n(), cells }
        })
        .collect();

    let names: Vec<&str> = invariants.iter().map(|i| i.name()).collect();
    match output {
        Output::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut values = serde_json::Map::new();
                    let mut errors = serde_json::Map::new();
                    for (n, c) in names.iter().zip(&r.cells) {
                        match c {
                            Ok(v) => values.insert(n.to_string(), v.clone()),
                            Err(e) => errors.insert(n.to_string(), json!(e)),
                        };
                    }
                    json!({ "name": r.name, "crossings": r.crossings, "values": values, "errors": errors })
                })
                .collect();
            print_json(&Value::Array(list));
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            let header = ["name", "crossings"].into_iter().chain(names.iter().copied());
            w.write_record(header).map_err(|e| Fail { status: 1, message: e.to_string() })?;
            for r in &rows {
                let record = [r.name.clone(), r.crossings.to_string()].into_iter().chain(
                    r.cells.iter().map(|c| c.as_ref().map(cell_text).unwrap_or_else(|_| "ERROR".into())),
                );
                w.write_record(record).map_err(|e| Fail { status: 1, message: e.to_string() })?;
            }
            w.flush().map_err(|e| Fail { status: 1, message: e.to_string() })?;
        }
        Output::Plain => {
            for r in &rows {
                let cells: Vec<String> = names
                    .iter()
                    .zip(&r.cells)
                    .map(|(n, c)| format!("{n}={}", c.as_ref().map(cell_text).unwrap_or_else(|_| "ERROR".into())))
                    .collect();
                println!("{:<6} {:>2}  {}", r.name, r.crossings, cells.join("  "));
            }
        }
    }
    let mut failed = 0;
    for r in &rows {
        for (n, c) in names.iter().zip(&r.cells) {
            if let Err(e) = c {
                eprintln!("error: {} {n}: {e}", r.name);
                failed += 1;
            }
        }
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

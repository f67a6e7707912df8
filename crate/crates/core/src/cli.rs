//! The `powreg` command line: argument parsing, experiment orchestration
//! and report rendering. `main.rs` only forwards to [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{self, AsymptoticReport, BoundReport, Hypothesis, RowStatus, Stabilization};
use crate::cohomology::{self, default_window, CohomologyTable, GradedModule, PhiAnalysis, PowerKind};
use crate::corpus::{self, CorpusEntry, CORPUS};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::hilbert::binomial;
use crate::ideal_file::IdealFile;
use crate::ideals::{e_bound_from_rees, Ideal};
use crate::resolve;

#[derive(Parser, Debug)]
#[command(name = "powreg", version, about = "Regularity of powers of homogeneous ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Builtin ideal (see `powreg corpus`).
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub corpus: Option<String>,
    /// Ideal file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Twist window for cohomology tables and sweeps.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub window: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Wall-clock budget for the whole command.
    #[arg(long)]
    pub budget_seconds: Option<u64>,
    /// Work modulo this prime instead of the declared field.
    #[arg(long = "char")]
    pub characteristic: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal free resolution and Betti table.
    Betti {
        #[command(flatten)]
        input: Input,
    },
    /// Regularity of the ideal, its saturation and the structure sheaf.
    Reg {
        #[command(flatten)]
        input: Input,
    },
    /// Regularity of powers, the constant e and the s-invariant bracket.
    Powers {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        /// Number of equal trailing e_t needed to call e stable.
        #[arg(long, default_value_t = 2)]
        stable_window: usize,
    },
    /// Sheaf cohomology table of a module built from the ideal.
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// `O`, `I`, `I^t`, `N*`, `T^a N*`, `S^a N*` or `E^a N*`.
        #[arg(long, default_value = "N*")]
        module: String,
    },
    /// Vanishing ranges for tensor powers of the conormal sheaf.
    Vanishing {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        a: u32,
        /// Partial regularity index (default dim X - 1).
        #[arg(long)]
        p: Option<usize>,
    },
    /// Surjectivity of H^0(I^a(k)) -> H^0(S^a N*(k)) over the window.
    Phi {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        a: u32,
    },
    /// Rees algebra equations and the bound on e they give.
    Rees {
        #[command(flatten)]
        input: Input,
        /// Degree of the generators used (default: the d-invariant).
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Checks reg (I^t)^sat against a closed-form bound.
    VerifyBounds {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "adjoint", required_unless_present = "adjoint")]
        lci: bool,
        #[arg(long)]
        adjoint: bool,
        /// Dimension of the subscheme.
        #[arg(long)]
        dim: u32,
        /// Regularity of the ideal sheaf (lci bound only; computed when absent).
        #[arg(long)]
        reg: Option<i64>,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
    },
    /// Lists the builtin ideals.
    Corpus {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// What a command produced, before rendering.
#[derive(Debug, Default)]
struct Outcome {
    params: serde_json::Map<String, Value>,
    rows: Vec<Value>,
    checks: Vec<Check>,
    text: String,
    csv: String,
    budget_exceeded: bool,
}

/// Result of a whole invocation: exit code plus what goes to stdout and
/// stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Invocation {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Invocation {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    execute(cli.command)
}

pub fn execute(command: Command) -> Invocation {
    if let Command::Corpus { format } = command {
        return Invocation {
            code: EXIT_OK,
            stdout: list_corpus(format),
            stderr: String::new(),
        };
    }
    let name = command_name(&command);
    let input = command_input(&command).clone();
    let source = match Source::load(&input) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let field = input.characteristic.map(FieldSpec::Prime).unwrap_or(source.field());
    let result = match field {
        FieldSpec::Rationals => dispatch(Rationals, &source, command),
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(k) => dispatch(k, &source, command),
            Err(e) => return usage_error(&e),
        },
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(e)) => return usage_error(&e),
        Err(Failure::Compute(e)) if is_usage(&e) => return usage_error(&e),
        Err(Failure::Compute(e)) => Outcome {
            checks: vec![Check::new("computation", false, e.to_string())],
            text: format!("error: {e}\n"),
            ..Default::default()
        },
    };
    render(name, &input, &source, field, outcome)
}

/// Errors that mean the request itself does not make sense for the input.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::OutOfRange(_)
            | Error::Inhomogeneous(_)
            | Error::EmptyGenerators
            | Error::ZeroIdeal
            | Error::BelowGenerationDegree { .. }
    )
}

fn usage_error(e: &Error) -> Invocation {
    Invocation {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Betti { .. } => "betti",
        Command::Reg { .. } => "reg",
        Command::Powers { .. } => "powers",
        Command::Cohomology { .. } => "cohomology",
        Command::Vanishing { .. } => "vanishing",
        Command::Phi { .. } => "phi",
        Command::Rees { .. } => "rees",
        Command::VerifyBounds { .. } => "verify-bounds",
        Command::Corpus { .. } => "corpus",
    }
}

fn command_input(c: &Command) -> &Input {
    match c {
        Command::Betti { input }
        | Command::Reg { input }
        | Command::Powers { input, .. }
        | Command::Cohomology { input, .. }
        | Command::Vanishing { input, .. }
        | Command::Phi { input, .. }
        | Command::Rees { input, .. }
        | Command::VerifyBounds { input, .. } => input,
        Command::Corpus { .. } => unreachable!("corpus takes no ideal"),
    }
}

/// Where the ideal comes from.
enum Source {
    Corpus(&'static CorpusEntry),
    File(PathBuf, IdealFile),
}

impl Source {
    fn load(input: &Input) -> Result<Self> {
        match (&input.corpus, &input.file) {
            (Some(name), _) => Ok(Source::Corpus(corpus::lookup(name)?)),
            (None, Some(path)) => Ok(Source::File(path.clone(), IdealFile::read(path)?)),
            (None, None) => Err(Error::InvalidArgument("one of --corpus or --file is required".into())),
        }
    }

    fn field(&self) -> FieldSpec {
        match self {
            Source::Corpus(_) => FieldSpec::Rationals,
            Source::File(_, f) => f.field,
        }
    }

    fn ideal<F: Field>(&self, field: F) -> Result<Ideal<F>> {
        match self {
            Source::Corpus(e) => e.ideal(field),
            Source::File(_, f) => f.build(field),
        }
    }

    fn annotations(&self) -> Option<&'static CorpusEntry> {
        match self {
            Source::Corpus(e) => Some(e),
            Source::File(..) => None,
        }
    }

    fn describe(&self, field: FieldSpec, ideal: &[String]) -> Value {
        match self {
            Source::Corpus(e) => json!({"corpus": e.name, "field": field.to_string(), "generators": ideal}),
            Source::File(p, f) => json!({
                "file": p.display().to_string(),
                "ring": f.ring_name,
                "ideal": f.ideal_name,
                "field": field.to_string(),
                "generators": ideal,
            }),
        }
    }
}

enum Failure {
    Usage(Error),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn dispatch<F: Field>(field: F, source: &Source, command: Command) -> std::result::Result<Outcome, Failure> {
    let ideal = source.ideal(field).map_err(Failure::Usage)?;
    if ideal.is_zero() {
        return Err(Failure::Usage(Error::ZeroIdeal));
    }
    let input = command_input(&command).clone();
    if let Some(w) = &input.window {
        if w[0] > w[1] {
            return Err(Failure::Usage(Error::InvalidArgument(format!("empty window [{}, {}]", w[0], w[1]))));
        }
    }
    let notes = source.annotations();
    let budget = input.budget_seconds.map(Duration::from_secs);
    let mut outcome = match command {
        Command::Powers {
            max_power, stable_window, ..
        } => {
            if max_power < 1 {
                return Err(Failure::Usage(Error::OutOfRange(format!("max power {max_power}"))));
            }
            powers(&ideal, notes, max_power, stable_window, budget)?
        }
        Command::VerifyBounds {
            lci,
            dim,
            reg,
            max_power,
            ..
        } => {
            if max_power < 1 {
                return Err(Failure::Usage(Error::OutOfRange(format!("max power {max_power}"))));
            }
            verify(&ideal, lci, dim, reg, max_power, budget)?
        }
        other => {
            let window = input.window.as_ref().map(|w| (w[0], w[1]));
            let work = ideal.clone();
            let job = move || -> Result<Outcome> {
                match other {
                    Command::Betti { .. } => betti(&work, window),
                    Command::Reg { .. } => reg(&work, notes),
                    Command::Cohomology { module, .. } => cohomology_table(&work, &module, window),
                    Command::Vanishing { a, p, .. } => vanishing(&work, a, p, window),
                    Command::Phi { a, .. } => phi(&work, a, window),
                    Command::Rees { degree, .. } => rees(&work, degree, notes),
                    _ => unreachable!("handled above"),
                }
            };
            with_budget(job, budget)?
        }
    };
    outcome.params.insert(
        "generators".into(),
        json!(ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()),
    );
    Ok(outcome)
}

/// Runs `job` on a worker thread and gives up after `budget`.
fn with_budget(job: impl FnOnce() -> Result<Outcome> + Send + 'static, budget: Option<Duration>) -> Result<Outcome> {
    let Some(budget) = budget else { return job() };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    match rx.recv_timeout(budget) {
        Ok(r) => r,
        Err(_) => Ok(Outcome {
            budget_exceeded: true,
            text: "budget exceeded\n".into(),
            ..Default::default()
        }),
    }
}

fn window_or_default<F: Field>(ideal: &Ideal<F>, window: Option<(i64, i64)>) -> Result<(i64, i64)> {
    match window {
        Some(w) => Ok(w),
        None => Ok(default_window(ideal.saturate()?.regularity()?)),
    }
}

fn betti<F: Field>(ideal: &Ideal<F>, window: Option<(i64, i64)>) -> Result<Outcome> {
    let res = ideal.resolution()?;
    let table = res.betti_table()?;
    let n = ideal.ring().num_vars() as i64;
    let (lo, hi) = window.unwrap_or((0, resolve::cm_regularity(&table)? + 3));
    let mut checks = vec![Check::new("complex", res.is_complex()?, "consecutive differentials compose to zero")];
    let mut bad = Vec::new();
    for k in lo.max(0)..=hi {
        let mut alt = 0i128;
        for (&(i, j), &b) in table.entries() {
            let term = b as i128 * binomial(k - j + n - 1, n - 1);
            alt += if i % 2 == 0 { term } else { -term };
        }
        if alt != ideal.hilbert_function(k)? {
            bad.push(k);
        }
    }
    checks.push(Check::new(
        "betti-hilbert",
        bad.is_empty(),
        if bad.is_empty() {
            format!("alternating Betti sums match dim I_k for k in [{}, {hi}]", lo.max(0))
        } else {
            format!("mismatch at k = {bad:?}")
        },
    ));
    let rows = table
        .entries()
        .iter()
        .map(|(&(i, j), &b)| json!({"i": i, "j": j, "b": b}))
        .collect();
    let mut csv = String::from("i,j,b\n");
    for (&(i, j), &b) in table.entries() {
        let _ = writeln!(csv, "{i},{j},{b}");
    }
    let mut params = serde_json::Map::new();
    params.insert("window".into(), json!([lo.max(0), hi]));
    Ok(Outcome {
        params,
        rows,
        checks,
        text: table.to_grid(),
        csv,
        budget_exceeded: false,
    })
}

fn reg<F: Field>(ideal: &Ideal<F>, notes: Option<&CorpusEntry>) -> Result<Outcome> {
    let reg_i = ideal.regularity()?;
    let sat = ideal.saturate()?;
    let reg_sat = sat.regularity()?;
    let r_x = cohomology::sheaf_regularity_of_structure_sheaf(ideal).ok();
    let dim_x = sat.projective_dimension_of_zero_set()?;
    let mut rows = vec![
        json!({"quantity": "reg I", "value": reg_i}),
        json!({"quantity": "reg I^sat", "value": reg_sat}),
        json!({"quantity": "r_X", "value": r_x}),
        json!({"quantity": "dim X", "value": dim_x}),
    ];
    if let Ok(d) = ideal.d_invariant() {
        rows.push(json!({"quantity": "d", "value": d}));
    }
    let mut checks = Vec::new();
    if let Some(e) = notes {
        if let Some(r) = e.reg {
            checks.push(Check::new("known-regularity", r == reg_sat, format!("expected {r}, computed {reg_sat}")));
        }
        checks.push(Check::new("known-dimension", e.dim as i64 == dim_x, format!("expected {}, computed {dim_x}", e.dim)));
    }
    let mut text = String::new();
    let mut csv = String::from("quantity,value\n");
    for r in &rows {
        let v = if r["value"].is_null() { "-".to_string() } else { r["value"].to_string() };
        let _ = writeln!(text, "{:<10} {v}", r["quantity"].as_str().unwrap());
        let _ = writeln!(csv, "{},{}", r["quantity"].as_str().unwrap(), if v == "-" { "" } else { &v });
    }
    Ok(Outcome {
        rows,
        checks,
        text,
        csv,
        ..Default::default()
    })
}

fn powers<F: Field>(
    ideal: &Ideal<F>,
    notes: Option<&CorpusEntry>,
    max_t: u32,
    stable_window: usize,
    budget: Option<Duration>,
) -> Result<Outcome> {
    let label = notes.map_or("ideal", |e| e.name);
    let mut report = AsymptoticReport::compute(label, ideal, max_t, stable_window, budget)?;
    let mut checks = Vec::new();
    // s = 2 for nonlinear varieties cut out by quadrics. Taken from the
    // corpus flag, not computed.
    if notes.is_some_and(|e| e.quadric_generated) && report.s.is_some() {
        if let Err(e) = report.pin_s(2) {
            checks.push(Check::new("pinned-s", false, e.to_string()));
        }
    }
    let s_equals_d = report.s.as_ref().is_some_and(|s| s.equals_d());
    if s_equals_d {
        checks.push(Check::new(
            "e_t-nonnegative",
            report.all_excess_nonnegative(),
            "reg I^t >= d t at every computed t",
        ));
    }
    if let Some(e) = notes {
        if e.quadric_generated {
            checks.push(Check::new(
                "quadric-s-upper",
                s_equals_d && report.d == 2,
                format!("s_upper = {} and d = {}", report.s.as_ref().map_or("-".into(), |s| s.upper.to_string()), report.d),
            ));
        }
        if let Some((d, e_known)) = e.expected {
            checks.push(Check::new("known-d", report.d == d as i64, format!("expected d = {d}, computed {}", report.d)));
            let ok = match &report.stabilization {
                Stabilization::Stabilized { e, .. } => *e == e_known,
                Stabilization::NotStabilized => false,
            };
            let all = report.excess().iter().all(|x| x.2 == e_known);
            checks.push(Check::new(
                "known-e",
                ok && all,
                format!("expected e_t = {e_known} for every t"),
            ));
        }
    }
    for r in &report.rows {
        if let RowStatus::Failed(m) = &r.status {
            checks.push(Check::new(format!("row-{}", r.t), false, m.clone()));
        }
    }
    let mut params = serde_json::Map::new();
    params.insert("max_power".into(), json!(max_t));
    params.insert("stable_window".into(), json!(stable_window));
    let j = report.to_json();
    let rows = j["rows"].as_array().cloned().unwrap_or_default();
    let mut summary = json!({"d": report.d, "e": j["e"], "s": j["s"]});
    summary["all_e_t_nonnegative"] = j["all_e_t_nonnegative"].clone();
    params.insert("summary".into(), summary);
    Ok(Outcome {
        params,
        rows,
        checks,
        text: report.to_text(),
        csv: report.to_csv(None),
        budget_exceeded: report.timed_out(),
    })
}

fn verify<F: Field>(
    ideal: &Ideal<F>,
    lci: bool,
    dim: u32,
    reg: Option<i64>,
    max_t: u32,
    budget: Option<Duration>,
) -> Result<Outcome> {
    let hypothesis = if lci {
        let r = match reg {
            Some(r) => r,
            None => ideal.saturate()?.regularity()?,
        };
        Hypothesis::Lci { n: dim, r }
    } else {
        Hypothesis::Adjoint { n: dim }
    };
    let rows = match budget {
        Some(b) => asymptotics::regularity_sequence_with_budget(ideal, max_t, b)?,
        None => asymptotics::regularity_sequence(ideal, max_t)?,
    };
    let report: BoundReport = asymptotics::check_bounds(&rows, hypothesis)?;
    let checks = report
        .rows
        .iter()
        .filter_map(|r| {
            r.pass.map(|p| {
                Check::new(
                    format!("t={}", r.t),
                    p,
                    format!(
                        "reg {} {} bound {}",
                        r.reg.unwrap(),
                        if r.sharp == Some(true) { "=" } else if p { "<" } else { ">" },
                        r.bound
                    ),
                )
            })
        })
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "{:>4} {:>6} {:>6}  result", "t", "reg", "bound");
    let mut csv = String::from("t,reg,bound,pass,sharp\n");
    for r in &report.rows {
        let reg = r.reg.map_or("-".to_string(), |x| x.to_string());
        let res = match (r.pass, r.sharp) {
            (Some(true), Some(true)) => "PASS (equality)",
            (Some(true), _) => "PASS",
            (Some(false), _) => "FAIL",
            (None, _) => "not computed",
        };
        let _ = writeln!(text, "{:>4} {reg:>6} {:>6}  {res}", r.t, r.bound);
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r.t,
            r.reg.map_or(String::new(), |x| x.to_string()),
            r.bound,
            r.pass.map_or(String::new(), |x| x.to_string()),
            r.sharp.map_or(String::new(), |x| x.to_string())
        );
    }
    let mut params = serde_json::Map::new();
    params.insert("max_power".into(), json!(max_t));
    params.insert("hypothesis".into(), json!(hypothesis));
    let timed_out = rows.iter().any(|r| r.status == RowStatus::TimedOut);
    let rows_json = report.rows.iter().map(|r| json!(r)).collect();
    Ok(Outcome {
        params,
        rows: rows_json,
        checks,
        text,
        csv,
        budget_exceeded: timed_out,
    })
}

/// Parses `O`, `I`, `I^t`, `N*` and `X^a N*` with `X` one of `T`, `S`, `E`.
fn build_module<F: Field>(ideal: &Ideal<F>, expr: &str) -> Result<GradedModule<F>> {
    let sat = ideal.saturate()?;
    let e: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("unknown module expression `{expr}`"));
    match e.as_str() {
        "O" | "O_X" => return Ok(GradedModule::quotient_ring(&sat)),
        "I" => return GradedModule::of_ideal(&sat),
        "N*" => return GradedModule::conormal(&sat),
        _ => {}
    }
    if let Some(t) = e.strip_prefix("I^") {
        let t: u32 = t.parse().map_err(|_| bad())?;
        return GradedModule::of_ideal(&*sat.power(t)?.saturate()?);
    }
    let body = e.strip_suffix("N*").ok_or_else(bad)?;
    let (kind, a) = body.split_once('^').ok_or_else(bad)?;
    let kind = match kind {
        "T" => PowerKind::Tensor,
        "S" => PowerKind::Symmetric,
        "E" | "L" | "Λ" | "wedge" => PowerKind::Exterior,
        _ => return Err(bad()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    GradedModule::conormal(&sat)?.power(a, kind)
}

fn cohomology_table<F: Field>(ideal: &Ideal<F>, expr: &str, window: Option<(i64, i64)>) -> Result<Outcome> {
    let window = window_or_default(ideal, window)?;
    let module = build_module(ideal, expr)?;
    let coh = module.cohomology()?;
    let table = CohomologyTable::compute(expr, &coh, window)?;
    let mut bad = Vec::new();
    for k in window.0..=window.1 {
        if table.euler_characteristic(k) != Some(coh.hilbert_series().polynomial_value(k)) {
            bad.push(k);
        }
    }
    let checks = vec![Check::new(
        "euler-characteristic",
        bad.is_empty(),
        if bad.is_empty() {
            "alternating sum of h^i equals the Hilbert polynomial on the window".to_string()
        } else {
            format!("mismatch at k = {bad:?}")
        },
    )];
    let rows = table.to_json()["entries"].as_array().cloned().unwrap_or_default();
    let mut params = serde_json::Map::new();
    params.insert("module".into(), json!(expr));
    params.insert("window".into(), json!([window.0, window.1]));
    Ok(Outcome {
        params,
        rows,
        checks,
        text: table.to_text(),
        csv: table.to_csv(),
        budget_exceeded: false,
    })
}

fn vanishing<F: Field>(ideal: &Ideal<F>, a: u32, p: Option<usize>, window: Option<(i64, i64)>) -> Result<Outcome> {
    let window = window_or_default(ideal, window)?;
    let rep = cohomology::vanishing_check(ideal, a, p, window)?;
    let mut text = format!(
        "T^{a} N*: n = {}, p = {}, r_p = {}, r_X = {}\n",
        rep.n, rep.p, rep.r_p, rep.r_x
    );
    let mut csv = String::from("index,k,h,threshold\n");
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for r in &rep.rows {
        let observed = r.observed.map_or("never nonzero".to_string(), |o| o.to_string());
        let gap = r.gap.map_or("-".to_string(), |g| g.to_string());
        let _ = writeln!(
            text,
            "h^{}: threshold {}, vanishes from {observed}, gap {gap}: {}",
            r.index,
            r.threshold,
            if r.pass { "PASS" } else { "FAIL" }
        );
        for (k, h) in &r.values {
            let _ = writeln!(csv, "{},{k},{h},{}", r.index, r.threshold);
        }
        checks.push(Check::new(
            format!("h^{}", r.index),
            r.pass,
            format!("zero for k >= {}; observed from {observed}", r.threshold),
        ));
        rows.push(json!({
            "index": r.index,
            "threshold": r.threshold,
            "observed": r.observed,
            "gap": r.gap,
            "values": r.values.iter().map(|(k, h)| json!({"k": k, "h": h})).collect::<Vec<_>>(),
            "pass": r.pass,
        }));
    }
    let mut params = serde_json::Map::new();
    params.insert("a".into(), json!(a));
    params.insert("p".into(), json!(rep.p));
    params.insert("n".into(), json!(rep.n));
    params.insert("r_p".into(), json!(rep.r_p));
    params.insert("r_x".into(), json!(rep.r_x));
    params.insert("window".into(), json!([window.0, window.1]));
    Ok(Outcome {
        params,
        rows,
        checks,
        text,
        csv,
        budget_exceeded: false,
    })
}

fn phi<F: Field>(ideal: &Ideal<F>, a: u32, window: Option<(i64, i64)>) -> Result<Outcome> {
    let window = window_or_default(ideal, window)?;
    let sat = ideal.saturate()?;
    let betti = sat.betti_table()?;
    let pd = betti.projective_dimension().unwrap_or(0);
    let r1 = resolve::partial_regularity(&betti, 1.min(pd))?;
    let r_x = cohomology::sheaf_regularity_of_structure_sheaf(&sat)?;
    let normal = cohomology::normality_index(&sat, window)?;
    let base = match normal.h1_end {
        Some(e) => (e + 1).max(r_x),
        None => r_x,
    };
    let predicted = a as i64 * r1 + base;
    let analysis = PhiAnalysis::new(&sat, a)?;
    let mut rows = Vec::new();
    let mut text = format!("phi_{a}: predicted surjective for k >= {predicted} (r_1 = {r1}, r_X = {r_x}, n0 = {})\n", normal.h1_end.map_or("-inf".to_string(), |e| (e + 1).to_string()));
    let _ = writeln!(text, "{:>4} {:>7} {:>7} {:>5} {:>7}  surjective", "k", "source", "kernel", "rank", "target");
    let mut csv = String::from("k,source,kernel,rank,target,quotient,surjective,lci_consistent\n");
    let mut failures = Vec::new();
    let mut inconsistent = Vec::new();
    for k in window.0.max(0)..=window.1 {
        let r = analysis.at(k)?;
        let _ = writeln!(
            text,
            "{k:>4} {:>7} {:>7} {:>5} {:>7}  {}",
            r.source_dim, r.kernel_dim, r.rank, r.target_dim, r.surjective
        );
        let _ = writeln!(
            csv,
            "{k},{},{},{},{},{},{},{}",
            r.source_dim, r.kernel_dim, r.rank, r.target_dim, r.quotient_dim, r.surjective, r.lci_consistent
        );
        if k >= predicted && !r.surjective {
            failures.push(k);
        }
        if !r.lci_consistent {
            inconsistent.push(k);
        }
        rows.push(json!(r));
    }
    let checks = vec![
        Check::new(
            "surjective-above-prediction",
            failures.is_empty(),
            if failures.is_empty() {
                format!("surjective for every k >= {predicted} in the window")
            } else {
                format!("not surjective at k = {failures:?}")
            },
        ),
        Check::new(
            "lci-consistency",
            inconsistent.is_empty(),
            if inconsistent.is_empty() {
                "h^0 of I^a/I^(a+1) and S^a N* agree".to_string()
            } else {
                format!("disagree at k = {inconsistent:?}")
            },
        ),
    ];
    let mut params = serde_json::Map::new();
    params.insert("a".into(), json!(a));
    params.insert("predicted".into(), json!(predicted));
    params.insert("window".into(), json!([window.0.max(0), window.1]));
    Ok(Outcome {
        params,
        rows,
        checks,
        text,
        csv,
        budget_exceeded: false,
    })
}

fn rees<F: Field>(ideal: &Ideal<F>, degree: Option<u32>, notes: Option<&CorpusEntry>) -> Result<Outcome> {
    let d = match degree {
        Some(d) => d,
        None => ideal.d_invariant()?,
    };
    let pres = ideal.rees_presentation(d)?;
    let n = ideal.saturate()?.projective_dimension_of_zero_set()?.max(0) as u32;
    let ambient = ideal.ring().num_vars() as u32 - 1;
    let bound = e_bound_from_rees(&pres, ambient);
    let mut text = format!(
        "degree {d}: {} fiber variables, {} equations\n",
        pres.fiber_variables().len(),
        pres.generators().len()
    );
    let mut csv = String::from("x_degree,y_degree,generator\n");
    let mut rows = Vec::new();
    for (g, (dx, dy)) in pres.generators().iter().zip(pres.bidegrees()) {
        let _ = writeln!(text, "  ({dx}, {dy})  {g}");
        let _ = writeln!(csv, "{dx},{dy},{g}");
        rows.push(json!({"x_degree": dx, "y_degree": dy, "generator": g.to_string()}));
    }
    let _ = writeln!(text, "D = {}", pres.max_x_degree());
    let mut checks = Vec::new();
    match &bound {
        Ok(b) => {
            let _ = writeln!(text, "e <= {b} (n = {ambient})");
            if let Some((_, e)) = notes.and_then(|e| e.expected) {
                checks.push(Check::new("known-e-within-bound", e <= *b as i64, format!("e = {e}, bound {b}")));
            }
        }
        Err(e) => {
            let _ = writeln!(text, "e bound: {e}");
        }
    }
    let mut params = serde_json::Map::new();
    params.insert("degree".into(), json!(d));
    params.insert("dim_x".into(), json!(n));
    params.insert("ambient_dim".into(), json!(ambient));
    params.insert("fiber_variables".into(), json!(pres.fiber_variables()));
    params.insert("max_x_degree".into(), json!(pres.max_x_degree()));
    params.insert("e_bound".into(), bound.as_ref().map_or(Value::Null, |b| json!(b)));
    Ok(Outcome {
        params,
        rows,
        checks,
        text,
        csv,
        budget_exceeded: false,
    })
}

fn list_corpus(format: Format) -> String {
    match format {
        Format::Json => {
            let v: Vec<Value> = CORPUS
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "description": e.description,
                        "nvars": e.nvars,
                        "generators": e.generators,
                        "dim": e.dim,
                        "reg": e.reg,
                        "lci": e.lci,
                        "quadric_generated": e.quadric_generated,
                        "expected": e.expected.map(|(d, e)| json!({"d": d, "e": e})),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Csv => {
            let mut s = String::from("name,nvars,dim,reg,generators\n");
            for e in CORPUS {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    e.name,
                    e.nvars,
                    e.dim,
                    e.reg.map_or(String::new(), |r| r.to_string()),
                    e.generators.join(";")
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for e in CORPUS {
                let _ = writeln!(s, "{:<24} {}", e.name, e.description);
            }
            s
        }
    }
}

fn render(command: &str, input: &Input, source: &Source, field: FieldSpec, out: Outcome) -> Invocation {
    let all_pass = out.checks.iter().all(|c| c.pass);
    let (code, verdict) = if out.budget_exceeded {
        (EXIT_BUDGET, "budget-exceeded")
    } else if all_pass {
        (EXIT_OK, "pass")
    } else {
        (EXIT_CHECK_FAILED, "fail")
    };
    let gens = out.params.get("generators").cloned().unwrap_or(json!([]));
    let gens: Vec<String> = gens.as_array().map_or(Vec::new(), |a| a.iter().map(|g| g.as_str().unwrap_or("").to_string()).collect());
    let mut params = out.params.clone();
    params.remove("generators");
    if let Some(b) = input.budget_seconds {
        params.insert("budget_seconds".into(), json!(b));
    }
    let stdout = match input.format {
        Format::Json => {
            let v = json!({
                "command": command,
                "input": source.describe(field, &gens),
                "params": Value::Object(params),
                "rows": out.rows,
                "checks": out.checks,
                "verdict": verdict,
            });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Csv => out.csv,
        Format::Text => {
            let mut s = out.text;
            for c in &out.checks {
                let _ = writeln!(s, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let _ = writeln!(s, "verdict: {verdict}");
            s
        }
    };
    Invocation {
        code,
        stdout,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Invocation {
        run(std::iter::once("powreg").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["betti"]).code, EXIT_USAGE);
        assert_eq!(call(&["betti", "--corpus", "nope"]).code, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(call(&["powers", "--corpus", "line", "--max-power", "0"]).code, EXIT_USAGE);
        assert_eq!(call(&["cohomology", "--corpus", "line", "--window", "3", "1"]).code, EXIT_USAGE);
        assert_eq!(call(&["cohomology", "--corpus", "line", "--module", "Q"]).code, EXIT_USAGE);
        assert_eq!(call(&["verify-bounds", "--corpus", "line", "--lci", "--dim", "1", "--reg", "1"]).code, EXIT_USAGE);
    }

    #[test]
    fn powers_json() {
        let out = call(&["powers", "--corpus", "twisted-cubic", "--max-power", "3", "--format", "json"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let regs: Vec<i64> = v["rows"].as_array().unwrap().iter().map(|r| r["reg"].as_i64().unwrap()).collect();
        assert_eq!(regs, vec![2, 4, 6]);
        assert_eq!(v["params"]["summary"]["d"], 2);
        assert_eq!(v["params"]["summary"]["e"]["e"], 0);
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn module_expressions() {
        let r = crate::poly::PolynomialRing::standard(4, Rationals).unwrap();
        let i = Ideal::parse(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]).unwrap();
        assert_eq!(build_module(&i, "T^2 N*").unwrap().num_generators(), 9);
        assert_eq!(build_module(&i, "O").unwrap().num_generators(), 1);
        assert_eq!(build_module(&i, "E^2N*").unwrap().num_generators(), 3);
        assert!(build_module(&i, "Q^2 N*").is_err());
    }
}

//! Command-line front end: argument parsing, dispatch and exit codes.

pub mod input;
pub mod output;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use futaki_core::exactalg::{ExpPoly, Rational, Real};
use futaki_core::futaki::{
    admissible_direction, f_function, f_function_recursive, f_numeric, fut_derivative, verify_recursion,
};
use futaki_core::geometry::{CompleteIntersection, DiagonalField};
use futaki_core::quantize::{convergence_report, fk, nk};
use futaki_core::soliton::{admissible_torus, check_critical, find_soliton, SolitonOutcome};
use futaki_core::Error;

use input::{parse_rational, parse_rationals, InputDocument};
use output::{Entry, Metadata, ResultDocument};

pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Evaluation(String),
    Solver(String),
    Verification { first: String, report: Box<ResultDocument> },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Evaluation(_) => 3,
            CliError::Solver(_) => 4,
            CliError::Verification { .. } => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Evaluation(m) => write!(f, "evaluation failed: {m}"),
            CliError::Solver(m) => write!(f, "solver failed: {m}"),
            CliError::Verification { first, .. } => write!(f, "verification failed: {first}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EvalAtPole | Error::PoleAtZero { .. } => CliError::Evaluation(e.to_string()),
            Error::NoConvergence { .. } => CliError::Solver(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "futaki", version, about = "Modified Futaki invariants of Fano complete intersections")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Precision {
    /// Working precision in bits.
    #[arg(long, env = "FUTAKI_PRECISION_BITS", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the input and report m, weights, degree and torus dimension.
    Check {
        /// Input JSON document, or `-` for stdin.
        input: PathBuf,
    },
    /// F(V) as an exponential polynomial, optionally evaluated at t.
    Eval {
        input: PathBuf,
        #[arg(long)]
        t: Option<String>,
        /// Also evaluate through the numeric divided-difference path.
        #[arg(long)]
        numeric: bool,
        #[command(flatten)]
        precision: Precision,
    },
    /// Fut_V(W) for a direction `μ_0,…,μ_N[;β_1,…,β_s]`.
    Derivative {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long)]
        t: Option<String>,
        #[command(flatten)]
        precision: Precision,
    },
    /// N_k, F_k and F_k/(k N_k) against F(V)(t).
    Quantize {
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Maximize F over the admissible torus.
    Soliton {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        #[command(flatten)]
        precision: Precision,
    },
    /// Run the identity checks on the input.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        precision: Precision,
    },
}

fn read_input(path: &PathBuf) -> Result<InputDocument, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    InputDocument::from_json(&text)
}

fn parse_t(s: &str) -> Result<Rational, CliError> {
    parse_rational("t", 0, s)
}

/// `μ_0,…,μ_N` or `μ_0,…,μ_N;β_1,…,β_s`.
fn parse_direction(ci: &CompleteIntersection, s: &str) -> Result<DiagonalField, CliError> {
    let split = |part: &str| -> Vec<String> {
        part.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(String::from)
            .collect()
    };
    let mut parts = s.splitn(2, ';');
    let eig = parse_rationals("direction", &split(parts.next().unwrap_or_default()))?;
    let weights = parts.next().map(|w| parse_rationals("direction weights", &split(w))).transpose()?;
    Ok(admissible_direction(ci, eig, weights)?)
}

fn reals(v: &[Real]) -> String {
    v.iter().map(Real::to_decimal).collect::<Vec<_>>().join(", ")
}

fn cmd_check(doc: &InputDocument) -> Result<ResultDocument, CliError> {
    let (ci, field) = doc.load()?;
    let mut out = ResultDocument::new("check", Metadata::new(&ci, &field));
    out.push(Entry::text("m", ci.fano_index().to_string()));
    out.push(Entry::text(
        "weights",
        field.weights().iter().map(Rational::to_string).collect::<Vec<_>>().join(", "),
    ));
    out.push(Entry::text("anticanonical_degree", ci.anticanonical_degree().to_string()));
    if ci.supports().is_some() {
        let torus = admissible_torus(&ci)?;
        out.push(Entry::text("torus_dimension", torus.dim().to_string()));
        for (i, v) in torus.basis().iter().enumerate() {
            let s = v.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ");
            out.push(Entry::text(format!("torus_basis[{i}]"), format!("({s})")));
        }
    }
    Ok(out)
}

fn cmd_eval(doc: &InputDocument, t: Option<&str>, numeric: bool, prec: u32) -> Result<ResultDocument, CliError> {
    let (ci, field) = doc.load()?;
    let f = f_function(&ci, &field);
    let mut out = ResultDocument::new("F", Metadata::new(&ci, &field)).with_expression(&f);
    if let Some(t) = t {
        let t = parse_t(t)?;
        out.push(Entry::text("t", t.to_string()));
        out.push(Entry::number("F(t)", &f.eval(&t, prec)?));
        if numeric {
            out.push(Entry::number("F(t) numeric", &f_numeric(&ci, &field, &t, prec)));
        }
    }
    Ok(out)
}

fn cmd_derivative(doc: &InputDocument, direction: &str, t: Option<&str>, prec: u32) -> Result<ResultDocument, CliError> {
    let (ci, field) = doc.load()?;
    let w = parse_direction(&ci, direction)?;
    let d = fut_derivative(&ci, &field, &w)?;
    let mut out = ResultDocument::new("Fut", Metadata::new(&ci, &field)).with_expression(&d);
    if let Some(t) = t {
        let t = parse_t(t)?;
        out.push(Entry::text("t", t.to_string()));
        out.push(Entry::number("Fut(t)", &d.eval(&t, prec)?));
    }
    Ok(out)
}

fn cmd_quantize(doc: &InputDocument, k: u32, t: &str, prec: u32) -> Result<ResultDocument, CliError> {
    if k == 0 {
        return Err(CliError::Input("k must be at least 1".into()));
    }
    let (ci, field) = doc.load()?;
    let t = parse_t(t)?;
    let (reference, rows) = convergence_report(&ci, &field, &t, &[k], prec)?;
    let row = &rows[0];
    let mut out = ResultDocument::new("quantize", Metadata::new(&ci, &field));
    out.push(Entry::text("k", k.to_string()));
    out.push(Entry::text("t", t.to_string()));
    out.push(Entry::text("N_k", row.nk.to_string()));
    out.push(Entry::number("F_k", &row.fk));
    out.push(Entry::number("F_k/(k N_k)", &row.normalized));
    out.push(Entry::number("F(t)", &reference));
    out.push(Entry::number("error", &row.error));
    Ok(out)
}

fn cmd_soliton(doc: &InputDocument, tol: f64, max_iter: usize, prec: u32) -> Result<ResultDocument, CliError> {
    let (ci, field) = doc.load()?;
    let mut out = ResultDocument::new("soliton", Metadata::new(&ci, &field));
    match find_soliton(&ci, tol, max_iter, prec)? {
        SolitonOutcome::Trivial => {
            out.push(Entry::text("torus_dimension", "0"));
            out.push(Entry::text("result", "trivial: only V = 0 is admissible"));
        }
        SolitonOutcome::Found(p) => {
            let report = check_critical(&ci, &p.eigenvalues, tol, prec)?;
            out.push(Entry::text("torus_dimension", p.coefficients.len().to_string()));
            out.push(Entry::text("coefficients", reals(&p.coefficients)));
            out.push(Entry::text("eigenvalues", reals(&p.eigenvalues)));
            out.push(Entry::text("gradient", reals(&p.gradient)));
            out.push(Entry::text("gradient_norm", format!("{:e}", p.gradient_norm)));
            out.push(Entry::number("F", &p.value));
            out.push(Entry::text("iterations", p.iterations.to_string()));
            out.push(Entry::text("critical", if report.passes() { "yes" } else { "no" }));
        }
    }
    Ok(out)
}

fn cmd_verify(doc: &InputDocument, prec: u32) -> Result<ResultDocument, CliError> {
    let (ci, field) = doc.load()?;
    let f = f_function(&ci, &field);
    let mut checks: Vec<(&str, bool)> = Vec::new();

    checks.push(("recursion identity", verify_recursion(&ci, &field).iter().all(|c| c.holds())));
    checks.push(("two-path equality", f == f_function_recursive(&ci, &field)));
    checks.push((
        "scaling covariance",
        ["2", "-1", "1/3"].iter().all(|c| {
            let c: Rational = c.parse().expect("literal rational");
            f_function(&ci, &field.scaled(&c)) == f.rescale_variable(&c)
        }),
    ));
    checks.push(("limit at t = 0", f.limit_at_zero().map(|l| l == -1).unwrap_or(false)));
    checks.push((
        "zero field",
        f_function(&ci, &DiagonalField::zero(&ci)) == ExpPoly::constant(Rational::from(-1)),
    ));
    checks.push((
        "derivative along V",
        fut_derivative(&ci, &field, &field).map(|d| d == f.euler_derivative()).unwrap_or(false),
    ));
    let t = Rational::from((1, 4));
    let agree = {
        let exact = f.eval(&t, prec)?;
        let num = f_numeric(&ci, &field, &t, prec);
        num.relative_error(&exact).to_f64() <= 2f64.powi(16 - prec as i32)
    };
    checks.push(("symbolic-numeric agreement", agree));
    let zero = DiagonalField::zero(&ci);
    checks.push((
        "quantized normalization",
        (1..=16u32).all(|k| {
            fk(&ci, &zero, k, &t, prec) == -Real::from_rational(&Rational::from(nk(&ci, k) * k), prec)
        }),
    ));
    let (_, rows) = convergence_report(&ci, &field, &t, &[8, 16, 32, 64], prec)?;
    let errs: Vec<f64> = rows.iter().map(|r| r.error.to_f64()).collect();
    let converging = if field.is_zero() {
        errs.iter().all(|e| *e == 0.0)
    } else {
        errs.windows(2).all(|w| w[1] < w[0])
    };
    checks.push(("quantized convergence", converging));

    let mut out = ResultDocument::new("verify", Metadata::new(&ci, &field));
    let mut first = None;
    for (name, ok) in &checks {
        out.push(Entry::text(*name, if *ok { "pass" } else { "FAIL" }));
        if !ok && first.is_none() {
            first = Some(name.to_string());
        }
    }
    match first {
        None => Ok(out),
        Some(first) => Err(CliError::Verification {
            first,
            report: Box::new(out),
        }),
    }
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Result<ResultDocument, CliError> {
    match &cli.command {
        Command::Check { input } => cmd_check(&read_input(input)?),
        Command::Eval {
            input,
            t,
            numeric,
            precision,
        } => cmd_eval(&read_input(input)?, t.as_deref(), *numeric, precision.precision),
        Command::Derivative {
            input,
            direction,
            t,
            precision,
        } => cmd_derivative(&read_input(input)?, direction, t.as_deref(), precision.precision),
        Command::Quantize { input, k, t, precision } => cmd_quantize(&read_input(input)?, *k, t, precision.precision),
        Command::Soliton {
            input,
            tol,
            max_iter,
            precision,
        } => cmd_soliton(&read_input(input)?, *tol, *max_iter, precision.precision),
        Command::Verify { input, precision } => cmd_verify(&read_input(input)?, precision.precision),
    }
}

/// Render a document in the chosen format.
pub fn render(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json() + "\n",
    }
}

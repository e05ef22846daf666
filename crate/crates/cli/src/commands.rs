use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerop::families::{self, Family, FamilySpec, Variant};
use eulerop::identities::{self, GfCheck};
use eulerop::ladder;
use eulerop::number::{self, Rational};
use eulerop::op::separate;
use eulerop::solver::{self, SeparationMode, SolveReport};
use eulerop::{Error, LaurentPoly, TSeries, XSeries};
use serde_json::{json, Value};

use crate::expr::{self, ExprError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "eulerop", version, about = "Exact Euler-operator solver and identity checker")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Bindings {
    /// Parameter binding `name=p/q`; repeatable.
    #[arg(long = "param", short = 'p', value_name = "NAME=VALUE")]
    pub param: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum Mode {
    #[default]
    Ascending,
    Descending,
}

impl From<Mode> for SeparationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Ascending => SeparationMode::Ascending,
            Mode::Descending => SeparationMode::Descending,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum Route {
    /// Term-by-term sum against the closed form.
    #[default]
    Closed,
    /// `exp(-B) exp(-xt)` against the closed form on a square window.
    Operator,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Indicial roots of an operator.
    Indicial {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        bind: Bindings,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Inverse-operator series for an operator or a named family.
    Solve {
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        op: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        bind: Bindings,
        #[arg(long, default_value_t = 10)]
        order: u32,
        /// Index into the sorted indicial roots; all roots when omitted.
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Applies an operator to a stored solution.
    Residual {
        #[arg(long)]
        op: String,
        /// JSON series, polynomial, or a `solve` report.
        #[arg(long)]
        solution: PathBuf,
        #[command(flatten)]
        bind: Bindings,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// A member of a named family.
    Family {
        name: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        bind: Bindings,
        #[arg(long, default_value_t = 10)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Verification table for a ladder relation.
    Ladder {
        name: String,
        #[command(flatten)]
        bind: Bindings,
        #[arg(long, default_value_t = 0)]
        from: u32,
        #[arg(long, default_value_t = 10)]
        to: u32,
    },
    /// Rodriguez formula against the family, for 0..=n.
    Rodriguez {
        family: String,
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
    /// Generating function against its closed form.
    Genfunc {
        family: String,
        #[arg(long, default_value_t = 10)]
        order: u32,
        #[arg(long, value_enum, default_value_t)]
        route: Route,
    },
    /// `[a, b]` in canonical form.
    Commutator {
        a: String,
        b: String,
        #[command(flatten)]
        bind: Bindings,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Expr(ExprError),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::Expr(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::Resonance { .. } | Error::DegenerateIndicial { .. } | Error::ZeroIndicial) => {
                EXIT_DEGENERATE
            }
            _ => EXIT_USAGE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Expr(ExprError::Syntax { .. }) => "parse",
            Failure::Expr(ExprError::Unbound(_)) => "unbound_parameter",
            Failure::Core(e) => match e {
                Error::Resonance { .. } => "resonance",
                Error::MixedDegree => "mixed_degree",
                Error::NotARoot { .. } => "not_a_root",
                Error::DegenerateIndicial { .. } => "degenerate_indicial",
                Error::ZeroIndicial => "zero_indicial",
                Error::NotInvertible => "not_invertible",
                Error::NonZeroConstant => "nonzero_constant",
                Error::Shape { .. } => "shape",
                Error::InconsistentConjugate => "inconsistent_conjugate",
                Error::InvalidArgument(_) => "invalid_argument",
            },
        }
    }

    fn detail(&self) -> String {
        match self {
            Failure::Usage(s) => s.clone(),
            Failure::Expr(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        let mut inner = json!({"kind": self.kind(), "detail": self.detail()});
        match self {
            Failure::Expr(ExprError::Syntax { offset, .. }) => inner["offset"] = json!(offset),
            Failure::Core(Error::DegenerateIndicial { root, multiplicity }) => {
                inner["root"] = json!(number::to_string(root));
                inner["multiplicity"] = json!(multiplicity);
            }
            Failure::Core(Error::Resonance { exponent }) => inner["exponent"] = json!(number::to_string(exponent)),
            _ => {}
        }
        json!({"error": inner})
    }
}

/// Output of a successful command: JSON document, text rendering, exit code.
struct Report {
    json: Value,
    text: String,
    code: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: EXIT_OK }
    }

    fn verdict(json: Value, text: String, passed: bool) -> Self {
        Report { json, text, code: if passed { EXIT_OK } else { EXIT_MISMATCH } }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    match Cli::try_parse_from(&args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() };
            }
            let failure = Failure::Usage(e.to_string().trim().to_string());
            render_failure(&failure, json_mode)
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: if cli.json { format!("{}\n", report.json) } else { report.text },
            stderr: String::new(),
        },
        Err(f) => render_failure(&f, cli.json),
    }
}

fn render_failure(f: &Failure, json_mode: bool) -> Outcome {
    if json_mode {
        Outcome { code: f.code(), stdout: format!("{}\n", f.to_json()), stderr: String::new() }
    } else {
        Outcome { code: f.code(), stdout: String::new(), stderr: format!("error ({}): {}\n", f.kind(), f.detail()) }
    }
}

fn parse_bindings(b: &Bindings) -> Result<BTreeMap<String, Rational>, Failure> {
    let mut out = BTreeMap::new();
    for item in &b.param {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--param expects NAME=VALUE, got {item:?}")))?;
        let value = number::parse(v.trim()).map_err(|e| Failure::Usage(format!("--param {k}: {e}")))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    number::parse(text.trim()).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn family_by_name(name: &str) -> Result<Family, Failure> {
    Family::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown family {name:?}")))
}

fn roots_text(roots: &[Rational]) -> String {
    roots.iter().map(number::to_string).collect::<Vec<_>>().join(", ")
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Indicial { op, bind, mode } => indicial(op, bind, *mode),
        Command::Solve { op, family, bind, order, root, mode } => match (op, family) {
            (Some(op), _) => solve_op(op, bind, *order, *root, *mode),
            (None, Some(name)) => solve_family(name, bind, *order, *root, *mode),
            (None, None) => Err(Failure::Usage("solve needs --op or --family".into())),
        },
        Command::Residual { op, solution, bind, order } => residual(op, solution, bind, *order),
        Command::Family { name, n, alpha, bind, order, root } => {
            family(name, n.as_deref(), alpha.as_deref(), bind, *order, *root)
        }
        Command::Ladder { name, bind, from, to } => ladder_table(name, bind, *from, *to),
        Command::Rodriguez { family, n } => rodriguez(family, *n),
        Command::Genfunc { family, order, route } => genfunc(family, *order as usize, *route),
        Command::Commutator { a, b, bind } => {
            let params = parse_bindings(bind)?;
            let c = expr::operator(a, &params)?.commutator(&expr::operator(b, &params)?);
            Ok(Report::ok(json!({"commutator": c.to_json(), "display": c.to_string()}), format!("{c}\n")))
        }
    }
}

fn indicial(op: &str, bind: &Bindings, mode: Mode) -> Result<Report, Failure> {
    let l = expr::operator(op, &parse_bindings(bind)?)?;
    let sep = separate(&solver::normalize(&l, mode.into())?);
    let res = solver::indicial_roots(&sep.f)?;
    let roots = res.with_multiplicity();
    let strings: Vec<String> = roots.iter().map(number::to_string).collect();
    let mut text = format!("F(D) = {}\nroots: {}\n", sep.f, roots_text(&roots));
    if res.is_degenerate() {
        text.push_str("degenerate: repeated root\n");
    }
    if res.unresolved_degree > 0 {
        text.push_str(&format!("irrational or complex roots of total degree {}\n", res.unresolved_degree));
    }
    Ok(Report::ok(json!({"roots": strings}), text))
}

fn solve_roots(f: &eulerop::EulerPoly, p: &eulerop::GradedOp, roots: &[Rational], order: u32, pick: Option<usize>) -> Result<Report, Failure> {
    let chosen: Vec<&Rational> = match pick {
        Some(i) => vec![roots
            .get(i)
            .ok_or_else(|| Failure::Usage(format!("root index {i} out of range ({} roots)", roots.len())))?],
        None => roots.iter().collect(),
    };
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for r in chosen {
        match solver::solve_series(f, p, r, order) {
            Ok(rep) => reports.push(rep),
            Err(e) => failed.push((r.clone(), Failure::Core(e))),
        }
    }
    if reports.is_empty() {
        if let Some((_, e)) = failed.pop() {
            return Err(e);
        }
    }
    let mut text = String::new();
    for r in &reports {
        let status = if r.terminated { "terminated" } else { "truncated" };
        text.push_str(&format!("y = {}  ({status})\n", r.solution));
        if !r.resonances.is_empty() {
            text.push_str(&format!("  benign resonances at {}\n", roots_text(&r.resonances)));
        }
    }
    for (root, e) in &failed {
        text.push_str(&format!("root {}: {}\n", number::to_string(root), e.detail()));
    }
    let mut json = json!({"solutions": reports.iter().map(SolveReport::to_json).collect::<Vec<_>>()});
    if !failed.is_empty() {
        json["failed"] = failed
            .iter()
            .map(|(root, e)| {
                let mut v = e.to_json()["error"].clone();
                v["root"] = json!(number::to_string(root));
                v
            })
            .collect();
    }
    Ok(Report::ok(json, text))
}

fn solve_op(op: &str, bind: &Bindings, order: u32, root: Option<usize>, mode: Mode) -> Result<Report, Failure> {
    let l = expr::operator(op, &parse_bindings(bind)?)?;
    let sep = separate(&solver::normalize(&l, mode.into())?);
    let res = solver::indicial_roots(&sep.f)?;
    if let Some((r, m)) = res.roots.iter().find(|(_, m)| *m > 1) {
        return Err(Failure::Core(Error::DegenerateIndicial { root: r.clone(), multiplicity: *m }));
    }
    let roots: Vec<Rational> = res.roots.into_iter().map(|(r, _)| r).collect();
    solve_roots(&sep.f, &sep.p, &roots, order, root)
}

fn family_spec(family: Family, params: BTreeMap<String, Rational>, mode: Mode) -> FamilySpec {
    let variant = match mode {
        Mode::Ascending => Variant::EulerSeeded,
        Mode::Descending => Variant::DerivativeSeeded,
    };
    let mut spec = FamilySpec::new(family, variant);
    spec.params = params;
    spec
}

fn solve_family(name: &str, bind: &Bindings, order: u32, root: Option<usize>, mode: Mode) -> Result<Report, Failure> {
    let spec = family_spec(family_by_name(name)?, parse_bindings(bind)?, mode);
    let eq = spec.equation(order)?;
    solve_roots(&eq.separation.f, &eq.separation.p, &eq.roots, order, root)
}

fn load_solution(path: &PathBuf) -> Result<XSeries, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let value = match value.get("solutions").and_then(Value::as_array) {
        Some(list) => list.first().cloned().ok_or_else(|| Failure::Usage("empty solutions list".into()))?,
        None => value,
    };
    let value = value.get("solution").cloned().unwrap_or(value);
    if value.get("base_exponent").is_some() {
        Ok(XSeries::from_json(&value)?)
    } else {
        Ok(XSeries::from_laurent(&LaurentPoly::from_json(&value)?))
    }
}

fn residual(op: &str, solution: &PathBuf, bind: &Bindings, order: u32) -> Result<Report, Failure> {
    let l = expr::operator(op, &parse_bindings(bind)?)?;
    let y = load_solution(solution)?;
    let r = solver::check_residual(&l, &y, order);
    let zero = r.is_zero();
    let text = if zero { "residual: 0\n".to_string() } else { format!("residual: {r}\n") };
    Ok(Report::verdict(json!({"residual": r.to_json(), "zero": zero}), text, zero))
}

fn family(
    name: &str,
    n: Option<&str>,
    alpha: Option<&str>,
    bind: &Bindings,
    order: u32,
    root: usize,
) -> Result<Report, Failure> {
    let fam = family_by_name(name)?;
    let mut params = parse_bindings(bind)?;
    if let Some(n) = n {
        params.insert("n".into(), parse_rational("n", n)?);
    }
    if let Some(a) = alpha {
        params.insert("alpha".into(), parse_rational("alpha", a)?);
    }
    let spec = family_spec(fam, params, Mode::Ascending);
    let poly = match fam {
        Family::Laguerre => Some(families::laguerre(spec.index("n")?, spec.param("alpha")?)?),
        Family::Hermite => Some(families::hermite(spec.index("n")?)),
        Family::ChebyshevU => Some(families::chebyshev_u(spec.index("n")?)),
        _ => None,
    };
    if let Some(p) = poly {
        return Ok(Report::ok(p.to_json(), format!("{p}\n")));
    }
    let series = match fam {
        Family::Hg2F1 => families::hypergeometric_2f1(spec.param("alpha")?, spec.param("beta")?, spec.param("gamma")?, order, root)?,
        Family::Chg => families::confluent_1f1(spec.param("alpha")?, spec.param("gamma")?, order, root)?,
        Family::Pfq => families::pfq(&spec.list("a"), &spec.list("b"), order, root)?,
        Family::PeriodicCos => {
            let lambda = u32::try_from(root).map_err(|_| Failure::Usage("root must be 0 or 1".into()))?;
            families::periodic_cos(spec.param("a")?, lambda, order)?
        }
        _ => unreachable!("polynomial families handled above"),
    };
    Ok(Report::ok(series.to_json(), format!("{series}\n")))
}

fn ladder_table(name: &str, bind: &Bindings, from: u32, to: u32) -> Result<Report, Failure> {
    if from > to {
        return Err(Failure::Usage(format!("--from {from} exceeds --to {to}")));
    }
    let rel = ladder::relation_by_name(name, &parse_bindings(bind)?)?;
    let rows = rel.verify(from..=to)?;
    let passed = rows.iter().all(|r| r.ok);
    let mut text = format!("{}\n", rel.name);
    for r in &rows {
        let measured = r.measured.as_ref().map(number::to_string).unwrap_or_else(|| "-".into());
        let mark = if r.ok { "ok" } else { "MISMATCH" };
        text.push_str(&format!("  n={:<3} expected {:<12} measured {:<12} {mark}\n", r.n, number::to_string(&r.expected), measured));
    }
    Ok(Report::verdict(ladder::rows_to_json(&rows), text, passed))
}

fn rodriguez(name: &str, n: u32) -> Result<Report, Failure> {
    let fam = family_by_name(name)?;
    let checks = identities::rodriguez_report(fam, n)?;
    let first = checks.iter().find(|c| !c.equal()).map(|c| c.n);
    let passed = first.is_none();
    let json = json!({
        "family": fam.name(),
        "equal": passed,
        "first_mismatch": first,
        "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    let text = match first {
        None => format!("{}: Rodriguez formula matches for n = 0..={n}\n", fam.name()),
        Some(k) => format!("{}: first mismatch at n = {k}\n", fam.name()),
    };
    Ok(Report::verdict(json, text, passed))
}

fn genfunc(name: &str, order: usize, route: Route) -> Result<Report, Failure> {
    let fam = family_by_name(name)?;
    let check = match (fam, route) {
        (Family::Laguerre, Route::Closed) => identities::gf_laguerre(order)?,
        (Family::Laguerre, Route::Operator) => {
            let window = |s: &TSeries| {
                TSeries::from_fn(order, |k| s.coeff(k).truncate_above(order as i64))
            };
            GfCheck {
                lhs: window(&identities::gf_laguerre_operator(order, order as u32)),
                rhs: window(&identities::laguerre_gf_closed(order)?),
            }
        }
        (Family::ChebyshevU, Route::Closed) => identities::gf_chebyshev(order)?,
        _ => {
            return Err(Failure::Usage(format!(
                "no generating function for {} with the {route:?} route",
                fam.name()
            )))
        }
    };
    let mut json = check.to_json();
    json["family"] = json!(fam.name());
    let text = match check.first_mismatch() {
        None => format!("{}: generating function matches through t^{order}\nclosed form: {}\n", fam.name(), check.rhs),
        Some(k) => format!("{}: first mismatch at t^{k}\n", fam.name()),
    };
    let passed = check.equal();
    Ok(Report::verdict(json, text, passed))
}

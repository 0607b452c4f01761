//! Batch front end: verification suites, spectra, Hodge tables, Laplacian
//! scans, classification of user input and matrix export.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use crate::calculus::{Braiding, Direction, Label};
use crate::exterior::{antisymmetrizer, degree_data, spectral_report, Form, Tensor};
use crate::hodge::{self, hodge_t, lift_form, Contraction, Expr, Family, HodgeConfig, Operator, Var, Verdict};
use crate::laplacian::{self, BoxSide, Branch};
use crate::metric::{self, AxiomResult, MetricMatrix};
use crate::qalgebra::{self, Reconstruction, RelationCheck};
use crate::scalar::{parse_scalar, GaussRat, ScalarQ};
use crate::verify::{self, SigmaFault, Suite, VerifyOptions, SCHEMA_VERSION};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qhodge", version, about = "Exact Hodge operators, metrics and Laplacians on quantum SU(2)")]
pub struct Cli {
    /// Evaluation point q in (0, 1) as p/r; adds exact and decimal value columns.
    #[arg(long, global = true, value_parser = parse_q)]
    pub q: Option<BigRational>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run identity suites; exit 1 if any identity fails.
    Verify {
        /// Comma-separated subset of braiding, exterior, hodge, metric, oracle, laplacian, or "all".
        #[arg(long, default_value = "all")]
        suites: String,
        /// Replace one braiding coefficient before checking: [-:]FROM,TO,VALUE.
        #[arg(long, hide = true, allow_hyphen_values = true)]
        corrupt_sigma: Option<String>,
    },
    /// Eigenvalues of the antisymmetrizer A^(k).
    Spectra {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
    },
    /// Action of T on the canonical basis forms.
    HodgeTable {
        /// a, c, or hermitian (free real-hermitian parameters).
        #[arg(long, default_value = "a")]
        family: String,
        /// Scalar alpha for family a; symbolic when omitted.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// The sign s in epsilon = s(q^2-1)alpha for family a.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        s: i32,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        degree: Option<usize>,
        /// A scalar, "auto" for the normalized value, or "symbolic".
        #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
        m: String,
    },
    /// Closed-form Box eigenvalues on the basis elements phi_{n,J,l}.
    Laplacian {
        #[arg(long, default_value = "sigma")]
        branch: String,
        #[arg(long, default_value = "L")]
        side: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 2)]
        nmax: i32,
        /// Largest J, integer or half-integer like 3/2.
        #[arg(long, default_value = "2")]
        jmax: String,
        /// Also compute each eigenvalue with the algebra oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Classify a contraction given as JSON.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check a 4x4 metric given as JSON against the sigma-metric axioms.
    ClassifyMetric {
        #[arg(long)]
        input: PathBuf,
    },
    /// Basis elements, Casimir check and relations of the algebra oracle.
    Oracle {
        #[arg(long, default_value = "2")]
        jmax: String,
        #[arg(long, default_value_t = 2)]
        nmax: i32,
        /// Monomial degree bound for the relation checks.
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Export a matrix as nonzero (row, column, value) entries.
    Export {
        /// braiding, antisymmetrizer or metric.
        #[arg(long)]
        what: String,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Metric parameter a.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
        /// Metric branch, 1 or -1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        branch: i32,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_q(t: &str) -> Result<BigRational, String> {
    let v: BigRational = t.trim().parse().map_err(|_| format!("not a rational number: {t}"))?;
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if v <= zero || v >= one {
        return Err(format!("q must lie in (0, 1), got {t}"));
    }
    Ok(v)
}

fn scalar(t: &str) -> Result<ScalarQ, CliError> {
    parse_scalar(t).map_err(|e| usage(format!("bad scalar {t:?}: {e}")))
}

fn direction(t: &str) -> Result<Direction, CliError> {
    Direction::parse(t).ok_or_else(|| usage(format!("bad sign {t:?}, expected + or -")))
}

/// "2" -> 4, "3/2" -> 3.
fn two_j(t: &str) -> Result<i32, CliError> {
    let bad = || usage(format!("bad J {t:?}"));
    let v = match t.split_once('/') {
        Some((a, "2")) => a.trim().parse::<i32>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => 2 * t.trim().parse::<i32>().map_err(|_| bad())?,
    };
    if v < 0 {
        return Err(bad());
    }
    Ok(v)
}

/// Output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

/// Parses arguments, runs the command and writes the output. Returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli).and_then(|o| emit(&cli, &o).map(|_| o.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, o: &Outcome) -> Result<(), CliError> {
    match &cli.out {
        Some(p) => std::fs::write(p, &o.body)?,
        None => print!("{}", o.body),
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let ok = |body| Ok(Outcome { code: EXIT_OK, body });
    match &cli.command {
        Command::Verify { suites, corrupt_sigma } => {
            let list = Suite::parse_list(suites).ok_or_else(|| usage(format!("bad suite list {suites:?}")))?;
            let sigma_fault = match corrupt_sigma {
                Some(t) => Some(SigmaFault::parse(t).ok_or_else(|| usage(format!("bad fault {t:?}")))?),
                None => None,
            };
            let report = verify::run(&list, &VerifyOptions { sigma_fault });
            let body = match cli.format {
                Format::Json => to_json(&report)?,
                Format::Csv => verify_csv(&report)?,
            };
            Ok(Outcome { code: if report.all_pass { EXIT_OK } else { EXIT_FAILED }, body })
        }
        Command::Spectra { k, sign } => ok(spectra(cli, *k, direction(sign)?)?),
        Command::HodgeTable { family, alpha, s, sign, degree, m } => ok(hodge_table(cli, family, alpha.as_deref(), *s, direction(sign)?, *degree, m)?),
        Command::Laplacian { branch, side, alpha, nmax, jmax, oracle } => {
            let b = Branch::parse(branch).ok_or_else(|| usage(format!("bad branch {branch:?}")))?;
            let sd = BoxSide::parse(side).ok_or_else(|| usage(format!("bad side {side:?}")))?;
            ok(laplacian_table(cli, b, sd, &scalar(alpha)?, *nmax, two_j(jmax)?, *oracle)?)
        }
        Command::Classify { input } => ok(classify(cli, &std::fs::read_to_string(input)?)?),
        Command::ClassifyMetric { input } => ok(classify_metric(cli, &std::fs::read_to_string(input)?)?),
        Command::Oracle { jmax, nmax, degree } => ok(oracle(cli, two_j(jmax)?, *nmax, *degree)?),
        Command::Export { what, sign, k, a, branch } => ok(export(cli, what, direction(sign)?, *k, a, *branch)?),
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(x)? + "\n")
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Exact value and decimal rendering of a scalar at q0.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluated {
    pub value: String,
    pub decimal: String,
}

fn evaluate(x: &ScalarQ, q0: &BigRational) -> Option<Evaluated> {
    let v = x.eval_at(q0).ok()?;
    Some(Evaluated { decimal: decimal(&v), value: v.to_string() })
}

fn decimal(v: &GaussRat) -> String {
    let (re, im) = v.to_f64_pair();
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{im:+}i")
    }
}

fn eval_cols(e: &Option<Evaluated>) -> [String; 2] {
    match e {
        Some(e) => [e.value.clone(), e.decimal.clone()],
        None => [String::new(), String::new()],
    }
}

fn verify_csv(r: &verify::VerifyReport) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for s in &r.suites {
        for i in &s.identities {
            rows.push(vec![s.suite.name().into(), "identity".into(), i.name.clone(), i.holds.to_string(), i.counterexample.clone().unwrap_or_default()]);
        }
        for d in &s.discrepancies {
            rows.push(vec![s.suite.name().into(), "discrepancy".into(), d.name.clone(), String::new(), format!("printed {}; computed {}", d.printed, d.computed)]);
        }
    }
    csv_string(&["suite", "kind", "name", "holds", "detail"], rows)
}

// ---- spectra ----

#[derive(Serialize)]
struct SpectraOut {
    schema_version: u32,
    k: usize,
    direction: Direction,
    rank: usize,
    kernel_dim: usize,
    complete: bool,
    eigenvalues: Vec<EigenOut>,
}

#[derive(Serialize)]
struct EigenOut {
    eigenvalue: String,
    multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_q: Option<Evaluated>,
}

fn spectra(cli: &Cli, k: usize, d: Direction) -> Result<String, CliError> {
    if !(1..=5).contains(&k) {
        return Err(usage("k must be between 1 and 5"));
    }
    let r = spectral_report(k, d);
    let eigenvalues = r
        .eigenvalues
        .iter()
        .map(|e| EigenOut { eigenvalue: e.eigenvalue.clone(), multiplicity: e.multiplicity, at_q: cli.q.as_ref().and_then(|q| evaluate(&e.value, q)) })
        .collect();
    let out = SpectraOut { schema_version: SCHEMA_VERSION, k, direction: d, rank: r.rank, kernel_dim: r.kernel_dim, complete: r.complete, eigenvalues };
    match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => csv_string(
            &["eigenvalue", "multiplicity", "value", "decimal"],
            out.eigenvalues.iter().map(|e| [vec![e.eigenvalue.clone(), e.multiplicity.to_string()], eval_cols(&e.at_q).to_vec()].concat()).collect(),
        ),
    }
}

// ---- hodge-table ----

#[derive(Serialize)]
struct HodgeTableOut {
    schema_version: u32,
    family: String,
    direction: Direction,
    contraction: ParamsOut,
    m: String,
    rows: Vec<HodgeRow>,
}

#[derive(Serialize)]
struct ParamsOut {
    alpha: String,
    beta: String,
    nu: String,
    epsilon: String,
    xi: String,
    gamma: String,
}

impl ParamsOut {
    fn of(g: &Contraction) -> Self {
        ParamsOut { alpha: g.alpha.to_string(), beta: g.beta.to_string(), nu: g.nu.to_string(), epsilon: g.epsilon.to_string(), xi: g.xi.to_string(), gamma: g.gamma.to_string() }
    }
}

#[derive(Serialize)]
struct HodgeRow {
    degree: usize,
    form: String,
    image: Vec<Term>,
}

#[derive(Serialize)]
struct Term {
    form: String,
    coefficient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_q: Option<Evaluated>,
}

fn hodge_table(cli: &Cli, family: &str, alpha: Option<&str>, s: i32, d: Direction, degree: Option<usize>, m: &str) -> Result<String, CliError> {
    let g = match family {
        "a" => {
            if s != 1 && s != -1 {
                return Err(usage("s must be 1 or -1"));
            }
            let a = match alpha {
                Some(t) => Expr::constant(scalar(t)?),
                None => Expr::var(Var::AlphaR),
            };
            Contraction::family_a(a, s)
        }
        "c" => Contraction::family_c(),
        "hermitian" => Contraction::real_hermitian_symbolic(),
        _ => return Err(usage(format!("bad family {family:?}, expected a, c or hermitian"))),
    };
    let m_expr = match m {
        "symbolic" => Expr::var(Var::M),
        "auto" => hodge::normalize_m(&g).map_err(|e| usage(format!("cannot normalize m: {e}")))?,
        t => Expr::constant(scalar(t)?),
    };
    let degrees: Vec<usize> = match degree {
        Some(k) if k <= 4 => vec![k],
        Some(k) => return Err(usage(format!("degree {k} > 4"))),
        None => (0..=4).collect(),
    };
    let cfg = HodgeConfig::new(g.clone(), m_expr.clone(), d);
    let mut rows = Vec::new();
    for k in degrees {
        let data = degree_data(k, d);
        for (i, name) in data.names.iter().enumerate() {
            let img = hodge_t(&cfg, &lift_form(&Form::basis(k, d, i))).map_err(|e| usage(e.to_string()))?;
            let names = &img.data().names;
            let image = img
                .coords()
                .iter()
                .zip(names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| Term { form: n.to_string(), coefficient: c.to_string(), at_q: cli.q.as_ref().and_then(|q| c.as_constant().and_then(|x| evaluate(&x, q))) })
                .collect();
            rows.push(HodgeRow { degree: k, form: name.to_string(), image });
        }
    }
    let out = HodgeTableOut { schema_version: SCHEMA_VERSION, family: family.into(), direction: d, contraction: ParamsOut::of(&g), m: m_expr.to_string(), rows };
    match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &out.rows {
                for t in &r.image {
                    rows.push([vec![r.degree.to_string(), r.form.clone(), t.form.clone(), t.coefficient.clone()], eval_cols(&t.at_q).to_vec()].concat());
                }
            }
            csv_string(&["degree", "form", "target", "coefficient", "value", "decimal"], rows)
        }
    }
}

// ---- laplacian ----

#[derive(Serialize)]
struct LaplacianOut {
    schema_version: u32,
    branch: Branch,
    side: BoxSide,
    alpha: String,
    entries: Vec<LaplacianRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scan: Option<ScanSummary>,
}

#[derive(Serialize)]
struct LaplacianRow {
    n: i32,
    j: String,
    eigenvalue: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_q: Option<Evaluated>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

#[derive(Serialize)]
struct ScanSummary {
    q: String,
    min: String,
    max: String,
    has_negative: bool,
    has_positive: bool,
}

fn laplacian_table(cli: &Cli, branch: Branch, side: BoxSide, alpha: &ScalarQ, n_max: i32, two_j_max: i32, oracle: bool) -> Result<String, CliError> {
    if n_max < 0 {
        return Err(usage("nmax must be nonnegative"));
    }
    if alpha.is_zero() || !alpha.is_real() {
        return Err(usage("alpha must be real and nonzero"));
    }
    let scan = match &cli.q {
        Some(q) => Some(laplacian::scan_spectrum(side, branch, alpha, q, n_max, two_j_max).map_err(|e| usage(e.to_string()))?),
        None => None,
    };
    let mut entries = Vec::new();
    for (n, tj) in qalgebra::phi_labels(two_j_max, n_max) {
        let ev = laplacian::box_eigenvalue(side, branch, alpha, n, tj);
        let oracle_agrees = if oracle {
            let got = laplacian::oracle_eigenvalue(side, branch, alpha, n, tj).map_err(|e| usage(e.to_string()))?;
            Some(got.as_ref() == Some(&ev))
        } else {
            None
        };
        let at_q = cli.q.as_ref().and_then(|q| evaluate(&ev, q));
        entries.push(LaplacianRow { n, j: laplacian::half_integer(tj), eigenvalue: ev.to_string(), at_q, oracle_agrees });
    }
    let scan = scan.map(|s| ScanSummary { q: s.q, min: s.min, max: s.max, has_negative: s.has_negative, has_positive: s.has_positive });
    let out = LaplacianOut { schema_version: SCHEMA_VERSION, branch, side, alpha: alpha.to_string(), entries, scan };
    match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => csv_string(
            &["n", "j", "eigenvalue", "value", "decimal", "oracle_agrees"],
            out.entries
                .iter()
                .map(|e| {
                    [vec![e.n.to_string(), e.j.clone(), e.eigenvalue.clone()], eval_cols(&e.at_q).to_vec(), vec![e.oracle_agrees.map(|b| b.to_string()).unwrap_or_default()]]
                        .concat()
                })
                .collect(),
        ),
    }
}

// ---- classify ----

/// A scalar written either as a string in the scalar grammar or as an integer.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum ScalarInput {
    Text(String),
    Int(i64),
}

impl ScalarInput {
    fn parse(&self) -> Result<ScalarQ, CliError> {
        match self {
            ScalarInput::Text(t) => scalar(t),
            ScalarInput::Int(n) => Ok(ScalarQ::from_int(*n)),
        }
    }
}

/// Contraction input; `m` is a scalar or "auto" (the default).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionInput {
    pub alpha: ScalarInput,
    pub beta: ScalarInput,
    pub nu: ScalarInput,
    pub epsilon: ScalarInput,
    pub xi: ScalarInput,
    pub gamma: ScalarInput,
    #[serde(default)]
    pub m: Option<ScalarInput>,
}

#[derive(Serialize)]
struct ClassifyOut {
    schema_version: u32,
    contraction: ParamsOut,
    real_t: Verdict,
    hermitian_t: Verdict,
    real_l: Verdict,
    hermitian_l: Verdict,
    family: Family,
    maximally_hermitian: MaximalOut,
    detq: Option<String>,
    sign: Option<i32>,
    m: Option<String>,
    duality: Option<DualityOut>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct MaximalOut {
    t_plus: Option<bool>,
    t_minus: Option<bool>,
    l_plus: Option<bool>,
    l_minus: Option<bool>,
}

#[derive(Serialize)]
struct DualityOut {
    checked: usize,
    all_hold: bool,
    failures: Vec<String>,
}

fn classify(cli: &Cli, text: &str) -> Result<String, CliError> {
    let input: ContractionInput = serde_json::from_str(text)?;
    let p = [&input.alpha, &input.beta, &input.nu, &input.epsilon, &input.xi, &input.gamma].map(|x| x.parse());
    let [a, b, n, e, x, g] = p;
    let contraction = Contraction::from_scalars([a?, b?, n?, e?, x?, g?]);
    let he = |r: Result<Verdict, hodge::HodgeError>| r.map_err(|e| usage(e.to_string()));
    let real_t = he(hodge::is_real(&contraction, Operator::T))?;
    let hermitian_t = he(hodge::is_hermitian(&contraction, Operator::T))?;
    let real_l = he(hodge::is_real(&contraction, Operator::L))?;
    let hermitian_l = he(hodge::is_hermitian(&contraction, Operator::L))?;
    let family = hodge::classify_family(&contraction).map_err(|e| usage(e.to_string()))?;
    let mut notes = Vec::new();
    let maximal = |op: Operator, d: Direction, ok: bool| if ok { hodge::is_maximally_hermitian(&contraction, d, op).ok() } else { None };
    let t_ok = real_t.holds && hermitian_t.holds;
    let l_ok = real_l.holds && hermitian_l.holds;
    let maximally_hermitian = MaximalOut {
        t_plus: maximal(Operator::T, Direction::Plus, t_ok),
        t_minus: maximal(Operator::T, Direction::Minus, t_ok),
        l_plus: maximal(Operator::L, Direction::Plus, l_ok),
        l_minus: maximal(Operator::L, Direction::Minus, l_ok),
    };
    let (detq, sign) = match hodge::detq_and_sign(&HodgeConfig::with_symbolic_m(contraction.clone(), Direction::Plus)) {
        Ok((d, s)) => (Some(d.to_string()), Some(s)),
        Err(e) => {
            notes.push(format!("det_q: {e}"));
            (None, None)
        }
    };
    let m = match &input.m {
        None => hodge::normalize_m(&contraction).map_err(|e| notes.push(format!("m: {e}"))).ok(),
        Some(ScalarInput::Text(t)) if t == "auto" => hodge::normalize_m(&contraction).map_err(|e| notes.push(format!("m: {e}"))).ok(),
        Some(s) => Some(Expr::constant(s.parse()?)),
    };
    let duality = match (&m, maximally_hermitian.t_plus, maximally_hermitian.t_minus) {
        (Some(m), Some(true), Some(true)) => match hodge::verify_duality_identities(&contraction, m) {
            Ok(r) => Some(DualityOut {
                checked: r.checks.len(),
                all_hold: r.all_hold(),
                failures: r.failures().iter().map(|c| format!("{} {} {}", c.name, c.direction.sign_str(), c.form)).collect(),
            }),
            Err(e) => {
                notes.push(format!("duality: {e}"));
                None
            }
        },
        _ => None,
    };
    let out = ClassifyOut {
        schema_version: SCHEMA_VERSION,
        contraction: ParamsOut::of(&contraction),
        real_t,
        hermitian_t,
        real_l,
        hermitian_l,
        family,
        maximally_hermitian,
        detq,
        sign,
        m: m.map(|m| m.to_string()),
        duality,
        notes,
    };
    match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
            let rows = vec![
                vec!["real_t".into(), out.real_t.holds.to_string()],
                vec!["hermitian_t".into(), out.hermitian_t.holds.to_string()],
                vec!["real_l".into(), out.real_l.holds.to_string()],
                vec!["hermitian_l".into(), out.hermitian_l.holds.to_string()],
                vec!["family".into(), format!("{:?}", out.family).to_lowercase()],
                vec!["maximally_hermitian_t_plus".into(), opt(out.maximally_hermitian.t_plus)],
                vec!["maximally_hermitian_t_minus".into(), opt(out.maximally_hermitian.t_minus)],
                vec!["maximally_hermitian_l_plus".into(), opt(out.maximally_hermitian.l_plus)],
                vec!["maximally_hermitian_l_minus".into(), opt(out.maximally_hermitian.l_minus)],
                vec!["detq".into(), out.detq.clone().unwrap_or_default()],
                vec!["sign".into(), out.sign.map(|s| s.to_string()).unwrap_or_default()],
                vec!["m".into(), out.m.clone().unwrap_or_default()],
            ];
            csv_string(&["field", "value"], rows)
        }
    }
}

/// Metric input: `g[a][b]` in basis order (-, +, 0, z).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricInput {
    pub g: Vec<Vec<ScalarInput>>,
}

#[derive(Serialize)]
struct MetricOut {
    schema_version: u32,
    class: &'static str,
    family_a: Option<FamilyAOut>,
    axioms: Vec<AxiomResult>,
}

#[derive(Serialize)]
struct FamilyAOut {
    a: String,
    branch: i32,
}

fn classify_metric(cli: &Cli, text: &str) -> Result<String, CliError> {
    let input: MetricInput = serde_json::from_str(text)?;
    if input.g.len() != 4 || input.g.iter().any(|r| r.len() != 4) {
        return Err(usage("g must be a 4x4 array"));
    }
    let mut g: [[ScalarQ; 4]; 4] = Default::default();
    for (i, row) in input.g.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            g[i][j] = x.parse()?;
        }
    }
    let g = MetricMatrix::new(g);
    let report = metric::check_sigma_metric(&g);
    let out = MetricOut {
        schema_version: SCHEMA_VERSION,
        class: metric::classify_metric(&g).label(),
        family_a: metric::family_a_parameters(&g).map(|(a, b)| FamilyAOut { a: a.to_string(), branch: b }),
        axioms: report.axioms,
    };
    match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut rows = vec![vec!["class".into(), out.class.into(), String::new()]];
            for a in &out.axioms {
                rows.push(vec![a.axiom.clone(), format!("{:?}", a.status).to_lowercase(), a.counterexample.clone().unwrap_or_default()]);
            }
            csv_string(&["name", "status", "counterexample"], rows)
        }
    }
}

// ---- oracle ----

#[derive(Serialize)]
struct OracleOut {
    schema_version: u32,
    elements: Vec<ElementOut>,
    ideal: Vec<IdealOut>,
    relations: Vec<RelationCheck>,
    differentials: Vec<Reconstruction>,
}

#[derive(Serialize)]
struct ElementOut {
    n: i32,
    j: String,
    l: i32,
    element: String,
    casimir_holds: bool,
}

#[derive(Serialize)]
struct IdealOut {
    generator: &'static str,
    annihilated: bool,
}

fn oracle(cli: &Cli, two_j_max: i32, n_max: i32, degree: u32) -> Result<String, CliError> {
    if n_max < 0 {
        return Err(usage("nmax must be nonnegative"));
    }
    if degree > 6 {
        return Err(usage("degree bound above 6 is not supported"));
    }
    let mut elements = Vec::new();
    for (n, tj) in qalgebra::phi_labels(two_j_max, n_max) {
        let cas = qalgebra::casimir_check(n, tj).map_err(|e| usage(e.to_string()))?;
        for l in 0..=tj {
            let x = qalgebra::build_phi(n, tj, l).map_err(|e| usage(e.to_string()))?;
            elements.push(ElementOut { n, j: laplacian::half_integer(tj), l, element: x.to_string(), casimir_holds: cas });
        }
    }
    let ops: Vec<_> = crate::calculus::LABELS.iter().map(|l| qalgebra::tangent_op(*l)).collect();
    let ideal =
        qalgebra::ideal_generators().into_iter().map(|(name, g)| IdealOut { generator: name, annihilated: ops.iter().all(|op| qalgebra::pairing(op, &g).is_zero()) }).collect();
    let out = OracleOut { schema_version: SCHEMA_VERSION, elements, ideal, relations: qalgebra::relation_checks(degree), differentials: qalgebra::differential_reconstruction() };
    match cli.format {
        Format::Json => to_json(&out),
        Format::Csv => csv_string(
            &["n", "j", "l", "element", "casimir_holds"],
            out.elements.iter().map(|e| vec![e.n.to_string(), e.j.clone(), e.l.to_string(), e.element.clone(), e.casimir_holds.to_string()]).collect(),
        ),
    }
}

// ---- export ----

/// A sparse exported matrix; `entries` lists nonzero (row, column, value).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixExport {
    pub schema_version: u32,
    pub kind: String,
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixExport {
    pub fn from_dense(kind: impl Into<String>, labels: Vec<String>, m: &[Vec<ScalarQ>]) -> Self {
        let mut entries = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v.to_string()));
                }
            }
        }
        MatrixExport {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            rows: m.len(),
            cols: m.first().map_or(0, |r| r.len()),
            row_labels: labels.clone(),
            col_labels: labels,
            entries,
        }
    }

    /// Parses the entries back into a dense matrix.
    pub fn to_dense(&self) -> Result<Vec<Vec<ScalarQ>>, CliError> {
        let mut m = vec![vec![ScalarQ::zero(); self.cols]; self.rows];
        for (i, j, v) in &self.entries {
            if *i >= self.rows || *j >= self.cols {
                return Err(usage(format!("entry ({i}, {j}) out of range")));
            }
            m[*i][*j] = scalar(v)?;
        }
        Ok(m)
    }
}

fn tensor_labels(k: usize) -> Vec<String> {
    (0..1u32 << (2 * k)).map(|i| Tensor::<ScalarQ>::labels_of(i, k).iter().map(|l| l.symbol()).collect::<Vec<_>>().join(",")).collect()
}

/// The matrix `what` as an export record.
pub fn export_matrix(what: &str, d: Direction, k: usize, a: &ScalarQ, branch: i32) -> Result<MatrixExport, CliError> {
    match what {
        "braiding" => Ok(MatrixExport::from_dense(format!("braiding{}", d.sign_str()), tensor_labels(2), &Braiding::get(d).matrix().entries)),
        "antisymmetrizer" => {
            if !(1..=4).contains(&k) {
                return Err(usage("k must be between 1 and 4 for export"));
            }
            // row i = image of basis i, matching the braiding layout
            let op = antisymmetrizer(k, d);
            let n = 1usize << (2 * k);
            let m: Vec<Vec<ScalarQ>> = (0..n as u32).map(|i| (0..n as u32).map(|j| op.entry(j, i)).collect()).collect();
            Ok(MatrixExport::from_dense(format!("antisymmetrizer{}_{k}", d.sign_str()), tensor_labels(k), &m))
        }
        "metric" => {
            if branch != 1 && branch != -1 {
                return Err(usage("branch must be 1 or -1"));
            }
            let g = metric::family_a_metric(a, branch);
            let m: Vec<Vec<ScalarQ>> = g.g.iter().map(|r| r.to_vec()).collect();
            Ok(MatrixExport::from_dense("metric", crate::calculus::LABELS.iter().map(|l: &Label| l.symbol().to_string()).collect(), &m))
        }
        _ => Err(usage(format!("bad export kind {what:?}, expected braiding, antisymmetrizer or metric"))),
    }
}

fn export(cli: &Cli, what: &str, d: Direction, k: usize, a: &str, branch: i32) -> Result<String, CliError> {
    let m = export_matrix(what, d, k, &scalar(a)?, branch)?;
    match cli.format {
        Format::Json => to_json(&m),
        Format::Csv => csv_string(&["row", "col", "value"], m.entries.iter().map(|(i, j, v)| vec![i.to_string(), j.to_string(), v.clone()]).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("qhodge").chain(args.iter().copied())).map_err(|e| usage(e.to_string()))?;
        execute(&cli)
    }

    #[test]
    fn q_must_be_in_unit_interval() {
        assert!(parse_q("1/2").is_ok());
        assert!(parse_q("1").is_err());
        assert!(parse_q("-1/3").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn half_integer_j() {
        assert_eq!(two_j("2").unwrap(), 4);
        assert_eq!(two_j("3/2").unwrap(), 3);
        assert!(two_j("3/4").is_err());
        assert!(two_j("-1").is_err());
    }

    #[test]
    fn spectra_degree_two() {
        let o = run(&["spectra", "--k", "2", "--sign", "+"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["kernel_dim"], 10);
        let ev: Vec<(String, u64)> =
            v["eigenvalues"].as_array().unwrap().iter().map(|e| (e["eigenvalue"].as_str().unwrap().to_string(), e["multiplicity"].as_u64().unwrap())).collect();
        assert_eq!(ev, vec![("0".into(), 10), ("q^2 + 1".into(), 3), ("1 + q^-2".into(), 3)]);
    }

    #[test]
    fn laplacian_row_at_half() {
        let o = run(&["laplacian", "--branch", "sigma", "--q", "1/2", "--alpha", "1", "--nmax", "0", "--jmax", "1"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&o.body).unwrap();
        let row = v["entries"].as_array().unwrap().iter().find(|e| e["n"] == 0 && e["j"] == "1").unwrap();
        assert_eq!(row["at_q"]["value"], "5/2");
    }

    #[test]
    fn bad_input_is_usage_error() {
        assert!(matches!(run(&["verify", "--suites", "nope"]), Err(CliError::Usage(_))));
        assert!(matches!(run(&["spectra", "--k", "2", "--sign", "x"]), Err(CliError::Usage(_))));
        assert!(matches!(run(&["export", "--what", "nothing"]), Err(CliError::Usage(_))));
    }

    #[test]
    fn export_round_trip() {
        for d in [Direction::Plus, Direction::Minus] {
            let m = export_matrix("braiding", d, 2, &ScalarQ::one(), 1).unwrap();
            let back: MatrixExport = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
            assert_eq!(back.to_dense().unwrap(), Braiding::get(d).matrix().entries);
        }
        let m = export_matrix("antisymmetrizer", Direction::Minus, 3, &ScalarQ::one(), 1).unwrap();
        let dense = m.to_dense().unwrap();
        let op = antisymmetrizer(3, Direction::Minus);
        assert!((0..64u32).all(|i| (0..64u32).all(|j| dense[i as usize][j as usize] == op.entry(j, i))));
    }
}

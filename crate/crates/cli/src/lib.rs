//! Command-line front end: argument handling, dispatch to the core crate and
//! report rendering.

pub mod parse;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use zariski_core::fpgroup::{abelianization, check_assignment, nonabelian_certificate, prop1_presentation};
use zariski_core::pencil::{
    check_condition_1, check_condition_2, check_condition_3, check_condition_4, make_pencil, ConditionReport, Pencil,
    Witness,
};
use zariski_core::plane::{singular_points, IntersectionMultiplicity};
use zariski_core::poly::{theta_symbol, vars_of, MultiPoly};
use zariski_core::series::{
    build_cpqk, build_series1, build_series2, derive_cubic_family, verify_prop5, verify_zariski_pair,
    FamilyDerivation, SeriesSelector, SingularVerification,
};
use zariski_core::{Error as CoreError, Field, Quad};

pub use parse::{infer_variables, parse_poly_expr, parse_with_params, ParseError};

pub const SCHEMA: &str = "zariski-forge/1";
pub const TOOL_NAME: &str = "zariski-forge";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(CoreError),
}

/// Core errors caused by the request itself rather than by a computation.
fn is_usage_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::InvalidParameters(_)
            | CoreError::NotHomogeneous
            | CoreError::DegreeMismatch { .. }
            | CoreError::ZeroPolynomial
            | CoreError::FieldMismatch
            | CoreError::RingMismatch
            | CoreError::ReducibleMinimalPolynomial { .. }
            | CoreError::TooManyVariables(_)
    )
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qw")]
    Qw,
    #[value(name = "Qi")]
    Qi,
}

impl FieldArg {
    pub fn field(self) -> Field {
        match self {
            FieldArg::Q => Field::rationals(),
            FieldArg::Qw => Field::eisenstein(),
            FieldArg::Qi => Field::gaussian(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = TOOL_NAME, version, about = "Construct and certify Zariski-pair curve families")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coefficient field for parsed expressions.
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Q)]
    pub field: FieldArg,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Derive the three lines of cubics with the prescribed flexes.
    DeriveFamily,
    /// Re-run the verification of the cubic family or the quartic pencil.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
    },
    /// Build a curve of one of the series.
    Build {
        #[command(subcommand)]
        which: BuildCommand,
    },
    /// Run conditions (1) to (4) on the pencil F0 + t X1...Xn.
    CheckConditions {
        #[command(flatten)]
        source: ExprSource,
        /// Exponent for condition (3); defaults to the smallest prime factor of n.
        #[arg(long)]
        p: Option<u32>,
        /// Sample parameter for condition (4).
        #[arg(long, default_value = "2")]
        t_sample: String,
    },
    /// Singular points of plane curves with coordinates in the working field.
    SingularPoints {
        #[command(flatten)]
        source: ExprSource,
    },
    /// Abelianization of <a, b, c | a^p = b^q = c, c^k = 1>.
    Abelianization {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Search for a non-abelian permutation quotient of the same group.
    NonabelianCert {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Build C_{p,q,k} and a series curve and compare their invariants.
    Pair {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = SeriesArg::Series1)]
        series: SeriesArg,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyTarget {
    /// The cubic family with three prescribed flexes.
    Prop4,
    /// The quartic pencil in four variables.
    Prop5,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesArg {
    Series1,
    Series2,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "series", rename_all = "lowercase")]
pub enum BuildCommand {
    /// Kummer pullback of a cubic of the family L(w); degree 3q.
    Series1 {
        #[arg(long)]
        q: u32,
        /// Affine coordinate B/A on the family.
        #[arg(long)]
        t: Option<String>,
    },
    /// Plane section of the pulled-back quartic surface; degree 4q.
    Series2 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: Option<String>,
    },
    /// f^q + g^p = 0 for products of lines f, g.
    Cpqk {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExprSource {
    /// File with one expression per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Expression given inline; may be repeated.
    #[arg(long = "expr")]
    pub exprs: Vec<String>,
    /// Comma-separated variable names; inferred from the text when absent.
    #[arg(long)]
    pub vars: Option<String>,
    /// Parameter binding `name=value`; may be repeated.
    #[arg(long = "param")]
    pub params: Vec<String>,
}

/// A validated invocation with file inputs already loaded.
#[derive(Debug, Clone, Serialize)]
pub struct CommandRequest {
    #[serde(flatten)]
    pub command: Command,
    pub field: FieldArg,
    pub seed: u64,
    pub output: &'static str,
    pub expressions: Vec<String>,
}

impl CommandRequest {
    pub fn from_cli(cli: Cli) -> Result<CommandRequest, CliError> {
        let expressions = match &cli.command {
            Command::CheckConditions { source, .. } | Command::SingularPoints { source } => load_expressions(source)?,
            _ => Vec::new(),
        };
        Ok(CommandRequest {
            command: cli.command,
            field: cli.field,
            seed: cli.seed,
            output: if cli.json { "json" } else { "text" },
            expressions,
        })
    }

    pub fn json(&self) -> bool {
        self.output == "json"
    }
}

fn load_expressions(source: &ExprSource) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
        out.extend(
            text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from),
        );
    }
    out.extend(source.exprs.iter().cloned());
    if out.is_empty() {
        return Err(CliError::Usage("no expressions given; use --input or --expr".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub witnesses: Vec<Value>,
    pub caveats: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, summary: impl Into<String>) -> Check {
        Check { name: name.into(), passed, summary: summary.into(), witnesses: Vec::new(), caveats: Vec::new() }
    }

    fn with_witnesses(mut self, w: Vec<Value>) -> Check {
        self.witnesses = w;
        self
    }

    fn with_caveats(mut self, c: Vec<String>) -> Check {
        self.caveats = c;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Toolkit {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub toolkit: Toolkit,
    pub command: String,
    pub input: CommandRequest,
    pub checks: Vec<Check>,
    pub caveats: Vec<String>,
    pub result: Value,
    pub exit_code: i32,
    pub timing: Timing,
    #[serde(skip)]
    pub text: Vec<String>,
}

/// 2 if a check failed outright, else 3 if anything carries a caveat, else 0.
pub fn exit_code_for(checks: &[Check], caveats: &[String]) -> i32 {
    if checks.iter().any(|c| !c.passed && c.caveats.is_empty()) {
        2
    } else if !caveats.is_empty() || checks.iter().any(|c| !c.caveats.is_empty()) {
        3
    } else {
        0
    }
}

#[derive(Default)]
struct Body {
    checks: Vec<Check>,
    caveats: Vec<String>,
    result: Value,
    text: Vec<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn command_name(c: &Command) -> String {
    match c {
        Command::DeriveFamily => "derive-family".into(),
        Command::Verify { target } => format!("verify {}", to_value(target).as_str().unwrap_or_default()),
        Command::Build { which } => format!(
            "build {}",
            match which {
                BuildCommand::Series1 { .. } => "series1",
                BuildCommand::Series2 { .. } => "series2",
                BuildCommand::Cpqk { .. } => "cpqk",
            }
        ),
        Command::CheckConditions { .. } => "check-conditions".into(),
        Command::SingularPoints { .. } => "singular-points".into(),
        Command::Abelianization { .. } => "abelianization".into(),
        Command::NonabelianCert { .. } => "nonabelian-cert".into(),
        Command::Pair { .. } => "pair".into(),
    }
}

/// Runs one request. Usage and parse errors come back as `Err` (exit 1);
/// everything else becomes a report carrying its exit code.
pub fn run_command(req: &CommandRequest) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let body = match dispatch(req) {
        Ok(b) => b,
        Err(CliError::Core(e)) if !is_usage_error(&e) => {
            let check = Check::new("computation", false, e.to_string()).with_witnesses(vec![json!({"error": e.to_string()})]);
            Body { text: vec![format!("computation stopped: {e}")], checks: vec![check], ..Body::default() }
        }
        Err(e) => return Err(e),
    };
    let exit_code = exit_code_for(&body.checks, &body.caveats);
    Ok(ReportDocument {
        schema: SCHEMA,
        toolkit: Toolkit { name: TOOL_NAME, version: env!("CARGO_PKG_VERSION") },
        command: command_name(&req.command),
        input: req.clone(),
        checks: body.checks,
        caveats: body.caveats,
        result: body.result,
        exit_code,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() },
        text: body.text,
    })
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        CliError::Core(e)
    }
}

fn dispatch(req: &CommandRequest) -> Result<Body, CliError> {
    let field = req.field.field();
    match &req.command {
        Command::DeriveFamily => derive_family(),
        Command::Verify { target: VerifyTarget::Prop4 } => verify_cubic_family(),
        Command::Verify { target: VerifyTarget::Prop5 } => verify_quartic(),
        Command::Build { which: BuildCommand::Series1 { q, t } } => {
            let t = t.as_deref().map(|s| parse_constant(s, &field)).transpose()?;
            series1(*q, t, req.seed)
        }
        Command::Build { which: BuildCommand::Series2 { q, t } } => {
            let t = t.as_deref().map(|s| parse_constant(s, &field)).transpose()?;
            series2(*q, t, req.seed)
        }
        Command::Build { which: BuildCommand::Cpqk { p, q, k } } => cpqk(*p, *q, *k, req.seed),
        Command::CheckConditions { source, p, t_sample } => {
            let t = parse_constant(t_sample, &field)?;
            let polys = parse_inputs(&req.expressions, source, &field)?;
            check_conditions(&polys, *p, &t)
        }
        Command::SingularPoints { source } => {
            let polys = parse_inputs(&req.expressions, source, &field)?;
            singular_point_listing(&polys, &field)
        }
        Command::Abelianization { p, q, k } => group_abelianization(*p, *q, *k),
        Command::NonabelianCert { p, q, k, max_degree } => nonabelian(*p, *q, *k, *max_degree),
        Command::Pair { p, q, k, series } => {
            let s = match series {
                SeriesArg::Series1 => SeriesSelector::Series1,
                SeriesArg::Series2 => SeriesSelector::Series2,
            };
            pair(*p, *q, *k, s, req.seed)
        }
    }
}

fn parse_constant(text: &str, field: &Field) -> Result<Quad, CliError> {
    Ok(parse_poly_expr(text, &[], field)?.constant_term())
}

fn parse_params(bindings: &[String], field: &Field) -> Result<BTreeMap<String, Quad>, CliError> {
    let mut out = BTreeMap::new();
    for b in bindings {
        let (name, value) =
            b.split_once('=').ok_or_else(|| CliError::Usage(format!("parameter `{b}` is not of the form name=value")))?;
        out.insert(name.trim().to_string(), parse_constant(value, field)?);
    }
    Ok(out)
}

fn parse_inputs(exprs: &[String], source: &ExprSource, field: &Field) -> Result<Vec<MultiPoly>, CliError> {
    let params = parse_params(&source.params, field)?;
    let fixed: Option<Vec<String>> =
        source.vars.as_ref().map(|v| v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
    exprs
        .iter()
        .map(|e| {
            let vars = fixed.clone().unwrap_or_else(|| infer_variables(e, &params));
            Ok(parse_with_params(e, &vars, field, &params)?)
        })
        .collect()
}

fn condition_check(prefix: &str, r: &ConditionReport) -> Check {
    let id = to_value(&r.condition_id);
    let name = format!("{prefix}condition_{}", id.as_str().unwrap_or_default());
    let summary = match (r.passed, r.caveats.is_empty()) {
        (true, _) => "holds".to_string(),
        (false, true) => "fails".to_string(),
        (false, false) => "undecided".to_string(),
    };
    Check::new(name, r.passed, summary)
        .with_witnesses(r.witnesses.iter().map(to_value).collect())
        .with_caveats(r.caveats.clone())
}

fn verification_check(name: &str, v: &SingularVerification, count: usize, ty: (u32, u32)) -> Check {
    let certified = v.records.iter().filter(|r| r.certified).count();
    let passed = v.passed && v.count == count && certified == count;
    let summary = format!("{} of {count} points of type {ty:?} certified ({:?})", certified, v.method);
    Check::new(name, passed, summary).with_witnesses(v.evidence.iter().map(|e| json!(e)).collect())
}

fn family_label(f: &FamilyDerivation) -> String {
    format!("L({})", f.alpha.value.render(&theta_symbol(&f.alpha.field)))
}

fn family_checks(fams: &[FamilyDerivation]) -> Vec<Check> {
    let mut checks = vec![Check::new("three_lines", fams.len() == 3, format!("{} lines of cubics", fams.len()))];
    for f in fams {
        let label = family_label(f);
        checks.push(Check::new(
            format!("closed_form {label}"),
            f.matches_closed_form,
            format!("{}", f.closed_form),
        ));
        let flexes = f
            .tangencies
            .iter()
            .all(|t| matches!(t.multiplicity, IntersectionMultiplicity::Finite(m) if m >= 3));
        checks.push(
            Check::new(format!("flexes {label}"), flexes, "each line meets the member A = B = 1 with multiplicity 3")
                .with_witnesses(f.tangencies.iter().map(to_value).collect()),
        );
    }
    let xyz = {
        let g = MultiPoly::gens(&vars_of(&["X", "Y", "Z"]), &Field::eisenstein());
        &(&g[0] * &g[1]) * &g[2]
    };
    let shared = fams.iter().all(|f| f.member_at_infinity == xyz);
    checks.push(Check::new("common_member", shared, "every line passes through the member XYZ"));
    checks
}

fn derive_family() -> Result<Body, CliError> {
    let fams = derive_cubic_family()?;
    let text = fams.iter().map(|f| format!("{}: {}", family_label(f), f.closed_form)).collect();
    Ok(Body { checks: family_checks(&fams), result: to_value(&fams), text, ..Body::default() })
}

fn verify_cubic_family() -> Result<Body, CliError> {
    let fams = derive_cubic_family()?;
    let mut checks = family_checks(&fams);
    let mut text = Vec::new();
    for (i, f) in fams.iter().enumerate() {
        let label = family_label(f);
        let c1 = check_condition_1(&f.pencil)?;
        if i == 0 {
            // L(1) degenerates to a triple line and is excluded from the series
            let triple = c1.witnesses.iter().find_map(|w| match w {
                Witness::Exceptional { values } => values.iter().find(|v| v.power == Some(3)).cloned(),
                _ => None,
            });
            let passed = !c1.passed && triple.is_some();
            let summary = match &triple {
                Some(v) => format!("member at s = {} is a triple line", v.value),
                None => "no triple line found".into(),
            };
            checks.push(
                Check::new(format!("{label} excluded"), passed, summary)
                    .with_witnesses(triple.iter().map(to_value).collect()),
            );
            text.push(format!("{label}: condition 1 fails as expected"));
            continue;
        }
        let prefix = format!("{label} ");
        checks.push(condition_check(&prefix, &c1));
        checks.push(condition_check(&prefix, &check_condition_2(&f.pencil)));
        let (c3, divisors) = check_condition_3(&f.pencil, 3)?;
        checks.push(condition_check(&prefix, &c3));
        text.push(format!(
            "{label}: divisors on the coordinate lines {}",
            divisors.iter().map(|d| d.d.to_string()).collect::<Vec<_>>().join(", ")
        ));
    }
    Ok(Body { checks, result: to_value(&fams), text, ..Body::default() })
}

fn verify_quartic() -> Result<Body, CliError> {
    let r = verify_prop5()?;
    let mut checks: Vec<Check> = r.conditions.iter().map(|c| condition_check("", c)).collect();
    checks.push(Check::new("common_quadric", r.common_quadric_expected, format!("Q_t = {}", r.common_quadric)));
    checks.push(Check::new(
        "quadric_irreducible",
        r.quadric_irreducible,
        format!("gcd of the 3x3 Gram minors: {}", r.gram_minor_gcd),
    ));
    checks.push(Check::new(
        "no_double_quadric",
        r.double_quadric_unsatisfiable,
        "no member is a constant times Q_t^2",
    ));
    let points: Vec<String> = r.sing_s2.iter().map(|p| p.to_string()).collect();
    let mut sing = Check::new("singular_locus_s2", r.sing_s2_expected, format!("{} points", points.len()))
        .with_witnesses(points.iter().map(|p| json!(p)).collect());
    if !r.sing_s2_complete {
        sing = sing.with_caveats(vec!["some singular points of S_2 lie outside the working field".into()]);
    }
    checks.push(sing);
    let mut text = vec![format!("F0 = {}", r.f0)];
    text.extend(points.iter().map(|p| format!("singular point of S_2: {p}")));
    Ok(Body { checks, result: to_value(&r), text, ..Body::default() })
}

fn series1(q: u32, t: Option<Quad>, seed: u64) -> Result<Body, CliError> {
    let b = build_series1(q, t, seed)?;
    let n = 3 * q as usize;
    let mut checks: Vec<Check> = b.conditions.iter().map(|c| condition_check("", c)).collect();
    checks.push(Check::new("degree", b.bundle.degree == 3 * q, format!("degree {}", b.bundle.degree)));
    checks.push(verification_check("singular_points", &b.verification, n, (3, q)));
    let text = vec![
        format!("curve of degree {} over L({}) at t = {}", b.bundle.degree, b.alpha, b.t),
        format!("{} singular records", b.verification.records.len()),
    ];
    Ok(Body { checks, result: to_value(&b), text, ..Body::default() })
}

fn series2(q: u32, t: Option<Quad>, seed: u64) -> Result<Body, CliError> {
    let b = build_series2(q, t, seed)?;
    let n = 8 * q as usize;
    let checks = vec![
        condition_check("member ", &b.member_condition_4),
        Check::new("degree", b.bundle.degree == 4 * q, format!("degree {}", b.bundle.degree)),
        verification_check("singular_points", &b.verification, n, (2, q)),
    ];
    let text = vec![
        format!("curve of degree {} from S_t at t = {}, plane seed {}", b.bundle.degree, b.t, b.plane_seed),
        format!("{} singular records", b.verification.records.len()),
    ];
    Ok(Body { checks, result: to_value(&b), text, ..Body::default() })
}

fn cpqk(p: u32, q: u32, k: u32, seed: u64) -> Result<Body, CliError> {
    let b = build_cpqk(p, q, k, seed)?;
    let n = (p * q * k * k) as usize;
    let checks = vec![
        Check::new("degree", b.bundle.degree == p * q * k, format!("degree {}", b.bundle.degree)),
        verification_check("singular_points", &b.verification, n, (p, q)),
    ];
    let text = vec![
        format!("f = {}", b.f),
        format!("g = {}", b.g),
        format!("curve of degree {} with {} singular records", b.bundle.degree, b.verification.records.len()),
    ];
    Ok(Body { checks, result: to_value(&b), text, ..Body::default() })
}

fn smallest_prime_factor(n: u32) -> u32 {
    (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

fn check_conditions(polys: &[MultiPoly], p: Option<u32>, t: &Quad) -> Result<Body, CliError> {
    let mut body = Body::default();
    let mut results = Vec::new();
    for (i, f0) in polys.iter().enumerate() {
        let pencil: Pencil = make_pencil(f0)?;
        let p = p.unwrap_or_else(|| smallest_prime_factor(pencil.n as u32));
        let prefix = if polys.len() > 1 { format!("[{}] ", i + 1) } else { String::new() };
        let c1 = check_condition_1(&pencil)?;
        let c2 = check_condition_2(&pencil);
        let (c3, divisors) = check_condition_3(&pencil, p)?;
        let c4 = check_condition_4(&pencil, t)?;
        for c in [&c1, &c2, &c3, &c4] {
            body.checks.push(condition_check(&prefix, c));
        }
        body.text.push(format!("{prefix}F0 = {f0}, n = {}, p = {p}", pencil.n));
        results.push(json!({
            "f0": f0,
            "n": pencil.n,
            "p": p,
            "conditions": [c1, c2, c3, c4],
            "divisors": divisors,
        }));
    }
    body.result = Value::Array(results);
    Ok(body)
}

fn singular_point_listing(polys: &[MultiPoly], field: &Field) -> Result<Body, CliError> {
    let mut body = Body::default();
    let mut results = Vec::new();
    for (i, f) in polys.iter().enumerate() {
        let sp = singular_points(f, field)?;
        let name = if polys.len() > 1 { format!("[{}] singular_points", i + 1) } else { "singular_points".into() };
        let mut check = Check::new(&name, sp.complete, format!("{} points in {}", sp.records.len(), field.name()));
        if !sp.complete {
            check = check.with_caveats(vec![format!(
                "{} eliminant factors have no roots in {}",
                sp.residual.len(),
                field.name()
            )]);
        }
        body.checks.push(check);
        for r in &sp.records {
            body.text.push(format!("{}: multiplicity {}, Milnor number {}", r.point, r.multiplicity, r.milnor));
        }
        results.push(json!({
            "curve": f,
            "records": sp.records,
            "residual": sp.residual,
            "complete": sp.complete,
        }));
    }
    body.result = Value::Array(results);
    Ok(body)
}

fn big_to_json(b: &num_bigint::BigInt) -> Value {
    b.to_u64().map_or_else(|| json!(b.to_string()), |v| json!(v))
}

fn group_abelianization(p: u32, q: u32, k: u32) -> Result<Body, CliError> {
    let pres = prop1_presentation(p, q, k)?;
    let ab = abelianization(&pres);
    let n = p * q * k;
    let divisors: Vec<Value> = ab.torsion.iter().map(big_to_json).collect();
    let cyclic = ab.free_rank == 0 && ab.torsion == vec![n.into()];
    let check = Check::new("cyclic_of_order_pqk", cyclic, format!("abelianization {ab}"));
    Ok(Body {
        checks: vec![check],
        result: json!({
            "presentation": pres,
            "free_rank": ab.free_rank,
            "elementary_divisors": divisors,
        }),
        text: vec![format!("abelianization {ab}"), format!("elementary divisors {}", Value::Array(divisors))],
        ..Body::default()
    })
}

fn nonabelian(p: u32, q: u32, k: u32, max_degree: usize) -> Result<Body, CliError> {
    let pres = prop1_presentation(p, q, k)?;
    match nonabelian_certificate(&pres, max_degree) {
        Some(a) => {
            let ok = check_assignment(&pres, &a);
            let (x, y) = a.noncommuting;
            let summary = format!("degree {} quotient, generators {} and {} do not commute", a.degree, x + 1, y + 1);
            Ok(Body {
                checks: vec![Check::new("nonabelian_quotient", ok, summary.clone())],
                result: json!({"presentation": pres, "assignment": a}),
                text: vec![summary],
                ..Body::default()
            })
        }
        None => {
            let caveat = format!("no non-abelian permutation quotient of degree at most {max_degree}");
            Ok(Body {
                checks: vec![Check::new("nonabelian_quotient", false, "not found").with_caveats(vec![caveat.clone()])],
                result: json!({"presentation": pres, "assignment": null}),
                text: vec![caveat],
                ..Body::default()
            })
        }
    }
}

fn pair(p: u32, q: u32, k: u32, series: SeriesSelector, seed: u64) -> Result<Body, CliError> {
    let r = verify_zariski_pair(p, q, k, series, seed)?;
    let n = p * q * k;
    let checks = vec![
        Check::new("same_degree", r.same_degree, format!("{} and {}", r.c1.bundle.degree, r.c2.bundle.degree)),
        Check::new(
            "same_singular_count",
            r.same_singular_count,
            format!("{} and {}", r.c1.verification.count, r.c2.verification.count),
        ),
        Check::new("same_local_types", r.same_local_types, format!("type {:?}", r.c1.bundle.expected_type)),
        Check::new(
            "c1_abelianization",
            r.c1_abelianization.free_rank == 0 && r.c1_abelianization.torsion == vec![n.into()],
            format!("{}", r.c1_abelianization),
        ),
        Check::new(
            "c1_nonabelian_quotient",
            r.c1_nonabelian_quotient.is_some(),
            r.c1_nonabelian_quotient.as_ref().map_or("not found".into(), |a| format!("degree {}", a.degree)),
        ),
    ];
    let text = vec![
        format!("C1: degree {}, {} singular points", r.c1.bundle.degree, r.c1.verification.count),
        format!("C2: degree {}, {} singular points", r.c2.bundle.degree, r.c2.verification.count),
        format!("C2 group: {}", r.c2_group),
    ];
    Ok(Body { checks, result: to_value(&r), text, ..Body::default() })
}

/// Text rendering of a report.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = format!("{} {}: {}\n", doc.toolkit.name, doc.toolkit.version, doc.command);
    for line in &doc.text {
        out.push_str(&format!("  {line}\n"));
    }
    for c in &doc.checks {
        let tag = match (c.passed, c.caveats.is_empty()) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "OPEN",
        };
        out.push_str(&format!("{tag}  {}: {}\n", c.name, c.summary));
        for w in &c.witnesses {
            out.push_str(&format!("      witness {w}\n"));
        }
        for cv in &c.caveats {
            out.push_str(&format!("      caveat: {cv}\n"));
        }
    }
    for cv in &doc.caveats {
        out.push_str(&format!("caveat: {cv}\n"));
    }
    out.push_str(&format!("exit {} ({} ms)\n", doc.exit_code, doc.timing.elapsed_ms));
    out
}

pub fn render_json(doc: &ReportDocument) -> String {
    serde_json::to_string_pretty(doc).expect("report serializes") + "\n"
}

/// Full invocation: parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = CommandRequest::from_cli(cli).and_then(|req| Ok((run_command(&req)?, req.json())));
    match outcome {
        Ok((doc, json)) => {
            print!("{}", if json { render_json(&doc) } else { render_text(&doc) });
            doc.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

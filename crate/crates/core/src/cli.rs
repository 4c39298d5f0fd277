//! Command-line front end. `run` parses arguments, dispatches, writes the
//! report to `out` and diagnostics to `err`, and returns the exit code.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::assembler::{
    default_window, predict_closed_form, run_pipeline, separating_epsilon, AssemblyError, ClosedFormPrediction,
    GradingParams,
};
use crate::complexes::{ComplexError, HomologyTable};
use crate::groupring::PrimeModulus;
use crate::ladder::{propagate_units, validate_commutativity, CommutativityVerdict, LadderSpec, UnitVerdict};
use crate::profiles::{
    build_standard_profile, extract_orbits, filter_window, BRule, OrbitFamilyRecord, OrbitKind, PLProfile, ProfileError,
    StandardFamilyParams,
};
use crate::rational::Rational;
use crate::squeeze::{certify_nonsqueezing, room_report, SqueezeError};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "equivch", version, about = "Exact (equivariant) contact homology of prequantized balls")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, env = "EQUIVCH_FORMAT", default_value = "table", global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List closed Reeb orbit families of a profile.
    Orbits(OrbitsArgs),
    /// Non-equivariant homology against the closed form.
    Ch(ChArgs),
    /// Z_k-equivariant homology against the closed form.
    ChEquivariant(ChArgs),
    /// Non-squeezing certificate for B(R1) x S^1 into B(R2) x S^1.
    Certify(CertifyArgs),
    /// Squeezing-room bounds for m, kappa, b.
    Room(RoomArgs),
    /// Check a serialized ladder for commutativity and unit propagation.
    LadderCheck(LadderArgs),
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("window must look like lo:hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("window {lo}:{hi} is empty"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, Args)]
pub struct ProfileSource {
    /// Profile document (JSON with "corners" and "plateau").
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Standard family: delta.
    #[arg(long, value_parser = parse_rational, conflicts_with = "profile")]
    pub delta: Option<Rational>,
    /// Standard family: c.
    #[arg(long, value_parser = parse_rational, conflicts_with = "profile")]
    pub c: Option<Rational>,
    /// Standard family: use b = 1 - s/c instead of b = 1 - 1/c.
    #[arg(long, value_parser = parse_rational, conflicts_with = "profile")]
    pub b_scale: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long = "R", value_parser = parse_rational)]
    pub radius: Rational,
    #[command(flatten)]
    pub source: ProfileSource,
    /// Keep only orbits with action above epsilon.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct ChArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long = "R", value_parser = parse_rational)]
    pub radius: Rational,
    #[command(flatten)]
    pub source: ProfileSource,
    /// Action window lower bound; derived from the profile when omitted.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
    /// Degree window lo:hi.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "R1", value_parser = parse_rational)]
    pub r1: Rational,
    #[arg(long = "R2", value_parser = parse_rational)]
    pub r2: Rational,
    /// Pin the prime k.
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RoomArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub kappa: u64,
    #[arg(long)]
    pub b: u64,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    /// Ladder document; `-` reads standard input.
    pub ladder: PathBuf,
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

/// Exit code for a profile error: degeneracies are 2, everything else 1.
pub fn profile_error_code(e: &ProfileError) -> i32 {
    match e {
        ProfileError::DegenerateGeometry(_) | ProfileError::DegenerateIntercept { .. } | ProfileError::CriticalValue(_) => {
            EXIT_DEGENERATE
        }
        _ => EXIT_INPUT,
    }
}

pub fn assembly_error_code(e: &AssemblyError) -> i32 {
    match e {
        AssemblyError::Profile(p) => profile_error_code(p),
        AssemblyError::NonStandardLayout(_) | AssemblyError::NonFreeAction { .. } => EXIT_DEGENERATE,
        AssemblyError::NoAdmissibleParams(_) | AssemblyError::Complex(ComplexError::EmptyWindow { .. }) => EXIT_INPUT,
        AssemblyError::Complex(_) => EXIT_MISMATCH,
    }
}

pub fn squeeze_error_code(e: &SqueezeError) -> i32 {
    match e {
        SqueezeError::Precondition(_) => EXIT_INPUT,
        SqueezeError::Assembly(a) => assembly_error_code(a),
        SqueezeError::CertificateFailure(_) => EXIT_MISMATCH,
    }
}

impl From<ProfileError> for Failure {
    fn from(e: ProfileError) -> Self {
        Failure { code: profile_error_code(&e), message: e.to_string() }
    }
}

impl From<AssemblyError> for Failure {
    fn from(e: AssemblyError) -> Self {
        Failure { code: assembly_error_code(&e), message: e.to_string() }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        AssemblyError::from(e).into()
    }
}

impl From<SqueezeError> for Failure {
    fn from(e: SqueezeError) -> Self {
        Failure { code: squeeze_error_code(&e), message: e.to_string() }
    }
}

struct Report {
    code: i32,
    json: Value,
    table: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli.command) {
        Ok(report) => {
            let text = match format {
                OutputFormat::Json => {
                    let mut doc = json!({ "schema_version": SCHEMA_VERSION });
                    if let (Value::Object(d), Value::Object(body)) = (&mut doc, report.json) {
                        d.extend(body);
                    }
                    serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
                }
                OutputFormat::Table => report.table,
            };
            let _ = out.write_all(text.as_bytes());
            report.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Orbits(a) => cmd_orbits(a),
        Command::Ch(a) => cmd_ch(a, false),
        Command::ChEquivariant(a) => cmd_ch(a, true),
        Command::Certify(a) => cmd_certify(a),
        Command::Room(a) => cmd_room(a),
        Command::LadderCheck(a) => cmd_ladder_check(a),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {}: {e}", path.display())))
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// The profile and, for the standard family, its parameters.
fn load_profile(source: &ProfileSource, radius: &Rational) -> Result<(PLProfile, Option<StandardFamilyParams>), Failure> {
    if let Some(path) = &source.profile {
        let text = read_input(path)?;
        let profile: PLProfile =
            serde_json::from_str(&text).map_err(|e| Failure::input(format!("bad profile document: {e}")))?;
        return Ok((profile, None));
    }
    let (Some(delta), Some(c)) = (&source.delta, &source.c) else {
        return Err(Failure::input("supply --profile or both --delta and --c"));
    };
    let mut params = StandardFamilyParams::new(radius.clone(), delta.clone(), c.clone());
    if let Some(s) = &source.b_scale {
        params.b_rule = BRule::OneMinusScaledInverse(s.clone());
    }
    let profile = build_standard_profile(&params)?;
    Ok((profile, Some(params)))
}

fn kind_name(k: OrbitKind) -> &'static str {
    match k {
        OrbitKind::Origin => "origin",
        OrbitKind::Sphere => "sphere",
        OrbitKind::Plateau => "plateau",
    }
}

fn orbit_table(orbits: &[OrbitFamilyRecord]) -> String {
    let mut rows = vec![[
        "kind".to_string(),
        "m".into(),
        "corner".into(),
        "slope".into(),
        "intercept".into(),
        "action".into(),
        "action~".into(),
    ]];
    for o in orbits {
        rows.push([
            kind_name(o.kind).to_string(),
            o.m.to_string(),
            o.corner_index.to_string(),
            o.tangent_slope.to_string(),
            o.vertical_intercept.to_string(),
            o.action.to_string(),
            o.action.to_decimal_string(6),
        ]);
    }
    render_rows(&rows)
}

fn render_rows<const N: usize>(rows: &[[String; N]]) -> String {
    let widths: Vec<usize> = (0..N).map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

fn cmd_orbits(a: OrbitsArgs) -> Result<Report, Failure> {
    let (profile, params) = load_profile(&a.source, &a.radius)?;
    let mut orbits = extract_orbits(&profile, &a.radius)?;
    if let Some(eps) = &a.epsilon {
        orbits = filter_window(&orbits, eps)?;
    }
    let mut table = orbit_table(&orbits);
    let warnings = params.map(|p| p.warnings(a.epsilon.as_ref())).unwrap_or_default();
    for w in &warnings {
        let _ = writeln!(table, "warning: {w}");
    }
    let json = json!({
        "command": "orbits",
        "radius": a.radius,
        "epsilon": a.epsilon,
        "profile": profile,
        "orbits": orbits,
        "warnings": warnings,
    });
    Ok(Report { code: EXIT_OK, json, table })
}

fn homology_table(t: &HomologyTable) -> String {
    let mut rows = vec![["degree".to_string(), "dim".to_string()]];
    for (m, d) in t.dims.iter().rev() {
        rows.push([m.to_string(), d.to_string()]);
    }
    render_rows(&rows)
}

fn cmd_ch(a: ChArgs, equivariant: bool) -> Result<Report, Failure> {
    if a.n == 0 {
        return Err(Failure::input("--n must be positive"));
    }
    let k = PrimeModulus::new(a.k).map_err(|e| Failure::input(e.to_string()))?;
    let prediction: ClosedFormPrediction = predict_closed_form(a.n, &a.radius)?;
    let (profile, _) = load_profile(&a.source, &a.radius)?;
    let epsilon = match &a.epsilon {
        Some(e) => e.clone(),
        None => {
            let orbits = extract_orbits(&profile, &a.radius)?;
            separating_epsilon(&orbits, &profile)
                .ok_or_else(|| Failure::input("no separating action window; pass --epsilon"))?
        }
    };
    let g = GradingParams::new(a.n, k);
    let outcome = run_pipeline(&profile, &a.radius, &epsilon, &g)?;
    let (lo, hi) = a.window.unwrap_or_else(|| default_window(a.n, &a.radius));
    let table = if equivariant {
        outcome.complex.equivariant_homology(lo, hi)?
    } else {
        outcome.complex.homology(lo, hi)?
    };
    let matches = (lo..=hi).all(|m| {
        let expected = if equivariant { m >= prediction.equivariant_threshold } else { m == prediction.noneq_degree };
        table.dim(m) == usize::from(expected)
    });
    let verdict = if matches { "MATCH" } else { "MISMATCH" };
    let mut text = homology_table(&table);
    if equivariant {
        let _ = writeln!(text, "prediction: Z_{} in every degree >= {}", a.k, prediction.equivariant_threshold);
    } else {
        let _ = writeln!(text, "prediction: Z_{} in degree {} only", a.k, prediction.noneq_degree);
    }
    let _ = writeln!(text, "verdict: {verdict}");
    let json = json!({
        "command": if equivariant { "ch-equivariant" } else { "ch" },
        "n": a.n,
        "k": a.k,
        "radius": a.radius,
        "epsilon": epsilon,
        "layout": outcome.layout,
        "homology": table,
        "prediction": prediction,
        "verdict": verdict,
    });
    Ok(Report { code: if matches { EXIT_OK } else { EXIT_MISMATCH }, json, table: text })
}

fn cmd_certify(a: CertifyArgs) -> Result<Report, Failure> {
    let cert = certify_nonsqueezing(a.n, &a.r1, &a.r2, a.k)?;
    let mut text = String::new();
    let rows = [
        ["n".to_string(), cert.n.to_string()],
        ["R1".into(), cert.r1.to_string()],
        ["R2".into(), cert.r2.to_string()],
        ["k".into(), cert.k.to_string()],
        ["l".into(), cert.l.to_string()],
        ["r1 = R1/k".into(), cert.scaled_r1.to_string()],
        ["r2 = R2/k".into(), cert.scaled_r2.to_string()],
        ["p".into(), cert.p.to_string()],
        ["dims".into(), format!("({}, {})", cert.dims.0, cert.dims.1)],
    ];
    text.push_str(&render_rows(&rows));
    if cert.r1 != cert.requested_r1 || cert.r2 != cert.requested_r2 {
        let _ = writeln!(text, "requested R1 = {}, R2 = {}", cert.requested_r1, cert.requested_r2);
    }
    for (i, step) in cert.narrative.iter().enumerate() {
        let _ = writeln!(text, "{}. {step}", i + 1);
    }
    let _ = writeln!(text, "{}", if cert.valid { "VALID" } else { "INVALID" });
    let json = json!({ "command": "certify", "certificate": cert });
    Ok(Report { code: if cert.valid { EXIT_OK } else { EXIT_MISMATCH }, json, table: text })
}

fn cmd_room(a: RoomArgs) -> Result<Report, Failure> {
    let r = room_report(a.m, a.kappa, a.b)?;
    let opt = |v: &Option<Rational>| v.as_ref().map_or("-".to_string(), Rational::to_string);
    let rows = [
        ["m / kappa".to_string(), format!("{}/{}", r.m, r.kappa)],
        ["b".into(), r.b.to_string()],
        ["sandwich".into(), r.sandwich_holds.to_string()],
        ["strong".into(), r.strong_holds.to_string()],
        ["required room".into(), opt(&r.required_room)],
        ["ekp bound".into(), r.ekp_bound.to_string()],
        ["construction bound".into(), r.construction_bound.to_string()],
        ["gap".into(), r.gap.as_ref().map_or("-".to_string(), |(lo, hi)| format!("({lo}, {hi})"))],
    ];
    let json = json!({ "command": "room", "report": r });
    Ok(Report { code: EXIT_OK, json, table: render_rows(&rows) })
}

fn cmd_ladder_check(a: LadderArgs) -> Result<Report, Failure> {
    let text = read_input(&a.ladder)?;
    let ladder: LadderSpec = serde_json::from_str(&text).map_err(|e| Failure::input(format!("bad ladder document: {e}")))?;
    let commutativity = validate_commutativity(&ladder).map_err(|e| Failure::input(e.to_string()))?;
    let units = match commutativity {
        CommutativityVerdict::Ok => Some(propagate_units(&ladder).map_err(|e| Failure::input(e.to_string()))?),
        CommutativityVerdict::FailingSquare { .. } => None,
    };
    let valid = commutativity == CommutativityVerdict::Ok && !units.is_some_and(|u| u.is_counterexample());
    let mut table = String::new();
    match commutativity {
        CommutativityVerdict::Ok => table.push_str("commutativity: ok\n"),
        CommutativityVerdict::FailingSquare { square } => {
            let _ = writeln!(table, "commutativity: square {square} fails");
        }
    }
    match units {
        Some(UnitVerdict::AllUnits) => table.push_str("units: all_units\n"),
        Some(UnitVerdict::FirstNonUnit { index, counterexample }) => {
            let _ = writeln!(table, "units: first non-unit a_{index}{}", if counterexample { " (COUNTEREXAMPLE)" } else { "" });
        }
        None => {}
    }
    if units.is_some_and(|u| u.is_counterexample()) {
        let _ = writeln!(table, "ladder: {}", serde_json::to_string(&ladder).expect("ladders serialize"));
    }
    let json = json!({
        "command": "ladder-check",
        "commutativity": to_value(&commutativity),
        "units": units.map(|u| to_value(&u)),
        "valid": valid,
    });
    Ok(Report { code: if valid { EXIT_OK } else { EXIT_MISMATCH }, json, table })
}

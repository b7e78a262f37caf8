//! Command-line front end.
//!
//! Output is one JSON document on stdout unless `--pretty` is given. Exit codes: 0 on
//! success, 1 on a domain error (reported as JSON on stderr) or a failing corpus run, 2 on
//! a usage error.

pub mod corpus;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bridge::{build_bridge, normalize_path, qp_bridge, BridgeResult, Target};
use crate::classifier::{classify_with, numeric::NumericConfig, Mode};
use crate::error::Error;
use crate::parser::{
    denominator_warnings, map_ast, parse_map, parse_path, parse_set, path_ast, set_ast, RegularMap,
};
use crate::projective::path_limit;
use crate::sampler::{polynomial_image_obstruction, svg, SampleConfig, Stability, Subject};

#[derive(Parser, Debug)]
#[command(name = "atinfinity", version, about = "Points at infinity of polynomial and regular images")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Include the parsed input as a JSON syntax tree.
    #[arg(long, global = true)]
    emit_ast: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a regular map is quasi-polynomial.
    Classify {
        map: String,
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Starting points for the numeric search.
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exact limit of a map along a rational path as t -> 0+.
    Limit {
        map: String,
        #[arg(long)]
        path: String,
    },
    /// Bridging map h from the plane with h(t, 1/t) = alpha, h(t, -1/t) = beta.
    Bridge {
        map: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Quasi-polynomial bridge through alpha and the first axis.
    QpBridge {
        map: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Sample the set at infinity and run the connectivity obstruction test.
    SampleInfinity(SampleArgs),
    /// The bundled example corpus.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("subject").required(true).args(["map", "set"])))]
struct SampleArgs {
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    set: Option<String>,
    /// Sampler configuration: a JSON file, or inline JSON starting with `{`.
    #[arg(long)]
    config: Option<String>,
    /// Write an SVG of the circle at infinity (target dimension 2 only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    /// List the corpus.
    List,
    /// Run the corpus checks.
    Run {
        /// Run a single case.
        #[arg(long)]
        id: Option<String>,
        /// Skip the sampler checks.
        #[arg(long)]
        no_sample: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// A completed run whose checks failed; the output has been printed.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Checks) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(e)) => {
            let v = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            let _ = writeln!(err, "{v}");
            1
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Arity { .. } => "arity",
        Error::DegreeTooSmall { .. } => "degree",
        Error::ZeroPolynomial(_) => "zero_polynomial",
        Error::NotHomogeneous(_) => "not_homogeneous",
        Error::ZeroVector => "zero_vector",
        Error::PoleAlongPath => "pole_along_path",
        Error::Unreduced => "unreduced",
        Error::ExactModeUnsupported(_) => "exact_mode_unsupported",
        Error::Precondition { .. } => "precondition",
        Error::PathNotAtInfinity => "path_not_at_infinity",
        Error::InvalidConfig(_) => "invalid_config",
    }
}

/// Reads a file, or a bundled corpus file given as `corpus:<id or file name>`.
fn read_source(name: &str) -> std::result::Result<String, Failure> {
    if let Some(key) = name.strip_prefix("corpus:") {
        let file = corpus::find(key).map(|c| c.file).unwrap_or_else(|| key.to_string());
        return corpus::file_text(&file)
            .map(str::to_string)
            .ok_or_else(|| Failure::Usage(format!("no corpus entry `{key}`")));
    }
    std::fs::read_to_string(name).map_err(|e| Failure::Usage(format!("cannot read `{name}`: {e}")))
}

fn load_map(name: &str) -> std::result::Result<RegularMap, Failure> {
    Ok(parse_map(&read_source(name)?)?)
}

fn emit(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(out, "{v}");
}

fn with_ast(cli: &Cli, mut v: Value, ast: impl FnOnce() -> Value) -> Value {
    if cli.emit_ast {
        v["ast"] = ast();
    }
    v
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Classify {
            map,
            mode,
            starts,
            seed,
        } => {
            let mode: Mode = mode
                .parse()
                .map_err(|_| Failure::Usage(format!("unknown mode `{mode}`; use exact, numeric or auto")))?;
            let f = load_map(map)?;
            let mut ncfg = NumericConfig::default();
            if let Some(s) = starts {
                ncfg.starts = *s;
            }
            if let Some(s) = seed {
                ncfg.seed = *s;
            }
            let verdict = classify_with(&f, mode, &ncfg)?;
            let warnings = denominator_warnings(&f);
            if cli.pretty {
                let _ = writeln!(out, "{} ({})", verdict.status, verdict.reason.name());
                let _ = writeln!(out, "  d = {}, e = {}", verdict.d, verdict.e);
                let _ = writeln!(out, "  F0' = {}", verdict.f0prime);
                if let Some(w) = verdict.witness() {
                    let _ = writeln!(out, "  witness: {}", serde_json::to_string(w).unwrap());
                }
                for w in &warnings {
                    let _ = writeln!(out, "  warning: {w}");
                }
                return Ok(());
            }
            let mut v = serde_json::to_value(&verdict).expect("verdict serializes");
            if !warnings.is_empty() {
                v["warnings"] = json!(warnings);
            }
            emit(out, &with_ast(cli, v, || map_ast(&f)));
        }
        Command::Limit { map, path } => {
            let f = load_map(map)?;
            let alpha = parse_path(path)?;
            let l = path_limit(&f, &alpha)?;
            if cli.pretty {
                let _ = writeln!(out, "{} = {}", l.point.integral_string(), l.point);
                return Ok(());
            }
            let v = json!({
                "path": alpha.to_text(),
                "point": l.point.to_string(),
                "integral": l.point.integral_string(),
                "coords": l.point.coord_strings(),
                "at_infinity": l.point.at_infinity(),
                "nu": l.nu,
                "leading": serde_json::to_value(&l).unwrap()["leading"],
            });
            emit(out, &with_ast(cli, v, || json!({"map": map_ast(&f), "path": path_ast(&alpha)})));
        }
        Command::Bridge { map, alpha, beta } => {
            let f = load_map(map)?;
            let a = normalize_path(&parse_path(alpha)?, Target::Simple)?;
            let b = normalize_path(&parse_path(beta)?, Target::Simple)?;
            let r = build_bridge(&f, &a, &b)?;
            report_bridge(cli, out, &f, &r)?;
        }
        Command::QpBridge { map, alpha, ell } => {
            let f = load_map(map)?;
            let r = qp_bridge(&f, &parse_path(alpha)?, *ell)?;
            report_bridge(cli, out, &f, &r)?;
        }
        Command::SampleInfinity(args) => sample(cli, out, args)?,
        Command::Examples { action } => examples(cli, out, action)?,
    }
    Ok(())
}

fn report_bridge(cli: &Cli, out: &mut dyn Write, f: &RegularMap, r: &BridgeResult) -> Outcome {
    if cli.pretty {
        let _ = writeln!(out, "h = {}", r.h);
        let _ = writeln!(out, "g = {}", r.g);
        for c in &r.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{mark} {}  [{}]", c.name, c.detail);
        }
        for l in &r.limits {
            match &l.limit {
                Ok(p) => writeln!(out, "     {}: {}", l.name, p.point),
                Err(e) => writeln!(out, "     {}: {e}", l.name),
            }
            .ok();
        }
        if let Some(v) = &r.verdict {
            let _ = writeln!(out, "     classify(g) = {} ({})", v.status, v.reason.name());
        }
    } else {
        emit(out, &with_ast(cli, r.to_json(), || map_ast(f)));
    }
    if r.all_passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn sample(cli: &Cli, out: &mut dyn Write, args: &SampleArgs) -> Outcome {
    let cfg = match &args.config {
        None => SampleConfig::default(),
        Some(c) => {
            let text = if c.trim_start().starts_with('{') {
                c.clone()
            } else {
                read_source(c)?
            };
            SampleConfig::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))?
        }
    };
    let (verdict, report, ast) = if let Some(m) = &args.map {
        let f = load_map(m)?;
        let (v, r) = polynomial_image_obstruction(Subject::Map(&f), &cfg)?;
        (v, r, map_ast(&f))
    } else {
        let name = args.set.as_deref().expect("clap enforces the group");
        let s = parse_set(&read_source(name)?)?;
        let (v, r) = polynomial_image_obstruction(Subject::Set(&s), &cfg)?;
        (v, r, set_ast(&s))
    };
    if let Some(path) = &args.svg {
        let text = svg::render(&report)?;
        std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write `{}`: {e}", path.display())))?;
    }
    if cli.pretty {
        let stable = match report.stable_count {
            Stability::Stable(k) => k.to_string(),
            Stability::Unstable => "unstable".into(),
        };
        let _ = writeln!(out, "{}", verdict.message);
        let _ = writeln!(out, "  components per radius: {:?} (stable: {stable})", report.counts());
        for (k, c) in report.clusters().iter().enumerate() {
            let near = c
                .nearest
                .as_ref()
                .map(|n| format!(", nearest {} at {:.2e}", n.point, n.distance))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  C{}: {} samples, centroid {:?}, extent {:.3}{near}",
                k + 1,
                c.size,
                c.centroid,
                c.extent
            );
        }
        for w in &report.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        return Ok(());
    }
    let v = json!({"obstruction": verdict, "report": report.to_json()});
    emit(out, &with_ast(cli, v, || ast));
    Ok(())
}

fn examples(cli: &Cli, out: &mut dyn Write, action: &ExamplesAction) -> Outcome {
    match action {
        ExamplesAction::List => {
            let cases = corpus::cases();
            if cli.pretty {
                for c in &cases {
                    let _ = writeln!(out, "{:<22} {:<24} {}", c.id, c.file, c.citation);
                }
            } else {
                let v: Vec<Value> = cases
                    .iter()
                    .map(|c| json!({"id": c.id, "file": c.file, "citation": c.citation, "source": c.source()}))
                    .collect();
                emit(out, &json!(v));
            }
            Ok(())
        }
        ExamplesAction::Run { id, no_sample } => {
            let cases = match id {
                None => corpus::cases(),
                Some(i) => vec![corpus::find(i).ok_or_else(|| Failure::Usage(format!("no corpus entry `{i}`")))?],
            };
            let cfg = SampleConfig::default();
            let mut rows = Vec::new();
            let mut all = true;
            for c in &cases {
                let o = corpus::run_case(c, &cfg, !no_sample)?;
                all &= o.passed();
                rows.push(o);
            }
            if cli.pretty {
                for o in &rows {
                    let mark = if o.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{mark}  {:<22} {}", o.case.id, o.case.citation);
                    for ch in &o.checks {
                        let m = if ch.passed { "ok  " } else { "FAIL" };
                        let _ = writeln!(out, "        {m} {} [{}]", ch.name, ch.detail);
                    }
                }
                let passed = rows.iter().filter(|o| o.passed()).count();
                let _ = writeln!(out, "{passed}/{} cases passed", rows.len());
            } else {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|o| {
                        json!({
                            "id": o.case.id,
                            "citation": o.case.citation,
                            "passed": o.passed(),
                            "checks": o.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(out, &json!({"passed": all, "cases": v}));
            }
            if all {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

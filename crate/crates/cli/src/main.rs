use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;
use wonderstab::diagram::Diagram;
use wonderstab::linalg::QVector;
use wonderstab::model::{build_chain_reporting, BuiltPoint, ModelPoint};
use wonderstab::sample::{random_model_point, rng};
use wonderstab::stabilizer::{brute_stabilizer, stabilizer, stabilizer_diagram};
use wonderstab::strata::{b_signature, check_distinguishing, Mode};
use wonderstab::verify::{self, Status};

#[derive(Parser)]
#[command(
    name = "wonderstab",
    version,
    about = "Stabilizers and stratifications of the wonderful model of the braid arrangement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stabilizer of a model point as Z2^h.
    Stab(PointArgs),
    /// Nested stratum and refined signature of a model point.
    Stratum(PointArgs),
    /// Intersected and reduced diagram of a model point, or a diagram file.
    Diagram(PointArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Format {
    /// JSON output (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Human-readable output.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct PointArgs {
    /// Size of the ground set.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: Option<u64>,
    /// The point x, comma-separated integers or p/q rationals.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// A line l_i, repeatable, in chain order.
    #[arg(long = "line", allow_hyphen_values = true)]
    lines: Vec<String>,
    /// JSON file holding a model point ({n, x, lines}) or, for `diagram`, a diagram.
    #[arg(long, conflicts_with_all = ["x", "lines"])]
    input: Option<PathBuf>,
    /// Also compute the stabilizer by scanning S_n.
    #[arg(long)]
    brute: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    /// Random cases per suite.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Group points by nested stratum only; expected to fail for n >= 3.
    #[arg(long)]
    nested_only: bool,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    InvalidPoint(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::InvalidPoint(_) => 3,
        }
    }
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

enum Input {
    Point(BuiltPoint),
    Diagram(Diagram),
}

fn read_input(args: &PointArgs, allow_diagram: bool) -> Result<Input, CliError> {
    let n = args.n.map(|n| n as usize);
    let check_n = |found: usize| match n {
        Some(n) if n != found => Err(CliError::Parse(format!("--n {n} does not match the input dimension {found}"))),
        _ => Ok(()),
    };
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(parse_err)?;
        if allow_diagram && value.get("cubes").is_some() {
            let d: Diagram = serde_json::from_value(value).map_err(parse_err)?;
            check_n(d.n())?;
            return Ok(Input::Diagram(d));
        }
        // Parse the raw fields first so that malformed JSON and invalid
        // points are told apart.
        let x: QVector = serde_json::from_value(value.get("x").cloned().unwrap_or(Value::Null)).map_err(parse_err)?;
        let lines: Vec<QVector> =
            serde_json::from_value(value.get("lines").cloned().unwrap_or(json!([]))).map_err(parse_err)?;
        if let Some(stated) = value.get("n").and_then(Value::as_u64) {
            if stated as usize != x.dim() {
                return Err(CliError::Parse(format!("\"n\" is {stated} but x has {} coordinates", x.dim())));
            }
        }
        check_n(x.dim())?;
        return build(&x, &lines);
    }
    let x = args.x.as_deref().ok_or_else(|| CliError::Parse("give --x (with optional --line) or --input".into()))?;
    let x = QVector::parse(x).map_err(parse_err)?;
    check_n(x.dim())?;
    let lines = args.lines.iter().map(|l| QVector::parse(l)).collect::<Result<Vec<_>, _>>().map_err(parse_err)?;
    if let Some(l) = lines.iter().find(|l| l.dim() != x.dim()) {
        return Err(CliError::Parse(format!("line {l} has {} coordinates, expected {}", l.dim(), x.dim())));
    }
    build(&x, &lines)
}

fn build(x: &QVector, lines: &[QVector]) -> Result<Input, CliError> {
    if x.dim() < 2 {
        return Err(CliError::Parse("n must be at least 2".into()));
    }
    build_chain_reporting(x, lines).map(Input::Point).map_err(|e| CliError::InvalidPoint(e.to_string()))
}

fn point_input(args: &PointArgs) -> Result<BuiltPoint, CliError> {
    match read_input(args, false)? {
        Input::Point(p) => Ok(p),
        Input::Diagram(_) => unreachable!("diagrams are only read when allowed"),
    }
}

fn chain_json(w: &ModelPoint) -> Value {
    json!(w.nested_stratum())
}

fn stab(args: &PointArgs) -> Result<String, CliError> {
    let built = point_input(args)?;
    let w = &built.point;
    let group = stabilizer(w).map_err(failed)?;
    let oracle = if args.brute { Some(brute_stabilizer(w).map_err(parse_err)?) } else { None };
    let matches = oracle.as_ref().map(|o| &group.elements() == o.elements());
    if args.format.text {
        let mut out = format!("stab = {group}\norder {}\n", group.order());
        if built.auto_completed {
            out += &format!("note: forced final line {} filled in\n", w.chain().last().expect("nonempty chain").line);
        }
        if let (Some(o), Some(m)) = (&oracle, matches) {
            out += &format!("oracle: order {}, {}\n", o.order(), if m { "match" } else { "MISMATCH" });
        }
        return Ok(out);
    }
    let mut out = serde_json::to_value(&group).map_err(failed)?;
    if built.auto_completed {
        out["auto_completed"] = json!(true);
        out["point"] = serde_json::to_value(w).map_err(failed)?;
    }
    if let (Some(o), Some(m)) = (&oracle, matches) {
        out["oracle"] = json!({ "order": o.order(), "elements": o.elements(), "match": m });
    }
    Ok(out.to_string() + "\n")
}

fn stratum(args: &PointArgs) -> Result<String, CliError> {
    let built = point_input(args)?;
    let w = &built.point;
    let sig = b_signature(w).map_err(parse_err)?;
    if args.format.text {
        let chain: Vec<String> = w.nested_stratum().iter().map(ToString::to_string).collect();
        return Ok(format!("nested stratum: [{}]\nsignature: {sig}\n", chain.join(", ")));
    }
    let out = json!({ "nested_stratum": chain_json(w), "signature": sig });
    Ok(out.to_string() + "\n")
}

fn diagram(args: &PointArgs) -> Result<String, CliError> {
    let d = match read_input(args, true)? {
        Input::Point(built) => stabilizer_diagram(&built.point).map_err(failed)?,
        Input::Diagram(d) => d,
    };
    let reduced = d.reduce().map_err(failed)?;
    if args.format.text {
        return Ok(format!(
            "diagram: {}\nsymmetry group: {}\nreduced: {}\n",
            d.to_string().trim_end(),
            d.canonicalize().symmetry_group(),
            reduced.to_string().trim_end()
        ));
    }
    let out = json!({
        "diagram": d,
        "symmetry_group": d.canonicalize().symmetry_group(),
        "reduced": reduced,
    });
    Ok(out.to_string() + "\n")
}

fn run_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let n = args.n as usize;
    let samples = args.samples as usize;
    if args.nested_only {
        let mut r = rng(args.seed);
        let points: Vec<ModelPoint> = (0..samples).map(|_| random_model_point(n, &mut r)).collect();
        let report = check_distinguishing(n, &points, Mode::NestedOnly).map_err(parse_err)?;
        let out = if args.format.text {
            let mut s = format!(
                "nested-only: {} classes, {}\n",
                report.classes.len(),
                if report.pass { "PASS" } else { "FAIL" }
            );
            if let Some((a, b)) = &report.witness {
                s += &format!(
                    "witness: {} | {}\n",
                    serde_json::to_string(a).map_err(failed)?,
                    serde_json::to_string(b).map_err(failed)?
                );
            }
            s
        } else {
            serde_json::to_string(&report).map_err(failed)? + "\n"
        };
        return if report.pass { Ok(out) } else { Err(CliError::Failed(out)) };
    }
    let report = verify::run(&verify::Config { n, samples, seed: args.seed });
    let out = if args.format.text {
        let mut s = String::new();
        for r in &report.suites {
            s += &format!("{} {}/{} ({} cases)", r.status, r.module, r.suite, r.cases);
            if let Some(d) = &r.detail {
                s += &format!(": {d}");
            }
            s += "\n";
        }
        let failures = report.suites.iter().filter(|r| r.status == Status::Fail).count();
        s += &format!("{} suites, {failures} failed\n", report.suites.len());
        s
    } else {
        serde_json::to_string(&report).map_err(failed)? + "\n"
    };
    if report.pass {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Stab(a) => stab(a),
        Command::Stratum(a) => stratum(a),
        Command::Diagram(a) => diagram(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) if out.ends_with('\n') => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

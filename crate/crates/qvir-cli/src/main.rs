//! `qvir`: expand q-Virasoro block series and run the identity catalog.
//!
//! Exit codes: 0 pass, 1 identity failed, 2 usage error, 3 degenerate
//! parameters.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use qvir::catalog::{self, Backend, RunOptions, RunReport};
use qvir::{BiSeries, DegreeWindow, Error, Mutation, Verdict};

#[derive(Parser)]
#[command(name = "qvir", version, about = "Exact series for q-Virasoro blocks and their difference equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a series at a numeric parameter point.
    Expand(ExpandArgs),
    /// Check a named identity.
    Verify(VerifyArgs),
    /// Convergence table of the cut-and-join partial products.
    Wrep(WrepArgs),
    /// List the identity catalog.
    List,
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long, allow_negative_numbers = true)]
    lmax: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<i32>,
}

impl WindowArgs {
    fn resolve(&self, default: DegreeWindow) -> Result<DegreeWindow, Error> {
        let lmax = self.lmax.unwrap_or(default.lmax);
        let xmax = self.xmax.unwrap_or(default.xmax);
        let xmin = self.xmin.unwrap_or(if self.lmax.is_some() { -lmax.max(0) } else { default.xmin });
        let w = DegreeWindow::new(lmax, xmin, xmax);
        if lmax < 0 || !w.is_valid() {
            return Err(Error::Usage(format!("invalid window {w}")));
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long, value_parser = catalog::FUNCTIONS)]
    function: String,
    #[command(flatten)]
    window: WindowArgs,
    /// Comma-separated key=value pairs, e.g. u=2/5,s=3/7,Q=5/3.
    #[arg(long)]
    params: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    identity: String,
    #[command(flatten)]
    window: WindowArgs,
    /// Use symbols instead of random rationals.
    #[arg(long, conflicts_with = "numeric")]
    symbolic: bool,
    /// Use seeded random rationals.
    #[arg(long)]
    numeric: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u32,
    /// Degree parameter of identities that take one (r, n or the z order).
    #[arg(long)]
    n: Option<u32>,
    /// A single numeric point as key=value pairs.
    #[arg(long)]
    params: Option<String>,
    /// Test hook: corrupt one formula constant.
    #[arg(long, default_value = "none")]
    mutate: String,
}

#[derive(Args)]
struct WrepArgs {
    #[arg(long, default_value_t = 8)]
    max_iterations: u32,
    #[command(flatten)]
    window: WindowArgs,
    /// q, t and Q as key=value pairs.
    #[arg(long, default_value = "q=1/3,t=2,Q=2")]
    params: String,
}

fn window_json(w: &DegreeWindow) -> Value {
    json!({ "lmax": w.lmax, "xmin": w.xmin, "xmax": w.xmax })
}

fn params_json(pairs: &[(String, String)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
}

fn parse_pairs(text: &str) -> Vec<(String, String)> {
    text.split(',')
        .filter_map(|s| s.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

fn terms_json(s: &BiSeries, w: &DegreeWindow) -> Value {
    Value::Array(
        s.in_window(w)
            .map(|((l, x), c)| json!({ "dL": l, "dx": x, "coeff": c.to_string() }))
            .collect(),
    )
}

fn verdict_json(v: &Verdict) -> Value {
    let mismatch = v.mismatch.as_ref().map(|m| {
        json!({ "dL": m.dl, "dx": m.dx, "left": m.left.to_string(), "right": m.right.to_string() })
    });
    json!({
        "pass": v.pass,
        "compared": v.compared,
        "requested_window": window_json(&v.requested),
        "mismatch": mismatch,
        "notes": v.notes,
    })
}

fn decimal(r: &num_rational::BigRational) -> String {
    match r.to_f64() {
        Some(f) => format!("{f:.6e}"),
        None => "nan".into(),
    }
}

fn report_json(r: &RunReport) -> Value {
    let mut out = json!({
        "identity": r.identity,
        "window": window_json(&r.window),
        "backend": match r.backend { Backend::Numeric => "numeric", Backend::Symbolic => "symbolic" },
        "params": r.points.iter().map(|p| params_json(p)).collect::<Vec<_>>(),
        "redraws": r.redraws,
        "verdict": verdict_json(&r.verdict),
        "certified_window": window_json(&r.verdict.certified),
    });
    if let Some(rep) = &r.wrep {
        let table: Vec<Value> = rep
            .errors
            .iter()
            .map(|((l, x), errs)| {
                let rows: Vec<Value> = errs
                    .iter()
                    .enumerate()
                    .map(|(m, e)| json!({ "M": m, "exact": e.to_string(), "decimal": decimal(e) }))
                    .collect();
                json!({ "dL": l, "dx": x, "errors": rows })
            })
            .collect();
        let obj = out.as_object_mut().expect("object");
        obj.insert("max_iterations".into(), json!(rep.max_m));
        obj.insert("monotone".into(), json!(rep.monotone));
        obj.insert("factor_ten".into(), json!(rep.factor_ten));
        obj.insert("warning".into(), json!(rep.warning));
        obj.insert("table".into(), Value::Array(table));
    }
    out
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("qvir: {e}");
    match e {
        Error::Usage(_) | Error::Parse { .. } | Error::WindowUnderflow(_) | Error::NonExpandable(_) => {
            ExitCode::from(2)
        }
        Error::DegenerateParameters(_) | Error::Domain(_) | Error::EvaluationPole(_) | Error::NonInvertible => {
            eprintln!("qvir: the parameter point is degenerate; choose other values or another --seed");
            ExitCode::from(3)
        }
        _ => ExitCode::from(2),
    }
}

fn print(v: &Value) {
    use std::io::Write;
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn expand(a: &ExpandArgs) -> Result<ExitCode, Error> {
    let w = a.window.resolve(DegreeWindow::new(2, -2, 2))?;
    let s = catalog::expand(&a.function, &w, &a.params)?;
    match a.format {
        Format::Json => print(&json!({
            "function": a.function,
            "window": window_json(&w),
            "params": params_json(&parse_pairs(&a.params)),
            "terms": terms_json(&s, &w),
            "certified_window": window_json(&s.region().certified_window(w.xmin)),
        })),
        Format::Text => {
            for ((l, x), c) in s.in_window(&w) {
                println!("{l} {x} {c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(a: &VerifyArgs) -> Result<ExitCode, Error> {
    let spec = catalog::find(&a.identity)?;
    let mutation: Mutation = a.mutate.parse()?;
    let backend = if a.symbolic {
        Some(Backend::Symbolic)
    } else if a.numeric {
        Some(Backend::Numeric)
    } else {
        None
    };
    let mut opts = RunOptions {
        backend,
        seed: a.seed,
        trials: a.trials,
        n: a.n,
        params: a.params.clone(),
        mutation,
        ..RunOptions::default()
    };
    opts.window = Some(a.window.resolve(spec.default_window(spec.backend_for(&opts)))?);
    let start = Instant::now();
    let report = catalog::run(&a.identity, &opts)?;
    print(&report_json(&report));
    eprintln!("qvir: {} {} in {:.3}s", a.identity, if report.verdict.pass { "pass" } else { "FAIL" }, start.elapsed().as_secs_f64());
    Ok(if report.verdict.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn wrep(a: &WrepArgs) -> Result<ExitCode, Error> {
    let spec = catalog::find("wrep24")?;
    let opts = RunOptions {
        window: Some(a.window.resolve(spec.window)?),
        params: Some(a.params.clone()),
        max_iterations: a.max_iterations,
        ..RunOptions::default()
    };
    let report = catalog::run("wrep24", &opts)?;
    if let Some(w) = report.wrep.as_ref().and_then(|r| r.warning.as_ref()) {
        eprintln!("qvir: warning: {w}");
    }
    print(&report_json(&report));
    Ok(ExitCode::SUCCESS)
}

fn list() -> ExitCode {
    for s in catalog::CATALOG.iter() {
        let muts: Vec<&str> = s.mutations.iter().map(|m| m.name()).collect();
        println!(
            "{:<22} {:<9} window {}  mutations [{}]\n    {}",
            s.name,
            match s.backend { Backend::Numeric => "numeric", Backend::Symbolic => "symbolic" },
            s.window,
            muts.join(", "),
            s.summary
        );
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    qvir::init_threads_from_env();
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Expand(a) => expand(a),
        Command::Verify(a) => verify(a),
        Command::Wrep(a) => wrep(a),
        Command::List => Ok(list()),
    };
    r.unwrap_or_else(|e| fail(&e))
}

mod plot;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tricurve::curve::{implicitize, lies_on, Curve, CurveJson, ParamCurve, ProjPoint};
use tricurve::exactnum::{QOmega, Ring};
use tricurve::gallery;
use tricurve::hesse::{
    build_config, default_l0, instantiate, run_recursion, split_scaling_probe, verify_state_order, HesseError, PerturbState, PerturbStateJson,
};
use tricurve::singular::{full_census, CensusJson, CensusOptions, SingularError};
use tricurve::verify::{self, VerifyError};

#[derive(Parser)]
#[command(name = "tricurve", version, about = "Exact and certified computations on rational plane curves with triple points")]
struct Cli {
    /// Working precision of the certified numerics, in bits
    #[arg(long, global = true, default_value_t = 192)]
    precision: u32,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Print the machine-readable report
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: prop1a, prop1b, hesse-linear, hesse-phi
    Verify {
        target: String,
        /// Curve file replacing the built-in parametrizations
        #[arg(long)]
        curve: Vec<PathBuf>,
    },
    /// Run the perturbation recursion and write the state
    Recurse {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the order conditions of a saved state
    CheckOrder {
        #[arg(long)]
        state: PathBuf,
    },
    /// Write the curve of a state at a rational u
    Instantiate {
        #[arg(long)]
        state: PathBuf,
        /// Exact value such as "1/100"
        #[arg(long)]
        u: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Singular points of the union of the given curves
    Census {
        #[arg(required = true)]
        curves: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Implicit equation of a parametrized curve
    Implicitize {
        curve: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit how fast the nodes near each triple point merge as u shrinks
    ProbeScaling {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, num_args = 1.., default_values = ["1/50", "1/100", "1/200"])]
        u: Vec<String>,
    },
    /// Built-in curves
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// SVG of the real locus of parametrized curves
    Plot {
        curves: Vec<PathBuf>,
        /// Use the parametrizations of a gallery entry
        #[arg(long)]
        gallery: Option<String>,
        /// xmin,xmax,ymin,ymax
        #[arg(long, default_value = "-3,3,-3,3", allow_hyphen_values = true)]
        window: String,
        /// Parameter range t0,t1
        #[arg(long, default_value = "-3,3", allow_hyphen_values = true)]
        t_range: String,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Point to mark, as x:y:z
        #[arg(long, allow_hyphen_values = true)]
        mark: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
    Export {
        #[arg(long)]
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Verified,
    Falsified,
    Refused,
    Error,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Verified => 0,
            Status::Falsified => 1,
            Status::Refused => 2,
            Status::Error => 3,
        }
    }

    fn of(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Falsified
        }
    }
}

struct Outcome {
    status: Status,
    report: Value,
    summary: Vec<String>,
}

impl Outcome {
    fn new(status: Status, report: Value, summary: Vec<String>) -> Self {
        Outcome { status, report, summary }
    }
}

/// A failure together with the status it maps to.
struct Failure(Status, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(Status::Error, e.to_string())
    }
}

fn singular_failure(e: SingularError) -> Failure {
    match e {
        SingularError::PrecisionExhausted(p) | SingularError::PrecisionTooLow(p) => {
            Failure(Status::Refused, format!("{e}; retry with --precision {}", (2 * p).max(128)))
        }
        e => Failure(Status::Error, e.to_string()),
    }
}

fn hesse_failure(e: HesseError) -> Failure {
    match e {
        HesseError::Singular(s) => singular_failure(s),
        e @ (HesseError::ZeroB(_) | HesseError::Inconsistent(_) | HesseError::NoSolution { .. } | HesseError::MatrixChanged(_)) => {
            Failure(Status::Falsified, e.to_string())
        }
        e => Failure(Status::Error, e.to_string()),
    }
}

fn verify_failure(e: VerifyError) -> Failure {
    match e {
        VerifyError::Singular(s) => singular_failure(s),
        VerifyError::Hesse(h) => hesse_failure(h),
        VerifyError::Shape(s) => Failure(Status::Error, s),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(Status::Error, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(Status::Error, format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// A curve file holds one curve or a list of curves.
fn read_curves(path: &Path) -> Result<Vec<Curve>, Failure> {
    let text = read(path)?;
    let bad = |e: &dyn std::fmt::Display| Failure(Status::Error, format!("{}: {e}", path.display()));
    let files: Vec<CurveJson> = match serde_json::from_str::<Value>(&text).map_err(|e| bad(&e))? {
        Value::Array(v) => v.into_iter().map(serde_json::from_value).collect::<Result<_, _>>().map_err(|e| bad(&e))?,
        v => vec![serde_json::from_value(v).map_err(|e| bad(&e))?],
    };
    files.iter().map(|c| c.to_curve().map_err(|e| bad(&e))).collect()
}

fn read_params(paths: &[PathBuf]) -> Result<Vec<ParamCurve>, Failure> {
    let mut out = Vec::new();
    for p in paths {
        // equations stored next to parametrizations are skipped
        let before = out.len();
        out.extend(read_curves(p)?.into_iter().filter_map(|c| match c {
            Curve::Param(c) => Some(c),
            Curve::Implicit { .. } => None,
        }));
        if out.len() == before {
            return Err(Failure(Status::Error, format!("{}: no parametrized curve", p.display())));
        }
    }
    Ok(out)
}

fn read_state(path: &Path) -> Result<PerturbState, Failure> {
    let j: PerturbStateJson = serde_json::from_str(&read(path)?).map_err(|e| Failure(Status::Error, format!("{}: {e}", path.display())))?;
    PerturbState::try_from(&j).map_err(|e| Failure(Status::Error, format!("{}: {e}", path.display())))
}

fn parse_rational(s: &str) -> Result<QOmega, Failure> {
    s.parse::<QOmega>().map_err(|e| Failure(Status::Error, format!("bad number {s:?}: {e}")))
}

fn parse_point(s: &str) -> Result<ProjPoint, Failure> {
    let c: Vec<QOmega> = s.split(':').map(parse_rational).collect::<Result<_, _>>()?;
    let [x, y, z] = <[QOmega; 3]>::try_from(c).map_err(|_| Failure(Status::Error, format!("point {s:?} needs three coordinates")))?;
    ProjPoint::new(x, y, z).map_err(Failure::from)
}

fn census_summary(c: &CensusJson) -> String {
    format!("{} singular points, multiplicities {:?}, all ordinary: {}, delta sum {}", c.points, c.histogram, c.all_ordinary, c.delta_sum)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = CensusOptions::with_precision(cli.precision);
    match &cli.command {
        Command::Verify { target, curve } => {
            if !verify::TARGETS.contains(&target.as_str()) {
                return Err(Failure(Status::Error, format!("unknown target {target:?}; expected one of {}", verify::TARGETS.join(", "))));
            }
            let components = if curve.is_empty() { None } else { Some(read_params(curve)?) };
            let suite = verify::run(target, &opts, components).map_err(verify_failure)?;
            let summary = suite.checks.iter().map(|c| format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)).collect();
            Ok(Outcome::new(Status::of(suite.passed()), serde_json::to_value(&suite)?, summary))
        }
        Command::Recurse { order, out } => {
            let cfg = build_config(&default_l0()).map_err(hesse_failure)?;
            let st = run_recursion(&cfg, *order).map_err(hesse_failure)?;
            let check = verify_state_order(&st).map_err(hesse_failure)?;
            write(out, &to_json(&PerturbStateJson::from(&st)))?;
            let report = json!({ "order": st.order(), "layers": st.a.len(), "out": out.display().to_string(), "order_check": check_json(&check) });
            Ok(Outcome::new(Status::of(check.passed()), report, vec![format!("order {} state written to {}", st.order(), out.display())]))
        }
        Command::CheckOrder { state } => {
            let st = read_state(state)?;
            let check = verify_state_order(&st).map_err(hesse_failure)?;
            let line = match check.failure {
                None => format!("s_k1 - s_k2 vanishes through u^{} for all k", st.order() + 1),
                Some((k, p)) => format!("k = {}: nonzero coefficient of u^{p}", k + 1),
            };
            Ok(Outcome::new(Status::of(check.passed()), check_json(&check), vec![line]))
        }
        Command::Instantiate { state, u, out } => {
            let u0 = parse_rational(u)?;
            if u0.is_zero() {
                return Err(Failure(Status::Error, "u must be nonzero".into()));
            }
            let st = read_state(state)?;
            let c = instantiate(&st, &u0).map_err(hesse_failure)?;
            write(out, &to_json(&CurveJson::from(&c)))?;
            let report = json!({ "degree": c.degree(), "label": c.label, "out": out.display().to_string() });
            Ok(Outcome::new(Status::Verified, report, vec![format!("degree {} curve written to {}", c.degree(), out.display())]))
        }
        Command::Census { curves, out } => {
            let comps = read_params(curves)?;
            let census = full_census(&comps, &opts).map_err(singular_failure)?;
            let j = CensusJson::from(&census);
            if let Some(out) = out {
                write(out, &to_json(&j))?;
            }
            let line = census_summary(&j);
            Ok(Outcome::new(Status::Verified, serde_json::to_value(&j)?, vec![line]))
        }
        Command::Implicitize { curve, out } => {
            let comps = read_params(std::slice::from_ref(curve))?;
            let [c] = &comps[..] else {
                return Err(Failure(Status::Error, format!("{} holds {} curves, expected one", curve.display(), comps.len())));
            };
            let f = implicitize(c)?;
            let j = CurveJson::implicit(&c.label, &f);
            if let Some(out) = out {
                write(out, &to_json(&j))?;
            }
            let ok = lies_on(&f, c);
            Ok(Outcome::new(Status::of(ok), json!({ "degree": f.degree(), "curve": j }), vec![format!("implicit equation of degree {}", f.degree())]))
        }
        Command::ProbeScaling { state, u } => {
            let st = read_state(state)?;
            let us: Vec<QOmega> = u.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
            let probe = split_scaling_probe(&st, &us, &opts).map_err(hesse_failure)?;
            let n = probe.order as f64;
            let ok = probe.slopes.iter().all(|s| (n + 1.5..=n + 2.5).contains(s));
            let report = json!({
                "order": probe.order,
                "u": us.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                "diameters_log2": probe.diameters_log2,
                "slopes": probe.slopes,
                "window": [n + 1.5, n + 2.5],
            });
            let summary = probe.slopes.iter().enumerate().map(|(k, s)| format!("p{}: exponent {s:.3}", k + 1)).collect();
            Ok(Outcome::new(Status::of(ok), report, summary))
        }
        Command::Gallery { action: GalleryAction::List } => {
            let entries: Vec<Value> =
                gallery::all().iter().map(|e| json!({ "id": e.id, "components": e.params.len(), "equations": e.implicit.len(), "note": e.note })).collect();
            let summary = gallery::all().iter().map(|e| format!("{:16} {}", e.id, e.note)).collect();
            Ok(Outcome::new(Status::Verified, Value::Array(entries), summary))
        }
        Command::Gallery { action: GalleryAction::Export { id, out } } => {
            let e =
                gallery::entry(id).ok_or_else(|| Failure(Status::Error, format!("unknown gallery id {id:?}; expected one of {}", gallery::IDS.join(", "))))?;
            let mut curves: Vec<CurveJson> = e.params.iter().map(CurveJson::from).collect();
            curves.extend(e.implicit.iter().enumerate().map(|(i, f)| CurveJson::implicit(&format!("{} equation {}", e.id, i + 1), f)));
            let text = to_json(&curves);
            match out {
                Some(out) => write(out, &text)?,
                None if !cli.json => print!("{text}"),
                None => {}
            }
            let report = json!({ "id": e.id, "curves": curves });
            Ok(Outcome::new(Status::Verified, report, Vec::new()))
        }
        Command::Plot { curves, gallery: from_gallery, window, t_range, samples, mark, out } => {
            let w = plot::Window::parse(window).map_err(|e| Failure(Status::Error, e))?;
            let range = plot::Window::parse(&format!("{t_range},0,1")).map_err(|_| Failure(Status::Error, format!("bad parameter range {t_range:?}")))?;
            let mut comps = read_params(curves)?;
            if let Some(id) = from_gallery {
                let e = gallery::entry(id).ok_or_else(|| Failure(Status::Error, format!("unknown gallery id {id:?}")))?;
                comps.extend(e.params);
            }
            if comps.is_empty() {
                return Err(Failure(Status::Error, "nothing to plot".into()));
            }
            let marks: Vec<ProjPoint> = mark.iter().map(|m| parse_point(m)).collect::<Result<_, _>>()?;
            let p = plot::render(&comps, &marks, &w, (range.xmin, range.xmax), (*samples).max(2));
            write(out, &p.svg)?;
            let report = json!({ "out": out.display().to_string(), "segments": p.segments, "marks": p.marks });
            Ok(Outcome::new(Status::Verified, report, vec![format!("{} segments, {} marks written to {}", p.segments, p.marks, out.display())]))
        }
    }
}

fn check_json(c: &tricurve::hesse::OrderCheck) -> Value {
    json!({
        "order": c.order,
        "passed": c.passed(),
        "failure": c.failure.map(|(k, p)| json!({ "k": k + 1, "power": p })),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Recurse { .. } => "recurse",
        Command::CheckOrder { .. } => "check-order",
        Command::Instantiate { .. } => "instantiate",
        Command::Census { .. } => "census",
        Command::Implicitize { .. } => "implicitize",
        Command::ProbeScaling { .. } => "probe-scaling",
        Command::Gallery { .. } => "gallery",
        Command::Plot { .. } => "plot",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let (status, report, summary) = match run(&cli) {
        Ok(o) => (o.status, o.report, o.summary),
        Err(Failure(s, msg)) => (s, json!({ "message": msg }), vec![msg]),
    };
    if cli.json {
        let v = json!({ "command": command_name(&cli.command), "status": status, "report": report });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        for line in &summary {
            if status == Status::Error || status == Status::Refused {
                eprintln!("{line}");
            } else {
                println!("{line}");
            }
        }
        if !matches!(cli.command, Command::Gallery { .. }) {
            println!("{}", serde_json::to_value(status).expect("serializable").as_str().unwrap_or_default());
        }
    }
    ExitCode::from(status.code())
}

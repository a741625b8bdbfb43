//! The `autoconvex` command line.
//!
//! Exit codes: 0 success, 1 certification failure, 2 usage error, 3 input
//! error. Every output file gets a `<file>.manifest.json` sidecar.

mod manifest;
mod selftest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use manifest::{fmt_f64, sha256_hex, sidecar_path, Outputs, RunManifest};
pub use selftest::{run_selftest, SelftestLine};

use crate::error::{Error, Result};
use crate::exact::{format_q, parse_q, Q};
use crate::faces_geom::{
    check_intersection_theorem, faces_with_limit, minimal_face, run_random_suite, AffineSubspace, SuiteConfig,
    VPolytope, MAX_FACE_DIM, MAX_FACE_VERTICES,
};
use crate::lyap::{
    constrained_range, convexity_defect, corollary6_range, extreme_solutions, range_bruteforce, DiscreteVectorMeasure,
    RangeSample,
};
use crate::matcore::ComplexMatrix;
use crate::numrange::{
    attainment_details, boundary_polygon, certify_convexity, sample_range, BoundarySupportCurve, RangeMode,
};
use crate::spectral_faces::{apply_pinching, majorizes, pinching_sequence, qk_face_report, WeightVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "autoconvex", version, about = "Convex ranges with certificates")]
struct Cli {
    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Support-function boundary of W_k(b) or W_c(b), optionally certified.
    Numrange(NumrangeArgs),
    /// Boundary, Monte Carlo samples, convexity and attainment report.
    Certify(NumrangeArgs),
    /// Exact polytope faces and the intersection identity.
    Faces {
        #[command(subcommand)]
        action: FacesCommand,
    },
    /// Majorization test and pinching sequence.
    Majorize(MajorizeArgs),
    /// Extreme-point test and facial dimension in Q_k.
    Qk(QkArgs),
    /// Ranges of discretized vector measures.
    Lyapunov(LyapArgs),
    /// Bundled invariant suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeKind {
    K,
    C,
}

#[derive(Args, Debug, Serialize)]
struct NumrangeArgs {
    /// Matrix JSON `{"n", "re", "im"}`.
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, value_enum, default_value = "k")]
    mode: ModeKind,
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated weights for mode c.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Hermitian weight matrix for mode c (reduced to its eigenvalues).
    #[arg(long)]
    c_matrix: Option<PathBuf>,
    #[arg(long, default_value_t = crate::numrange::DEFAULT_ANGLES)]
    angles: usize,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Boundary CSV `theta,h,x,y,flat`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
enum FacesCommand {
    /// Check G(K, F) ∩ H = F for every face F of K ∩ H.
    Check {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Face lattice of a polytope.
    List {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest face containing a point (comma-separated rationals).
    Minimal {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Randomized intersection-identity suite.
    Suite {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Face of Q_k containing a matrix.
    Qk(QkArgs),
}

#[derive(Args, Debug, Serialize)]
struct MajorizeArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    emit_steps: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct QkArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum LyapAction {
    Range,
    Constrained,
    RefineStudy,
    Vertices,
    Corollary6,
}

#[derive(Args, Debug, Serialize)]
struct LyapArgs {
    #[arg(value_enum)]
    action: LyapAction,
    /// Measure JSON `{"masses", "target", "constraints", "z"}`.
    #[arg(long)]
    measure: Option<PathBuf>,
    /// Matrix JSON (corollary6).
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    /// Constraint tolerance; defaults to the largest per-atom increment.
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 3)]
    rounds: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 2000)]
    pairs: usize,
    #[arg(long, default_value_t = crate::lyap::DEFAULT_VERTEX_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Exit {
    code: i32,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::BadRank { .. } => EXIT_USAGE,
            _ => EXIT_INPUT,
        };
        Exit { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Exit {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Exit {
    Exit { code: EXIT_USAGE, message: msg.into() }
}

type CliResult = std::result::Result<i32, Exit>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let quiet = cli.quiet;
    match dispatch(cli.command, quiet) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command, quiet: bool) -> CliResult {
    match cmd {
        Command::Numrange(a) => numrange(a, false, quiet),
        Command::Certify(a) => numrange(a, true, quiet),
        Command::Faces { action } => faces(action, quiet),
        Command::Majorize(a) => majorize(a),
        Command::Qk(a) => qk("qk", a),
        Command::Lyapunov(a) => lyapunov(a, quiet),
        Command::Selftest => {
            let lines = run_selftest();
            for l in &lines {
                println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
            }
            Ok(if lines.iter().all(|l| l.pass) { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn params<T: Serialize>(a: &T) -> Value {
    serde_json::to_value(a).unwrap_or(Value::Null)
}

fn progress(quiet: bool, msg: &str) {
    if !quiet {
        eprintln!("{msg}");
    }
}

/// Writes a JSON report to `path`, or to standard output.
fn emit_json(out: &mut Outputs, path: Option<&Path>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => out.push(p, text),
        None => print!("{text}"),
    }
    Ok(())
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("not a number: {t:?}"))))
        .collect()
}

fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|t| parse_q(t).ok_or_else(|| Error::InvalidInput(format!("not a rational: {t:?}")))).collect()
}

fn read_matrix(out: &mut Outputs, path: &Path) -> Result<ComplexMatrix> {
    ComplexMatrix::from_json_str(&out.read_input(path)?)
}

fn range_mode(out: &mut Outputs, a: &NumrangeArgs, n: usize) -> std::result::Result<RangeMode, Exit> {
    match a.mode {
        ModeKind::K => Ok(RangeMode::K(a.k.ok_or_else(|| usage("--mode k needs --k"))?)),
        ModeKind::C => {
            let c = match (&a.c, &a.c_matrix) {
                (Some(s), None) => WeightVector::from_unsorted(parse_f64_list(s)?)?,
                (None, Some(p)) => WeightVector::from_hermitian(&read_matrix(out, p)?)?,
                _ => return Err(usage("--mode c needs exactly one of --c or --c-matrix")),
            };
            if c.len() != n {
                return Err(Error::LengthMismatch { left: c.len(), right: n }.into());
            }
            Ok(RangeMode::C(c))
        }
    }
}

fn curve_csv(curve: &BoundarySupportCurve) -> String {
    let mut s = String::from("theta,h,x,y,flat\n");
    for r in curve.rows() {
        s += &format!("{},{},{},{},{}\n", fmt_f64(r.theta), fmt_f64(r.h), fmt_f64(r.x), fmt_f64(r.y), r.flat);
    }
    s
}

fn numrange(a: NumrangeArgs, certify: bool, quiet: bool) -> CliResult {
    let name = if certify { "certify" } else { "numrange" };
    let mut out = Outputs::new(RunManifest::new(name, params(&a)));
    let b = read_matrix(&mut out, &a.matrix)?;
    let mode = range_mode(&mut out, &a, b.n())?;
    let samples = match (a.samples, certify) {
        (Some(s), _) => Some(s),
        (None, true) => return Err(usage("certify needs --samples")),
        (None, false) => None,
    };
    if samples.is_some() && a.seed.is_none() {
        return Err(usage("sampling needs --seed"));
    }
    progress(quiet, &format!("boundary: {} angles, {}", a.angles, mode.label()));
    let curve = boundary_polygon(&b, &mode, a.angles)?;
    let attainment = attainment_details(&curve)?;
    let mut outcome = json!({
        "n": b.n(),
        "mode": mode.label(),
        "angles": curve.len(),
        "flat_angles": curve.flat.iter().filter(|f| **f).count(),
        "polygon_area": curve.polygon().area(),
        "attainment": attainment,
    });
    let mut pass = attainment.passed();
    if let (Some(n_samples), Some(seed)) = (samples, a.seed) {
        out.add_seed(seed);
        progress(quiet, &format!("sampling {n_samples} points"));
        let pts = sample_range(&b, &mode, n_samples, seed)?;
        let region = certify_convexity(&pts, &curve, a.tol);
        pass &= region.passed();
        outcome["region"] = serde_json::to_value(&region)?;
    }
    outcome["pass"] = json!(pass);
    if let Some(p) = &a.out {
        out.push(p, curve_csv(&curve));
    }
    emit_json(&mut out, a.report.as_deref(), &outcome)?;
    out.finish(outcome)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn read_polytope(out: &mut Outputs, path: &Path) -> Result<VPolytope> {
    VPolytope::from_json_str(&out.read_input(path)?)
}

fn faces(action: FacesCommand, quiet: bool) -> CliResult {
    if let FacesCommand::Qk(a) = action {
        return qk("faces qk", a);
    }
    let mut out = Outputs::new(RunManifest::new("faces", params(&action)));
    match action {
        FacesCommand::Check { polytope, subspace, report } => {
            let k = read_polytope(&mut out, &polytope)?;
            let h = AffineSubspace::from_json_str(&out.read_input(&subspace)?)?;
            let rep = check_intersection_theorem(&k, &h)?;
            let value = serde_json::to_value(&rep)?;
            emit_json(&mut out, report.as_deref(), &value)?;
            let pass = rep.passed();
            out.finish(json!({ "pass": pass, "summary": rep.summary }))?;
            Ok(if pass { EXIT_OK } else { EXIT_FAIL })
        }
        FacesCommand::List { polytope, out: path } => {
            let k = read_polytope(&mut out, &polytope)?;
            let faces = faces_with_limit(&k, MAX_FACE_VERTICES, MAX_FACE_DIM)?;
            let list: Vec<Value> = faces
                .iter()
                .map(|f| json!({ "dim": f.dim, "vertices": f.vertices }))
                .collect();
            let verts: Vec<Vec<String>> = k.vertices().iter().map(|v| v.iter().map(format_q).collect()).collect();
            let value = json!({ "vertices": verts, "faces": list });
            emit_json(&mut out, path.as_deref(), &value)?;
            out.finish(json!({ "n_faces": faces.len() }))?;
            Ok(EXIT_OK)
        }
        FacesCommand::Minimal { polytope, point } => {
            let k = read_polytope(&mut out, &polytope)?;
            let x = parse_q_list(&point)?;
            let f = minimal_face(&k, &x)?;
            let value = json!({ "dim": f.dim, "vertices": f.vertices });
            emit_json(&mut out, None, &value)?;
            out.finish(value)?;
            Ok(EXIT_OK)
        }
        FacesCommand::Suite { trials, seed, report } => {
            out.add_seed(seed);
            progress(quiet, &format!("running {trials} trials"));
            let rep = run_random_suite(&SuiteConfig { trials, seed, ..Default::default() });
            let value = serde_json::to_value(&rep)?;
            emit_json(&mut out, report.as_deref(), &value)?;
            let pass = rep.failures.is_empty();
            out.finish(json!({ "pass": pass, "checked": rep.checked, "failures": rep.failures.len() }))?;
            Ok(if pass { EXIT_OK } else { EXIT_FAIL })
        }
        FacesCommand::Qk(_) => unreachable!(),
    }
}

fn qk(name: &str, a: QkArgs) -> CliResult {
    let mut out = Outputs::new(RunManifest::new(name, params(&a)));
    let m = read_matrix(&mut out, &a.matrix)?;
    let rep = qk_face_report(&m, a.k)?;
    let value = json!({ "extreme": rep.extreme, "face_dim": rep.face_dim, "rank_r": rep.rank_r, "rank_p": rep.rank_p });
    emit_json(&mut out, a.report.as_deref(), &value)?;
    out.finish(value)?;
    Ok(EXIT_OK)
}

fn majorize(a: MajorizeArgs) -> CliResult {
    let mut out = Outputs::new(RunManifest::new("majorize", params(&a)));
    let c = parse_f64_list(&a.c)?;
    let b = parse_f64_list(&a.b)?;
    let holds = majorizes(&b, &c)?;
    let mut value = json!({ "majorizes": holds });
    let mut pass = true;
    if holds {
        let steps = pinching_sequence(&c, &b)?;
        let mut x = c.clone();
        for s in &steps {
            x = apply_pinching(&x, s)?;
        }
        let mut sorted = x.clone();
        sorted.sort_by(|p, q| q.total_cmp(p));
        let err = sorted.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        pass = err <= 1e-9;
        value["steps"] = serde_json::to_value(&steps)?;
        value["reconstruction_error"] = json!(err);
        if let Some(p) = &a.emit_steps {
            out.push(p, serde_json::to_string_pretty(&steps)? + "\n");
        }
    }
    emit_json(&mut out, None, &value)?;
    out.finish(value)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn points_csv(s: &RangeSample) -> String {
    let mut text = String::new();
    for p in s.points() {
        text += &p.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",");
        text.push('\n');
    }
    text
}

fn lyapunov(a: LyapArgs, quiet: bool) -> CliResult {
    let mut out = Outputs::new(RunManifest::new("lyapunov", params(&a)));
    if a.action == LyapAction::Corollary6 {
        let path = a.matrix.as_ref().ok_or_else(|| usage("corollary6 needs --matrix"))?;
        let k = a.k.ok_or_else(|| usage("corollary6 needs --k"))?;
        let seed = a.seed.ok_or_else(|| usage("corollary6 needs --seed"))?;
        out.add_seed(seed);
        let b = read_matrix(&mut out, path)?;
        progress(quiet, &format!("sampling {} projections", a.samples));
        let rep = corollary6_range(&b, k, a.samples, seed)?;
        if let Some(p) = &a.out {
            let text: String = rep.points.iter().map(|z| format!("{},{}\n", fmt_f64(z[0]), fmt_f64(z[1]))).collect();
            out.push(p, text);
        }
        let value = serde_json::to_value(&rep)?;
        emit_json(&mut out, a.report.as_deref(), &value)?;
        let pass = rep.passed();
        out.finish(value)?;
        return Ok(if pass { EXIT_OK } else { EXIT_FAIL });
    }

    let path = a.measure.as_ref().ok_or_else(|| usage("--measure is required"))?;
    let m = DiscreteVectorMeasure::from_json_str(&out.read_input(path)?)?;
    let (value, csv) = match a.action {
        LyapAction::Range => {
            let s = range_bruteforce(&m)?;
            (json!({ "points": s.len(), "provenance": s.provenance }), points_csv(&s))
        }
        LyapAction::Constrained => {
            let eta = a.eta.unwrap_or_else(|| m.max_constraint_increment());
            let s = constrained_range(&m, eta)?;
            (json!({ "points": s.len(), "eta": eta, "provenance": s.provenance }), points_csv(&s))
        }
        LyapAction::RefineStudy => {
            let seed = a.seed.ok_or_else(|| usage("refine-study needs --seed"))?;
            out.add_seed(seed);
            let mut rows = Vec::new();
            let mut csv = String::from("round,atoms,points,max_mass,defect\n");
            for r in 0..=a.rounds {
                let mr = if r == 0 { m.clone() } else { m.refine(r)? };
                let s = range_bruteforce(&mr)?;
                let d = convexity_defect(&s, a.pairs, seed)?;
                progress(quiet, &format!("round {r}: {} points, defect {d:e}", s.len()));
                csv += &format!("{r},{},{},{},{}\n", mr.n_atoms(), s.len(), fmt_f64(mr.max_mass()), fmt_f64(d));
                rows.push(json!({ "round": r, "atoms": mr.n_atoms(), "points": s.len(), "max_mass": mr.max_mass(), "defect": d }));
            }
            (json!({ "rounds": rows }), csv)
        }
        LyapAction::Vertices => {
            let v = extreme_solutions(&m, a.cap)?;
            let mut csv = String::new();
            for g in &v.vertices {
                csv += &g.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(",");
                csv.push('\n');
            }
            (
                json!({
                    "vertices": v.vertices.len(),
                    "candidates": v.candidates,
                    "truncated": v.truncated,
                    "max_fractional": v.max_fractional(),
                    "constraints": m.n_constraints(),
                }),
                csv,
            )
        }
        LyapAction::Corollary6 => unreachable!(),
    };
    // vertices must have at most one fractional coordinate per constraint
    let pass = value.get("max_fractional").is_none_or(|f| f.as_u64() <= Some(m.n_constraints() as u64));
    if let Some(p) = &a.out {
        out.push(p, csv);
    }
    emit_json(&mut out, a.report.as_deref(), &value)?;
    out.finish(value)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

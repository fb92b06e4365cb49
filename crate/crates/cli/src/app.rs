//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lions_jet_core::expansion::{
    remainder_bound1, remainder_bound_derivative, taylor1, taylor_derivative, ExpansionResult,
};
use lions_jet_core::functional::{BoxRegion, PolyKernel};
use lions_jet_core::measures::{coupling_moment, coupling_moment_exact, pair_coupling, Coupling};
use lions_jet_core::oracle::{convergence_study, Report, StudyOrder};
use lions_jet_core::partitions::{self, DEFAULT_CAP};
use lions_jet_core::ring::{Numeric, Rational, Ring};
use lions_jet_core::tagged::{self, Grading};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::formats::{self, parse_list, parse_rational, parse_seq, JsonScalar};
use crate::instances::{self, Instance, Suite};
use crate::CliError;

/// Environment variable overriding the enumeration cap.
pub const CAP_ENV: &str = "LIONS_JET_CAP";

#[derive(Debug, Parser)]
#[command(name = "lions-jet", version, about = "Partition sequences, Lions derivatives and Lions-Taylor expansions")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Output>,
    /// Scalar arithmetic for `expand`.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Rational)]
    pub mode: Mode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List partition sequences, tagged sequences or graded families.
    Enum(EnumArgs),
    /// Grade of a tagged sequence.
    Grade(GradeArgs),
    /// Run a seeded verification batch or replay a dumped instance.
    Verify(VerifyArgs),
    /// Evaluate a Lions-Taylor expansion.
    Expand(ExpandArgs),
    /// Remainder and bound along `y = x + h·Δ` for decreasing `h`.
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    /// Sequence length.
    pub n: Option<usize>,
    /// Tagged sequences (letter 0 allowed).
    #[arg(long)]
    pub tagged: bool,
    /// Exactly this many zeros (implies --tagged).
    #[arg(long)]
    pub zeros: Option<usize>,
    /// Graded families for threshold γ and weights α, β.
    #[arg(long, num_args = 3, value_names = ["GAMMA", "ALPHA", "BETA"], allow_hyphen_values = true)]
    pub graded: Option<Vec<String>>,
    /// Extend this base sequence, e.g. `1,2,1`.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Args)]
pub struct GradeArgs {
    /// Tagged sequence, e.g. `0,1,1`.
    pub seq: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    /// Report membership in the graded set of this threshold.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Grade relative to this base sequence.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// empirical, fullsystem, expansion or schwarz.
    pub suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Rerun a dumped instance file.
    #[arg(long)]
    pub replay: Option<PathBuf>,
    /// Directory for failing instance files.
    #[arg(long, default_value = ".")]
    pub dump_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub kernel: PathBuf,
    /// Source atoms `x_i` (CSV or JSON).
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Target atoms `y_i`, paired with `--points`.
    #[arg(long)]
    pub targets: Option<PathBuf>,
    /// Coupling file of `[x, y]` pairs, instead of --points/--targets.
    #[arg(long)]
    pub coupling: Option<PathBuf>,
    /// Order `n` for a functional without x₀.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, num_args = 3, value_names = ["GAMMA", "ALPHA", "BETA"], allow_hyphen_values = true)]
    pub graded: Option<Vec<String>>,
    /// Comma-separated coordinates of x₀.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
    /// Expand the derivative `∂_a f` instead of `f`.
    #[arg(long)]
    pub seq: Option<String>,
    /// Free points at the base (one per free variable of --seq).
    #[arg(long)]
    pub free_x: Option<PathBuf>,
    #[arg(long)]
    pub free_y: Option<PathBuf>,
    /// Lower corner of a box for an additional remainder bound.
    #[arg(long, allow_hyphen_values = true, requires = "box_hi")]
    pub box_lo: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "box_lo")]
    pub box_hi: Option<String>,
    /// Grid points per axis for the box bound; below 2 uses coefficient bounds only.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    /// Also report the coupling moment of this order.
    #[arg(long)]
    pub moment: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub kernel: PathBuf,
    #[arg(long)]
    pub points: PathBuf,
    /// Displacements `Δ_i`, one per point.
    #[arg(long)]
    pub direction: PathBuf,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, num_args = 3, value_names = ["GAMMA", "ALPHA", "BETA"], allow_hyphen_values = true)]
    pub graded: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Displacement of x₀.
    #[arg(long, allow_hyphen_values = true)]
    pub dx0: Option<String>,
    /// Comma-separated step sizes, strictly decreasing.
    #[arg(long, default_value = "1/4,1/8,1/16,1/32,1/64,1/128,1/256")]
    pub h: String,
}

/// Result of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

pub fn enumeration_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Parse(format!("{CAP_ENV}=`{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status, CliError> {
    match &cli.command {
        Command::Enum(a) => run_enum(a, cli.output.unwrap_or(Output::Csv), out),
        Command::Grade(a) => run_grade(a, out),
        Command::Verify(a) => run_verify(a, cli.output.unwrap_or(Output::Json), out, err),
        Command::Expand(a) => match cli.mode {
            Mode::Rational => run_expand::<Rational>(a, cli.output.unwrap_or(Output::Json), Mode::Rational, out),
            Mode::Float => run_expand::<f64>(a, cli.output.unwrap_or(Output::Json), Mode::Float, out),
        },
        Command::Converge(a) => run_converge(a, cli.output.unwrap_or(Output::Csv), out, err),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

fn parse_grading(v: &[String]) -> Result<Grading, CliError> {
    let [g, a, b] = v else {
        return Err(CliError::Parse("--graded takes GAMMA ALPHA BETA".into()));
    };
    Ok(Grading::new(parse_rational(a)?, parse_rational(b)?, parse_rational(g)?)?)
}

fn run_enum(a: &EnumArgs, output: Output, out: &mut dyn Write) -> Result<Status, CliError> {
    let cap = enumeration_cap()?;
    let base = a.base.as_deref().map(parse_seq).transpose()?;
    if let Some(g) = &a.graded {
        let g = parse_grading(g)?;
        let fam = tagged::enum_graded_ext(base.as_deref().unwrap_or(&[]), &g, cap)?;
        match output {
            Output::Json => emit_json(out, &formats::families_to_json(&fam))?,
            Output::Csv => write!(out, "{}", formats::families_to_csv(&fam)?).map_err(io)?,
        }
        return Ok(Status::Ok);
    }
    let n = a.n.ok_or_else(|| CliError::Parse("enum needs a length n or --graded".into()))?;
    let seqs = match (a.zeros, &base) {
        (Some(_), Some(_)) => return Err(CliError::Parse("--zeros and --base cannot be combined".into())),
        (Some(k), None) => {
            let positive = n.checked_sub(k).ok_or_else(|| {
                CliError::Parse(format!("--zeros {k} exceeds the length {n}"))
            })?;
            tagged::enum_akn0(k, positive, cap)?
        }
        (None, Some(b)) => tagged::enum_a_ext(b, n, cap)?,
        (None, None) if a.tagged => tagged::enum_a0(n, cap)?,
        (None, None) => partitions::enum_a(n, cap)?,
    };
    match output {
        Output::Json => emit_json(out, &formats::seqs_to_json(&seqs))?,
        Output::Csv => write!(out, "{}", formats::seqs_to_csv(&seqs)).map_err(io)?,
    }
    Ok(Status::Ok)
}

fn run_grade(a: &GradeArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let seq = parse_seq(&a.seq)?;
    let (alpha, beta) = (parse_rational(&a.alpha)?, parse_rational(&a.beta)?);
    let base = a.base.as_deref().map(parse_seq).transpose()?.unwrap_or_default();
    if !tagged::is_ext_seq(&base, &seq) {
        return Err(CliError::Parse(format!("{} is not a valid sequence over {}", a.seq, formats::seq_key(&base))));
    }
    // The threshold only matters for membership; any admissible value works here.
    let gamma = match &a.gamma {
        Some(g) => Some(parse_rational(g)?),
        None => None,
    };
    let probe = Grading::new(alpha.clone(), beta.clone(), &alpha + &beta)?;
    let grade = tagged::grade_ext(&base, &seq, &probe);
    let mut v = json!({"seq": seq, "grade": grade.to_string()});
    if let Some(g) = gamma {
        v["gamma"] = json!(g.to_string());
        v["in_graded_set"] = json!(grade <= g);
    }
    emit_json(out, &v)?;
    Ok(Status::Ok)
}

fn failure_report(inst: &Instance, e: &CliError) -> Report {
    Report {
        identity: format!("{} error: {e}", inst.suite),
        seed: Some(inst.seed),
        max_abs_difference: f64::INFINITY,
        pass: false,
    }
}

fn dump(inst: &Instance, dir: &Path, err: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(inst).map_err(|e| CliError::Io(e.to_string()))?;
    let path = dir.join(format!("lions-jet-failure-{}-{}.json", inst.suite, inst.seed));
    std::fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    writeln!(err, "failing instance written to {}", path.display()).map_err(io)?;
    writeln!(err, "{text}").map_err(io)
}

fn run_verify(a: &VerifyArgs, output: Output, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status, CliError> {
    if let Some(path) = &a.replay {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let inst: Instance =
            serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let report = instances::check(&inst).unwrap_or_else(|e| failure_report(&inst, &e));
        write_reports(output, &[report.clone()], None, out)?;
        return Ok(if report.pass { Status::Ok } else { Status::VerificationFailed });
    }
    let suite: Suite = a
        .suite
        .as_deref()
        .ok_or_else(|| CliError::Parse("verify needs a suite or --replay".into()))?
        .parse()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    let results: Vec<(Instance, Report)> = pool.install(|| {
        (0..a.trials)
            .into_par_iter()
            .map(|t| {
                let inst = instances::generate(suite, instances::trial_seed(a.seed, t));
                let r = instances::check(&inst).unwrap_or_else(|e| failure_report(&inst, &e));
                (inst, r)
            })
            .collect()
    });
    let mut failed = 0;
    for (inst, r) in &results {
        if !r.pass {
            failed += 1;
            dump(inst, &a.dump_dir, err)?;
        }
    }
    let reports: Vec<Report> = results.into_iter().map(|(_, r)| r).collect();
    let summary = json!({
        "suite": suite.to_string(),
        "seed": a.seed,
        "trials": a.trials,
        "passed": reports.len() - failed,
        "failed": failed,
    });
    write_reports(output, &reports, Some(summary), out)?;
    Ok(if failed == 0 { Status::Ok } else { Status::VerificationFailed })
}

fn write_reports(output: Output, reports: &[Report], summary: Option<Value>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Output::Csv => write!(out, "{}", formats::reports_to_csv(reports)?).map_err(io),
        Output::Json => {
            let list: Vec<Value> = reports.iter().map(formats::report_to_json).collect();
            let v = match summary {
                Some(mut s) => {
                    s["reports"] = Value::Array(list);
                    s
                }
                None => list.into_iter().next().unwrap_or(Value::Null),
            };
            emit_json(out, &v)
        }
    }
}

fn read_pair(a: &ExpandArgs) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>), CliError> {
    match (&a.coupling, &a.points, &a.targets) {
        (Some(c), None, None) => formats::read_coupling(c),
        (None, Some(p), Some(t)) => Ok((formats::read_points(p)?, formats::read_points(t)?)),
        _ => Err(CliError::Parse("give either --coupling or both --points and --targets".into())),
    }
}

fn convert<C: Numeric>(v: &[Rational]) -> Vec<C> {
    v.iter().map(C::from_rational).collect()
}

fn convert_points<C: Numeric>(v: &[Vec<Rational>]) -> Vec<Vec<C>> {
    v.iter().map(|p| convert(p)).collect()
}

struct ExpandInputs<C> {
    f: PolyKernel,
    c: Coupling<C>,
    x0: Option<Vec<C>>,
    y0: Option<Vec<C>>,
    seq: Vec<u32>,
    free_x: Vec<Vec<C>>,
    free_y: Vec<Vec<C>>,
}

fn run_expand<C: JsonScalar>(a: &ExpandArgs, output: Output, mode: Mode, out: &mut dyn Write) -> Result<Status, CliError> {
    let f = formats::read_kernel(&a.kernel)?;
    let (xs, ys) = read_pair(a)?;
    let c_exact = pair_coupling(&xs, &ys)?;
    let inp = ExpandInputs::<C> {
        c: pair_coupling(&convert_points(&xs), &convert_points(&ys))?,
        x0: a.x0.as_deref().map(parse_list).transpose()?.map(|v| convert(&v)),
        y0: a.y0.as_deref().map(parse_list).transpose()?.map(|v| convert(&v)),
        seq: a.seq.as_deref().map(parse_seq).transpose()?.unwrap_or_default(),
        free_x: a.free_x.as_deref().map(formats::read_points).transpose()?.map(|v| convert_points(&v)).unwrap_or_default(),
        free_y: a.free_y.as_deref().map(formats::read_points).transpose()?.map(|v| convert_points(&v)).unwrap_or_default(),
        f,
    };
    let grading = a.graded.as_deref().map(parse_grading).transpose()?;
    let (result, box_bound) = expand_with::<C>(&inp, a, grading.as_ref())?;
    let moment = match a.moment {
        None => None,
        Some(p) => Some(match mode {
            Mode::Rational => coupling_moment_exact(&c_exact, p)?.to_json(),
            Mode::Float => json!(coupling_moment(&c_exact, p)),
        }),
    };
    match output {
        Output::Json => {
            let mut v = formats::expansion_to_json(&result);
            if let Some(b) = box_bound {
                v["box_bound"] = json!(b);
            }
            if let (Some(p), Some(m)) = (a.moment, moment) {
                v["moment"] = json!({"p": p, "value": m});
            }
            emit_json(out, &v)?;
        }
        Output::Csv => write!(out, "{}", expansion_csv(&result)?).map_err(io)?,
    }
    Ok(Status::Ok)
}

fn expand_with<C: Numeric>(
    inp: &ExpandInputs<C>,
    a: &ExpandArgs,
    grading: Option<&Grading>,
) -> Result<(ExpansionResult<C>, Option<f64>), CliError> {
    let bx = match (&a.box_lo, &a.box_hi) {
        (Some(lo), Some(hi)) => {
            let f64s = |s: &str| -> Result<Vec<f64>, CliError> {
                Ok(parse_list(s)?.iter().map(Numeric::to_f64).collect())
            };
            Some(BoxRegion::new(f64s(lo)?, f64s(hi)?)?)
        }
        _ => None,
    };
    match (a.order, grading) {
        (Some(n), None) => {
            if !inp.seq.is_empty() || inp.x0.is_some() {
                return Err(CliError::Parse("--order expands a functional without x0; use --graded".into()));
            }
            let r = taylor1(&inp.f, &inp.c, n)?;
            let b = bx.map(|bx| remainder_bound1(&inp.f, &inp.c, n, &bx, a.samples)).transpose()?;
            Ok((r, b))
        }
        (None, Some(g)) => {
            let (x0, y0) = (inp.x0.as_deref(), inp.y0.as_deref());
            let r = taylor_derivative(&inp.f, &inp.seq, x0, y0, &inp.free_x, &inp.free_y, &inp.c, g)?;
            let b = bx
                .map(|bx| {
                    remainder_bound_derivative(
                        &inp.f, &inp.seq, x0, y0, &inp.free_x, &inp.free_y, &inp.c, g, &bx, a.samples,
                    )
                })
                .transpose()?;
            Ok((r, b))
        }
        _ => Err(CliError::Parse("give exactly one of --order and --graded".into())),
    }
}

fn expansion_csv<C: JsonScalar>(r: &ExpansionResult<C>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let e = |x: csv::Error| CliError::Io(x.to_string());
    w.write_record(["kind", "family", "seq", "component", "value"]).map_err(e)?;
    let cell = |v: &C| match v.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    };
    let mut rows: Vec<[String; 5]> = Vec::new();
    for t in &r.jet {
        for (k, v) in t.value.iter().enumerate() {
            rows.push(["jet".into(), String::new(), formats::seq_key(&t.seq), k.to_string(), cell(v)]);
        }
    }
    for t in &r.remainder_terms {
        for (k, v) in t.value.iter().enumerate() {
            rows.push(["remainder".into(), t.family.symbol().into(), formats::seq_key(&t.seq), k.to_string(), cell(v)]);
        }
    }
    for (kind, vals) in [("predicted", &r.predicted), ("actual", &r.actual)] {
        for (k, v) in vals.iter().enumerate() {
            rows.push([kind.into(), String::new(), String::new(), k.to_string(), cell(v)]);
        }
    }
    rows.push(["bound".into(), String::new(), String::new(), String::new(), r.remainder_bound.to_string()]);
    for row in rows {
        w.write_record(&row).map_err(e)?;
    }
    let bytes = w.into_inner().map_err(|x| CliError::Io(x.to_string()))?;
    String::from_utf8(bytes).map_err(|x| CliError::Io(x.to_string()))
}

fn run_converge(a: &ConvergeArgs, output: Output, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status, CliError> {
    let f = formats::read_kernel(&a.kernel)?;
    let x = formats::read_points(&a.points)?;
    let delta = formats::read_points(&a.direction)?;
    let hs = parse_list(&a.h)?;
    let order = match (a.order, &a.graded) {
        (Some(n), None) => StudyOrder::Order(n),
        (None, Some(g)) => StudyOrder::Graded {
            grading: parse_grading(g)?,
            x0: parse_list(a.x0.as_deref().ok_or_else(|| CliError::Parse("--graded needs --x0".into()))?)?,
            delta0: match &a.dx0 {
                Some(d) => parse_list(d)?,
                None => vec![Rational::zero(); f.e],
            },
        },
        _ => return Err(CliError::Parse("give exactly one of --order and --graded".into())),
    };
    let table = convergence_study(&f, &x, &delta, &order, &hs)?;
    match output {
        Output::Csv => {
            write!(out, "{}", formats::convergence_to_csv(&table)?).map_err(io)?;
            let slope = table.slope.map_or("exact".to_string(), |s| format!("{s:.4}"));
            writeln!(err, "slope: {slope}").map_err(io)?;
        }
        Output::Json => emit_json(out, &formats::convergence_to_json(&table))?,
    }
    Ok(Status::Ok)
}

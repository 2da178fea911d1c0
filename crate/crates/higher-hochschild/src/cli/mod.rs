//! The `hh` command line: `compute`, `compare`, `cech`, `bar` and `check`.
//!
//! Exit codes: 0 when every verdict holds, 1 on a failed verdict or invariant,
//! 2 on unusable input, 3 when `HH_MAX_BASIS` is exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bar::{multiplication_module, two_sided_bar};
use crate::cdga::{builtin, AlgebraJson, GradedAlgebra, GradedModule, ModuleJson};
use crate::exactla::Rational;
use crate::factorization::{cech_compare, cech_complex, CombinatorialCover};
use crate::hochschild::{build_complex, check_shuffle_laws, BuildOptions, Chain, HochschildComplex, HochschildError};
use crate::homology::{homology, homology_parallel, ring_on_homology, HomologyReport};
use crate::simplicial::{check_simplicial_identities, standard_model, FiniteSimplicialSet, SpaceJson};

pub const NOTE: &str = "degrees are cohomological: classical HH_n is degree -n";

#[derive(Parser, Debug)]
#[command(name = "hh", about = "Exact higher Hochschild homology over finite simplicial sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homology of CH_X(A) or CH_X(A, M).
    Compute(ComputeArgs),
    /// Homology of two spaces side by side.
    Compare(CompareArgs),
    /// Čech complex of a cover against CH_X(A).
    Cech(CechArgs),
    /// Bar complex of A over A ⊗ A against the circle.
    Bar(BarArgs),
    /// D² = 0, shuffle laws and simplicial identities.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Builtin algebra name or JSON file.
    #[arg(long, default_value = "dual_numbers")]
    pub algebra: String,
    /// Lower end of the degree window [n, 0].
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    pub window: i32,
    #[arg(long)]
    pub normalized: bool,
    #[arg(long)]
    pub json: bool,
    /// Threads for per-block homology.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// Builtin model name or JSON file.
    #[arg(long)]
    pub space: String,
    /// Module JSON file, or `regular` / `augmentation`.
    #[arg(long)]
    pub module: Option<String>,
    #[command(flatten)]
    pub common: Common,
    /// Print representatives of every class.
    #[arg(long)]
    pub representatives: bool,
    /// Print the multiplication table of the classes.
    #[arg(long)]
    pub ring: bool,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CechArgs {
    #[arg(long)]
    pub space: String,
    /// `single`, `two_arc`, or a JSON cover file.
    #[arg(long, default_value = "single")]
    pub cover: String,
    #[arg(long, default_value_t = 5)]
    pub tuple_cap: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct BarArgs {
    #[arg(long, default_value_t = 8)]
    pub tuple_cap: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub space: String,
    #[command(flatten)]
    pub common: Common,
}

/// The machine-readable report. Fields are in alphabetical order so that
/// re-serializing parsed output reproduces it exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub degrees: BTreeMap<String, usize>,
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Vec<String>>,
    pub trusted_min: i32,
    pub verdicts: BTreeMap<String, bool>,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<HochschildError> for CliError {
    fn from(e: HochschildError) -> Self {
        match e {
            HochschildError::BasisCap { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn load_space(arg: &str) -> Result<FiniteSimplicialSet, CliError> {
    match standard_model(arg) {
        Ok(x) => Ok(x),
        Err(e) if !Path::new(arg).exists() => Err(input(e)),
        Err(_) => SpaceJson::parse(&read(arg)?).map_err(input),
    }
}

pub fn load_algebra(arg: &str) -> Result<GradedAlgebra, CliError> {
    match builtin(arg) {
        Ok(a) => Ok(a),
        Err(e) if !Path::new(arg).exists() => Err(input(e)),
        Err(_) => {
            let name = Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
            AlgebraJson::parse(&read(arg)?, name).map_err(input)
        }
    }
}

fn load_module(arg: &str, a: &GradedAlgebra, n_min: i32) -> Result<GradedModule, CliError> {
    match arg {
        "regular" => Ok(GradedModule::regular(a, n_min - 1)),
        "augmentation" => GradedModule::augmentation(a).map_err(input),
        path => ModuleJson::parse(&read(path)?, a).map_err(input),
    }
}

fn dims_map(r: &HomologyReport) -> BTreeMap<String, usize> {
    r.degrees.iter().map(|(n, h)| (n.to_string(), h.dim)).collect()
}

fn build(space: &FiniteSimplicialSet, a: &GradedAlgebra, m: Option<&GradedModule>, c: &Common) -> Result<HochschildComplex, CliError> {
    if c.window > 0 {
        return Err(CliError::Input(format!("window lower bound {} must be ≤ 0", c.window)));
    }
    Ok(build_complex(space, a, m, c.window, &BuildOptions::from_env(c.normalized))?)
}

fn report_of(c: &HochschildComplex, jobs: usize) -> HomologyReport {
    if jobs > 1 {
        homology_parallel(c, jobs)
    } else {
        homology(c, false)
    }
}

fn compute(args: &ComputeArgs) -> Result<Report, CliError> {
    let x = load_space(&args.space)?;
    let a = load_algebra(&args.common.algebra)?;
    let m = args.module.as_deref().map(|p| load_module(p, &a, args.common.window)).transpose()?;
    let c = build(&x, &a, m.as_ref(), &args.common)?;
    let with_reps = args.representatives || args.ring;
    let r = if with_reps { homology(&c, true) } else { report_of(&c, args.common.jobs) };
    let mut out = Report { degrees: dims_map(&r), note: NOTE.into(), trusted_min: r.trusted_min, ..Default::default() };
    if args.representatives {
        let mut reps = BTreeMap::new();
        for (n, h) in &r.degrees {
            let list = h.representatives.as_deref().unwrap_or_default();
            reps.insert(n.to_string(), list.iter().map(|v| chain_text(&c, &c.chain_of(&v.vector, *n, v.weight))).collect());
        }
        out.representatives = Some(reps);
    }
    if args.ring {
        let table = ring_on_homology(&c, &r).map_err(|e| CliError::Failed(e.to_string()))?;
        let name = |i: usize| format!("[{}:{}]", table.classes[i].0, table.classes[i].1);
        let lines = table
            .products
            .iter()
            .map(|((i, j), v)| {
                let rhs = match v {
                    None => "outside window".to_string(),
                    Some(v) if v.is_empty() => "0".to_string(),
                    Some(v) => v.iter().map(|(k, x)| format!("{x}{}", name(*k))).collect::<Vec<_>>().join(" + "),
                };
                format!("{}·{} = {rhs}", name(*i), name(*j))
            })
            .collect();
        out.ring = Some(lines);
    }
    Ok(out)
}

fn chain_text(c: &HochschildComplex, chain: &Chain) -> String {
    chain.iter().map(|(t, x)| if x.is_one() { c.display(t) } else { format!("{x}·({})", c.display(t)) }).collect::<Vec<_>>().join(" + ")
}

fn compare(args: &CompareArgs) -> Result<Report, CliError> {
    let a = load_algebra(&args.common.algebra)?;
    let ca = build(&load_space(&args.a)?, &a, None, &args.common)?;
    let cb = build(&load_space(&args.b)?, &a, None, &args.common)?;
    let (ra, rb) = (report_of(&ca, args.common.jobs), report_of(&cb, args.common.jobs));
    let verdicts = ra.degrees.iter().map(|(n, h)| (n.to_string(), rb.dim(*n) == Some(h.dim))).collect();
    Ok(Report {
        degrees: dims_map(&ra),
        other: Some(dims_map(&rb)),
        note: NOTE.into(),
        trusted_min: ra.trusted_min.max(rb.trusted_min),
        verdicts,
        ..Default::default()
    })
}

fn cech(args: &CechArgs) -> Result<Report, CliError> {
    let a = load_algebra(&args.common.algebra)?;
    let cover = match args.cover.as_str() {
        "two_arc" => CombinatorialCover::two_arc_circle(),
        "single" => CombinatorialCover::single(&load_space(&args.space)?),
        path => CombinatorialCover::from_json(&load_space(&args.space)?, &read(path)?).map_err(input)?,
    };
    let c = cech_complex(&cover, &a, args.common.window, args.tuple_cap).map_err(input)?;
    let cmp = cech_compare(&c).map_err(|e| CliError::Failed(e.to_string()))?;
    Ok(Report {
        degrees: cmp.cech_dims.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
        other: Some(cmp.target_dims.iter().map(|(n, d)| (n.to_string(), *d)).collect()),
        note: NOTE.into(),
        trusted_min: cmp.trusted_min,
        verdicts: cmp.verdicts.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
        ..Default::default()
    })
}

fn bar(args: &BarArgs) -> Result<Report, CliError> {
    let a = load_algebra(&args.common.algebra)?;
    let n_min = args.common.window;
    let (env, m) = multiplication_module(&a, n_min - 1).map_err(input)?;
    let b = two_sided_bar(&m, &env, &m, n_min, args.tuple_cap).map_err(input)?;
    let rb = homology(&b.complex, false);
    let circle = build(&standard_model("circle_minimal").map_err(input)?, &a, None, &args.common)?;
    let rc = report_of(&circle, args.common.jobs);
    let verdicts = rb
        .degrees
        .iter()
        .filter(|(n, _)| **n >= rb.trusted_min)
        .map(|(n, h)| (n.to_string(), rc.dim(*n) == Some(h.dim)))
        .collect();
    Ok(Report {
        degrees: dims_map(&rb),
        other: Some(dims_map(&rc)),
        note: NOTE.into(),
        trusted_min: rb.trusted_min,
        verdicts,
        ..Default::default()
    })
}

/// Homogeneous basis chains at levels `≤ 2` and internal degrees `≥ −2`,
/// every `step`-th one.
fn samples(c: &HochschildComplex, step: usize) -> Vec<(Chain, i32)> {
    let mut out = Vec::new();
    for k in 0..=2.min(c.max_level()) {
        for d in -2..=0 {
            for (i, t) in c.level_basis(k, d).into_iter().enumerate() {
                if i % step == 0 {
                    out.push((Chain::from([(t, Rational::from_int(i as i64 % 3 + 1))]), d - k as i32));
                }
            }
        }
    }
    out
}

fn check(args: &CheckArgs) -> Result<Report, CliError> {
    let x = load_space(&args.space)?;
    let a = load_algebra(&args.common.algebra)?;
    let c = build(&x, &a, None, &args.common)?;
    let mut verdicts = BTreeMap::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), String>| {
        if let Err(e) = &r {
            failures.push(format!("{name}: {e}"));
        }
        verdicts.insert(name.to_string(), r.is_ok());
    };
    record("d_squared", c.check_d_squared());
    record("simplicial_identities", check_simplicial_identities(&x, c.max_level()));
    let s = samples(&c, 1 + c.level_basis(2.min(c.max_level()), 0).len() / 8);
    let s: Vec<_> = s.into_iter().take(16).collect();
    record("shuffle_laws", check_shuffle_laws(&c, &s).map(|_| ()));
    let r = report_of(&c, args.common.jobs);
    let out = Report { degrees: dims_map(&r), note: NOTE.into(), trusted_min: r.trusted_min, verdicts, ..Default::default() };
    for f in failures {
        eprintln!("invariant violated: {f}");
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<(Report, &Common), CliError> {
    match &cli.command {
        Command::Compute(a) => compute(a).map(|r| (r, &a.common)),
        Command::Compare(a) => compare(a).map(|r| (r, &a.common)),
        Command::Cech(a) => cech(a).map(|r| (r, &a.common)),
        Command::Bar(a) => bar(a).map(|r| (r, &a.common)),
        Command::Check(a) => check(a).map(|r| (r, &a.common)),
    }
}

/// Aligned text rendering.
pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let has_other = r.other.is_some();
    s.push_str(if has_other { "degree     dim   other  verdict\n" } else { "degree     dim\n" });
    let mut degrees: Vec<i32> = r.degrees.keys().filter_map(|k| k.parse().ok()).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    for n in degrees {
        let key = n.to_string();
        let mark = if n < r.trusted_min { " (untrusted)" } else { "" };
        s.push_str(&format!("{n:>6}  {:>6}", r.degrees[&key]));
        if let Some(o) = &r.other {
            let other = o.get(&key).map_or("-".to_string(), |d| d.to_string());
            let v = r.verdicts.get(&key).map_or("", |v| if *v { "equal" } else { "DIFFERENT" });
            s.push_str(&format!("  {other:>6}  {v}"));
        }
        s.push_str(mark);
        s.push('\n');
    }
    for (k, v) in r.verdicts.iter().filter(|(k, _)| k.parse::<i32>().is_err()) {
        s.push_str(&format!("{k}: {}\n", if *v { "pass" } else { "FAIL" }));
    }
    if let Some(reps) = &r.representatives {
        let mut keys: Vec<&String> = reps.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse(k.parse::<i32>().unwrap_or(i32::MIN)));
        for n in keys {
            let list = &reps[n];
            for (i, c) in list.iter().enumerate() {
                s.push_str(&format!("[{n}:{i}] {c}\n"));
            }
        }
    }
    if let Some(ring) = &r.ring {
        for line in ring {
            s.push_str(line);
            s.push('\n');
        }
    }
    s.push_str(&format!("note: {}\n", r.note));
    s
}

/// Parses arguments, runs the job, prints the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok((report, common)) => {
            if common.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", render_text(&report));
            }
            if report.verdicts.values().all(|v| *v) {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let msg = match &e {
                CliError::Input(m) | CliError::Cap(m) | CliError::Failed(m) => m,
            };
            eprintln!("error: {msg}");
            e.exit_code()
        }
    }
}

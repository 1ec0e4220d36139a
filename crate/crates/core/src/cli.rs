//! The `hg` command line: degrees, semi-norms, gallery pairs, sweeps,
//! optimiser runs and the named experiments.
//!
//! Exit codes: 0 when everything ran and every check passed, 1 when a
//! numerical check failed (or a computation broke down), 2 for usage errors.
//! `HG_GRID_M` overrides the S¹ grid size.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiments::{self, Context, Params};
use crate::gallery::registry::{build, build_pair, AnyMap, MapSpec, PAIR_NAMES};
use crate::gallery::GalleryMap;
use crate::grid::{degree_report, lift, CircleMap, SobolevIndex};
use crate::io::{self, Cell, Format, Table};
use crate::optimizer::{self, OptimizeOptions};
use crate::seminorms;
use crate::sphere2::{degree_kronecker_s2, dirichlet_energy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hg", version, about = "Degrees, Sobolev semi-norms and class distances for sphere maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Winding, Kronecker and Fourier degrees of a map.
    Degree(DegreeArgs),
    /// Run a named experiment (or `all`); extra `--key value` pairs override
    /// its parameters.
    Experiment(ExperimentArgs),
    /// Distance of a gallery pair (or semi-norm of a map) over a list of
    /// parameter values, e.g. `sweep product-shift --d 1,2,4,8 --s 1 --p 1`.
    Sweep(SweepArgs),
    /// Numerical class distance from a map to a degree class.
    Optimize(OptimizeArgs),
    /// Semi-norm of a single map.
    Seminorm(SeminormArgs),
    /// Degrees and distances of a gallery pair.
    Pair(PairArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the table here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct DegreeArgs {
    /// Map specification `name:key=value,...`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub map: Option<String>,
    /// CSV/TSV file with columns `theta, re, im`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    pub name: String,
    #[command(flatten)]
    pub out: OutputArgs,
    /// `--key value` overrides.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "OVERRIDES")]
    pub rest: Vec<String>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Gallery pair or circle map name.
    pub family: String,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[command(flatten)]
    pub out: OutputArgs,
    /// `--key v1,v2,...` (one list) and fixed `--key value` parameters.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "PARAMS")]
    pub rest: Vec<String>,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to_class: i64,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Keep the map fixed and search only over the target class.
    #[arg(long)]
    pub point: bool,
    #[arg(long, default_value_t = OptimizeOptions::default().k)]
    pub k: usize,
    #[arg(long, default_value_t = OptimizeOptions::default().restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = OptimizeOptions::default().budget)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write `(iteration, value)` rows of the winning restart here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SeminormArgs {
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub p: f64,
    /// fourier, quadrature or derivative; chosen from (s, p) if omitted.
    #[arg(long)]
    pub method: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Pair specification, e.g. `zigzag:d1=1,d2=0`.
    pub spec: String,
    /// Also report `|f - g|_{W^{1,p}}` for these exponents.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0])]
    pub p: Vec<f64>,
    /// Write `f` as CSV here.
    #[arg(long)]
    pub dump_f: Option<PathBuf>,
    /// Write `g` as CSV here.
    #[arg(long)]
    pub dump_g: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Exit code for an error: 2 for bad requests, 1 for failed computations.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::IndexOutOfRange { .. }
        | Error::InvalidGrid(_)
        | Error::Overcrowded { .. }
        | Error::InvalidProfile(_)
        | Error::NotLocallyConstant { .. }
        | Error::Degenerate(_)
        | Error::MissingDerivative => EXIT_USAGE,
        Error::Io(_) | Error::Csv(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version are not errors
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let ctx = match Context::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match run(cli.command, &ctx, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs one command.
pub fn run(command: Command, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Degree(a) => cmd_degree(a, ctx, out),
        Command::Experiment(a) => cmd_experiment(a, ctx, out, err),
        Command::Sweep(a) => cmd_sweep(a, ctx, out),
        Command::Optimize(a) => cmd_optimize(a, ctx, out),
        Command::Seminorm(a) => cmd_seminorm(a, ctx, out),
        Command::Pair(a) => cmd_pair(a, ctx, out),
    }
}

fn emit(table: &Table, args: &OutputArgs, out: &mut dyn Write) -> Result<()> {
    match &args.output {
        Some(path) => table.write(BufWriter::new(File::create(path)?), args.format),
        None => table.write(out, args.format),
    }
}

/// `--key value` and `--key=value` pairs.
pub fn parse_overrides(rest: &[String]) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    let mut it = rest.iter();
    while let Some(arg) = it.next() {
        let Some(key) = arg.strip_prefix("--") else {
            return Err(Error::Parse(format!("expected --key value, got {arg:?}")));
        };
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Parse(format!("--{key} needs a value")))?;
                (key.to_string(), v.clone())
            }
        };
        if key.is_empty() {
            return Err(Error::Parse("empty option name".into()));
        }
        pairs.push((key, value));
    }
    Ok(pairs)
}

fn map_of(spec: &str, ctx: &Context) -> Result<AnyMap> {
    build(&spec.parse::<MapSpec>()?, ctx.grid())
}

fn cmd_degree(a: DegreeArgs, ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let map = match (&a.map, &a.input) {
        (Some(spec), _) => map_of(spec, ctx)?,
        (None, Some(path)) => {
            let format = if path.extension().is_some_and(|e| e == "tsv") {
                Format::Tsv
            } else {
                Format::Csv
            };
            let f = io::read_circle_map(File::open(path)?, format)?;
            AnyMap::Circle(GalleryMap {
                phase: lift(&f)?,
                map: f,
                dphase: None,
            })
        }
        (None, None) => return Err(Error::Parse("give --map or --input".into())),
    };
    let mut t = Table::new(&["method", "raw", "rounded", "flag"]);
    match map {
        AnyMap::Circle(g) => {
            let r = degree_report(&g.map)?;
            t.push(vec!["winding".into(), (r.winding as f64).into(), r.winding.into(), Cell::Empty]);
            for (name, e) in [("kronecker", r.kronecker), ("fourier", r.fourier)] {
                let flag = if e.warning { "warning" } else { "" };
                t.push(vec![name.into(), e.raw.into(), e.rounded.into(), flag.into()]);
            }
        }
        AnyMap::Sphere(f) => {
            let d = degree_kronecker_s2(&f);
            let flag = if d.pole_singularity { "pole-singularity" } else { "" };
            t.push(vec!["kronecker".into(), d.raw.into(), d.rounded.into(), flag.into()]);
        }
    }
    emit(&t, &a.out, out)?;
    Ok(EXIT_OK)
}

fn cmd_experiment(a: ExperimentArgs, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut params = Params::new();
    let mut args = a.out.clone();
    let mut ctx = *ctx;
    for (k, v) in parse_overrides(&a.rest)? {
        match k.as_str() {
            "output" => args.output = Some(PathBuf::from(v)),
            "format" => args.format = v.parse()?,
            "seed" => ctx.seed = v.parse().map_err(|_| Error::Parse(format!("--seed {v:?}")))?,
            _ => params.insert(&k, &v)?,
        }
    }
    // reject unknown names and keys before computing anything
    if a.name != "all" {
        experiments::find(&a.name)?.validate(&params)?;
    }
    let outcomes = experiments::run(&a.name, &params, &ctx)?;
    emit(&experiments::table(&outcomes), &args, out)?;
    let mut ok = true;
    for o in &outcomes {
        if o.passed() {
            writeln!(err, "PASS {}", o.name)?;
        } else {
            ok = false;
            writeln!(err, "FAIL {}: {}", o.name, o.claim)?;
            let mut t = Table::new(experiments::COLUMNS);
            for c in o.failures() {
                t.push(experiments::row(o.name, c));
            }
            t.write(&mut *err, Format::Csv)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Norm of `h` (a difference of maps or a single map) for `(s, p)`:
/// `W^{1,p}` from the derivative, `H^{1/2}` from Fourier coefficients, or
/// the Gagliardo quadrature for `0 < s < 1`.
fn norm_of(h: &[crate::grid::C64], derivative: Option<&[crate::grid::C64]>, kinks: &[seminorms::Kink], s: f64, p: f64, method: &str) -> Result<f64> {
    SobolevIndex::new(s, p)?;
    match method {
        "derivative" => {
            if s != 1.0 {
                return Err(Error::Parse("method derivative needs s = 1".into()));
            }
            match derivative {
                Some(d) => seminorms::lp_norm_with_kinks(d, kinks, p),
                None => seminorms::lp_norm(&crate::grid::spectral_derivative(h), p),
            }
        }
        "fourier" => {
            if s != 0.5 || p != 2.0 {
                return Err(Error::Parse("method fourier needs s = 1/2, p = 2".into()));
            }
            Ok(seminorms::h_half_seminorm_sq(h).sqrt())
        }
        "quadrature" => seminorms::gagliardo_seminorm(h, s, p),
        other => Err(Error::Parse(format!(
            "unknown method {other:?}; expected derivative, fourier or quadrature"
        ))),
    }
}

fn default_method(s: f64, p: f64) -> &'static str {
    if s == 1.0 {
        "derivative"
    } else if s == 0.5 && p == 2.0 {
        "fourier"
    } else {
        "quadrature"
    }
}

fn circle_norm(g: &GalleryMap, s: f64, p: f64, method: &str) -> Result<f64> {
    let derivative = g.derivative();
    if method == "derivative" && derivative.is_none() && !g.map.is_smooth() {
        return Err(Error::MissingDerivative);
    }
    norm_of(g.map.samples(), derivative.as_deref(), &[], s, p, method)
}

fn cmd_seminorm(a: SeminormArgs, ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let method = a.method.clone().unwrap_or_else(|| default_method(a.s, a.p).to_string());
    let value = match map_of(&a.map, ctx)? {
        AnyMap::Circle(g) => circle_norm(&g, a.s, a.p, &method)?,
        AnyMap::Sphere(f) => {
            if a.s != 1.0 || a.p != 2.0 {
                return Err(Error::IndexOutOfRange {
                    name: "s",
                    value: a.s,
                    range: "(s, p) = (1, 2) on S²",
                });
            }
            dirichlet_energy(&f).sqrt()
        }
    };
    let mut t = Table::new(&["map", "method", "s", "p", "seminorm", "seminorm_pow_p"]);
    t.push(vec![
        a.map.clone().into(),
        method.into(),
        a.s.into(),
        a.p.into(),
        value.into(),
        value.powf(a.p).into(),
    ]);
    emit(&t, &a.out, out)?;
    Ok(EXIT_OK)
}

fn cmd_sweep(mut a: SweepArgs, ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let mut overrides = Vec::new();
    for (k, v) in parse_overrides(&a.rest)? {
        let real = |v: &str| v.parse::<f64>().map_err(|_| Error::Parse(format!("--{k} {v:?}")));
        match k.as_str() {
            "s" => a.s = real(&v)?,
            "p" => a.p = real(&v)?,
            "output" => a.out.output = Some(PathBuf::from(v)),
            "format" => a.out.format = v.parse()?,
            _ => overrides.push((k, v)),
        }
    }
    let lists: Vec<&(String, String)> = overrides.iter().filter(|(_, v)| v.contains(',')).collect();
    let (key, values) = match lists.as_slice() {
        [(k, v)] => (k.clone(), v.split(',').map(str::to_string).collect::<Vec<_>>()),
        [] => return Err(Error::Parse("sweep needs one --key v1,v2,... list".into())),
        _ => return Err(Error::Parse("sweep takes exactly one list-valued parameter".into())),
    };
    let method = default_method(a.s, a.p);
    let is_pair = PAIR_NAMES.contains(&a.family.as_str());
    let mut t = Table::new(&[key.as_str(), "deg_f", "deg_g", "s", "p", "value"]);
    for v in values {
        let fixed: Vec<String> = overrides
            .iter()
            .filter(|(k, _)| *k != key)
            .map(|(k, v)| format!("{k}={v}"))
            .chain(std::iter::once(format!("{key}={v}")))
            .collect();
        let spec: MapSpec = format!("{}:{}", a.family, fixed.join(",")).parse()?;
        let (deg_f, deg_g, value) = if is_pair {
            let pair = build_pair(&spec, ctx.grid())?;
            let diff = pair.f.map.difference(&pair.g.map)?;
            let value = match (&pair.derivative, method) {
                (Some(d), "derivative") => norm_of(&diff, Some(d.difference()), d.kinks(), a.s, a.p, method)?,
                (None, "derivative") if !(pair.f.map.is_smooth() && pair.g.map.is_smooth()) => {
                    return Err(Error::MissingDerivative)
                }
                _ => norm_of(&diff, None, &[], a.s, a.p, method)?,
            };
            let (df, dg) = pair.degrees();
            (Cell::Int(df), Cell::Int(dg), value)
        } else {
            match build(&spec, ctx.grid())? {
                AnyMap::Circle(g) => (Cell::Int(g.degree()), Cell::Empty, circle_norm(&g, a.s, a.p, method)?),
                AnyMap::Sphere(_) => return Err(Error::Parse("sweep works on S¹ maps and pairs".into())),
            }
        };
        t.push(vec![v.trim().to_string().into(), deg_f, deg_g, a.s.into(), a.p.into(), value.into()]);
    }
    emit(&t, &a.out, out)?;
    Ok(EXIT_OK)
}

fn cmd_optimize(a: OptimizeArgs, ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let AnyMap::Circle(f) = map_of(&a.from, ctx)? else {
        return Err(Error::Parse("optimize works on S¹ maps".into()));
    };
    let index = SobolevIndex::new(a.s, a.p)?;
    let opts = OptimizeOptions {
        k: a.k,
        restarts: a.restarts,
        budget: a.budget,
        seed: a.seed,
    };
    let report = if a.point {
        optimizer::estimate_point_to_class(&f, a.to_class, index, opts)?
    } else {
        optimizer::estimate_inf_distance(&f.map, a.to_class, index, opts)?
    };
    if let Some(path) = &a.trace {
        io::trace_table(&report).write(BufWriter::new(File::create(path)?), a.out.format)?;
    }
    let mut t = Table::new(&["quantity", "value"]);
    let mode = if a.point { "point-to-class" } else { "class-to-class" };
    let rows: Vec<(&str, Cell)> = vec![
        ("mode", mode.into()),
        ("from_degree", Cell::Int(f.degree())),
        ("to_class", Cell::Int(a.to_class)),
        ("s", a.s.into()),
        ("p", a.p.into()),
        ("best", report.best.into()),
        ("target", report.target.into()),
        ("gap", report.gap.into()),
        ("k", Cell::Int(report.k as i64)),
        ("grid_m", Cell::Int(report.grid_m as i64)),
        ("restarts", Cell::Int(report.restarts as i64)),
        ("winning_restart", Cell::Int(report.winning_restart as i64)),
        ("budget_exhausted", report.budget_exhausted.to_string().into()),
        ("max_dphase", report.max_dphase.into()),
    ];
    for (k, v) in rows {
        t.push(vec![k.into(), v]);
    }
    emit(&t, &a.out, out)?;
    Ok(EXIT_OK)
}

fn cmd_pair(a: PairArgs, ctx: &Context, out: &mut dyn Write) -> Result<i32> {
    let spec: MapSpec = a.spec.parse()?;
    let pair = build_pair(&spec, ctx.grid())?;
    let (df, dg) = pair.degrees();
    let mut t = Table::new(&["quantity", "value"]);
    t.push(vec!["deg_f".into(), Cell::Int(df)]);
    t.push(vec!["deg_g".into(), Cell::Int(dg)]);
    for &p in &a.p {
        let v = match pair.w1p_distance(p) {
            Ok(v) => Cell::Real(v),
            Err(Error::MissingDerivative) => Cell::Empty,
            Err(e) => return Err(e),
        };
        t.push(vec![format!("w1p p={p}").into(), v]);
    }
    t.push(vec![
        "h_half_sq".into(),
        seminorms::h_half_distance_sq(&pair.f.map, &pair.g.map)?.into(),
    ]);
    t.push(vec![
        "sup".into(),
        seminorms::sup_distance(&pair.f.map, &pair.g.map)?.into(),
    ]);
    if let Some(c) = pair.claim {
        t.push(vec![format!("claim {} (p={})", c.label, c.p).into(), c.value.into()]);
    }
    for (k, v) in &pair.params {
        t.push(vec![format!("param {k}").into(), (*v).into()]);
    }
    let dump = |path: &Option<PathBuf>, map: &CircleMap| -> Result<()> {
        if let Some(path) = path {
            io::write_circle_map(BufWriter::new(File::create(path)?), map, Format::Csv)?;
        }
        Ok(())
    };
    dump(&a.dump_f, &pair.f.map)?;
    dump(&a.dump_g, &pair.g.map)?;
    emit(&t, &a.out, out)?;
    Ok(EXIT_OK)
}

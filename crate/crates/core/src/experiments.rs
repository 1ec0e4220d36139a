//! Named, self-checking reproduction runs.
//!
//! Each experiment carries the statement it checks, the keys it accepts and
//! a runner that returns [`Check`] rows: a measured value, what it is
//! compared with and whether it passed. Unknown names and keys are rejected
//! before anything is computed.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formulas;
use crate::gallery::{self, GalleryMap};
use crate::grid::{self, degree, degree_fourier, fourier, power_map, product, CircleGrid, CircleMap, SobolevIndex};
use crate::io::{Cell, Table};
use crate::optimizer::{self, OptimizeOptions, PhaseAnsatz};
use crate::seminorms::{self, gagliardo_seminorm_line, h_half_distance_sq, h_half_seminorm_sq};
use crate::sphere2::{
    degree_kronecker_s2, dirichlet_energy, h1_distance, stereographic_power, suspension, vo1_pair,
    SuspensionSpec, NORTH,
};

/// Environment variable overriding the default S¹ grid size.
pub const GRID_ENV: &str = "HG_GRID_M";

/// Run-wide settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    /// S¹ grid size.
    pub m: usize,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            m: grid::DEFAULT_M,
            seed: 0,
        }
    }
}

impl Context {
    /// Default settings with `M` taken from `HG_GRID_M` when set.
    pub fn from_env() -> Result<Self> {
        let mut ctx = Self::default();
        if let Ok(v) = std::env::var(GRID_ENV) {
            let m: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{GRID_ENV}={v:?} is not a grid size")))?;
            CircleGrid::new(m)?;
            ctx.m = m;
        }
        Ok(ctx)
    }

    pub fn grid(&self) -> CircleGrid {
        CircleGrid::new(self.m).expect("validated grid size")
    }
}

/// `key=value` overrides; values may be comma-separated lists.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, key: &str, value: &str) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn insert(&mut self, key: &str, value: &str) -> Result<()> {
        if self.values.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::Parse(format!("--{key} given twice")));
        }
        Ok(())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        let Some(v) = self.values.get(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|t| {
                t.trim()
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("--{key}: cannot parse {t:?}")))
            })
            .collect::<Result<Vec<T>>>()
            .map(Some)
    }

    pub fn reals_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        Ok(self.list(key)?.unwrap_or_else(|| default.to_vec()))
    }

    pub fn ints_or(&self, key: &str, default: &[i64]) -> Result<Vec<i64>> {
        let v: Option<Vec<f64>> = self.list(key)?;
        match v {
            None => Ok(default.to_vec()),
            Some(v) => v
                .into_iter()
                .map(|x| {
                    if x.fract() == 0.0 && x.abs() < 1e15 {
                        Ok(x as i64)
                    } else {
                        Err(Error::Parse(format!("--{key}: {x} is not an integer")))
                    }
                })
                .collect(),
        }
    }

    pub fn int_or(&self, key: &str, default: i64) -> Result<i64> {
        single(key, self.ints_or(key, &[default])?)
    }

    pub fn real_or(&self, key: &str, default: f64) -> Result<f64> {
        single(key, self.reals_or(key, &[default])?)
    }

    fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }
}

fn single<T: Copy>(key: &str, v: Vec<T>) -> Result<T> {
    match v.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::Parse(format!("--{key} takes a single value"))),
    }
}

/// How a measured value is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rule {
    /// `|value - expected| ≤ tol`.
    Abs { expected: f64, tol: f64 },
    /// `|value - expected| ≤ tol·|expected|`.
    Rel { expected: f64, tol: f64 },
    /// `value < bound`.
    Below(f64),
    /// `value > bound`.
    Above(f64),
    /// `value ≥ bound`.
    AtLeast(f64),
    /// `value` is finite.
    Finite,
    /// Logged, not judged.
    Info,
}

impl Rule {
    pub fn holds(&self, value: f64) -> Option<bool> {
        let ok = match *self {
            Rule::Abs { expected, tol } => (value - expected).abs() <= tol,
            Rule::Rel { expected, tol } => (value - expected).abs() <= tol * expected.abs(),
            Rule::Below(b) => value < b,
            Rule::Above(b) => value > b,
            Rule::AtLeast(b) => value >= b,
            Rule::Finite => value.is_finite(),
            Rule::Info => return None,
        };
        Some(ok && !value.is_nan())
    }

    fn columns(&self) -> (Cell, Cell, &'static str) {
        match *self {
            Rule::Abs { expected, tol } => (expected.into(), tol.into(), "abs"),
            Rule::Rel { expected, tol } => (expected.into(), tol.into(), "rel"),
            Rule::Below(b) => (b.into(), Cell::Empty, "<"),
            Rule::Above(b) => (b.into(), Cell::Empty, ">"),
            Rule::AtLeast(b) => (b.into(), Cell::Empty, ">="),
            Rule::Finite => (Cell::Empty, Cell::Empty, "finite"),
            Rule::Info => (Cell::Empty, Cell::Empty, "info"),
        }
    }
}

/// One measured quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub case: String,
    pub value: f64,
    pub rule: Rule,
}

impl Check {
    pub fn new(case: impl Into<String>, value: f64, rule: Rule) -> Self {
        Self {
            case: case.into(),
            value,
            rule,
        }
    }

    pub fn passed(&self) -> Option<bool> {
        self.rule.holds(self.value)
    }
}

/// Result of one experiment.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub claim: &'static str,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed() != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.passed() == Some(false))
    }

    pub fn find(&self, case: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.case == case)
    }
}

/// Columns of [`table`].
pub const COLUMNS: &[&str] = &["experiment", "case", "value", "expected", "tolerance", "rule", "status"];

/// All rows of several outcomes in one table.
pub fn table(outcomes: &[Outcome]) -> Table {
    let mut t = Table::new(COLUMNS);
    for o in outcomes {
        for c in &o.checks {
            t.push(row(o.name, c));
        }
    }
    t
}

/// One table row for a check.
pub fn row(name: &str, c: &Check) -> Vec<Cell> {
    let (expected, tol, rule) = c.rule.columns();
    let status = match c.passed() {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "INFO",
    };
    vec![
        name.into(),
        c.case.clone().into(),
        c.value.into(),
        expected,
        tol,
        rule.into(),
        status.into(),
    ]
}

/// A registered experiment.
pub struct Experiment {
    pub name: &'static str,
    pub claim: &'static str,
    pub keys: &'static [&'static str],
    /// Takes minutes rather than seconds.
    pub slow: bool,
    run: fn(&Params, &Context) -> Result<Vec<Check>>,
}

impl Experiment {
    /// Rejects unknown keys, then runs.
    pub fn run(&self, params: &Params, ctx: &Context) -> Result<Outcome> {
        self.validate(params)?;
        Ok(Outcome {
            name: self.name,
            claim: self.claim,
            checks: (self.run)(params, ctx)?,
        })
    }

    pub fn validate(&self, params: &Params) -> Result<()> {
        match params.keys().find(|k| !self.keys.contains(k)) {
            Some(k) => Err(Error::Parse(format!(
                "{}: unknown parameter --{k} (accepted: {})",
                self.name,
                self.keys.iter().map(|k| format!("--{k}")).collect::<Vec<_>>().join(", ")
            ))),
            None => Ok(()),
        }
    }
}

impl std::fmt::Debug for Experiment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Experiment").field("name", &self.name).finish()
    }
}

pub static EXPERIMENTS: &[Experiment] = &[
    Experiment {
        name: "w11-zigzag",
        claim: "the zigzag pair has W^{1,1} distance 4|d1 - d2|",
        keys: &["d1", "d2"],
        slow: false,
        run: w11_zigzag,
    },
    Experiment {
        name: "w1p-formula",
        claim: "class minimum 2|d|^p π of ∫|v'|^p, and the optimiser reaches 2^{1/p+1} π^{1/p-1} |d1 - d2|",
        keys: &["p", "d1", "d2", "k", "restarts", "budget"],
        slow: true,
        run: w1p_formula,
    },
    Experiment {
        name: "dist-w11-hausdorff",
        claim: "unwinding d turns on a flat arc costs exactly 2π|d| in W^{1,1}",
        keys: &["d", "lambda"],
        slow: false,
        run: dist_w11_hausdorff,
    },
    Experiment {
        name: "h-half-blaschke",
        claim: "H^{1/2} Fourier identities, the lower bound 4π²(d2 - d1), and the Blaschke bubble excess over 4π²|d|",
        keys: &["d", "delta", "samples"],
        slow: false,
        run: h_half_blaschke,
    },
    Experiment {
        name: "eps-bump-critical",
        claim: "the degree (1, 0) bump pair gets arbitrarily close in the critical norm",
        keys: &["p", "eps"],
        slow: false,
        run: eps_bump_critical,
    },
    Experiment {
        name: "capacity-decay",
        claim: "the critical H^{1/2} semi-norm of the capacity profile H_ε decays as ε → 0",
        keys: &["eps"],
        slow: false,
        run: capacity_decay,
    },
    Experiment {
        name: "s2-energy",
        claim: "stereographic z^d has degree d and Dirichlet energy 8π|d|",
        keys: &["d"],
        slow: false,
        run: s2_energy,
    },
    Experiment {
        name: "s2-vo1",
        claim: "the S² pair with degrees (d1, d2) has f - g independent of d1",
        keys: &["d1", "d2"],
        slow: false,
        run: s2_vo1,
    },
    Experiment {
        name: "attainment",
        claim: "the W^{1,p} class distance is attained for p = 1 and 1 < p < 2 and not for p ≥ 2",
        keys: &["d1", "budget", "seed"],
        slow: true,
        run: attainment,
    },
    Experiment {
        name: "oscillator-lb",
        claim: "the W^{1,1} distance from the oscillating map to E_0 approaches 2π as n grows",
        keys: &["n", "k", "restarts", "budget"],
        slow: true,
        run: oscillator_lb,
    },
    Experiment {
        name: "multibump-scaling",
        claim: "|h|²_{H^{1/2}} of d disjoint bumps grows linearly in d",
        keys: &["d", "n"],
        slow: false,
        run: multibump_scaling,
    },
    Experiment {
        name: "product-shift-scaling",
        claim: "the W^{1,p} distance of the product-shift pair grows linearly in |d1 - d2|",
        keys: &["d", "p"],
        slow: false,
        run: product_shift_scaling,
    },
    Experiment {
        name: "degree-stability",
        claim: "suspension degrees follow the parity rule, and degrees stay apart while the critical distance shrinks",
        keys: &["eps"],
        slow: false,
        run: degree_stability,
    },
];

/// Looks up an experiment by name.
pub fn find(name: &str) -> Result<&'static Experiment> {
    EXPERIMENTS.iter().find(|e| e.name == name).ok_or_else(|| {
        Error::Parse(format!(
            "unknown experiment {name:?}; expected one of all, {}",
            EXPERIMENTS.iter().map(|e| e.name).collect::<Vec<_>>().join(", ")
        ))
    })
}

/// Runs one experiment by name, or every experiment for `all` (which takes
/// no parameters).
pub fn run(name: &str, params: &Params, ctx: &Context) -> Result<Vec<Outcome>> {
    if name == "all" {
        if !params.is_empty() {
            return Err(Error::Parse("`all` takes no parameters".into()));
        }
        return EXPERIMENTS.iter().map(|e| e.run(params, ctx)).collect();
    }
    Ok(vec![find(name)?.run(params, ctx)?])
}

/// `max/min` of the secant slopes through `(0, 0)` and the points
/// `(x_i, y_i)`, sorted by `x`.
pub fn secant_slope_ratio(points: &[(f64, f64)]) -> f64 {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut prev = (0.0, 0.0);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in pts {
        let s = (p.1 - prev.1) / (p.0 - prev.0);
        lo = lo.min(s);
        hi = hi.max(s);
        prev = p;
    }
    hi / lo
}

/// `max_i (v_{i+1} - v_i)`: negative iff strictly decreasing.
fn max_increment(v: &[f64]) -> f64 {
    v.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max)
}

/// `min_i (v_{i+1} - v_i)`: nonnegative iff nondecreasing.
fn min_increment(v: &[f64]) -> f64 {
    v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

fn pairs(params: &Params, default: &[(i64, i64)]) -> Result<Vec<(i64, i64)>> {
    match (params.has("d1"), params.has("d2")) {
        (false, false) => Ok(default.to_vec()),
        _ => {
            let d1 = params.ints_or("d1", &[default[0].0])?;
            let d2 = params.ints_or("d2", &[default[0].1])?;
            Ok(d1.iter().flat_map(|&a| d2.iter().map(move |&b| (a, b))).collect())
        }
    }
}

fn w11_zigzag(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (d1, d2) in pairs(params, &[(1, 0), (3, 1), (2, -1)])? {
        let pair = gallery::zigzag_pair(d1, d2, ctx.grid())?;
        out.push(Check::new(
            format!("d1={d1} d2={d2}"),
            pair.w1p_distance(1.0)?,
            Rule::Rel {
                expected: 4.0 * (d1 - d2).abs() as f64,
                tol: 1e-3,
            },
        ));
    }
    Ok(out)
}

fn optimize_options(params: &Params, default: OptimizeOptions) -> Result<OptimizeOptions> {
    Ok(OptimizeOptions {
        k: params.int_or("k", default.k as i64)?.max(1) as usize,
        restarts: params.int_or("restarts", default.restarts as i64)?.max(1) as usize,
        budget: params.int_or("budget", default.budget as i64)?.max(1) as u64,
        seed: default.seed,
    })
}

fn w1p_formula(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in [1, 2] {
        for p in [1.0, 1.5, 3.0] {
            let v = power_map(d, ctx.grid());
            let value = seminorms::w1p_seminorm(&v, p, None)?.powf(p);
            out.push(Check::new(
                format!("class-min d={d} p={p}"),
                value,
                Rule::Rel {
                    expected: formulas::class_min_w1p_pow(d, p),
                    tol: 1e-6,
                },
            ));
        }
    }
    let d1 = params.int_or("d1", 0)?;
    let d2 = params.int_or("d2", 1)?;
    let opts = optimize_options(
        params,
        OptimizeOptions {
            seed: ctx.seed,
            ..OptimizeOptions::default()
        },
    )?;
    for p in params.reals_or("p", &[1.0, 2.0])? {
        let r = optimizer::estimate_inf_distance(&power_map(d1, ctx.grid()), d2, SobolevIndex::w1p(p)?, opts)?;
        out.push(Check::new(
            format!("optimised d1={d1} d2={d2} p={p}"),
            r.best,
            Rule::Rel {
                expected: formulas::w1p_class_distance(p, d1, d2),
                tol: 0.03,
            },
        ));
    }
    Ok(out)
}

fn dist_w11_hausdorff(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let base = gallery::locally_constant_map(1, 0.5, ctx.grid())?;
    for d in params.ints_or("d", &[1, 2, 3])? {
        for lambda in params.reals_or("lambda", &[0.1, 0.01])? {
            let pair = gallery::deflate_phase(&base.map, d, lambda)?;
            out.push(Check::new(
                format!("d={d} lambda={lambda}"),
                pair.w1p_distance(1.0)?,
                Rule::Rel {
                    expected: formulas::dist_w11(1, 1 - d),
                    tol: 1e-3,
                },
            ));
        }
    }
    Ok(out)
}

/// Grid fine enough to resolve a Blaschke bubble of width `δ`.
pub fn blaschke_grid(delta: f64, m: usize) -> Result<CircleGrid> {
    let need = (64.0 / delta).ceil() as usize;
    CircleGrid::new(m.max(need.next_power_of_two()))
}

/// Closed form of `|f h_δ - f|²_{H^{1/2}} - 4π²|d|` for `f = z^d` and the
/// bubble `h_δ` of [`gallery::blaschke_pow`], known for `|d| ≤ 2`. With
/// `a = 1 - δ`, the cross term is `8π²|d| a^{|d|}` (the mean of `h_δ` is
/// `a^{|d|}`), and expanding `f h_δ` in partial fractions gives
/// `8π²(a² - a)` for `|d| = 1` and `16π² a²(1 - a²)(1 - 2a²)` for `|d| = 2`.
pub fn blaschke_excess(d: i64, delta: f64) -> Option<f64> {
    let a = 1.0 - delta;
    let pi2 = PI * PI;
    match d.abs() {
        1 => Some(8.0 * pi2 * (a * a - a)),
        2 => Some(16.0 * pi2 * a * a * (1.0 - a * a) * (1.0 - 2.0 * a * a)),
        _ => None,
    }
}

fn gallery_maps(grid: CircleGrid) -> Result<Vec<(&'static str, CircleMap)>> {
    Ok(vec![
        ("power d=3", power_map(3, grid)),
        ("blaschke d=2 delta=0.4", gallery::blaschke_pow(2, 0.4, grid)?),
        ("locally-constant d1=2", gallery::locally_constant_map(2, 0.5, grid)?.map),
        ("multi-bump d=3 n=16", gallery::multi_bump(3, 16, grid)?.map),
        ("product-shift d1=2 d2=0 f", gallery::product_shift(2, 0, grid)?.f.map),
    ])
}

fn h_half_blaschke(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let grid = ctx.grid();
    for d in [1, 2, 3] {
        out.push(Check::new(
            format!("|z^{d}|^2"),
            h_half_seminorm_sq(power_map(d, grid).samples()),
            Rule::Rel {
                expected: formulas::h_half_degree_bound(d),
                tol: 1e-12,
            },
        ));
    }
    for (name, f) in gallery_maps(grid)? {
        let series = fourier(&f);
        out.push(Check::new(
            format!("parseval {name}"),
            series.energy(),
            Rule::Abs {
                expected: 1.0,
                tol: 1e-8,
            },
        ));
        out.push(Check::new(
            format!("fourier degree {name}"),
            degree_fourier(&series),
            Rule::Abs {
                expected: degree(&f)? as f64,
                tol: 1e-4,
            },
        ));
    }

    // lower bound over random maps of the larger degree
    let samples = params.int_or("samples", 200)?.max(1) as usize;
    for (d1, d2) in [(0, 1), (1, 3)] {
        let f = power_map(d1, grid);
        let bound = formulas::h_half_power_lower_bound(d1, d2);
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let mut worst = f64::INFINITY;
        for _ in 0..samples {
            let g = random_ansatz(d2, 8, &mut rng).exponentiate(grid);
            worst = worst.min(h_half_distance_sq(&f, &g)? - bound);
        }
        out.push(Check::new(
            format!("lower bound d1={d1} d2={d2} min excess over {samples}"),
            worst,
            Rule::AtLeast(-1e-6),
        ));
    }

    // bubble excess
    let d = params.int_or("d", 2)?;
    let target = formulas::h_half_degree_bound(d);
    let mut excess = Vec::new();
    for delta in params.reals_or("delta", &[1e-1, 1e-2, 1e-3])? {
        let g = blaschke_grid(delta, ctx.m)?;
        let f = power_map(d, g);
        let h = gallery::blaschke_pow(d, delta, g)?;
        let e = h_half_distance_sq(&product(&f, &h)?, &f)? - target;
        out.push(Check::new(format!("excess delta={delta} M={}", g.len()), e, Rule::Above(0.0)));
        if let Some(expected) = blaschke_excess(d, delta) {
            out.push(Check::new(
                format!("closed form delta={delta}"),
                e,
                Rule::Abs {
                    expected,
                    tol: 1e-6 * target,
                },
            ));
        }
        excess.push(e);
    }
    let magnitude: Vec<f64> = excess.iter().map(|e| e.abs()).collect();
    out.push(Check::new("|excess| decreasing (max step)", max_increment(&magnitude), Rule::Below(0.0)));
    if let Some(&last) = excess.last() {
        out.push(Check::new("final |excess| / 4π²|d|", last.abs() / target, Rule::Below(0.05)));
    }
    Ok(out)
}

/// `ψ = dθ + c₀ + Σ_{k≤K} (a_k cos kθ + b_k sin kθ)` with `c₀` uniform on
/// `[0, 2π)` and `a_k, b_k` uniform on `[-1/k, 1/k]`.
pub fn random_ansatz(d: i64, k: usize, rng: &mut impl Rng) -> PhaseAnsatz {
    PhaseAnsatz {
        winding: d,
        c0: rng.gen_range(0.0..TAU),
        modes: (1..=k)
            .map(|n| {
                let r = 1.0 / n as f64;
                (rng.gen_range(-r..r), rng.gen_range(-r..r))
            })
            .collect(),
    }
}

fn critical_p(params: &Params) -> Result<f64> {
    let p = params.real_or("p", 2.0)?;
    if p != 2.0 {
        return Err(Error::IndexOutOfRange {
            name: "p",
            value: p,
            range: "p = 2 (the critical pair is (s, p) = (1/2, 2) on the line, H¹ on S²)",
        });
    }
    Ok(p)
}

fn eps_bump_critical(params: &Params, _ctx: &Context) -> Result<Vec<Check>> {
    let p = critical_p(params)?;
    let mut out = Vec::new();
    let mut line = Vec::new();
    let mut h1 = Vec::new();
    for eps in params.reals_or("eps", &[1e-2, 1e-3, 1e-4])? {
        let (_, _, diff) = gallery::bump_pair_line_profiles(eps, 24)?;
        let v = gagliardo_seminorm_line(&diff, 1.0 / p, p)?;
        out.push(Check::new(format!("N=1 |f-g| eps={eps}"), v, Rule::Info));
        line.push(v);
        let grid = Arc::new(gallery::bump_grid_s2(eps, 24, 128)?);
        let (f, g) = gallery::bump_pair_s2(eps, grid)?;
        let v = h1_distance(&f, &g)?;
        out.push(Check::new(format!("N=2 |f-g|_H1 eps={eps}"), v, Rule::Info));
        h1.push(v);
    }
    out.push(Check::new("N=1 decreasing (max step)", max_increment(&line), Rule::Below(0.0)));
    out.push(Check::new("N=2 decreasing (max step)", max_increment(&h1), Rule::Below(0.0)));
    Ok(out)
}

fn capacity_decay(params: &Params, _ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut v = Vec::new();
    for eps in params.reals_or("eps", &[1e-2, 1e-4, 1e-6])? {
        let h = gallery::capacity_line_profile(eps, 24)?;
        let s = gagliardo_seminorm_line(&h, 0.5, 2.0)?;
        out.push(Check::new(format!("|H_eps| eps={eps}"), s, Rule::Info));
        v.push(s);
    }
    out.push(Check::new("decreasing (max step)", max_increment(&v), Rule::Below(0.0)));
    if let (Some(first), Some(last)) = (v.first(), v.last()) {
        out.push(Check::new("final / initial", last / first, Rule::Below(0.5)));
    }
    Ok(out)
}

fn s2_energy(params: &Params, _ctx: &Context) -> Result<Vec<Check>> {
    let grid = gallery::registry::default_sphere_grid();
    let mut out = Vec::new();
    for d in params.ints_or("d", &[1, 2])? {
        let f = stereographic_power(d, grid.clone())?;
        out.push(Check::new(
            format!("degree d={d}"),
            degree_kronecker_s2(&f).raw,
            Rule::Abs {
                expected: d as f64,
                tol: 1e-3,
            },
        ));
        out.push(Check::new(
            format!("energy d={d}"),
            dirichlet_energy(&f),
            Rule::Rel {
                expected: formulas::harmonic_energy(d),
                tol: 1e-2,
            },
        ));
    }
    Ok(out)
}

fn s2_vo1(params: &Params, _ctx: &Context) -> Result<Vec<Check>> {
    let grid = Arc::new(gallery::vo1_grid()?);
    let d2 = params.int_or("d2", 0)?;
    let degrees = params.ints_or("d1", &[1, 3, 7])?;
    let mut out = Vec::new();
    let mut fields = Vec::new();
    let mut dists = Vec::new();
    for &d1 in &degrees {
        let (f, g) = vo1_pair(d1, d2, gallery::CAP_RADIUS, grid.clone())?;
        for (side, map, d) in [("f", &f, d1), ("g", &g, d2)] {
            out.push(Check::new(
                format!("degree {side} d1={d1} d2={d2}"),
                degree_kronecker_s2(map).raw,
                Rule::Abs {
                    expected: d as f64,
                    tol: 1e-2,
                },
            ));
        }
        let h1 = h1_distance(&f, &g)?;
        out.push(Check::new(format!("|f-g|_H1 d1={d1}"), h1, Rule::Info));
        dists.push(h1);
        fields.push(f.difference(&g)?);
    }
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let field_gap = fields
        .iter()
        .skip(1)
        .flat_map(|fd| {
            fd.iter()
                .zip(&fields[0])
                .map(|(a, b)| (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max))
        })
        .fold(0.0, f64::max);
    out.push(Check::new("max |Δ(f-g)| across d1", field_gap, Rule::Below(1e-12)));
    out.push(Check::new("spread of |f-g|_H1 across d1", spread(&dists), Rule::Below(1e-6)));
    Ok(out)
}

fn attainment(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let d1 = params.int_or("d1", 1)?;
    let budget = params.int_or("budget", 1)?.max(1) as u64;
    let seed = params.int_or("seed", ctx.seed as i64)? as u64;
    let grid = ctx.grid();
    let mut out = Vec::new();

    let z = gallery::zigzag_pair(d1, -d1, grid)?;
    out.push(Check::new(
        "p=1 zigzag",
        z.w1p_distance(1.0)?,
        Rule::Rel {
            expected: formulas::w1p_class_distance(1.0, d1, -d1),
            tol: 1e-3,
        },
    ));

    let p = 1.5;
    let pair = gallery::attainment_pair(d1, p, grid)?;
    out.push(Check::new(
        "p=1.5 explicit pair",
        pair.w1p_distance(p)?,
        Rule::Rel {
            expected: formulas::w1p_class_distance(p, d1, -d1),
            tol: 1e-2,
        },
    ));
    let re = pair
        .f
        .map
        .difference(&pair.g.map)?
        .iter()
        .fold(0.0f64, |a, z| a.max(z.re.abs()));
    out.push(Check::new("p=1.5 max |Re(f-g)|", re, Rule::Below(1e-9)));
    let chain = gallery::attainment_chain(&pair, p)?;
    for (i, v) in chain.iter().enumerate() {
        out.push(Check::new(
            format!("p=1.5 chain term {}", i + 1),
            *v,
            Rule::Rel {
                expected: chain[2],
                tol: 1e-3,
            },
        ));
    }
    let probe = optimizer::attainment_probe(d1, p, 4 * budget, seed)?;
    out.push(Check::new("p=1.5 probe gap", probe.gap, Rule::Info));
    if let Some(dist) = probe.minimizer_distance {
        out.push(Check::new("p=1.5 probe distance to minimiser", dist, Rule::Info));
    }

    let low = optimizer::attainment_probe(d1, 2.0, budget, seed)?;
    let high = optimizer::attainment_probe(d1, 2.0, 4 * budget, seed)?;
    out.push(Check::new(format!("p=2 gap budget={budget}"), low.gap, Rule::Info));
    out.push(Check::new(format!("p=2 gap budget={}", 4 * budget), high.gap, Rule::Below(0.05)));
    out.push(Check::new(
        format!("p=2 max|psi'| budget={budget}"),
        low.max_dphase,
        Rule::Info,
    ));
    out.push(Check::new(
        format!("p=2 max|psi'| budget={}", 4 * budget),
        high.max_dphase,
        Rule::Info,
    ));
    out.push(Check::new(
        "p=2 max|psi'| growth",
        high.max_dphase / low.max_dphase,
        Rule::AtLeast(2.0),
    ));
    Ok(out)
}

/// Search settings used for the oscillator distances.
pub const OSCILLATOR_OPTIONS: OptimizeOptions = OptimizeOptions {
    k: 64,
    restarts: 8,
    budget: 500,
    seed: 0,
};

fn oscillator_lb(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let opts = optimize_options(
        params,
        OptimizeOptions {
            seed: ctx.seed,
            ..OSCILLATOR_OPTIONS
        },
    )?;
    let mut out = Vec::new();
    let mut values = Vec::new();
    for n in params.ints_or("n", &[6, 10, 16])? {
        let f: GalleryMap = gallery::oscillator(1, n, ctx.grid())?;
        let r = optimizer::estimate_point_to_class(&f, 0, SobolevIndex::w1p(1.0)?, opts)?;
        out.push(Check::new(format!("inf over E_0 n={n}"), r.best, Rule::Info));
        values.push(r.best);
    }
    out.push(Check::new("nondecreasing (min step)", min_increment(&values), Rule::AtLeast(0.0)));
    if let Some(&last) = values.last() {
        out.push(Check::new("final value", last, Rule::AtLeast(TAU - 0.3)));
    }
    Ok(out)
}

fn multibump_scaling(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let n = params.int_or("n", 16)?;
    let mut out = Vec::new();
    let mut pts = Vec::new();
    for d in params.ints_or("d", &[1, 2, 4, 8])? {
        let h = gallery::multi_bump(d, n, ctx.grid())?;
        let v = h_half_seminorm_sq(h.map.samples());
        out.push(Check::new(format!("|h|^2 d={d}"), v, Rule::Info));
        pts.push((d.abs() as f64, v));
    }
    out.push(Check::new("slope ratio max/min", secant_slope_ratio(&pts), Rule::Below(1.25)));
    Ok(out)
}

fn product_shift_scaling(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let p = params.real_or("p", 1.0)?;
    let mut out = Vec::new();
    let mut pts = Vec::new();
    for d in params.ints_or("d", &[1, 2, 4, 8])? {
        let pair = gallery::product_shift(d, 0, ctx.grid())?;
        let v = pair.w1p_distance(p)?;
        out.push(Check::new(format!("|f-g| d={d} p={p}"), v, Rule::Info));
        pts.push((d.abs() as f64, v));
    }
    out.push(Check::new("slope ratio max/min", secant_slope_ratio(&pts), Rule::Below(1.25)));
    Ok(out)
}

fn degree_stability(params: &Params, ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cap = Arc::new(gallery::suspension_grid()?);
    for k in 0..4 {
        for dh in 1..4 {
            let m = suspension(&SuspensionSpec::smooth(k, dh, NORTH, gallery::CAP_RADIUS), cap.clone())?;
            out.push(Check::new(
                format!("suspension k={k} deg h={dh}"),
                degree_kronecker_s2(&m).raw,
                Rule::Abs {
                    expected: formulas::suspension_degree(k, dh) as f64,
                    tol: 1e-2,
                },
            ));
        }
    }
    let mut norms = Vec::new();
    for eps in params.reals_or("eps", &[1e-2, 1e-3, 1e-4])? {
        let pair = gallery::bump_pair(eps, ctx.grid())?;
        for (side, map, d) in [("f", &pair.f.map, 1), ("g", &pair.g.map, 0)] {
            out.push(Check::new(
                format!("N=1 degree {side} eps={eps}"),
                degree(map)? as f64,
                Rule::Abs {
                    expected: d as f64,
                    tol: 0.0,
                },
            ));
        }
        let grid = Arc::new(gallery::bump_grid_s2(eps, 24, 128)?);
        let (f, g) = gallery::bump_pair_s2(eps, grid)?;
        for (side, map, d) in [("f", &f, 1.0), ("g", &g, 0.0)] {
            out.push(Check::new(
                format!("N=2 degree {side} eps={eps}"),
                degree_kronecker_s2(map).raw,
                Rule::Abs {
                    expected: d,
                    tol: 1e-2,
                },
            ));
        }
        let (lf, lg, diff) = gallery::bump_pair_line_profiles(eps, 24)?;
        let nd = gagliardo_seminorm_line(&diff, 0.5, 2.0)?;
        let nf = gagliardo_seminorm_line(&lf, 0.5, 2.0)?;
        let ng = gagliardo_seminorm_line(&lg, 0.5, 2.0)?;
        out.push(Check::new(format!("N=1 |f-g| eps={eps}"), nd, Rule::Info));
        out.push(Check::new(
            format!("stability ratio eps={eps}"),
            seminorms::degree_stability_ratio(1.0, nd, nf, ng, 2.0, 1),
            Rule::Finite,
        ));
        norms.push(nd);
    }
    out.push(Check::new("N=1 |f-g| decreasing (max step)", max_increment(&norms), Rule::Below(0.0)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_found() {
        for (i, e) in EXPERIMENTS.iter().enumerate() {
            assert!(EXPERIMENTS[i + 1..].iter().all(|o| o.name != e.name));
            assert_eq!(find(e.name).unwrap().name, e.name);
        }
        assert_eq!(EXPERIMENTS.len(), 13);
        assert!(find("nope").is_err());
    }

    #[test]
    fn unknown_keys_rejected_before_running() {
        let e = find("oscillator-lb").unwrap();
        assert!(e.run(&Params::new().set("bogus", "1"), &Context::default()).is_err());
        assert!(run("all", &Params::new().set("d", "1"), &Context::default()).is_err());
    }

    #[test]
    fn rules() {
        assert_eq!(Rule::Below(1.0).holds(1.0), Some(false));
        assert_eq!(Rule::AtLeast(1.0).holds(1.0), Some(true));
        assert_eq!(Rule::Rel { expected: 2.0, tol: 0.1 }.holds(2.19), Some(true));
        assert_eq!(Rule::Abs { expected: 0.0, tol: 1.0 }.holds(f64::NAN), Some(false));
        assert_eq!(Rule::Info.holds(f64::NAN), None);
    }

    #[test]
    fn slope_ratio_of_a_line_is_one() {
        let pts: Vec<_> = [1.0, 2.0, 4.0, 8.0].iter().map(|&d| (d, 3.0 * d)).collect();
        assert!((secant_slope_ratio(&pts) - 1.0).abs() < 1e-15);
        assert!((secant_slope_ratio(&[(1.0, 1.0), (2.0, 4.0)]) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn zigzag_experiment_passes() {
        let ctx = Context::default();
        let out = find("w11-zigzag").unwrap().run(&Params::new().set("d1", "1").set("d2", "0"), &ctx).unwrap();
        assert_eq!(out.checks.len(), 1);
        assert!(out.passed());
    }
}

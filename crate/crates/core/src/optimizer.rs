//! Numerical estimates of class distances by minimising over phases with a
//! fixed winding and finitely many Fourier modes.
//!
//! Each restart climbs a ladder of mode counts `K = 2, 4, …` (coarse to
//! fine). At the coarse rungs a Nelder-Mead simplex searches freely; every
//! rung ends with an L-BFGS polish on exact (adjoint) gradients.
//! Restarts run in parallel and are seeded per restart index, so results do
//! not depend on thread scheduling.

use std::f64::consts::{PI, TAU};

use argmin::core::{CostFunction, Executor, Gradient, State, TerminationReason, TerminationStatus};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::neldermead::NelderMead;
use argmin::solver::quasinewton::LBFGS;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas;
use crate::gallery::{self, GalleryMap};
use crate::grid::{self, dft, frequency, idft, lift, CircleGrid, CircleMap, SobolevIndex, C64};
use crate::seminorms::compensated_sum;

/// `ψ(θ) = dθ + c₀ + Σ_{k≤K} (a_k cos kθ + b_k sin kθ)`, always of degree `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseAnsatz {
    pub winding: i64,
    pub c0: f64,
    pub modes: Vec<(f64, f64)>,
}

impl PhaseAnsatz {
    pub fn zero(winding: i64, k: usize) -> Self {
        Self {
            winding,
            c0: 0.0,
            modes: vec![(0.0, 0.0); k],
        }
    }

    /// From `[c₀, a_1, b_1, …, a_K, b_K]`.
    pub fn from_params(winding: i64, x: &[f64]) -> Self {
        Self {
            winding,
            c0: x[0],
            modes: x[1..].chunks(2).map(|c| (c[0], c[1])).collect(),
        }
    }

    pub fn params(&self) -> Vec<f64> {
        let mut x = vec![self.c0];
        for &(a, b) in &self.modes {
            x.push(a);
            x.push(b);
        }
        x
    }

    pub fn k(&self) -> usize {
        self.modes.len()
    }

    /// Least-squares projection of a lifted phase onto `K` modes.
    pub fn project(phase: &grid::Phase, k: usize) -> Self {
        let m = phase.values().len();
        let d = phase.winding();
        let step = TAU / m as f64;
        let periodic: Vec<C64> = phase
            .values()
            .iter()
            .enumerate()
            .map(|(j, v)| C64::new(v - d as f64 * j as f64 * step, 0.0))
            .collect();
        let a = dft(&periodic);
        let modes = (1..=k.min(m / 2 - 1))
            .map(|n| (2.0 * a[n].re, -2.0 * a[n].im))
            .chain(std::iter::repeat((0.0, 0.0)))
            .take(k)
            .collect();
        Self {
            winding: d,
            c0: a[0].re,
            modes,
        }
    }

    /// Phase and its derivative on an `m`-point grid.
    pub fn sample(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        sample_params(self.winding, &self.params(), m)
    }

    pub fn exponentiate(&self, grid: CircleGrid) -> CircleMap {
        let (phase, _) = self.sample(grid.len());
        CircleMap::from_phase(grid, &phase).expect("phase sampled on the grid")
    }

    /// Padded or truncated to `k` modes.
    pub fn resized(&self, k: usize) -> Self {
        let mut modes = self.modes.clone();
        modes.resize(k, (0.0, 0.0));
        Self {
            winding: self.winding,
            c0: self.c0,
            modes,
        }
    }
}

/// One complex inverse transform gives `φ + iφ'`: the periodic part has
/// coefficients `P_n`, so the packed signal has `P_n (1 - n)`.
fn sample_params(winding: i64, x: &[f64], m: usize) -> (Vec<f64>, Vec<f64>) {
    let k = (x.len() - 1) / 2;
    assert!(2 * k < m, "too many modes for the grid");
    let mut spec = vec![C64::new(0.0, 0.0); m];
    spec[0] = C64::new(x[0], 0.0);
    for n in 1..=k {
        let p = C64::new(0.5 * x[2 * n - 1], -0.5 * x[2 * n]);
        spec[n] = p * (1.0 - n as f64);
        spec[m - n] = p.conj() * (1.0 + n as f64);
    }
    let z = idft(&spec);
    let step = TAU / m as f64;
    let d = winding as f64;
    let phase = z.iter().enumerate().map(|(j, v)| v.re + d * j as f64 * step).collect();
    let dphase = z.iter().map(|v| v.im + d).collect();
    (phase, dphase)
}

/// Weights `(W, V)` of a value with respect to `f - g` and its derivative.
type Weights = (Vec<C64>, Vec<C64>);

/// Which distance is minimised.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Objective {
    /// `(∫|ḟ - ġ|^p)^{1/p}`.
    W1p(f64),
    /// `(4π² Σ|n||c_n|²)^{1/2}` of `f - g`.
    HHalf,
}

impl Objective {
    pub fn from_index(index: SobolevIndex) -> Result<Self> {
        if index.s == 1.0 {
            Ok(Self::W1p(index.p))
        } else if index.s == 0.5 && index.p == 2.0 {
            Ok(Self::HHalf)
        } else {
            Err(Error::IndexOutOfRange {
                name: "s",
                value: index.s,
                range: "s = 1 (any p ≥ 1) or (s, p) = (1/2, 2)",
            })
        }
    }

    /// Value `J` and, when asked, weights `(W, V)` with
    /// `δJ = Σ_j Re(conj(W_j) δdiff_j + conj(V_j) δddiff_j)`.
    fn value_and_weights(
        &self,
        diff: &[C64],
        ddiff: &[C64],
        smoothing: f64,
        weights: bool,
    ) -> (f64, Option<Weights>) {
        let m = diff.len();
        match *self {
            Objective::W1p(p) => {
                let step = TAU / m as f64;
                let eta2 = smoothing * smoothing;
                let smooth = p != 2.0 && smoothing > 0.0;
                let g = |s: f64| {
                    if p == 2.0 {
                        s
                    } else if smooth {
                        // (|z|² + η²)^{p/2} - η^p keeps the p = 1 case differentiable
                        (s + eta2).powf(0.5 * p) - smoothing.powf(p)
                    } else {
                        s.powf(0.5 * p)
                    }
                };
                let sum = compensated_sum(ddiff.iter().map(|z| g(z.norm_sqr())));
                let integral = sum * step;
                let value = integral.powf(1.0 / p);
                if !weights {
                    return (value, None);
                }
                let outer = if integral > 0.0 {
                    integral.powf(1.0 / p - 1.0) / p
                } else {
                    0.0
                };
                let dg = |s: f64| {
                    if p == 2.0 {
                        1.0
                    } else if smooth {
                        0.5 * p * (s + eta2).powf(0.5 * p - 1.0)
                    } else if s > 0.0 {
                        0.5 * p * s.powf(0.5 * p - 1.0)
                    } else {
                        0.0
                    }
                };
                let v = ddiff
                    .iter()
                    .map(|z| z * (2.0 * step * outer * dg(z.norm_sqr())))
                    .collect();
                (value, Some((vec![C64::new(0.0, 0.0); m], v)))
            }
            Objective::HHalf => {
                let c = dft(diff);
                let sum = compensated_sum(
                    c.iter()
                        .enumerate()
                        .map(|(k, a)| frequency(k, m).unsigned_abs() as f64 * a.norm_sqr()),
                );
                let value = (4.0 * PI * PI * sum).sqrt();
                if !weights {
                    return (value, None);
                }
                // δS = (2/M) Re Σ δdiff_j conj(H_j), H = Σ |n| c_n e^{inθ}
                let scaled: Vec<C64> = c
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * frequency(k, m).unsigned_abs() as f64)
                    .collect();
                let outer = if value > 0.0 { 2.0 * PI * PI / value } else { 0.0 };
                let w = idft(&scaled).into_iter().map(|h| h * (2.0 * outer / m as f64)).collect();
                (value, Some((w, vec![C64::new(0.0, 0.0); m])))
            }
        }
    }
}

/// Chain rule from per-sample sensitivities `A_j = ∂J/∂φ(θ_j)` and
/// `B_j = ∂J/∂φ'(θ_j)` to the ansatz parameters `[c₀, a_1, b_1, …]`.
fn param_gradient(a: &[f64], b: &[f64], k: usize, out: &mut [f64]) {
    let m = a.len();
    let z: Vec<C64> = a.iter().zip(b).map(|(&x, &y)| C64::new(x, y)).collect();
    // unnormalised transforms Â_n = Σ A_j e^{-inθ_j}
    let zh: Vec<C64> = dft(&z).into_iter().map(|v| v * m as f64).collect();
    out[0] = a.iter().sum();
    for n in 1..=k {
        let p = zh[n];
        let q = zh[m - n].conj();
        let ah = (p + q) * 0.5;
        let bh = (p - q) * C64::new(0.0, -0.5);
        let nf = n as f64;
        out[2 * n - 1] = ah.re + nf * bh.im;
        out[2 * n] = -ah.im + nf * bh.re;
    }
}

/// Search settings. `budget` is the iteration cap per rung and restart.
#[derive(Clone, Copy, Debug)]
pub struct OptimizeOptions {
    pub k: usize,
    pub restarts: usize,
    pub budget: u64,
    pub seed: u64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            k: 32,
            restarts: 8,
            budget: 2000,
            seed: 0,
        }
    }
}

/// Outcome of a search.
#[derive(Clone, Debug)]
pub struct OptimizeReport {
    pub best: f64,
    /// Optimal ansatz for `f` (inf-inf searches) and for `g` (or the
    /// relative phase `χ` with `g = f e^{iχ}` in point-to-class searches).
    pub f_ansatz: Option<PhaseAnsatz>,
    pub g_ansatz: PhaseAnsatz,
    /// `(cumulative iteration, best value)` of the winning restart.
    pub trace: Vec<(u64, f64)>,
    pub restarts: usize,
    pub winning_restart: usize,
    pub target: Option<f64>,
    /// `(best - target) / target`.
    pub gap: Option<f64>,
    /// Some rung of the winning restart stopped at its iteration cap.
    pub budget_exhausted: bool,
    /// `max |ψ'|` over both optimised phases.
    pub max_dphase: f64,
    pub k: usize,
    pub grid_m: usize,
}

/// Rungs `2, 4, …, K`.
fn ladder(k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut r = 2.min(k);
    while r < k {
        out.push(r);
        r *= 2;
    }
    out.push(k);
    out
}

/// `K` modes per phase on at least `max(32K, 1024)` points.
fn eval_grid(k: usize) -> usize {
    (32 * k).max(1024).next_power_of_two()
}

#[derive(Clone, Copy)]
struct Problem<'a> {
    family: &'a dyn Family,
    k: usize,
    smoothing: f64,
}

impl CostFunction for Problem<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.family.eval(x, self.k, self.smoothing, None))
    }
}

impl Gradient for Problem<'_> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;

    fn gradient(&self, x: &Vec<f64>) -> std::result::Result<Vec<f64>, argmin::core::Error> {
        let mut g = vec![0.0; x.len()];
        self.family.eval(x, self.k, self.smoothing, Some(&mut g));
        Ok(g)
    }
}

struct RungResult {
    x: Vec<f64>,
    iterations: u64,
    capped: bool,
}

fn nelder_mead(problem: &Problem, x0: &[f64], scale: f64, iters: u64) -> RungResult {
    let n = x0.len();
    let mut simplex = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += scale;
        simplex.push(v);
    }
    let solver = match NelderMead::new(simplex).with_sd_tolerance(1e-12) {
        Ok(s) => s,
        Err(_) => {
            return RungResult {
                x: x0.to_vec(),
                iterations: 0,
                capped: false,
            }
        }
    };
    match Executor::new(*problem, solver).configure(|s| s.max_iters(iters)).run() {
        Ok(res) => {
            let st = res.state();
            RungResult {
                x: st.get_best_param().cloned().unwrap_or_else(|| x0.to_vec()),
                iterations: st.get_iter(),
                capped: matches!(
                    st.get_termination_status(),
                    TerminationStatus::Terminated(TerminationReason::MaxItersReached)
                ),
            }
        }
        Err(_) => RungResult {
            x: x0.to_vec(),
            iterations: 0,
            capped: false,
        },
    }
}

/// L-BFGS in chunks, so a failed line search keeps the progress made.
fn lbfgs(problem: &Problem, x0: &[f64], iters: u64) -> RungResult {
    const CHUNK: u64 = 50;
    let mut x = x0.to_vec();
    let mut best = problem.cost(&x).unwrap_or(f64::INFINITY);
    let mut done = 0;
    let mut capped = true;
    while done < iters {
        let n = CHUNK.min(iters - done);
        let solver = LBFGS::new(MoreThuenteLineSearch::new(), 8)
            .with_tolerance_grad(1e-9)
            .and_then(|s| s.with_tolerance_cost(1e-13));
        let Ok(solver) = solver else { break };
        let start = x.clone();
        let run = Executor::new(*problem, solver)
            .configure(|s| s.param(start).max_iters(n))
            .run();
        let Ok(res) = run else {
            capped = false;
            break;
        };
        let st = res.state();
        done += st.get_iter().max(1);
        let cost = st.get_best_cost();
        if let Some(p) = st.get_best_param() {
            if cost < best {
                best = cost;
                x = p.clone();
            }
        }
        let reached_cap = matches!(
            st.get_termination_status(),
            TerminationStatus::Terminated(TerminationReason::MaxItersReached)
        );
        if !reached_cap {
            capped = false;
            break;
        }
    }
    RungResult {
        x,
        iterations: done,
        capped: capped && done >= iters,
    }
}

/// A parametrised family: dimension and cost for `K` modes, and how to
/// carry parameters from one rung to the next.
trait Family: Sync {
    fn dim(&self, k: usize) -> usize;
    /// Cost, and its gradient written into `grad` when given.
    fn eval(&self, x: &[f64], k: usize, smoothing: f64, grad: Option<&mut [f64]>) -> f64;
    fn cost(&self, x: &[f64], k: usize, smoothing: f64) -> f64 {
        self.eval(x, k, smoothing, None)
    }
    fn resize(&self, x: &[f64], from: usize, to: usize) -> Vec<f64>;
    fn start(&self, restart: usize, rng: &mut ChaCha8Rng, k: usize) -> Vec<f64>;
}

struct RestartResult {
    x: Vec<f64>,
    value: f64,
    trace: Vec<(u64, f64)>,
    capped: bool,
}

fn run_family(family: &dyn Family, objective: Objective, opts: &OptimizeOptions) -> Result<(usize, RestartResult)> {
    if opts.k == 0 || opts.restarts == 0 {
        return Err(Error::InvalidGrid("need K ≥ 1 and at least one restart".into()));
    }
    let rungs = ladder(opts.k);
    let smoothings: Vec<f64> = match objective {
        Objective::W1p(p) if p < 1.5 => vec![1e-1, 1e-2, 1e-3],
        _ => vec![0.0],
    };
    let results: Vec<RestartResult> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(r as u64);
            let mut k = rungs[0];
            let mut x = family.start(r, &mut rng, k);
            let mut trace = Vec::new();
            let mut iters = 0u64;
            let mut capped = false;
            for (level, &rung) in rungs.iter().enumerate() {
                x = family.resize(&x, k, rung);
                k = rung;
                let last = level + 1 == rungs.len();
                for &eta in &smoothings {
                    let problem = Problem {
                        family,
                        k,
                        smoothing: eta,
                    };
                    if k <= 4 && eta == smoothings[0] {
                        let nm = nelder_mead(&problem, &x, 0.3, opts.budget);
                        iters += nm.iterations;
                        x = nm.x;
                    }
                    let lb = lbfgs(&problem, &x, opts.budget);
                    iters += lb.iterations;
                    x = lb.x;
                    capped |= last && lb.capped;
                }
                trace.push((iters, family.cost(&x, k, 0.0)));
            }
            RestartResult {
                value: family.cost(&x, k, 0.0),
                x,
                trace,
                capped,
            }
        })
        .collect();
    // smallest value, ties to the lowest restart index
    let (winner, _) = results
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, r)| if r.value < bv { (i, r.value) } else { (bi, bv) });
    let best = results.into_iter().nth(winner).expect("at least one restart");
    Ok((winner, best))
}

/// Inf over both maps: `f ∈ E_{d1}`, `g ∈ E_{d2}`, parameters
/// `[f-ansatz, g-ansatz]`.
struct PairFamily {
    d1: i64,
    d2: i64,
    objective: Objective,
    warm_f: Option<PhaseAnsatz>,
    warm_g: Option<PhaseAnsatz>,
    fixed_m: Option<usize>,
}

impl PairFamily {
    fn m(&self, k: usize) -> usize {
        self.fixed_m.unwrap_or_else(|| eval_grid(k))
    }

    fn fields(&self, x: &[f64], k: usize) -> (Vec<C64>, Vec<C64>, Vec<f64>, Vec<f64>) {
        let m = self.m(k);
        let n = 2 * k + 1;
        let (phi, dphi) = sample_params(self.d1, &x[..n], m);
        let (psi, dpsi) = sample_params(self.d2, &x[n..], m);
        let i = C64::new(0.0, 1.0);
        let mut diff = Vec::with_capacity(m);
        let mut ddiff = Vec::with_capacity(m);
        for j in 0..m {
            let f = C64::cis(phi[j]);
            let g = C64::cis(psi[j]);
            diff.push(f - g);
            ddiff.push(i * (dphi[j] * f - dpsi[j] * g));
        }
        (diff, ddiff, dphi, dpsi)
    }
}

impl Family for PairFamily {
    fn dim(&self, k: usize) -> usize {
        2 * (2 * k + 1)
    }

    fn eval(&self, x: &[f64], k: usize, smoothing: f64, grad: Option<&mut [f64]>) -> f64 {
        let m = self.m(k);
        let n = 2 * k + 1;
        let (phi, dphi) = sample_params(self.d1, &x[..n], m);
        let (psi, dpsi) = sample_params(self.d2, &x[n..], m);
        let i = C64::new(0.0, 1.0);
        let f: Vec<C64> = phi.iter().map(|&t| C64::cis(t)).collect();
        let g: Vec<C64> = psi.iter().map(|&t| C64::cis(t)).collect();
        let diff: Vec<C64> = f.iter().zip(&g).map(|(a, b)| a - b).collect();
        let ddiff: Vec<C64> = (0..m).map(|j| i * (dphi[j] * f[j] - dpsi[j] * g[j])).collect();
        let (value, weights) = self.objective.value_and_weights(&diff, &ddiff, smoothing, grad.is_some());
        if let (Some(out), Some((w, v))) = (grad, weights) {
            // δdiff = i f δφ - i g δψ, δddiff = i f δφ' - φ' f δφ - i g δψ' + ψ' g δψ
            let re = |a: C64, b: C64| (a.conj() * b).re;
            let mut af = vec![0.0; m];
            let mut bf = vec![0.0; m];
            let mut ag = vec![0.0; m];
            let mut bg = vec![0.0; m];
            for j in 0..m {
                af[j] = re(w[j], i * f[j]) + re(v[j], -dphi[j] * f[j]);
                bf[j] = re(v[j], i * f[j]);
                ag[j] = re(w[j], -i * g[j]) + re(v[j], dpsi[j] * g[j]);
                bg[j] = re(v[j], -i * g[j]);
            }
            let (of, og) = out.split_at_mut(n);
            param_gradient(&af, &bf, k, of);
            param_gradient(&ag, &bg, k, og);
        }
        value
    }

    fn resize(&self, x: &[f64], from: usize, to: usize) -> Vec<f64> {
        let n = 2 * from + 1;
        let mut out = PhaseAnsatz::from_params(self.d1, &x[..n]).resized(to).params();
        out.extend(PhaseAnsatz::from_params(self.d2, &x[n..]).resized(to).params());
        out
    }

    fn start(&self, restart: usize, rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
        let f = self.warm_f.clone().unwrap_or_else(|| PhaseAnsatz::zero(self.d1, k)).resized(k);
        let g = self.warm_g.clone().unwrap_or_else(|| PhaseAnsatz::zero(self.d2, k)).resized(k);
        let mut x = f.params();
        x.extend(g.params());
        if restart > 0 {
            for (i, v) in x.iter_mut().enumerate() {
                let scale = if i % (2 * k + 1) == 0 { PI } else { 0.5 };
                *v += rng.gen_range(-scale..scale);
            }
        }
        debug_assert_eq!(x.len(), self.dim(k));
        x
    }
}

/// Inf over `g = f e^{iχ}`, `χ ∈ E_{d2 - deg f}`, with `f` fixed and
/// sampled on its own grid.
struct PointFamily {
    f: Vec<C64>,
    fdot: Vec<C64>,
    winding: i64,
    objective: Objective,
}

impl Family for PointFamily {
    fn dim(&self, k: usize) -> usize {
        2 * k + 1
    }

    fn eval(&self, x: &[f64], k: usize, smoothing: f64, grad: Option<&mut [f64]>) -> f64 {
        let m = self.f.len();
        let (chi, dchi) = sample_params(self.winding, x, m);
        let i = C64::new(0.0, 1.0);
        let e: Vec<C64> = chi.iter().map(|&t| C64::cis(t)).collect();
        let diff: Vec<C64> = (0..m).map(|j| self.f[j] * (1.0 - e[j])).collect();
        let ddiff: Vec<C64> = (0..m)
            .map(|j| self.fdot[j] * (1.0 - e[j]) - i * dchi[j] * self.f[j] * e[j])
            .collect();
        let (value, weights) = self.objective.value_and_weights(&diff, &ddiff, smoothing, grad.is_some());
        if let (Some(out), Some((w, v))) = (grad, weights) {
            // δdiff = -i f e δχ, δddiff = (χ' f e - i ḟ e) δχ - i f e δχ'
            let re = |a: C64, b: C64| (a.conj() * b).re;
            let mut a = vec![0.0; m];
            let mut b = vec![0.0; m];
            for j in 0..m {
                let fe = self.f[j] * e[j];
                a[j] = re(w[j], -i * fe) + re(v[j], dchi[j] * fe - i * self.fdot[j] * e[j]);
                b[j] = re(v[j], -i * fe);
            }
            param_gradient(&a, &b, k, out);
        }
        value
    }

    fn resize(&self, x: &[f64], _from: usize, to: usize) -> Vec<f64> {
        PhaseAnsatz::from_params(self.winding, x).resized(to).params()
    }

    /// A concentrated unwinding of `χ` centred at a random point (the
    /// first restart centres it at 0, where gallery maps are flat).
    fn start(&self, restart: usize, rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
        let centre = if restart == 0 { 0.0 } else { rng.gen_range(0.0..TAU) };
        let m = self.f.len();
        let width = (8.0 * TAU / k as f64).min(PI);
        let d = self.winding as f64;
        let grid = CircleGrid::new(m).expect("f lives on a valid grid");
        let values: Vec<f64> = grid
            .thetas()
            .map(|t| {
                let local = (t - centre + 0.5 * width).rem_euclid(TAU);
                let base = t - centre + 0.5 * width - local;
                d * (base + TAU * gallery::profiles::smoothstep(local / width))
            })
            .collect();
        let phase = grid::Phase::new(grid, values, self.winding).expect("grid-sized phase");
        PhaseAnsatz::project(&phase, k).params()
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, b| a.max(b.abs()))
}

fn report_target(objective: Objective, d1: i64, d2: i64) -> Option<f64> {
    match objective {
        Objective::W1p(p) => Some(formulas::w1p_class_distance(p, d1, d2)),
        Objective::HHalf => None,
    }
}

/// `inf_{f ∈ E_{d1}} inf_{g ∈ E_{d2}} |f - g|` with `d1 = deg f`. The
/// given `f` seeds the first restart's `f`-phase; `g` starts from the
/// Fourier projection of the zigzag partner when one exists.
pub fn estimate_inf_distance(f: &CircleMap, d2: i64, index: SobolevIndex, opts: OptimizeOptions) -> Result<OptimizeReport> {
    let objective = Objective::from_index(index)?;
    let m = eval_grid(opts.k);
    if 4 * opts.k > f.len().max(m) {
        return Err(Error::IndexOutOfRange {
            name: "K",
            value: opts.k as f64,
            range: "K ≤ M/4",
        });
    }
    let phase = lift(f)?;
    let d1 = phase.winding();
    let warm_f = Some(PhaseAnsatz::project(&phase, opts.k));
    let warm_g = if d1 != d2 {
        let z = gallery::zigzag_pair(d1, d2, CircleGrid::new(m)?)?;
        Some(PhaseAnsatz::project(&z.g.phase, opts.k))
    } else {
        None
    };
    let family = PairFamily {
        d1,
        d2,
        objective,
        warm_f,
        warm_g,
        fixed_m: None,
    };
    let (winner, res) = run_family(&family, objective, &opts)?;
    let (_, _, dphi, dpsi) = family.fields(&res.x, opts.k);
    let n = 2 * opts.k + 1;
    let target = report_target(objective, d1, d2);
    Ok(OptimizeReport {
        best: res.value,
        f_ansatz: Some(PhaseAnsatz::from_params(d1, &res.x[..n])),
        g_ansatz: PhaseAnsatz::from_params(d2, &res.x[n..]),
        trace: res.trace,
        restarts: opts.restarts,
        winning_restart: winner,
        target,
        gap: target.map(|t| (res.value - t) / t),
        budget_exhausted: res.capped,
        max_dphase: max_abs(&dphi).max(max_abs(&dpsi)),
        k: opts.k,
        grid_m: m,
    })
}

/// `inf_{g ∈ E_{d2}} |f - g|` for a fixed gallery map `f`, over
/// `g = f e^{iχ}`. Evaluated on `f`'s own grid.
pub fn estimate_point_to_class(
    f: &GalleryMap,
    d2: i64,
    index: SobolevIndex,
    opts: OptimizeOptions,
) -> Result<OptimizeReport> {
    let objective = Objective::from_index(index)?;
    let m = f.map.len();
    if 4 * opts.k > m {
        return Err(Error::IndexOutOfRange {
            name: "K",
            value: opts.k as f64,
            range: "K ≤ M/4",
        });
    }
    let fdot = match f.derivative() {
        Some(d) => d,
        None if f.map.is_smooth() => f.map.spectral_derivative(),
        None => return Err(Error::MissingDerivative),
    };
    let d1 = f.degree();
    let family = PointFamily {
        f: f.map.samples().to_vec(),
        fdot,
        winding: d2 - d1,
        objective,
    };
    let (winner, res) = run_family(&family, objective, &opts)?;
    let (_, dchi) = sample_params(d2 - d1, &res.x, m);
    let target = match objective {
        Objective::W1p(1.0) => Some(formulas::dist_w11(d1, d2)),
        _ => None,
    };
    Ok(OptimizeReport {
        best: res.value,
        f_ansatz: None,
        g_ansatz: PhaseAnsatz::from_params(d2 - d1, &res.x),
        trace: res.trace,
        restarts: opts.restarts,
        winning_restart: winner,
        target,
        gap: target.map(|t| (res.value - t) / t),
        budget_exhausted: res.capped,
        max_dphase: max_abs(&dchi),
        k: opts.k,
        grid_m: m,
    })
}

/// Outcome of [`attainment_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub d1: i64,
    pub d2: i64,
    pub p: f64,
    pub budget: u64,
    pub value: f64,
    pub target: f64,
    pub gap: f64,
    /// `max |φ'|, |ψ'|` of the optimised pair: grows with the budget when
    /// the infimum is not attained.
    pub max_dphase: f64,
    /// Grid `L²` distance from the optimised pair to the explicit minimiser,
    /// up to rotation and a common phase (only for `d2 = -d1`, `1 < p < 2`).
    pub minimizer_distance: Option<f64>,
    pub budget_exhausted: bool,
    pub k: usize,
}

/// Minimises the `W^{1,p}` distance between `E_{d1}` and `E_{d2}` with `d2 = -d1`
/// for `p < 2` and `d2 = d1 - 1` from `p = 2` on. `budget` scales the modes
/// (`K = 8·budget`) and the iteration caps together. At `p = 1` the zigzag
/// pair is returned, as it is exact.
pub fn attainment_probe(d1: i64, p: f64, budget: u64, seed: u64) -> Result<ProbeReport> {
    if p.is_nan() || p < 1.0 || budget == 0 || d1 == 0 {
        return Err(Error::IndexOutOfRange {
            name: "p",
            value: p,
            range: "p ≥ 1, budget ≥ 1, d1 ≠ 0",
        });
    }
    let d2 = if p < 2.0 { -d1 } else { d1 - 1 };
    let target = formulas::w1p_class_distance(p, d1, d2);
    let k = 8 * budget as usize;
    let m = eval_grid(k);
    let grid = CircleGrid::new(m)?;
    if p == 1.0 {
        let z = gallery::zigzag_pair(d1, d2, grid)?;
        let value = z.w1p_distance(1.0)?;
        return Ok(ProbeReport {
            d1,
            d2,
            p,
            budget,
            value,
            target,
            gap: (value - target) / target,
            max_dphase: 0.0,
            minimizer_distance: None,
            budget_exhausted: false,
            k: 0,
        });
    }
    let opts = OptimizeOptions {
        k,
        restarts: 4,
        budget: 250 * budget,
        seed,
    };
    let report = estimate_inf_distance(&grid::power_map(d1, grid), d2, SobolevIndex::w1p(p)?, opts)?;
    let minimizer_distance = if d2 == -d1 && p < 2.0 {
        let pair = gallery::attainment_pair(d1, p, grid)?;
        let f = report.f_ansatz.as_ref().expect("pair search").exponentiate(grid);
        let g = report.g_ansatz.exponentiate(grid);
        Some(pair_l2_distance(&f, &g, &pair.f.map, &pair.g.map))
    } else {
        None
    };
    Ok(ProbeReport {
        d1,
        d2,
        p,
        budget,
        value: report.best,
        target,
        gap: (report.best - target) / target,
        max_dphase: report.max_dphase,
        minimizer_distance,
        budget_exhausted: report.budget_exhausted,
        k,
    })
}

/// `min_{s, a} (‖f - e^{ia} F(· + s)‖² + ‖g - e^{ia} G(· + s)‖²)^{1/2}`
/// over grid rotations `s` and a common phase `a`, via circular
/// cross-correlation.
pub fn pair_l2_distance(f: &CircleMap, g: &CircleMap, ff: &CircleMap, gg: &CircleMap) -> f64 {
    let m = f.len();
    let corr = |a: &CircleMap, b: &CircleMap| -> Vec<C64> {
        // c_s = mean_j a_j conj(b_{j+s})
        let fa = dft(a.samples());
        let fb = dft(b.samples());
        let prod: Vec<C64> = fa.iter().zip(&fb).map(|(x, y)| x.conj() * y).collect();
        idft(&prod).into_iter().map(|z| z.conj()).collect()
    };
    let cf = corr(f, ff);
    let cg = corr(g, gg);
    let best = (0..m).map(|s| (cf[s] + cg[s]).norm()).fold(0.0, f64::max);
    // ∫|f|² = ∫|g|² = 2π for unit maps
    (2.0 * TAU * (2.0 - best)).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_samples_match_direct_sum() {
        let a = PhaseAnsatz {
            winding: 2,
            c0: 0.3,
            modes: vec![(0.5, -0.2), (0.0, 0.7)],
        };
        let m = 64;
        let (phi, dphi) = a.sample(m);
        for j in 0..m {
            let t = TAU * j as f64 / m as f64;
            let p = 2.0 * t + 0.3 + 0.5 * t.cos() - 0.2 * t.sin() + 0.7 * (2.0 * t).sin();
            let dp = 2.0 - 0.5 * t.sin() - 0.2 * t.cos() + 1.4 * (2.0 * t).cos();
            assert!((phi[j] - p).abs() < 1e-12);
            assert!((dphi[j] - dp).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_recovers_band_limited_phase() {
        let a = PhaseAnsatz {
            winding: -1,
            c0: -0.4,
            modes: vec![(0.1, 0.2), (0.3, -0.1), (0.0, 0.0)],
        };
        let grid = CircleGrid::new(128).unwrap();
        let (phi, _) = a.sample(128);
        let phase = grid::Phase::new(grid, phi, -1).unwrap();
        let b = PhaseAnsatz::project(&phase, 3);
        for (x, y) in a.params().iter().zip(b.params()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    fn fd_gradient(family: &dyn Family, x: &[f64], k: usize, eta: f64) -> Vec<f64> {
        let mut y = x.to_vec();
        (0..x.len())
            .map(|i| {
                let h = 1e-6;
                y[i] = x[i] + h;
                let up = family.cost(&y, k, eta);
                y[i] = x[i] - h;
                let down = family.cost(&y, k, eta);
                y[i] = x[i];
                (up - down) / (2.0 * h)
            })
            .collect()
    }

    fn check_gradient(family: &dyn Family, k: usize, eta: f64, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..family.dim(k)).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let mut g = vec![0.0; x.len()];
        family.eval(&x, k, eta, Some(&mut g));
        let fd = fd_gradient(family, &x, k, eta);
        let scale = fd.iter().fold(1.0f64, |a, b| a.max(b.abs()));
        for (i, (a, b)) in g.iter().zip(&fd).enumerate() {
            assert!((a - b).abs() < 1e-5 * scale, "component {i}: {a} vs {b}");
        }
    }

    #[test]
    fn pair_gradients_match_finite_differences() {
        for objective in [Objective::W1p(2.0), Objective::W1p(1.5), Objective::W1p(1.0), Objective::HHalf] {
            let family = PairFamily {
                d1: 1,
                d2: -1,
                objective,
                warm_f: None,
                warm_g: None,
                fixed_m: Some(256),
            };
            check_gradient(&family, 5, 0.1, 1);
        }
    }

    #[test]
    fn point_gradients_match_finite_differences() {
        let grid = CircleGrid::new(256).unwrap();
        let f = CircleMap::from_phase_fn(grid, |t| 2.0 * t + 0.4 * t.sin());
        let fdot = f.spectral_derivative();
        for objective in [Objective::W1p(3.0), Objective::W1p(1.0), Objective::HHalf] {
            let family = PointFamily {
                f: f.samples().to_vec(),
                fdot: fdot.clone(),
                winding: -1,
                objective,
            };
            check_gradient(&family, 6, 0.05, 2);
        }
    }

    #[test]
    fn ladder_ends_at_k() {
        assert_eq!(ladder(32), vec![2, 4, 8, 16, 32]);
        assert_eq!(ladder(1), vec![1]);
        assert_eq!(ladder(12), vec![2, 4, 8, 12]);
    }

    #[test]
    fn l2_distance_ignores_rotation_and_phase() {
        let grid = CircleGrid::new(256).unwrap();
        let f = CircleMap::from_phase_fn(grid, |t| t + 0.3 * t.sin());
        let g = CircleMap::from_phase_fn(grid, |t| -t + 0.1 * (2.0 * t).cos());
        let shift = 17.0 * TAU / 256.0;
        let ff = CircleMap::from_phase_fn(grid, |t| (t - shift) + 0.3 * (t - shift).sin() + 1.1);
        let gg = CircleMap::from_phase_fn(grid, |t| -(t - shift) + 0.1 * (2.0 * (t - shift)).cos() + 1.1);
        assert!(pair_l2_distance(&f, &g, &ff, &gg) < 1e-6);
    }
}

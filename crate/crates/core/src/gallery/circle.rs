use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::profiles::{smoothstep, smoothstep_prime, CapacityProfiles};
use super::{Claim, GalleryMap, GalleryPair, OneSided, PiecewiseLinear};
use crate::error::{Error, Result};
use crate::grid::{lift, CircleGrid, CircleMap, Regularity, C64};
use crate::seminorms::{graded_line_nodes, AnalyticDerivative, Kink, LineProfile};

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Pair of degrees `(d1, d2)` at `W^{1,1}` distance exactly `4|d1 - d2|`.
///
/// For `d = d1 - d2 > 0` and `L = d + 1`, `f` winds with slope `L` over
/// `[0, 2dπ/L)` and slope `L·d2` afterwards. On each `I_k = [2kπ/L, (2k+1)π/L]`
/// `g = f`; on each `J_k` the phase of `g` runs backwards so that `g` is the
/// reflection of `f`. Both coincide again after `2dπ/L`.
pub fn zigzag_pair(d1: i64, d2: i64, grid: CircleGrid) -> Result<GalleryPair> {
    if d1 == d2 {
        return Err(Error::Degenerate(format!("zigzag needs d1 ≠ d2, got {d1}")));
    }
    if d1 < d2 {
        let mut pair = zigzag_pair(d2, d1, grid)?.swapped();
        pair.params = vec![("d1", d1 as f64), ("d2", d2 as f64)];
        return Ok(pair);
    }
    let d = d1 - d2;
    let l = (d + 1) as f64;
    let mut knots: Vec<f64> = (0..=2 * d).map(|k| k as f64 * PI / l).collect();
    knots.push(TAU);
    let mut phi: Vec<f64> = (0..=2 * d).map(|k| k as f64 * PI).collect();
    phi.push(TAU * d1 as f64);
    let mut psi: Vec<f64> = (0..=2 * d).map(|k| if k % 2 == 0 { 0.0 } else { PI }).collect();
    psi.push(TAU * d2 as f64);
    let f = GalleryMap::from_piecewise(&PiecewiseLinear::snapped(grid, &knots, &phi)?)?;
    let g = GalleryMap::from_piecewise(&PiecewiseLinear::snapped(grid, &knots, &psi)?)?;
    Ok(GalleryPair::from_maps(f, g)
        .with_params(vec![("d1", d1 as f64), ("d2", d2 as f64)])
        .with_claim(Claim {
            label: "4|d1-d2|",
            p: 1.0,
            value: 4.0 * d as f64,
        }))
}

/// Smooth map of degree `d1`, constant (= 1) on `[0, flat]` and near 2π.
pub fn locally_constant_map(d1: i64, flat: f64, grid: CircleGrid) -> Result<GalleryMap> {
    if !(flat > 0.0 && flat < TAU - 0.5) {
        return Err(Error::IndexOutOfRange {
            name: "flat",
            value: flat,
            range: "(0, 2π - 0.5)",
        });
    }
    let a = flat;
    let b = TAU - 0.25;
    let amp = TAU * d1 as f64;
    GalleryMap::smooth(
        grid,
        move |t| amp * smoothstep((t - a) / (b - a)),
        move |t| amp * smoothstep_prime((t - a) / (b - a)) / (b - a),
        d1,
    )
}

/// Unwinds `d` turns of `f` on `[0, λ]`: `ψ = φ - 2dπθ/λ` there and
/// `ψ = φ - 2dπ` afterwards, so `g ∈ E_{deg f - d}`.
///
/// `f` must be constant on `[0, λ]`; then `∫|ḟ - ġ| = 2π|d|` exactly. `λ`
/// is rounded to the nearest grid point (the value does not depend on it).
pub fn deflate_phase(f: &CircleMap, d: i64, lambda: f64) -> Result<GalleryPair> {
    deflate(f, d, lambda, true)
}

/// [`deflate_phase`] without the local-constancy check. `f` must be
/// smooth; the distance identity no longer holds.
pub fn deflate_phase_unchecked(f: &CircleMap, d: i64, lambda: f64) -> Result<GalleryPair> {
    deflate(f, d, lambda, false)
}

fn deflate(f: &CircleMap, d: i64, lambda: f64, check: bool) -> Result<GalleryPair> {
    if !(lambda > 0.0 && lambda < TAU) {
        return Err(Error::IndexOutOfRange {
            name: "lambda",
            value: lambda,
            range: "(0, 2π)",
        });
    }
    let grid = f.grid();
    let m = grid.len();
    let k = ((lambda / grid.step()).round() as usize).clamp(1, m - 1);
    let lam = k as f64 * grid.step();
    let s = f.samples();
    if check {
        let variation = s[..=k].iter().map(|z| (z - s[0]).norm()).fold(0.0, f64::max);
        if variation > 1e-9 {
            return Err(Error::NotLocallyConstant {
                lambda: lam,
                variation,
            });
        }
    }
    let fd: Vec<C64> = if check {
        vec![C64::new(0.0, 0.0); m]
    } else {
        if !f.is_smooth() {
            return Err(Error::MissingDerivative);
        }
        f.spectral_derivative()
    };
    let phase = lift(f)?;
    let chi_pl = PiecewiseLinear::snapped(grid, &[0.0, lam, TAU], &[0.0, -TAU * d as f64, -TAU * d as f64])?;
    let chi = chi_pl.samples();
    let slope = -TAU * d as f64 / lam;
    let psi: Vec<f64> = phase.values().iter().zip(&chi).map(|(a, b)| a + b).collect();
    let g = GalleryMap::from_phase(
        grid,
        psi,
        phase.winding() - d,
        None,
        Regularity::PiecewiseLinearPhase,
    )?;
    let i = C64::new(0.0, 1.0);
    let gs = g.map.samples();
    let mut diff = vec![C64::new(0.0, 0.0); m];
    for j in 1..k {
        diff[j] = fd[j] * (1.0 - C64::cis(chi[j])) - i * slope * gs[j];
    }
    let start = -i * slope * gs[0];
    let end = -i * slope * gs[k];
    diff[0] = 0.5 * start;
    diff[k] = 0.5 * end;
    let kinks = vec![
        Kink {
            index: 0,
            left: C64::new(0.0, 0.0),
            right: start,
        },
        Kink {
            index: k,
            left: end,
            right: C64::new(0.0, 0.0),
        },
    ];
    let fmap = GalleryMap {
        map: f.clone(),
        phase,
        dphase: None,
    };
    let mut pair = GalleryPair {
        f: fmap,
        g,
        derivative: Some(AnalyticDerivative::from_difference(diff).with_kinks(kinks)),
        params: vec![("d", d as f64), ("lambda", lam)],
        claim: None,
    };
    if check {
        pair.claim = Some(Claim {
            label: "2π|d|",
            p: 1.0,
            value: TAU * d.abs() as f64,
        });
    }
    Ok(pair)
}

/// Phase with slopes `d1·n` and `-d1·(n-2)` alternating on `n²` pairs of
/// intervals of length `π/n²`; degree `d1`, phase variation `2(n-1)πd1`.
pub fn oscillator(d1: i64, n: i64, grid: CircleGrid) -> Result<GalleryMap> {
    GalleryMap::from_piecewise(&oscillator_phase(d1, n, grid)?)
}

/// The piecewise-linear phase behind [`oscillator`].
pub fn oscillator_phase(d1: i64, n: i64, grid: CircleGrid) -> Result<PiecewiseLinear> {
    if n < 3 {
        return Err(Error::IndexOutOfRange {
            name: "n",
            value: n as f64,
            range: "[3, ∞)",
        });
    }
    let pairs = n * n;
    let width = PI / pairs as f64;
    let rise = PI * d1 as f64 / n as f64;
    let per_pair = TAU * d1 as f64 / pairs as f64;
    let mut knots = Vec::with_capacity(2 * pairs as usize + 1);
    let mut values = Vec::with_capacity(2 * pairs as usize + 1);
    for j in 0..pairs {
        knots.push(2.0 * j as f64 * width);
        values.push(j as f64 * per_pair);
        knots.push((2 * j + 1) as f64 * width);
        values.push(j as f64 * per_pair + rise);
    }
    knots.push(TAU);
    values.push(TAU * d1 as f64);
    PiecewiseLinear::snapped(grid, &knots, &values)
}

/// Phase of `T`: `θ ↦ π sin(θ/2)` on `(-π, π]`.
pub fn t_phase(theta: f64) -> f64 {
    PI * (0.5 * wrap_angle(theta)).sin()
}

/// Phase of `S = T^{-1}`: `θ ↦ 2 arcsin(θ/π)` on `(-π, π]`.
pub fn s_phase(theta: f64) -> f64 {
    2.0 * (wrap_angle(theta) / PI).clamp(-1.0, 1.0).asin()
}

pub fn t_point(z: C64) -> C64 {
    C64::cis(t_phase(z.arg()))
}

pub fn s_point(z: C64) -> C64 {
    C64::cis(s_phase(z.arg()))
}

/// `T ∘ f`.
pub fn apply_t(f: &CircleMap) -> CircleMap {
    let samples = f.samples().iter().map(|&z| t_point(z)).collect();
    CircleMap::new(samples)
        .expect("unit samples on a valid grid")
        .with_regularity(f.regularity())
}

/// `S ∘ f`; not smooth where `f = -1`.
pub fn apply_s(f: &CircleMap) -> CircleMap {
    let samples = f.samples().iter().map(|&z| s_point(z)).collect();
    CircleMap::new(samples)
        .expect("unit samples on a valid grid")
        .with_regularity(Regularity::PiecewiseLinearPhase)
}

/// Minimising pair for `d2 = -d1` and `1 < p < 2`: with `d = 2d1` and
/// `w = S(e^{idθ})`, `f` is the half-phase square root of `w` and
/// `g = f̄`. Then `f - g` is purely imaginary and `|ḟ - ġ| = 2|d|/π`.
pub fn attainment_pair(d1: i64, p: f64, grid: CircleGrid) -> Result<GalleryPair> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::IndexOutOfRange {
            name: "p",
            value: p,
            range: "(1, 2)",
        });
    }
    if d1 == 0 {
        return Err(Error::Degenerate("attainment pair needs d1 ≠ 0".into()));
    }
    let d = 2 * d1;
    let mut half = Vec::with_capacity(grid.len());
    let mut diff = Vec::with_capacity(grid.len());
    let rate = 2.0 * d as f64 / PI;
    for t in grid.thetas() {
        let u = d as f64 * t;
        let k = (u / TAU).round();
        let local = u - TAU * k;
        half.push((local / PI).clamp(-1.0, 1.0).asin() + PI * k);
        let sign = if (k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        diff.push(C64::new(0.0, sign * rate));
    }
    let neg: Vec<f64> = half.iter().map(|v| -v).collect();
    let f = GalleryMap::from_phase(grid, half, d1, None, Regularity::PiecewiseLinearPhase)?;
    let g = GalleryMap::from_phase(grid, neg, -d1, None, Regularity::PiecewiseLinearPhase)?;
    let target = crate::formulas::w1p_class_distance(p, d1, -d1);
    Ok(GalleryPair {
        f,
        g,
        derivative: Some(AnalyticDerivative::from_difference(diff)),
        params: vec![("d1", d1 as f64), ("p", p)],
        claim: Some(Claim {
            label: "2^{1/p+1}π^{1/p-1}|d1-d2|",
            p,
            value: target,
        }),
    })
}

/// The three members of the equality chain for an attainment pair:
/// `∫|∂(f-g)|^p`, `∫|∂|f-g||^p` and `(2/π)^p ∫|∂w̃|^p` with `w̃ = e^{idθ}`.
pub fn attainment_chain(pair: &GalleryPair, p: f64) -> Result<[f64; 3]> {
    let d = pair.derivative.as_ref().ok_or(Error::MissingDerivative)?;
    let lhs = crate::seminorms::lp_norm(d.difference(), p)?.powf(p);
    let grid = pair.f.map.grid();
    let m = grid.len();
    let w: Vec<f64> = pair
        .f
        .map
        .difference(&pair.g.map)?
        .iter()
        .map(|z| z.norm())
        .collect();
    // |f-g| is a triangle wave; its one-sided slopes are exact away from
    // the turning points, so differentiate forward and average.
    let step = grid.step();
    let dw: Vec<C64> = (0..m)
        .map(|j| {
            let fwd = (w[(j + 1) % m] - w[j]) / step;
            let bwd = (w[j] - w[(j + m - 1) % m]) / step;
            C64::new(0.5 * (fwd.abs() + bwd.abs()), 0.0)
        })
        .collect();
    let middle = crate::seminorms::lp_norm(&dw, p)?.powf(p);
    let d_total = 2.0 * pair.f.degree() as f64;
    let rhs = (2.0 / PI).powf(p) * TAU * d_total.abs().powf(p);
    Ok([lhs, middle, rhs])
}

/// `h_δ(z) = ((z - (1-δ)) / ((1-δ)z - 1))^{-d}`, a map of degree `-d`.
///
/// Evaluated through the argument of the Möbius factor, with the
/// cancelling terms near `θ = 0` rewritten in terms of `sin²(θ/2)`.
pub fn blaschke_pow(d: i64, delta: f64, grid: CircleGrid) -> Result<CircleMap> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::IndexOutOfRange {
            name: "delta",
            value: delta,
            range: "(0, 1)",
        });
    }
    let a = 1.0 - delta;
    Ok(CircleMap::from_phase_fn(grid, |t| {
        let s2 = 2.0 * (0.5 * t).sin().powi(2);
        let num = (t.sin()).atan2(delta - s2);
        let den = (a * t.sin()).atan2(-(s2 + delta * t.cos()));
        -(d as f64) * (num - den)
    }))
}

fn signed_angle(theta: f64, center: f64) -> f64 {
    wrap_angle(theta - center)
}

/// Pair `f = h^{d1-d2} g`, `g ∈ E_{d2}`, with `h ∈ E_1` equal to 1 on the
/// left half-circle and `g` equal to 1 on the right half-circle; `f - g` is
/// supported on the right half-circle.
pub fn product_shift(d1: i64, d2: i64, grid: CircleGrid) -> Result<GalleryPair> {
    let d = (d1 - d2) as f64;
    let h = move |t: f64| TAU * smoothstep((signed_angle(t, 0.0) + FRAC_PI_2) / PI);
    let dh = move |t: f64| TAU * smoothstep_prime((signed_angle(t, 0.0) + FRAC_PI_2) / PI) / PI;
    let amp = TAU * d2 as f64;
    let gp = move |t: f64| amp * smoothstep((t - FRAC_PI_2) / PI);
    let dgp = move |t: f64| amp * smoothstep_prime((t - FRAC_PI_2) / PI) / PI;
    let g = GalleryMap::smooth(grid, gp, dgp, d2)?;
    // h's phase jumps by 2π at θ = π; shift it to a continuous lift.
    let hc = move |t: f64| if t > PI { h(t) } else { h(t) - TAU };
    let f = GalleryMap::smooth(grid, move |t| d * hc(t) + gp(t), move |t| d * dh(t) + dgp(t), d1)?;
    Ok(GalleryPair::from_maps(f, g).with_params(vec![("d1", d1 as f64), ("d2", d2 as f64)]))
}

/// Pair for `0 < d1 < d2`: `f` turns `d1` times on `[0, π]` and rests, `g`
/// follows `f` there and then winds linearly the remaining `d2 - d1` turns.
/// `|f - g|_{W^{1,1}} = 2π(d2 - d1)`.
pub fn plateau_pair(d1: i64, d2: i64, grid: CircleGrid) -> Result<GalleryPair> {
    if !(0 < d1 && d1 < d2) {
        return Err(Error::Degenerate(format!(
            "plateau pair needs 0 < d1 < d2, got ({d1}, {d2})"
        )));
    }
    let m = grid.len();
    let amp = TAU * d1 as f64;
    let rate = 2.0 * (d2 - d1) as f64;
    let phi = |t: f64| amp * smoothstep(t / PI);
    let dphi = |t: f64| amp * smoothstep_prime(t / PI) / PI;
    let f = GalleryMap::smooth(grid, phi, dphi, d1)?;
    let mut psi = Vec::with_capacity(m);
    let mut left = Vec::with_capacity(m);
    let mut right = Vec::with_capacity(m);
    for (j, t) in grid.thetas().enumerate() {
        if j < m / 2 {
            psi.push(phi(t));
            left.push(dphi(t));
            right.push(dphi(t));
        } else {
            psi.push(amp + rate * (t - PI));
            left.push(rate);
            right.push(rate);
        }
    }
    left[m / 2] = dphi(PI);
    left[0] = rate;
    let g = GalleryMap::from_phase(
        grid,
        psi,
        d2,
        Some(OneSided { left, right }),
        Regularity::PiecewiseLinearPhase,
    )?;
    Ok(GalleryPair::from_maps(f, g)
        .with_params(vec![("d1", d1 as f64), ("d2", d2 as f64)])
        .with_claim(Claim {
            label: "2π(d2-d1)",
            p: 1.0,
            value: TAU * (d2 - d1) as f64,
        }))
}

/// Sign test for `d1·(f ∧ ḟ) ≥ 0` on the grid.
#[derive(Clone, Copy, Debug)]
pub struct WedgeReport {
    pub min: f64,
    pub max: f64,
    pub holds: bool,
}

/// `f ∧ ḟ = φ'` extremes and whether `d1·φ' ≥ 0` everywhere.
pub fn wedge_report(dphase: &[f64], d1: i64) -> WedgeReport {
    let min = dphase.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = dphase.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9;
    let holds = dphase.iter().all(|&w| d1 as f64 * w >= -tol);
    WedgeReport { min, max, holds }
}

/// [`wedge_report`] for a smooth map, using `Im(f̄ ḟ)`.
pub fn wedge_report_of(f: &CircleMap, d1: i64) -> WedgeReport {
    let df = f.spectral_derivative();
    let w: Vec<f64> = f
        .samples()
        .iter()
        .zip(&df)
        .map(|(z, dz)| (z.conj() * dz).im)
        .collect();
    wedge_report(&w, d1)
}

/// `d` degree-±1 bumps of radius `1/n` at equally spaced centres, each a
/// full turn with phase `2π·smoothstep`; constant 1 elsewhere.
pub fn multi_bump(d: i64, n: i64, grid: CircleGrid) -> Result<GalleryMap> {
    if d == 0 {
        return Err(Error::Degenerate("multi_bump needs d ≠ 0".into()));
    }
    let count = d.unsigned_abs() as usize;
    let radius = 1.0 / n as f64;
    let spacing = TAU / count as f64;
    if n <= 0 || 2.0 * radius >= spacing {
        return Err(Error::Overcrowded { count, radius });
    }
    let sign = d.signum() as f64;
    let centers: Vec<f64> = (0..count).map(|j| (j as f64 + 0.5) * spacing).collect();
    let c2 = centers.clone();
    GalleryMap::smooth(
        grid,
        move |t| {
            sign * TAU
                * centers
                    .iter()
                    .map(|c| smoothstep((t - c + radius) / (2.0 * radius)))
                    .sum::<f64>()
        },
        move |t| {
            sign * TAU
                * c2.iter()
                    .map(|c| smoothstep_prime((t - c + radius) / (2.0 * radius)) / (2.0 * radius))
                    .sum::<f64>()
        },
        d,
    )
}

/// Layout of one ball in [`dense_onto`], in local coordinate `s ∈ [0, 1]`:
/// half a turn on `[0, 0.2]`, rest at the antipode on `[0.2, 0.4]`, the
/// second half turn on `[0.4, 0.6]`; degree-0 balls unwind on `[0.6, 1]`.
fn onto_profile(s: f64, full_turn: bool) -> (f64, f64) {
    let up1 = 0.5 * smoothstep(s / 0.2);
    let dup1 = 0.5 * smoothstep_prime(s / 0.2) / 0.2;
    let up2 = 0.5 * smoothstep((s - 0.4) / 0.2);
    let dup2 = 0.5 * smoothstep_prime((s - 0.4) / 0.2) / 0.2;
    if full_turn {
        (up1 + up2, dup1 + dup2)
    } else {
        let down = smoothstep((s - 0.6) / 0.4);
        let ddown = smoothstep_prime((s - 0.6) / 0.4) / 0.4;
        (up1 + up2 - down, dup1 + dup2 - ddown)
    }
}

/// Map of degree `d1` that is onto on every arc of radius `1/n`: the
/// circle is packed with `⌊3πn⌋` arcs of radius `1/(3n)`; the first `|d1|`
/// carry a full turn, the others go once around and back.
pub fn dense_onto(d1: i64, n: i64, grid: CircleGrid) -> Result<GalleryMap> {
    if n <= 0 {
        return Err(Error::IndexOutOfRange {
            name: "n",
            value: n as f64,
            range: "[1, ∞)",
        });
    }
    let radius = 1.0 / (3.0 * n as f64);
    let count = (TAU / (2.0 * radius)).floor() as usize;
    let turns = d1.unsigned_abs() as usize;
    if count < turns.max(1) {
        return Err(Error::Overcrowded { count: turns, radius });
    }
    let spacing = TAU / count as f64;
    let sign = if d1 < 0 { -1.0 } else { 1.0 };
    let eval = move |t: f64| -> (f64, f64) {
        let j = ((t / spacing).floor() as usize).min(count - 1);
        let mut base = sign * TAU * turns.min(j) as f64;
        let c = (j as f64 + 0.5) * spacing;
        let s = (t - c + radius) / (2.0 * radius);
        if s <= 0.0 {
            return (base, 0.0);
        }
        let (v, dv) = onto_profile(s.min(1.0), j < turns);
        let sgn = if j < turns { sign } else { 1.0 };
        base += sgn * TAU * v;
        (base, sgn * TAU * dv / (2.0 * radius))
    };
    GalleryMap::smooth(grid, move |t| eval(t).0, move |t| eval(t).1, d1)
}

/// Whether every arc of radius `1/n` centred at a grid point contains a
/// sample within `tol` of `-1`.
pub fn hits_antipode_everywhere(f: &CircleMap, n: i64, tol: f64) -> bool {
    let m = f.len();
    let step = f.grid().step();
    let half = (((1.0 / n as f64) / step).floor() as usize).min(m / 2 - 1);
    let near: Vec<bool> = f.samples().iter().map(|z| (z + 1.0).norm() < tol).collect();
    // prefix counts over three copies give each window in O(1)
    let mut prefix = vec![0usize; 3 * m + 1];
    for j in 0..3 * m {
        prefix[j + 1] = prefix[j] + near[j % m] as usize;
    }
    (0..m).all(|c| prefix[c + m + half + 1] > prefix[c + m - half])
}

/// Radius of the arc carrying the one-dimensional bump pair.
pub const BUMP_RADIUS: f64 = 0.5;

/// One-dimensional bump pair: with `x` the signed arc distance to `π`,
/// `f = e^{i(-π/2 + sign(x) F_ε(|x|))}` and `g` likewise with `G_ε`.
/// Degrees 1 and 0; `f - g = i(cos G_ε - cos F_ε)`.
pub fn bump_pair(eps: f64, grid: CircleGrid) -> Result<GalleryPair> {
    let c = CapacityProfiles::new(eps)?;
    let phase = |profile: &dyn Fn(f64) -> f64, t: f64| {
        let x = signed_angle(t, PI);
        if x.abs() < BUMP_RADIUS {
            -FRAC_PI_2 + x.signum() * profile(x.abs())
        } else {
            -FRAC_PI_2 + x.signum() * profile(BUMP_RADIUS)
        }
    };
    let fmap = CircleMap::from_phase_fn(grid, |t| phase(&|r| c.f(r), t));
    let gmap = CircleMap::from_phase_fn(grid, |t| phase(&|r| c.g(r), t));
    let f = GalleryMap {
        phase: lift(&fmap)?,
        map: fmap,
        dphase: None,
    };
    let g = GalleryMap {
        phase: lift(&gmap)?,
        map: gmap,
        dphase: None,
    };
    Ok(GalleryPair {
        f,
        g,
        derivative: None,
        params: vec![("eps", eps)],
        claim: None,
    })
}

/// Line profiles of the one-dimensional bump pair: `f_ε`, `g_ε` and
/// `f_ε - g_ε` as functions of the signed distance `x` to the centre, on a
/// grid graded towards `x = 0`. Values are shifted so that they vanish
/// outside the ball.
pub fn bump_pair_line_profiles(
    eps: f64,
    per_decade: usize,
) -> Result<(LineProfile<2>, LineProfile<2>, LineProfile<2>)> {
    let c = CapacityProfiles::new(eps)?;
    let nodes = graded_line_nodes(eps / 8.0, BUMP_RADIUS, per_decade);
    let point = |profile: f64, x: f64| {
        let ph = -FRAC_PI_2 + x.signum() * profile;
        [ph.cos(), ph.sin()]
    };
    let outer_f = point(PI, 1.0);
    let outer_g = point(0.0, 1.0);
    let f = LineProfile::sample(nodes.clone(), |x| {
        let v = point(c.f(x.abs()), x);
        [v[0] - outer_f[0], v[1] - outer_f[1]]
    })?;
    let g = LineProfile::sample(nodes.clone(), |x| {
        let v = point(c.g(x.abs()), x);
        [v[0] - outer_g[0], v[1] - outer_g[1]]
    })?;
    let diff = LineProfile::sample(nodes, |x| {
        let a = point(c.f(x.abs()), x);
        let b = point(c.g(x.abs()), x);
        [a[0] - b[0], a[1] - b[1] - (outer_f[1] - outer_g[1])]
    })?;
    Ok((f, g, diff))
}

/// `H_ε` as a line profile on a grid graded towards 0.
pub fn capacity_line_profile(eps: f64, per_decade: usize) -> Result<LineProfile<1>> {
    let c = CapacityProfiles::new(eps)?;
    let outer = (2.0 * c.support()).min(0.99);
    LineProfile::sample(graded_line_nodes(eps / 2.0, outer, per_decade), |x| [c.h(x.abs())])
}

//! Semi-norms and distances on S¹: `W^{1,p}`, Gagliardo `W^{s,p}`, the
//! Fourier form of `H^{1/2}` and `L^∞`, plus a graded-grid Gagliardo
//! quadrature for compactly supported profiles on the real line.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{frequency, CircleMap, FourierSeries, SobolevIndex, C64};

/// Which quadrature produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    W1pQuadrature,
    GagliardoQuadrature,
    FourierHHalf,
    SupNorm,
}

/// A semi-norm value together with how it was computed.
#[derive(Clone, Copy, Debug)]
pub struct SeminormResult {
    pub value: f64,
    pub index: Option<SobolevIndex>,
    pub grid: usize,
    pub method: Method,
}

/// One-sided values of `ḟ - ġ` at a grid point where a phase has a kink.
#[derive(Clone, Copy, Debug)]
pub struct Kink {
    pub index: usize,
    pub left: C64,
    pub right: C64,
}

/// Derivatives supplied by a construction instead of spectral ones.
///
/// Pairs whose individual derivatives blow up (while `ḟ - ġ` stays
/// bounded) only carry the difference. At kinks the trapezoidal rule uses
/// the mean of the one-sided integrands.
#[derive(Clone, Debug)]
pub struct AnalyticDerivative {
    f: Option<Vec<C64>>,
    g: Option<Vec<C64>>,
    difference: Vec<C64>,
    kinks: Vec<Kink>,
}

impl AnalyticDerivative {
    pub fn from_maps(f: Vec<C64>, g: Vec<C64>) -> Self {
        let difference = f.iter().zip(&g).map(|(a, b)| a - b).collect();
        Self {
            f: Some(f),
            g: Some(g),
            difference,
            kinks: Vec::new(),
        }
    }

    pub fn from_difference(difference: Vec<C64>) -> Self {
        Self {
            f: None,
            g: None,
            difference,
            kinks: Vec::new(),
        }
    }

    pub fn with_kinks(mut self, kinks: Vec<Kink>) -> Self {
        self.kinks = kinks;
        self
    }

    pub fn difference(&self) -> &[C64] {
        &self.difference
    }

    pub fn f(&self) -> Option<&[C64]> {
        self.f.as_deref()
    }

    pub fn g(&self) -> Option<&[C64]> {
        self.g.as_deref()
    }

    pub fn kinks(&self) -> &[Kink] {
        &self.kinks
    }

    pub fn len(&self) -> usize {
        self.difference.len()
    }

    pub fn is_empty(&self) -> bool {
        self.difference.is_empty()
    }
}

/// Neumaier-compensated sum, evaluated in iteration order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            name: "p",
            value: p,
            range: "[1, ∞)",
        })
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            name: "s",
            value: s,
            range: "(0, 1)",
        })
    }
}

/// `(∫ |h|^p dθ)^{1/p}` for a grid function on S¹ (trapezoidal rule).
pub fn lp_norm(h: &[C64], p: f64) -> Result<f64> {
    lp_norm_with_kinks(h, &[], p)
}

/// [`lp_norm`] where the listed samples are replaced by the mean of the
/// one-sided integrands.
pub fn lp_norm_with_kinks(h: &[C64], kinks: &[Kink], p: f64) -> Result<f64> {
    check_p(p)?;
    let step = TAU / h.len() as f64;
    let pow = |z: C64| {
        if p == 2.0 {
            z.norm_sqr()
        } else {
            z.norm().powf(p)
        }
    };
    let mut values: Vec<f64> = h.iter().map(|&z| pow(z)).collect();
    for k in kinks {
        values[k.index] = 0.5 * (pow(k.left) + pow(k.right));
    }
    Ok((compensated_sum(values) * step).powf(1.0 / p))
}

/// `|f - g|_{W^{1,p}} = (∫ |ḟ - ġ|^p)^{1/p}`.
///
/// Without `derivs` both maps must be smooth and spectral derivatives are
/// used; piecewise-linear-phase maps need their analytic derivatives.
pub fn w1p_distance(
    f: &CircleMap,
    g: &CircleMap,
    p: f64,
    derivs: Option<&AnalyticDerivative>,
) -> Result<f64> {
    check_p(p)?;
    let diff = f.difference(g)?;
    match derivs {
        Some(a) => {
            if a.len() != f.len() {
                return Err(Error::GridMismatch {
                    left: f.len(),
                    right: a.len(),
                });
            }
            lp_norm_with_kinks(a.difference(), a.kinks(), p)
        }
        None => {
            if !f.is_smooth() || !g.is_smooth() {
                return Err(Error::MissingDerivative);
            }
            lp_norm(&crate::grid::spectral_derivative(&diff), p)
        }
    }
}

/// `(∫ |ḟ|^p)^{1/p}` of a single smooth map.
pub fn w1p_seminorm(f: &CircleMap, p: f64, derivative: Option<&[C64]>) -> Result<f64> {
    match derivative {
        Some(d) => lp_norm(d, p),
        None => {
            if !f.is_smooth() {
                return Err(Error::MissingDerivative);
            }
            lp_norm(&f.spectral_derivative(), p)
        }
    }
}

/// Distance used inside the Gagliardo kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Periodic arc length `min(|θ-θ'|, 2π-|θ-θ'|)`.
    #[default]
    Arc,
    /// Euclidean distance `|e^{iθ} - e^{iθ'}|` between the points of S¹.
    Chord,
}

/// Gagliardo `W^{s,p}` semi-norm of a periodic grid function with the
/// arc-length kernel.
pub fn gagliardo_seminorm(h: &[C64], s: f64, p: f64) -> Result<f64> {
    gagliardo_seminorm_with(h, s, p, Kernel::Arc)
}

/// Real-valued convenience wrapper of [`gagliardo_seminorm`].
pub fn gagliardo_seminorm_real(h: &[f64], s: f64, p: f64) -> Result<f64> {
    let c: Vec<C64> = h.iter().map(|&x| C64::new(x, 0.0)).collect();
    gagliardo_seminorm(&c, s, p)
}

/// Double sum `Σ_{i≠j} |h_i - h_j|^p / dist(θ_i,θ_j)^{1+sp} · Δθ²`, then
/// the p-th root. Neighbouring pairs enter with the plain difference
/// quotient `|h_{i+1} - h_i|^p / Δθ^{sp-1}`; the diagonal is dropped.
///
/// Offsets are summed in parallel, each with a sequential compensated sum,
/// and combined in offset order, so the result does not depend on the
/// thread count.
pub fn gagliardo_seminorm_with(h: &[C64], s: f64, p: f64, kernel: Kernel) -> Result<f64> {
    check_s(s)?;
    check_p(p)?;
    let m = h.len();
    if m < 2 {
        return Ok(0.0);
    }
    let step = TAU / m as f64;
    let expo = 1.0 + s * p;
    let half = m / 2;
    let terms: Vec<f64> = (1..=half)
        .into_par_iter()
        .map(|k| {
            let dist = match kernel {
                Kernel::Arc => step * k.min(m - k) as f64,
                Kernel::Chord => 2.0 * (PI * k as f64 / m as f64).sin(),
            };
            let weight = step * step / dist.powf(expo);
            let inner = if p == 2.0 {
                compensated_sum((0..m).map(|i| (h[i] - h[(i + k) % m]).norm_sqr()))
            } else {
                let q = 0.5 * p;
                compensated_sum((0..m).map(|i| (h[i] - h[(i + k) % m]).norm_sqr().powf(q)))
            };
            // offsets k and m-k give the same ordered-pair sum
            let multiplicity = if 2 * k == m { 1.0 } else { 2.0 };
            multiplicity * weight * inner
        })
        .collect();
    Ok(compensated_sum(terms).powf(1.0 / p))
}

/// `4π² Σ |n| |a_n|²` from the discrete Fourier transform.
pub fn h_half_seminorm_sq(h: &[C64]) -> f64 {
    let series = FourierSeries::of(h);
    let m = series.len();
    let sum = compensated_sum(
        series
            .raw()
            .iter()
            .enumerate()
            .map(|(k, a)| frequency(k, m).unsigned_abs() as f64 * a.norm_sqr()),
    );
    4.0 * PI * PI * sum
}

/// `h_half_seminorm_sq(f - g)`.
pub fn h_half_distance_sq(f: &CircleMap, g: &CircleMap) -> Result<f64> {
    Ok(h_half_seminorm_sq(&f.difference(g)?))
}

/// `max_j |f_j - g_j|`.
pub fn sup_distance(f: &CircleMap, g: &CircleMap) -> Result<f64> {
    Ok(f.difference(g)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

/// Largest deviation between `|ḟ - ġ|²` computed directly and through
/// `cos²((φ-ψ)/2)(φ'-ψ')² + sin²((φ-ψ)/2)(φ'+ψ')²`.
pub fn pointwise_identity_residual(phi: &[f64], dphi: &[f64], psi: &[f64], dpsi: &[f64]) -> f64 {
    let n = phi.len().min(dphi.len()).min(psi.len()).min(dpsi.len());
    (0..n)
        .map(|j| {
            let df = C64::new(0.0, dphi[j]) * C64::cis(phi[j]);
            let dg = C64::new(0.0, dpsi[j]) * C64::cis(psi[j]);
            let lhs = (df - dg).norm_sqr();
            let half = 0.5 * (phi[j] - psi[j]);
            let rhs = half.cos().powi(2) * (dphi[j] - dpsi[j]).powi(2)
                + half.sin().powi(2) * (dphi[j] + dpsi[j]).powi(2);
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest positive part of `|ẇ| - |ḟ - ġ|` where `w = |f - g|` is
/// differentiated by central differences and `d` holds `ḟ - ġ`.
pub fn modulus_derivative_excess(f: &CircleMap, g: &CircleMap, d: &[C64]) -> Result<f64> {
    let w: Vec<f64> = f.difference(g)?.iter().map(|z| z.norm()).collect();
    let m = w.len();
    let step = TAU / m as f64;
    Ok((0..m)
        .map(|j| {
            let dw = (w[(j + 1) % m] - w[(j + m - 1) % m]) / (2.0 * step);
            // average |d| over the stencil so kinks of w do not count
            let bound = d[j].norm().max(0.5 * (d[(j + 1) % m].norm() + d[(j + m - 1) % m].norm()));
            (dw.abs() - bound).max(0.0)
        })
        .fold(0.0, f64::max))
}

/// `|Δdeg| / (|f-g|^{p/(N+1)} (|f|^{Np/(N+1)} + |g|^{Np/(N+1)}))`.
pub fn degree_stability_ratio(
    degree_gap: f64,
    diff_norm: f64,
    f_norm: f64,
    g_norm: f64,
    p: f64,
    dim: u32,
) -> f64 {
    let n = dim as f64;
    let a = p / (n + 1.0);
    let b = n * p / (n + 1.0);
    degree_gap.abs() / (diff_norm.powf(a) * (f_norm.powf(b) + g_norm.powf(b)))
}

const GAUSS_X: [f64; 6] = [
    -0.932_469_514_203_152,
    -0.661_209_386_466_264_5,
    -0.238_619_186_083_196_9,
    0.238_619_186_083_196_9,
    0.661_209_386_466_264_5,
    0.932_469_514_203_152,
];
const GAUSS_W: [f64; 6] = [
    0.171_324_492_379_170_3,
    0.360_761_573_048_138_6,
    0.467_913_934_572_691_1,
    0.467_913_934_572_691_1,
    0.360_761_573_048_138_6,
    0.171_324_492_379_170_3,
];

/// Levels of geometric refinement towards a shared vertex of two cells.
const CORNER_DEPTH: usize = 10;

/// Piecewise-linear vector-valued profile on the real line, constant
/// (equal to its end values) outside `[x_0, x_n]`.
#[derive(Clone, Debug)]
pub struct LineProfile<const D: usize> {
    nodes: Vec<f64>,
    values: Vec<[f64; D]>,
}

impl<const D: usize> LineProfile<D> {
    pub fn new(nodes: Vec<f64>, values: Vec<[f64; D]>) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() < 2 {
            return Err(Error::InvalidGrid(
                "line profile needs matching nodes and values".into(),
            ));
        }
        if nodes.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::InvalidGrid("line nodes must increase".into()));
        }
        Ok(Self { nodes, values })
    }

    /// Samples `u` at the given nodes.
    pub fn sample(nodes: Vec<f64>, u: impl Fn(f64) -> [f64; D]) -> Result<Self> {
        let values = nodes.iter().map(|&x| u(x)).collect();
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[[f64; D]] {
        &self.values
    }
}

fn dist_pow<const D: usize>(a: &[f64; D], b: &[f64; D], q: f64) -> f64 {
    let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    if q == 2.0 {
        sq
    } else {
        sq.powf(0.5 * q)
    }
}

struct Cell<const D: usize> {
    lo: f64,
    hi: f64,
    u_lo: [f64; D],
    u_hi: [f64; D],
}

impl<const D: usize> Cell<D> {
    fn at(&self, x: f64) -> [f64; D] {
        let t = (x - self.lo) / (self.hi - self.lo);
        let mut out = [0.0; D];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.u_lo[k] + t * (self.u_hi[k] - self.u_lo[k]);
        }
        out
    }

    fn sub(&self, lo: f64, hi: f64) -> Cell<D> {
        Cell {
            lo,
            hi,
            u_lo: self.at(lo),
            u_hi: self.at(hi),
        }
    }
}

fn tensor_gauss<const D: usize>(a: &Cell<D>, b: &Cell<D>, p: f64, expo: f64) -> f64 {
    let ha = 0.5 * (a.hi - a.lo);
    let hb = 0.5 * (b.hi - b.lo);
    let ca = 0.5 * (a.hi + a.lo);
    let cb = 0.5 * (b.hi + b.lo);
    let mut acc = 0.0;
    for (xi, wi) in GAUSS_X.iter().zip(GAUSS_W.iter()) {
        let x = ca + ha * xi;
        let ux = a.at(x);
        for (yj, wj) in GAUSS_X.iter().zip(GAUSS_W.iter()) {
            let y = cb + hb * yj;
            let num = dist_pow(&ux, &b.at(y), p);
            if num > 0.0 {
                acc += wi * wj * num / (x - y).abs().powf(expo);
            }
        }
    }
    acc * ha * hb
}

/// Pair of cells sharing the vertex `a.hi == b.lo`, refined towards it.
fn adjacent_pair<const D: usize>(a: &Cell<D>, b: &Cell<D>, p: f64, expo: f64, depth: usize) -> f64 {
    if depth == 0 {
        return tensor_gauss(a, b, p, expo);
    }
    let ma = 0.5 * (a.lo + a.hi);
    let mb = 0.5 * (b.lo + b.hi);
    let a_far = a.sub(a.lo, ma);
    let a_near = a.sub(ma, a.hi);
    let b_near = b.sub(b.lo, mb);
    let b_far = b.sub(mb, b.hi);
    tensor_gauss(&a_far, &b_near, p, expo)
        + tensor_gauss(&a_far, &b_far, p, expo)
        + tensor_gauss(&a_near, &b_far, p, expo)
        + adjacent_pair(&a_near, &b_near, p, expo, depth - 1)
}

/// Gagliardo semi-norm `(∫∫_{ℝ×ℝ} |u(x)-u(y)|^p / |x-y|^{1+sp})^{1/p}` of a
/// piecewise-linear profile on a (possibly graded) grid.
///
/// Same-cell pairs are integrated exactly, neighbouring cells with
/// geometric refinement towards the shared vertex, other pairs by 6×6
/// Gauss-Legendre, and the region outside the grid in closed form. Both
/// end values must agree, otherwise the semi-norm diverges.
pub fn gagliardo_seminorm_line<const D: usize>(u: &LineProfile<D>, s: f64, p: f64) -> Result<f64> {
    check_s(s)?;
    check_p(p)?;
    let n = u.nodes.len();
    let outer = u.values[0];
    if dist_pow(&outer, &u.values[n - 1], 2.0) > 1e-24 {
        return Err(Error::InvalidProfile(
            "line profile must take the same value at both ends".into(),
        ));
    }
    let expo = 1.0 + s * p;
    let a = p - 1.0 - s * p;
    let cells: Vec<Cell<D>> = (0..n - 1)
        .map(|i| Cell {
            lo: u.nodes[i],
            hi: u.nodes[i + 1],
            u_lo: u.values[i],
            u_hi: u.values[i + 1],
        })
        .collect();
    let x0 = u.nodes[0];
    let xn = u.nodes[n - 1];
    let sp = s * p;

    let per_cell: Vec<f64> = (0..cells.len())
        .into_par_iter()
        .map(|i| {
            let c = &cells[i];
            let h = c.hi - c.lo;
            let slope_p = dist_pow(&c.u_hi, &c.u_lo, p) / h.powf(p);
            // same cell: |m|^p ∫∫ |x-y|^{p-1-sp}
            let mut acc = slope_p * 2.0 * h.powf(a + 2.0) / ((a + 1.0) * (a + 2.0));
            let mut off = Vec::with_capacity(cells.len() - i);
            if i + 1 < cells.len() {
                off.push(2.0 * adjacent_pair(c, &cells[i + 1], p, expo, CORNER_DEPTH));
            }
            for other in cells.iter().skip(i + 2) {
                off.push(2.0 * tensor_gauss(c, other, p, expo));
            }
            acc += compensated_sum(off);
            // x in this cell, y outside [x0, xn], both orders
            let hc = 0.5 * h;
            let cc = 0.5 * (c.hi + c.lo);
            let mut tail = 0.0;
            for (xi, wi) in GAUSS_X.iter().zip(GAUSS_W.iter()) {
                let x = cc + hc * xi;
                let v = dist_pow(&c.at(x), &outer, p);
                if v > 0.0 {
                    tail += wi * v * ((x - x0).powf(-sp) + (xn - x).powf(-sp)) / sp;
                }
            }
            acc + 2.0 * tail * hc
        })
        .collect();
    Ok(compensated_sum(per_cell).powf(1.0 / p))
}

/// Symmetric grid on `[-outer, outer]`: a few uniform nodes on
/// `[-inner, inner]` and `per_decade` geometric nodes per factor of ten
/// between `inner` and `outer`.
pub fn graded_line_nodes(inner: f64, outer: f64, per_decade: usize) -> Vec<f64> {
    assert!(inner > 0.0 && outer > inner && per_decade > 0);
    let decades = (outer / inner).log10();
    let steps = ((decades * per_decade as f64).ceil() as usize).max(1);
    let ratio = (outer / inner).powf(1.0 / steps as f64);
    let mut positive = vec![0.5 * inner, inner];
    let mut r = inner;
    for _ in 0..steps {
        r *= ratio;
        positive.push(r);
    }
    if let Some(last) = positive.last_mut() {
        *last = outer;
    }
    let mut nodes: Vec<f64> = positive.iter().rev().map(|x| -x).collect();
    nodes.push(0.0);
    nodes.extend(positive);
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{power_map, CircleGrid};

    #[test]
    fn w1p_of_identical_maps_is_zero() {
        let f = power_map(3, CircleGrid::new(256).unwrap());
        assert_eq!(w1p_distance(&f, &f, 1.0, None).unwrap(), 0.0);
    }

    #[test]
    fn w1p_minimizer_value() {
        // ∫|d/dθ e^{idθ}|^p = 2π|d|^p, exactly for a single mode.
        let g = CircleGrid::new(4096).unwrap();
        for d in [1i64, 2] {
            for p in [1.0, 1.5, 3.0] {
                let v = w1p_seminorm(&power_map(d, g), p, None).unwrap().powf(p);
                let expect = 2.0 * (d.abs() as f64).powf(p) * PI;
                assert!((v - expect).abs() < 1e-6 * expect, "d={d} p={p}: {v}");
            }
        }
    }

    #[test]
    fn missing_derivative_is_reported() {
        let g = CircleGrid::new(64).unwrap();
        let f = power_map(1, g).with_regularity(crate::grid::Regularity::PiecewiseLinearPhase);
        assert!(matches!(
            w1p_distance(&f, &power_map(0, g), 1.0, None),
            Err(Error::MissingDerivative)
        ));
    }

    #[test]
    fn h_half_of_power_maps() {
        let g = CircleGrid::new(1024).unwrap();
        for d in [-3i64, 1, 4] {
            let v = h_half_seminorm_sq(power_map(d, g).samples());
            assert!((v - 4.0 * PI * PI * d.abs() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn sup_distance_antipodal() {
        let g = CircleGrid::new(4096).unwrap();
        let v = sup_distance(&power_map(1, g), &power_map(0, g)).unwrap();
        assert!((v - 2.0).abs() < 1e-5);
    }

    #[test]
    fn gagliardo_rejects_bad_index_and_vanishes_on_constants() {
        let h = vec![C64::new(0.3, -0.2); 64];
        assert_eq!(gagliardo_seminorm(&h, 0.5, 2.0).unwrap(), 0.0);
        assert!(gagliardo_seminorm(&h, 1.0, 2.0).is_err());
        assert!(gagliardo_seminorm(&h, 0.0, 2.0).is_err());
    }

    #[test]
    fn gagliardo_matches_naive_double_sum() {
        let m = 64;
        let g = CircleGrid::new(m).unwrap();
        let h: Vec<C64> = g
            .thetas()
            .map(|t| C64::new(t.sin() + 0.3 * (3.0 * t).cos(), (2.0 * t).sin()))
            .collect();
        let (s, p) = (0.3, 1.7);
        let step = TAU / m as f64;
        let mut naive = 0.0;
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let k = (i as i64 - j as i64).unsigned_abs() as usize;
                let dist = step * k.min(m - k) as f64;
                naive += (h[i] - h[j]).norm().powf(p) / dist.powf(1.0 + s * p);
            }
        }
        let naive = (naive * step * step).powf(1.0 / p);
        let fast = gagliardo_seminorm(&h, s, p).unwrap();
        assert!((naive - fast).abs() < 1e-12 * naive);
    }

    #[test]
    fn chord_kernel_reproduces_fourier_form() {
        let g = CircleGrid::new(2048).unwrap();
        for d in [1i64, 2] {
            let h = power_map(d, g);
            let gag = gagliardo_seminorm_with(h.samples(), 0.5, 2.0, Kernel::Chord)
                .unwrap()
                .powi(2);
            let four = h_half_seminorm_sq(h.samples());
            assert!((gag / four - 1.0).abs() < 5e-3, "d={d}: {gag} vs {four}");
        }
    }

    #[test]
    fn compensated_sum_is_exact_on_cancellation() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(v), 2.0);
    }

    #[test]
    fn line_quadrature_of_hat_function() {
        // For u = max(0, 1-|x|), ∫∫|u(x)-u(y)|²/|x-y|² = ∫|ξ||û(ξ)|² dξ = 8 ln 2.
        let mut nodes: Vec<f64> = (0..=400).map(|i| -2.0 + 4.0 * i as f64 / 400.0).collect();
        nodes.dedup();
        let hat = LineProfile::sample(nodes, |x: f64| [(1.0 - x.abs()).max(0.0)]).unwrap();
        let v = gagliardo_seminorm_line(&hat, 0.5, 2.0).unwrap().powi(2);
        let expect = 8.0 * 2f64.ln();
        assert!((v - expect).abs() < 1e-3 * expect, "{v} vs {expect}");
    }

    #[test]
    fn line_quadrature_is_grid_independent() {
        let bump = |x: f64| [(-(x * x) * 4.0).exp() * (1.0 - x * x).max(0.0).powi(2)];
        let coarse = LineProfile::sample(graded_line_nodes(0.05, 1.0, 40), bump).unwrap();
        let fine = LineProfile::sample(graded_line_nodes(0.02, 1.0, 80), bump).unwrap();
        for p in [1.5, 2.0] {
            let s = 1.0 / p;
            let a = gagliardo_seminorm_line(&coarse, s, p).unwrap();
            let b = gagliardo_seminorm_line(&fine, s, p).unwrap();
            assert!((a / b - 1.0).abs() < 5e-3, "p={p}: {a} vs {b}");
        }
    }
}

//! Uniform periodic grids on S¹, circle maps, lifting and the three
//! one-dimensional degree formulas (winding, Kronecker integral, Fourier).

use std::cell::RefCell;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default number of samples on S¹.
pub const DEFAULT_M: usize = 4096;

/// Tolerance on |f_j| - 1 accepted by [`CircleMap::new`].
pub const MODULUS_TOL: f64 = 1e-12;

/// Lifting refuses angle gaps at or above `π - LIFT_MARGIN`.
pub const LIFT_MARGIN: f64 = 1e-6;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(m: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(m)
        } else {
            p.plan_fft_forward(m)
        }
    })
}

/// Normalized forward transform: `a_n = mean_j h_j e^{-i n θ_j}`, in FFT order.
pub fn dft(samples: &[C64]) -> Vec<C64> {
    let m = samples.len();
    let mut buf = samples.to_vec();
    plan(m, false).process(&mut buf);
    let scale = 1.0 / m as f64;
    for a in &mut buf {
        *a *= scale;
    }
    buf
}

/// Synthesis `h_j = Σ_n a_n e^{i n θ_j}` from coefficients in FFT order.
pub fn idft(coeffs: &[C64]) -> Vec<C64> {
    let mut buf = coeffs.to_vec();
    plan(coeffs.len(), true).process(&mut buf);
    buf
}

/// Signed frequency of FFT slot `k` on an `m`-point grid, in (-m/2, m/2].
#[inline]
pub fn frequency(k: usize, m: usize) -> i64 {
    if k <= m / 2 {
        k as i64
    } else {
        k as i64 - m as i64
    }
}

/// Spectral derivative d/dθ of a periodic grid function. The Nyquist mode
/// is dropped, as its derivative is not representable on the grid.
pub fn spectral_derivative(samples: &[C64]) -> Vec<C64> {
    let m = samples.len();
    let mut a = dft(samples);
    for (k, ak) in a.iter_mut().enumerate() {
        let n = frequency(k, m);
        if 2 * n.unsigned_abs() as usize == m {
            *ak = C64::new(0.0, 0.0);
        } else {
            *ak *= C64::new(0.0, n as f64);
        }
    }
    idft(&a)
}

/// A uniform periodic grid `θ_j = 2πj/M` with `M ≥ 16` a power of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleGrid {
    m: usize,
}

impl CircleGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 16 || !m.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "M = {m} must be a power of two and at least 16"
            )));
        }
        Ok(Self { m })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        TAU / self.m as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.m as f64
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.m).map(move |j| self.theta(j))
    }
}

impl Default for CircleGrid {
    fn default() -> Self {
        Self { m: DEFAULT_M }
    }
}

/// How a map may be differentiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// Smooth enough for spectral differentiation.
    Smooth,
    /// Phase with kinks; derivatives must come from the construction.
    PiecewiseLinearPhase,
}

impl Regularity {
    fn join(self, other: Self) -> Self {
        if self == Self::Smooth && other == Self::Smooth {
            Self::Smooth
        } else {
            Self::PiecewiseLinearPhase
        }
    }
}

/// Samples of a map S¹ → S¹ on a uniform grid.
#[derive(Clone, Debug)]
pub struct CircleMap {
    grid: CircleGrid,
    samples: Vec<C64>,
    regularity: Regularity,
}

impl CircleMap {
    /// Wraps unit-modulus samples; the length must be a valid grid size.
    pub fn new(samples: Vec<C64>) -> Result<Self> {
        let grid = CircleGrid::new(samples.len())?;
        for (index, z) in samples.iter().enumerate() {
            let modulus = z.norm();
            if (modulus - 1.0).abs() > MODULUS_TOL || !modulus.is_finite() {
                return Err(Error::NotUnitModulus { index, modulus });
            }
        }
        Ok(Self {
            grid,
            samples,
            regularity: Regularity::Smooth,
        })
    }

    /// `e^{iφ_j}` for phase samples `φ_j`.
    pub fn from_phase(grid: CircleGrid, phase: &[f64]) -> Result<Self> {
        if phase.len() != grid.len() {
            return Err(Error::GridMismatch {
                left: grid.len(),
                right: phase.len(),
            });
        }
        Ok(Self {
            grid,
            samples: phase.iter().map(|&p| C64::cis(p)).collect(),
            regularity: Regularity::Smooth,
        })
    }

    pub fn from_phase_fn(grid: CircleGrid, phase: impl Fn(f64) -> f64) -> Self {
        Self {
            grid,
            samples: grid.thetas().map(|t| C64::cis(phase(t))).collect(),
            regularity: Regularity::Smooth,
        }
    }

    pub fn constant(grid: CircleGrid, c: C64) -> Result<Self> {
        Self::new(vec![c; grid.len()])
    }

    pub fn with_regularity(mut self, regularity: Regularity) -> Self {
        self.regularity = regularity;
        self
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn regularity(&self) -> Regularity {
        self.regularity
    }

    pub fn is_smooth(&self) -> bool {
        self.regularity == Regularity::Smooth
    }

    /// Pointwise difference `f - g` (not a circle map).
    pub fn difference(&self, other: &CircleMap) -> Result<Vec<C64>> {
        same_grid(self, other)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a - b)
            .collect())
    }

    /// Spectral derivative d/dθ of the samples.
    pub fn spectral_derivative(&self) -> Vec<C64> {
        spectral_derivative(&self.samples)
    }

    /// The antipodal map `-f`.
    pub fn negate(&self) -> CircleMap {
        CircleMap {
            grid: self.grid,
            samples: self.samples.iter().map(|z| -z).collect(),
            regularity: self.regularity,
        }
    }
}

fn same_grid(f: &CircleMap, g: &CircleMap) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::GridMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

/// Pointwise product; degrees add.
pub fn product(f: &CircleMap, g: &CircleMap) -> Result<CircleMap> {
    same_grid(f, g)?;
    Ok(CircleMap {
        grid: f.grid,
        samples: f.samples.iter().zip(&g.samples).map(|(a, b)| a * b).collect(),
        regularity: f.regularity.join(g.regularity),
    })
}

pub fn conjugate(f: &CircleMap) -> CircleMap {
    CircleMap {
        grid: f.grid,
        samples: f.samples.iter().map(|z| z.conj()).collect(),
        regularity: f.regularity,
    }
}

/// `z ↦ z^d` sampled on the grid.
pub fn power_map(d: i64, grid: CircleGrid) -> CircleMap {
    CircleMap::from_phase_fn(grid, |t| d as f64 * t)
}

/// A continuous lifting `f = e^{iφ}` together with its winding number.
#[derive(Clone, Debug)]
pub struct Phase {
    values: Vec<f64>,
    winding: i64,
    grid: CircleGrid,
}

impl Phase {
    /// Builds a phase from samples whose periodic extension is
    /// `φ(θ + 2π) = φ(θ) + 2π·winding`.
    pub fn new(grid: CircleGrid, values: Vec<f64>, winding: i64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch {
                left: grid.len(),
                right: values.len(),
            });
        }
        Ok(Self {
            values,
            winding,
            grid,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn winding(&self) -> i64 {
        self.winding
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn exponentiate(&self) -> CircleMap {
        CircleMap {
            grid: self.grid,
            samples: self.values.iter().map(|&p| C64::cis(p)).collect(),
            regularity: Regularity::Smooth,
        }
    }

    /// Largest jump between consecutive samples, wrap-around term included.
    pub fn max_gap(&self) -> f64 {
        let m = self.values.len();
        let mut worst: f64 = 0.0;
        for j in 0..m {
            let next = if j + 1 < m {
                self.values[j + 1]
            } else {
                self.values[0] + TAU * self.winding as f64
            };
            worst = worst.max((next - self.values[j]).abs());
        }
        worst
    }
}

/// Lifts a circle map by accumulating principal arguments of successive
/// sample ratios, starting from `arg f_0`.
pub fn lift(f: &CircleMap) -> Result<Phase> {
    let s = f.samples();
    let m = s.len();
    let mut values = Vec::with_capacity(m);
    let mut acc = s[0].arg();
    values.push(acc);
    let mut total = 0.0;
    for j in 1..=m {
        let gap = (s[j % m] * s[j - 1].conj()).arg();
        if gap.abs() >= PI - LIFT_MARGIN {
            return Err(Error::GridTooCoarse { index: j - 1, gap });
        }
        acc += gap;
        if j < m {
            values.push(acc);
        } else {
            total = acc - values[0];
        }
    }
    Ok(Phase {
        values,
        winding: (total / TAU).round() as i64,
        grid: f.grid,
    })
}

pub fn degree_winding(phase: &Phase) -> i64 {
    phase.winding
}

/// Winding number of a sampled map, via [`lift`].
pub fn degree(f: &CircleMap) -> Result<i64> {
    Ok(lift(f)?.winding)
}

/// `(1/2π) ∫ f ∧ ḟ` with the spectral derivative.
pub fn degree_kronecker_s1(f: &CircleMap) -> f64 {
    kronecker_mean(f.samples(), &f.spectral_derivative())
}

/// `(1/2π) ∫ f ∧ ḟ` with a derivative supplied by the caller.
pub fn degree_kronecker_with(f: &CircleMap, derivative: &[C64]) -> Result<f64> {
    if derivative.len() != f.len() {
        return Err(Error::GridMismatch {
            left: f.len(),
            right: derivative.len(),
        });
    }
    Ok(kronecker_mean(f.samples(), derivative))
}

fn kronecker_mean(f: &[C64], df: &[C64]) -> f64 {
    let sum: f64 = f.iter().zip(df).map(|(z, dz)| (z.conj() * dz).im).sum();
    sum / f.len() as f64
}

/// Two-sided discrete Fourier coefficients `a_n`, `-M/2 < n ≤ M/2`.
#[derive(Clone, Debug)]
pub struct FourierSeries {
    coeffs: Vec<C64>,
}

impl FourierSeries {
    pub fn of(samples: &[C64]) -> Self {
        Self {
            coeffs: dft(samples),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e^{inθ}`; zero outside the resolved band.
    pub fn coeff(&self, n: i64) -> C64 {
        let m = self.coeffs.len() as i64;
        if n <= -m / 2 || n > m / 2 {
            return C64::new(0.0, 0.0);
        }
        self.coeffs[n.rem_euclid(m) as usize]
    }

    /// `(n, a_n)` pairs in FFT order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        let m = self.coeffs.len();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, &a)| (frequency(k, m), a))
    }

    /// Coefficients in FFT storage order.
    pub fn raw(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn synthesize(&self) -> Vec<C64> {
        idft(&self.coeffs)
    }

    /// `Σ |a_n|²`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }
}

pub fn fourier(f: &CircleMap) -> FourierSeries {
    FourierSeries::of(f.samples())
}

/// `Σ n |a_n|²`.
pub fn degree_fourier(series: &FourierSeries) -> f64 {
    series.iter().map(|(n, a)| n as f64 * a.norm_sqr()).sum()
}

/// A raw degree estimate with its nearest integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeEstimate {
    pub raw: f64,
    pub rounded: i64,
    /// Set when `raw` is farther than 0.1 from every integer.
    pub warning: bool,
}

impl DegreeEstimate {
    pub fn from_raw(raw: f64) -> Self {
        let rounded = raw.round();
        Self {
            raw,
            rounded: rounded as i64,
            warning: (raw - rounded).abs() > 0.1 || !raw.is_finite(),
        }
    }
}

/// All three one-dimensional degree estimates of a map.
#[derive(Clone, Copy, Debug)]
pub struct DegreeReport {
    pub winding: i64,
    pub kronecker: DegreeEstimate,
    pub fourier: DegreeEstimate,
}

impl DegreeReport {
    pub fn agrees(&self) -> bool {
        self.kronecker.rounded == self.winding && self.fourier.rounded == self.winding
    }
}

pub fn degree_report(f: &CircleMap) -> Result<DegreeReport> {
    Ok(DegreeReport {
        winding: degree(f)?,
        kronecker: DegreeEstimate::from_raw(degree_kronecker_s1(f)),
        fourier: DegreeEstimate::from_raw(degree_fourier(&fourier(f))),
    })
}

/// Where `s·p` sits relative to the dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

/// A fractional Sobolev index `(s, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SobolevIndex {
    pub s: f64,
    pub p: f64,
}

impl SobolevIndex {
    pub fn new(s: f64, p: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::IndexOutOfRange {
                name: "s",
                value: s,
                range: "(0, ∞)",
            });
        }
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::IndexOutOfRange {
                name: "p",
                value: p,
                range: "[1, ∞)",
            });
        }
        Ok(Self { s, p })
    }

    /// `W^{1,p}`.
    pub fn w1p(p: f64) -> Result<Self> {
        Self::new(1.0, p)
    }

    /// `H^{1/2} = W^{1/2,2}`.
    pub fn h_half() -> Self {
        Self { s: 0.5, p: 2.0 }
    }

    pub fn regime(&self, dim: u32) -> Regime {
        let sp = self.s * self.p;
        let n = dim as f64;
        if (sp - n).abs() <= 1e-12 * n {
            Regime::Critical
        } else if sp > n {
            Regime::Supercritical
        } else {
            Regime::Subcritical
        }
    }

    pub fn is_critical(&self, dim: u32) -> bool {
        self.regime(dim) == Regime::Critical
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize) -> CircleGrid {
        CircleGrid::new(m).unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(CircleGrid::new(8).is_err());
        assert!(CircleGrid::new(100).is_err());
        assert!(CircleGrid::new(16).is_ok());
    }

    #[test]
    fn rejects_non_unit_samples() {
        let mut s = vec![C64::new(1.0, 0.0); 16];
        s[3] = C64::new(1.0 + 1e-9, 0.0);
        assert!(matches!(
            CircleMap::new(s),
            Err(Error::NotUnitModulus { index: 3, .. })
        ));
    }

    #[test]
    fn power_map_windings() {
        assert_eq!(degree(&power_map(3, grid(256))).unwrap(), 3);
        assert_eq!(degree(&power_map(-5, grid(4096))).unwrap(), -5);
        let c = CircleMap::constant(grid(64), C64::new(1.0, 0.0)).unwrap();
        let phase = lift(&c).unwrap();
        assert_eq!(phase.winding(), 0);
        assert!(phase.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn lift_reports_coarse_grid() {
        // z^8 on 16 points jumps by exactly π between samples.
        let err = lift(&power_map(8, grid(16))).unwrap_err();
        assert!(matches!(err, Error::GridTooCoarse { .. }));
    }

    #[test]
    fn kronecker_of_power_map() {
        let k = degree_kronecker_s1(&power_map(4, grid(512)));
        assert!((k - 4.0).abs() < 1e-8, "{k}");
    }

    #[test]
    fn fourier_of_power_map_and_constant() {
        let f = fourier(&power_map(1, grid(64)));
        assert!((f.coeff(1) - C64::new(1.0, 0.0)).norm() < 1e-12);
        for (n, a) in f.iter() {
            if n != 1 {
                assert!(a.norm() < 1e-12);
            }
        }
        let c = C64::from_polar(1.0, 0.4);
        let cf = fourier(&CircleMap::constant(grid(32), c).unwrap());
        assert!((cf.coeff(0) - c).norm() < 1e-14);
        assert!((degree_fourier(&fourier(&power_map(2, grid(64)))) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn fourier_matches_direct_summation() {
        let g = grid(64);
        let samples: Vec<C64> = g
            .thetas()
            .map(|t| 0.6 * C64::cis(3.0 * t) + C64::new(0.0, 0.8) * C64::cis(-7.0 * t))
            .collect();
        let fast = FourierSeries::of(&samples);
        for n in -31..=32i64 {
            let direct: C64 = samples
                .iter()
                .enumerate()
                .map(|(j, z)| z * C64::cis(-(n as f64) * g.theta(j)))
                .sum::<C64>()
                / 64.0;
            assert!((fast.coeff(n) - direct).norm() < 1e-13);
        }
        assert!((fast.coeff(3) - C64::new(0.6, 0.0)).norm() < 1e-13);
        assert!((fast.coeff(-7) - C64::new(0.0, 0.8)).norm() < 1e-13);
        let back = fast.synthesize();
        for (a, b) in back.iter().zip(&samples) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn product_and_conjugate() {
        let g = grid(128);
        let p = product(&power_map(2, g), &power_map(3, g)).unwrap();
        let five = power_map(5, g);
        for (a, b) in p.samples().iter().zip(five.samples()) {
            assert!((a - b).norm() < 1e-12);
        }
        let c = conjugate(&power_map(4, g));
        assert_eq!(degree(&c).unwrap(), -4);
        let one = product(&five, &conjugate(&five)).unwrap();
        assert!(one.samples().iter().all(|z| (z - 1.0).norm() < 1e-12));
        assert!(product(&five, &power_map(1, grid(64))).is_err());
    }

    #[test]
    fn degree_estimate_warns_far_from_integer() {
        assert!(!DegreeEstimate::from_raw(2.05).warning);
        let e = DegreeEstimate::from_raw(1.7);
        assert!(e.warning);
        assert_eq!(e.rounded, 2);
    }

    #[test]
    fn sobolev_regimes() {
        let h = SobolevIndex::h_half();
        assert_eq!(h.regime(1), Regime::Critical);
        assert_eq!(h.regime(2), Regime::Subcritical);
        assert_eq!(SobolevIndex::w1p(3.0).unwrap().regime(2), Regime::Supercritical);
        assert!(SobolevIndex::new(0.5, 0.5).is_err());
        assert!(SobolevIndex::new(0.0, 2.0).is_err());
    }
}

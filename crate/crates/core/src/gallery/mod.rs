//! Explicit map families: extremal pairs for the class distances, capacity
//! profiles, bump maps and their S² counterparts.

mod circle;
pub mod profiles;
pub mod registry;
mod sphere;

pub use circle::*;
pub use sphere::*;

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::{CircleGrid, CircleMap, Phase, Regularity, C64};
use crate::seminorms::{self, AnalyticDerivative, Kink};

/// A piecewise-linear function on `[0, 2π]` whose breakpoints sit on grid
/// points, extended periodically up to a multiple of 2π.
#[derive(Clone, Debug)]
pub struct PiecewiseLinear {
    grid: CircleGrid,
    knots: Vec<usize>,
    values: Vec<f64>,
}

impl PiecewiseLinear {
    /// Breakpoints `knots` (first 0, last 2π) are rounded to the nearest
    /// grid points; `values` are taken there exactly.
    pub fn snapped(grid: CircleGrid, knots: &[f64], values: &[f64]) -> Result<Self> {
        if knots.len() != values.len() || knots.len() < 2 {
            return Err(Error::InvalidGrid("knots and values must pair up".into()));
        }
        let idx: Vec<usize> = knots
            .iter()
            .map(|t| (t / grid.step()).round().max(0.0) as usize)
            .collect();
        if idx[0] != 0 || *idx.last().unwrap() != grid.len() {
            return Err(Error::InvalidGrid("knots must start at 0 and end at 2π".into()));
        }
        if idx.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(format!(
                "breakpoints closer than the grid step (M = {})",
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            knots: idx,
            values: values.to_vec(),
        })
    }

    pub fn winding(&self) -> i64 {
        ((self.values[self.values.len() - 1] - self.values[0]) / TAU).round() as i64
    }

    fn slope(&self, i: usize) -> f64 {
        (self.values[i + 1] - self.values[i])
            / ((self.knots[i + 1] - self.knots[i]) as f64 * self.grid.step())
    }

    pub fn samples(&self) -> Vec<f64> {
        let h = self.grid.step();
        let mut out = Vec::with_capacity(self.grid.len());
        for i in 0..self.knots.len() - 1 {
            let slope = self.slope(i);
            for j in self.knots[i]..self.knots[i + 1] {
                out.push(self.values[i] + slope * (j - self.knots[i]) as f64 * h);
            }
        }
        out
    }

    /// One-sided slopes at every grid point.
    pub fn one_sided(&self) -> OneSided {
        let m = self.grid.len();
        let mut left = vec![0.0; m];
        let mut right = vec![0.0; m];
        let last = self.knots.len() - 2;
        for i in 0..=last {
            let slope = self.slope(i);
            for j in self.knots[i]..self.knots[i + 1] {
                left[j] = slope;
                right[j] = slope;
            }
            let prev = if i == 0 { self.slope(last) } else { self.slope(i - 1) };
            left[self.knots[i]] = prev;
        }
        OneSided { left, right }
    }

    /// `Σ |v_{i+1} - v_i|`, the total variation over one period.
    pub fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    pub fn knot_values(&self) -> &[f64] {
        &self.values
    }
}

/// One-sided derivatives of a phase at each grid point (equal away from
/// kinks).
#[derive(Clone, Debug)]
pub struct OneSided {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl OneSided {
    pub fn smooth(values: Vec<f64>) -> Self {
        Self {
            left: values.clone(),
            right: values,
        }
    }

    pub fn mean(&self) -> Vec<f64> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    fn is_kink(&self, j: usize) -> bool {
        self.left[j] != self.right[j]
    }
}

/// A gallery map with its continuous phase and, where known, the exact
/// phase derivative.
#[derive(Clone, Debug)]
pub struct GalleryMap {
    pub map: CircleMap,
    pub phase: Phase,
    pub dphase: Option<OneSided>,
}

impl GalleryMap {
    pub(crate) fn from_phase(
        grid: CircleGrid,
        values: Vec<f64>,
        winding: i64,
        dphase: Option<OneSided>,
        regularity: Regularity,
    ) -> Result<Self> {
        let phase = Phase::new(grid, values, winding)?;
        let map = phase.exponentiate().with_regularity(regularity);
        Ok(Self { map, phase, dphase })
    }

    pub(crate) fn from_piecewise(pl: &PiecewiseLinear) -> Result<Self> {
        Self::from_phase(
            pl.grid,
            pl.samples(),
            pl.winding(),
            Some(pl.one_sided()),
            Regularity::PiecewiseLinearPhase,
        )
    }

    pub(crate) fn smooth(
        grid: CircleGrid,
        phase: impl Fn(f64) -> f64,
        dphase: impl Fn(f64) -> f64,
        winding: i64,
    ) -> Result<Self> {
        let values = grid.thetas().map(&phase).collect();
        let d = grid.thetas().map(&dphase).collect();
        Self::from_phase(
            grid,
            values,
            winding,
            Some(OneSided::smooth(d)),
            Regularity::Smooth,
        )
    }

    pub fn degree(&self) -> i64 {
        self.phase.winding()
    }

    /// `ḟ = iφ'f` from the exact phase derivative (mean value at kinks).
    pub fn derivative(&self) -> Option<Vec<C64>> {
        let d = self.dphase.as_ref()?.mean();
        Some(
            self.map
                .samples()
                .iter()
                .zip(d)
                .map(|(z, dp)| C64::new(0.0, dp) * z)
                .collect(),
        )
    }
}

/// The distance a construction is known to realise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Claim {
    pub label: &'static str,
    /// Exponent of the `W^{1,p}` distance the value refers to.
    pub p: f64,
    pub value: f64,
}

/// A pair `(f, g)` with declared degrees, parameters and, where the maps
/// are not smooth, the analytic derivative of the difference.
#[derive(Clone, Debug)]
pub struct GalleryPair {
    pub f: GalleryMap,
    pub g: GalleryMap,
    pub derivative: Option<AnalyticDerivative>,
    pub params: Vec<(&'static str, f64)>,
    pub claim: Option<Claim>,
}

impl GalleryPair {
    /// Pairs two maps, deriving `ḟ - ġ` from their phase derivatives.
    pub(crate) fn from_maps(f: GalleryMap, g: GalleryMap) -> Self {
        let derivative = match (&f.dphase, &g.dphase) {
            (Some(df), Some(dg)) => Some(pair_derivative(&f, df, &g, dg)),
            _ => None,
        };
        Self {
            f,
            g,
            derivative,
            params: Vec::new(),
            claim: None,
        }
    }

    pub(crate) fn with_params(mut self, params: Vec<(&'static str, f64)>) -> Self {
        self.params = params;
        self
    }

    pub(crate) fn with_claim(mut self, claim: Claim) -> Self {
        self.claim = Some(claim);
        self
    }

    /// `(f, g) ↦ (g, f)`.
    pub fn swapped(self) -> Self {
        let claim = self.claim;
        let params = self.params;
        let derivative = self.derivative.map(|d| negate(&d));
        Self {
            f: self.g,
            g: self.f,
            derivative,
            params,
            claim,
        }
    }

    pub fn degrees(&self) -> (i64, i64) {
        (self.f.degree(), self.g.degree())
    }

    pub fn w1p_distance(&self, p: f64) -> Result<f64> {
        seminorms::w1p_distance(&self.f.map, &self.g.map, p, self.derivative.as_ref())
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }
}

fn negate(d: &AnalyticDerivative) -> AnalyticDerivative {
    let kinks = d
        .kinks()
        .iter()
        .map(|k| Kink {
            index: k.index,
            left: -k.left,
            right: -k.right,
        })
        .collect();
    let base = match (d.f(), d.g()) {
        (Some(f), Some(g)) => AnalyticDerivative::from_maps(g.to_vec(), f.to_vec()),
        _ => AnalyticDerivative::from_difference(d.difference().iter().map(|z| -z).collect()),
    };
    base.with_kinks(kinks)
}

fn pair_derivative(f: &GalleryMap, df: &OneSided, g: &GalleryMap, dg: &OneSided) -> AnalyticDerivative {
    let fs = f.map.samples();
    let gs = g.map.samples();
    let i = C64::new(0.0, 1.0);
    let fm = df.mean();
    let gm = dg.mean();
    let fd: Vec<C64> = fs.iter().zip(&fm).map(|(z, d)| i * d * z).collect();
    let gd: Vec<C64> = gs.iter().zip(&gm).map(|(z, d)| i * d * z).collect();
    let kinks = (0..fs.len())
        .filter(|&j| df.is_kink(j) || dg.is_kink(j))
        .map(|j| Kink {
            index: j,
            left: i * (df.left[j] * fs[j] - dg.left[j] * gs[j]),
            right: i * (df.right[j] * fs[j] - dg.right[j] * gs[j]),
        })
        .collect();
    AnalyticDerivative::from_maps(fd, gd).with_kinks(kinks)
}

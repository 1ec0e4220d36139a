//! Maps `S² → S²` sampled on latitude-longitude grids: Kronecker degree,
//! Dirichlet energy, `H¹` distances, stereographic powers, suspensions and
//! bubble insertion.
//!
//! Grid rows are cell midpoints in colatitude between arbitrary edges, so
//! rows can be packed near the pole of the grid frame. The frame can be
//! rotated, which puts that pole wherever the action is. Derivatives in
//! colatitude continue across the poles by reflection (`(-φ, λ)` is the
//! point `(φ, λ + π)`), so no one-sided stencils are needed.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gallery::profiles::smoothstep;

pub type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(a: Vec3) -> Vec3 {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// North pole `(0, 0, 1)`.
pub const NORTH: Vec3 = [0.0, 0.0, 1.0];

/// Orthonormal frame `(e1, e2, σ)` with `e1 × e2 = σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub e1: Vec3,
    pub e2: Vec3,
    pub pole: Vec3,
}

impl Frame {
    pub fn standard() -> Self {
        Self {
            e1: [1.0, 0.0, 0.0],
            e2: [0.0, 1.0, 0.0],
            pole: NORTH,
        }
    }

    /// A positively oriented frame with the given pole.
    pub fn at(pole: Vec3) -> Self {
        let s = normalize(pole);
        if (s[2] - 1.0).abs() < 1e-15 {
            return Self::standard();
        }
        let a = if s[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let t = dot(a, s);
        let e1 = normalize([a[0] - t * s[0], a[1] - t * s[1], a[2] - t * s[2]]);
        let e2 = cross(s, e1);
        Self { e1, e2, pole: s }
    }

    /// Point at geodesic distance `r` from the pole in direction `α`.
    pub fn point(&self, r: f64, alpha: f64) -> Vec3 {
        let (s, c) = r.sin_cos();
        let (sa, ca) = alpha.sin_cos();
        std::array::from_fn(|k| s * (ca * self.e1[k] + sa * self.e2[k]) + c * self.pole[k])
    }

    /// Geodesic polar coordinates `(r, α)` of `x` (exponential chart at the pole).
    pub fn polar(&self, x: Vec3) -> (f64, f64) {
        let a = dot(x, self.e1);
        let b = dot(x, self.e2);
        let c = dot(x, self.pole);
        ((a * a + b * b).sqrt().atan2(c), b.atan2(a))
    }
}

/// Latitude-longitude grid with colatitude edges `0 = e_0 < … < e_n = π`,
/// `n_λ` equally spaced longitudes and a frame.
#[derive(Clone, Debug)]
pub struct LatLongGrid {
    edges: Vec<f64>,
    nodes: Vec<f64>,
    n_lambda: usize,
    frame: Frame,
    row_weights: Vec<f64>,
    stencils: Vec<[(isize, f64); 5]>,
}

impl LatLongGrid {
    pub fn uniform(n_phi: usize, n_lambda: usize) -> Result<Self> {
        let edges = (0..=n_phi).map(|i| PI * i as f64 / n_phi as f64).collect();
        Self::with_edges(edges, n_lambda)
    }

    pub fn with_edges(edges: Vec<f64>, n_lambda: usize) -> Result<Self> {
        let n = edges.len().saturating_sub(1);
        if n < 8 {
            return Err(Error::InvalidGrid(format!("need at least 8 rows, got {n}")));
        }
        if n_lambda < 16 || !n_lambda.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_lambda must be even and ≥ 16, got {n_lambda}"
            )));
        }
        if edges[0] != 0.0 || (edges[n] - PI).abs() > 1e-12 || edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("colatitude edges must increase from 0 to π".into()));
        }
        let nodes: Vec<f64> = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let row_weights = row_weights(&edges, &nodes);
        let stencils = (0..n).map(|i| phi_stencil(&nodes, i)).collect();
        Ok(Self {
            edges,
            nodes,
            n_lambda,
            frame: Frame::standard(),
            row_weights,
            stencils,
        })
    }

    /// Rows uniform on `[0, radius]` (`inner` of them) and on `[radius, π]`.
    pub fn cap(radius: f64, inner: usize, outer: usize, n_lambda: usize) -> Result<Self> {
        let mut edges: Vec<f64> = (0..=inner).map(|i| radius * i as f64 / inner as f64).collect();
        edges.extend((1..=outer).map(|i| radius + (PI - radius) * i as f64 / outer as f64));
        Self::with_edges(edges, n_lambda)
    }

    /// One row on `[0, inner]`, geometric rows (`per_decade` per factor 10)
    /// up to `radius`, then `outer` uniform rows to π.
    pub fn graded(inner: f64, radius: f64, per_decade: usize, outer: usize, n_lambda: usize) -> Result<Self> {
        if !(inner > 0.0 && inner < radius && radius < PI) {
            return Err(Error::InvalidGrid("need 0 < inner < radius < π".into()));
        }
        let decades = (radius / inner).log10();
        let rows = ((decades * per_decade as f64).ceil() as usize).max(1);
        let mut edges = vec![0.0];
        edges.extend((0..=rows).map(|i| inner * (radius / inner).powf(i as f64 / rows as f64)));
        edges.extend((1..=outer).map(|i| radius + (PI - radius) * i as f64 / outer as f64));
        Self::with_edges(edges, n_lambda)
    }

    pub fn with_frame(mut self, frame: Frame) -> Self {
        self.frame = frame;
        self
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn n_phi(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_lambda(&self) -> usize {
        self.n_lambda
    }

    pub fn len(&self) -> usize {
        self.nodes.len() * self.n_lambda
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn phi(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    pub fn lambda(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_lambda as f64
    }

    pub fn d_lambda(&self) -> f64 {
        TAU / self.n_lambda as f64
    }

    /// Quadrature weight of sample `(i, j)`; the weights sum to 4π.
    pub fn weight(&self, i: usize) -> f64 {
        self.row_weights[i] * self.d_lambda()
    }

    pub fn point(&self, i: usize, j: usize) -> Vec3 {
        self.frame.point(self.nodes[i], self.lambda(j))
    }

    fn same_shape(&self, other: &LatLongGrid) -> bool {
        self.edges == other.edges && self.n_lambda == other.n_lambda && self.frame == other.frame
    }
}

/// Fornberg weights for the first derivative at `x0` from `xs`.
fn fornberg_first(x0: f64, xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![[0.0f64; 2]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|w| w[1]).collect()
}

/// Signed colatitude of extended row `i` (rows past a pole are reflections).
fn extended_node(nodes: &[f64], i: isize) -> f64 {
    let n = nodes.len() as isize;
    if i < 0 {
        -nodes[(-i - 1) as usize]
    } else if i >= n {
        TAU - nodes[(2 * n - 1 - i) as usize]
    } else {
        nodes[i as usize]
    }
}

fn phi_stencil(nodes: &[f64], i: usize) -> [(isize, f64); 5] {
    let idx: Vec<isize> = (-2..=2).map(|o| i as isize + o).collect();
    let xs: Vec<f64> = idx.iter().map(|&k| extended_node(nodes, k)).collect();
    let w = fornberg_first(nodes[i], &xs);
    let mut out = [(0isize, 0.0); 5];
    for k in 0..5 {
        out[k] = (idx[k], w[k]);
    }
    out
}

const GAUSS6: [(f64, f64); 6] = [
    (-0.932_469_514_203_152, 0.171_324_492_379_170),
    (-0.661_209_386_466_265, 0.360_761_573_048_139),
    (-0.238_619_186_083_197, 0.467_913_934_572_691),
    (0.238_619_186_083_197, 0.467_913_934_572_691),
    (0.661_209_386_466_265, 0.360_761_573_048_139),
    (0.932_469_514_203_152, 0.171_324_492_379_170),
];

/// Row weights `W_i` with `∫ q sin φ dφ ≈ Σ W_i q_i`: on each cell `q` is
/// the quadratic through the neighbouring rows (reflected past the poles);
/// exact for quadratics, and `Σ W_i = 2`.
fn row_weights(edges: &[f64], nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![0.0; n];
    for i in 0..n {
        let (a, b) = (edges[i], edges[i + 1]);
        let ids = [i as isize - 1, i as isize, i as isize + 1];
        let xs = ids.map(|k| extended_node(nodes, k));
        for (slot, &k) in ids.iter().enumerate() {
            let lagrange = |x: f64| {
                let mut v = 1.0;
                for (o, &xo) in xs.iter().enumerate() {
                    if o != slot {
                        v *= (x - xo) / (xs[slot] - xo);
                    }
                }
                v
            };
            let integral: f64 = GAUSS6
                .iter()
                .map(|&(t, wt)| {
                    let x = 0.5 * (a + b) + 0.5 * (b - a) * t;
                    wt * x.sin() * lagrange(x)
                })
                .sum::<f64>()
                * 0.5
                * (b - a);
            let row = if k < 0 {
                (-k - 1) as usize
            } else if k >= n as isize {
                (2 * n as isize - 1 - k) as usize
            } else {
                k as usize
            };
            w[row] += integral;
        }
    }
    w
}

/// Samples of a map `S² → ℝ³` (unit vectors for maps into `S²`), row-major.
#[derive(Clone, Debug)]
pub struct Sphere2Map {
    grid: Arc<LatLongGrid>,
    values: Vec<Vec3>,
}

impl Sphere2Map {
    /// Samples `u` at every grid point, checking unit length.
    pub fn from_fn(grid: Arc<LatLongGrid>, u: impl Fn(Vec3) -> Vec3) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.n_phi() {
            for j in 0..grid.n_lambda() {
                values.push(u(grid.point(i, j)));
            }
        }
        Self::new(grid, values)
    }

    /// Samples `u(r, α)` in geodesic polar coordinates around the grid pole.
    pub fn from_polar(grid: Arc<LatLongGrid>, u: impl Fn(f64, f64) -> Vec3) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.n_phi() {
            for j in 0..grid.n_lambda() {
                values.push(u(grid.phi(i), grid.lambda(j)));
            }
        }
        Self::new(grid, values)
    }

    pub fn new(grid: Arc<LatLongGrid>, values: Vec<Vec3>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch {
                left: grid.len(),
                right: values.len(),
            });
        }
        if let Some((index, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| (dot(**v, **v).sqrt() - 1.0).abs() > 1e-10)
        {
            return Err(Error::NotUnitModulus {
                index,
                modulus: dot(*v, *v).sqrt(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: Arc<LatLongGrid>, c: Vec3) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![normalize(c); n])
    }

    pub fn grid(&self) -> &Arc<LatLongGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> Vec3 {
        self.values[i * self.grid.n_lambda() + j]
    }

    /// `x ↦ -f(x)`; on `S²` this reverses the degree.
    pub fn negate(&self) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| [-v[0], -v[1], -v[2]]).collect(),
        }
    }

    /// `f - g` as a vector field.
    pub fn difference(&self, other: &Sphere2Map) -> Result<Vec<Vec3>> {
        if !self.grid.same_shape(&other.grid) {
            return Err(Error::GridMismatch {
                left: self.grid.len(),
                right: other.grid.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| [a[0] - b[0], a[1] - b[1], a[2] - b[2]])
            .collect())
    }
}

/// `(∂_φ u, ∂_λ u)` at every sample.
fn gradients(grid: &LatLongGrid, u: &[Vec3]) -> Vec<(Vec3, Vec3)> {
    let n = grid.n_phi() as isize;
    let nl = grid.n_lambda();
    let half = nl / 2;
    let dl = grid.d_lambda();
    let at = |i: isize, j: usize| -> Vec3 {
        if i < 0 {
            u[(-i - 1) as usize * nl + (j + half) % nl]
        } else if i >= n {
            u[(2 * n - 1 - i) as usize * nl + (j + half) % nl]
        } else {
            u[i as usize * nl + j]
        }
    };
    let mut out = Vec::with_capacity(u.len());
    for i in 0..n as usize {
        let st = &grid.stencils[i];
        for j in 0..nl {
            let mut dphi = [0.0; 3];
            for &(k, w) in st {
                let v = at(k, j);
                for c in 0..3 {
                    dphi[c] += w * v[c];
                }
            }
            let jm2 = (j + nl - 2) % nl;
            let jm1 = (j + nl - 1) % nl;
            let jp1 = (j + 1) % nl;
            let jp2 = (j + 2) % nl;
            let (a, b, c, d) = (at(i as isize, jm2), at(i as isize, jm1), at(i as isize, jp1), at(i as isize, jp2));
            let mut dlam = [0.0; 3];
            for k in 0..3 {
                dlam[k] = (a[k] - 8.0 * b[k] + 8.0 * c[k] - d[k]) / (12.0 * dl);
            }
            out.push((dphi, dlam));
        }
    }
    out
}

/// Raw Kronecker degree with a flag for unresolved polar rings.
#[derive(Clone, Copy, Debug)]
pub struct DegreeS2 {
    pub raw: f64,
    pub rounded: i64,
    /// The Jacobian density on a polar ring varies by more than 10% of its
    /// scale, so the cells there do not resolve the map.
    pub pole_singularity: bool,
}

fn jacobian_density(grid: &LatLongGrid, u: &[Vec3]) -> Vec<f64> {
    let g = gradients(grid, u);
    let nl = grid.n_lambda();
    u.iter()
        .zip(&g)
        .enumerate()
        .map(|(k, (v, (dp, dl)))| dot(*v, cross(*dp, *dl)) / grid.phi(k / nl).sin())
        .collect()
}

fn ring_irregular(density: &[f64], row: usize, nl: usize) -> bool {
    let ring = &density[row * nl..(row + 1) * nl];
    let mean = ring.iter().sum::<f64>() / nl as f64;
    let scale = ring.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-8);
    ring.iter().any(|v| (v - mean).abs() > 0.1 * scale)
}

/// `deg f = (1/4π) ∫ det(f, ∂_1 f, ∂_2 f)`.
pub fn degree_kronecker_s2(f: &Sphere2Map) -> DegreeS2 {
    let grid = &f.grid;
    let nl = grid.n_lambda();
    let density = jacobian_density(grid, &f.values);
    let raw = crate::seminorms::compensated_sum(
        density.iter().enumerate().map(|(k, q)| q * grid.weight(k / nl)),
    ) / (4.0 * PI);
    let pole_singularity =
        ring_irregular(&density, 0, nl) || ring_irregular(&density, grid.n_phi() - 1, nl);
    DegreeS2 {
        raw,
        rounded: raw.round() as i64,
        pole_singularity,
    }
}

/// `∫ |∇u|²` for a vector field on the grid.
pub fn gradient_energy(grid: &LatLongGrid, u: &[Vec3]) -> f64 {
    let nl = grid.n_lambda();
    let g = gradients(grid, u);
    crate::seminorms::compensated_sum(g.iter().enumerate().map(|(k, (dp, dl))| {
        let s = grid.phi(k / nl).sin();
        (dot(*dp, *dp) + dot(*dl, *dl) / (s * s)) * grid.weight(k / nl)
    }))
}

/// Dirichlet energy `∫ |∇f|²`.
pub fn dirichlet_energy(f: &Sphere2Map) -> f64 {
    gradient_energy(&f.grid, &f.values)
}

/// `|f - g|_{H¹} = (∫ |∇(f - g)|²)^{1/2}`.
pub fn h1_distance(f: &Sphere2Map, g: &Sphere2Map) -> Result<f64> {
    let d = f.difference(g)?;
    Ok(gradient_energy(&f.grid, &d).sqrt())
}

/// Point of the Riemann sphere in homogeneous coordinates `(a : b)`,
/// `z = a / b`, with stereographic projection from the north pole.
#[derive(Clone, Copy, Debug)]
pub struct Homogeneous(pub C64, pub C64);

impl Homogeneous {
    /// Stereographic coordinate of `x`, `z = (x₁ + i x₂)/(1 - x₃)`.
    pub fn of_point(x: Vec3) -> Self {
        let h = if x[2] < 0.0 {
            Self(C64::new(x[0], x[1]), C64::new(1.0 - x[2], 0.0))
        } else {
            Self(C64::new(1.0 + x[2], 0.0), C64::new(x[0], -x[1]))
        };
        h.normalized()
    }

    fn normalized(self) -> Self {
        let n = (self.0.norm_sqr() + self.1.norm_sqr()).sqrt();
        Self(self.0 / n, self.1 / n)
    }

    /// Inverse stereographic projection.
    pub fn to_point(self) -> Vec3 {
        let Self(a, b) = self.normalized();
        let w = a * b.conj();
        let s = a.norm_sqr() + b.norm_sqr();
        [2.0 * w.re / s, 2.0 * w.im / s, (a.norm_sqr() - b.norm_sqr()) / s]
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj(), self.1.conj())
    }
}

/// `z ↦ z^d` in stereographic coordinates (`z ↦ z̄^{|d|}` for `d < 0`); degree `d`.
pub fn stereographic_power(d: i64, grid: Arc<LatLongGrid>) -> Result<Sphere2Map> {
    let e = d.unsigned_abs() as i32;
    Sphere2Map::from_fn(grid, |x| {
        let Homogeneous(a, b) = Homogeneous::of_point(x);
        let h = Homogeneous(a.powi(e), b.powi(e));
        if d < 0 { h.conj() } else { h }.to_point()
    })
}

/// Rational map `c·Π(z - a_i) / Π(z - b_j)` with `deg` zeros and `deg - 1`
/// poles drawn from the seed; degree `deg` (conjugated when negative).
pub fn random_rational(deg: i64, seed: u64, grid: Arc<LatLongGrid>) -> Result<Sphere2Map> {
    if deg == 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = normalize([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
        return Sphere2Map::constant(grid, c);
    }
    let n = deg.unsigned_abs() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    let zeros: Vec<C64> = (0..n).map(|_| draw()).collect();
    let poles: Vec<C64> = (0..n - 1).map(|_| draw()).collect();
    let scale = draw() + C64::new(2.0, 0.0);
    Sphere2Map::from_fn(grid, |x| {
        let Homogeneous(a, b) = Homogeneous::of_point(x);
        let num = zeros.iter().fold(scale, |acc, z| acc * (a - z * b));
        let den = poles.iter().fold(b, |acc, z| acc * (a - z * b));
        let h = Homogeneous(num, den);
        if deg < 0 { h.conj() } else { h }.to_point()
    })
}

/// `f = z^{d1}` with a bubble of degree `k > 0` at `z = a`:
/// `g = (z^{d1}(z - a)^k + δ) / (z - a)^k`, a map of degree `d1 + k`.
/// Returns `(f, g)`; as `δ → 0`, `g → f` away from `a`.
pub fn bubble_pair(d1: i64, k: i64, at: C64, delta: f64, grid: Arc<LatLongGrid>) -> Result<(Sphere2Map, Sphere2Map)> {
    if d1 < 0 || k <= 0 {
        return Err(Error::Degenerate(format!(
            "bubble pair needs d1 ≥ 0 and k > 0, got ({d1}, {k})"
        )));
    }
    let f = stereographic_power(d1, grid.clone())?;
    let (d1i, ki) = (d1 as i32, k as i32);
    let g = Sphere2Map::from_fn(grid, |x| {
        let Homogeneous(a, b) = Homogeneous::of_point(x);
        let lin = (a - at * b).powi(ki);
        let num = a.powi(d1i) * lin + delta * b.powi(d1i + ki);
        let den = lin * b.powi(d1i);
        Homogeneous(num, den).to_point()
    })?;
    Ok((f, g))
}

/// Point of `S²` whose stereographic coordinate is `z`.
pub fn inverse_stereographic(z: C64) -> Vec3 {
    Homogeneous(z, C64::new(1.0, 0.0)).to_point()
}

/// Radial profile `F` of a suspension.
pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `x ↦ (sin F(r) h(α), cos F(r))` in geodesic polar coordinates `(r, α)`
/// around `center` for `r < radius`, and `(0, 0, cos kπ)` outside, with
/// `h(α) = e^{i·h_degree·α}`. Degree `h_degree` for odd `k`, 0 for even `k`.
#[derive(Clone)]
pub struct SuspensionSpec {
    pub profile: Profile,
    pub k: i64,
    pub h_degree: i64,
    pub center: Vec3,
    pub radius: f64,
}

impl std::fmt::Debug for SuspensionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuspensionSpec")
            .field("k", &self.k)
            .field("h_degree", &self.h_degree)
            .field("center", &self.center)
            .field("radius", &self.radius)
            .finish()
    }
}

impl SuspensionSpec {
    /// `F(r) = kπ·S(r/R)` with the smooth step `S`, flat at both ends.
    pub fn smooth(k: i64, h_degree: i64, center: Vec3, radius: f64) -> Self {
        let amp = k as f64 * PI;
        Self {
            profile: Arc::new(move |r| amp * smoothstep(r / radius)),
            k,
            h_degree,
            center,
            radius,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius < PI) {
            return Err(Error::InvalidProfile(format!("radius {} not in (0, π)", self.radius)));
        }
        let start = (self.profile)(0.0);
        let end = (self.profile)(self.radius);
        if start.abs() > 1e-12 || (end - self.k as f64 * PI).abs() > 1e-12 {
            return Err(Error::InvalidProfile(format!(
                "F(0) = {start}, F(R) = {end}, expected 0 and {}π",
                self.k
            )));
        }
        Ok(())
    }

    /// Value at a point given its polar coordinates around the centre.
    pub fn eval_polar(&self, r: f64, alpha: f64) -> Vec3 {
        if r >= self.radius {
            return [0.0, 0.0, (self.k as f64 * PI).cos()];
        }
        let fr = (self.profile)(r);
        let (s, c) = fr.sin_cos();
        let (sh, ch) = (self.h_degree as f64 * alpha).sin_cos();
        [s * ch, s * sh, c]
    }

    pub fn eval(&self, x: Vec3) -> Vec3 {
        let (r, a) = Frame::at(self.center).polar(x);
        self.eval_polar(r, a)
    }
}

/// Samples a suspension. When the grid frame is centred at the spec's
/// centre the grid's own polar coordinates are used directly.
pub fn suspension(spec: &SuspensionSpec, grid: Arc<LatLongGrid>) -> Result<Sphere2Map> {
    spec.validate()?;
    let frame = grid.frame();
    if dot(frame.pole, normalize(spec.center)) > 1.0 - 1e-15 {
        let rot = {
            let f0 = Frame::at(spec.center);
            // angle between the two choices of e1 around the shared pole
            dot(frame.e1, f0.e2).atan2(dot(frame.e1, f0.e1))
        };
        Sphere2Map::from_polar(grid, |r, a| spec.eval_polar(r, a + rot))
    } else {
        Sphere2Map::from_fn(grid, |x| spec.eval(x))
    }
}

/// Profile `G` of the degree-independent pair: 0 below `R/4`, π/2 on
/// `[R/3, 2R/3]`, 0 above `3R/4`.
pub fn vo1_profile_g(radius: f64) -> impl Fn(f64) -> f64 + Copy {
    move |r| {
        let w = radius / 12.0;
        0.5 * PI * (smoothstep((r - radius / 4.0) / w) - smoothstep((r - 2.0 * radius / 3.0) / w))
    }
}

/// Pair `(f, g)` of degrees `(d1, d2)` that agree on `r < R/2` and whose
/// difference `(0, 0, 2 cos F)` on `R/2 ≤ r < R` does not depend on `d1 - d2`.
/// For `d2 ≠ 0` a degree-`d2` bump of radius `R/5` is planted at the centre
/// of both maps.
pub fn vo1_pair(d1: i64, d2: i64, radius: f64, grid: Arc<LatLongGrid>) -> Result<(Sphere2Map, Sphere2Map)> {
    if d1 == d2 {
        return Err(Error::Degenerate(format!("vo1 pair needs d1 ≠ d2, got {d1}")));
    }
    let d = d1 - d2;
    let g_prof = vo1_profile_g(radius);
    let f_prof = move |r: f64| if r < 0.5 * radius { g_prof(r) } else { PI - g_prof(r) };
    let bump = SuspensionSpec::smooth(1, -d2, NORTH, radius / 5.0);
    let frame = grid.frame();
    let build = |prof: &dyn Fn(f64) -> f64| {
        Sphere2Map::from_fn(grid.clone(), |x| {
            let (r, a) = frame.polar(x);
            if d2 != 0 && r < 0.25 * radius {
                // inverted bump: -(sin F h', cos F) with deg h' = -d2
                let v = bump.eval_polar(r, a);
                return [-v[0], -v[1], -v[2]];
            }
            if r >= radius {
                let c = prof(radius).cos();
                return [0.0, 0.0, c];
            }
            let fr = prof(r);
            let (s, c) = fr.sin_cos();
            let (sh, ch) = (d as f64 * a).sin_cos();
            [s * ch, s * sh, c]
        })
    };
    Ok((build(&f_prof)?, build(&g_prof)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Arc<LatLongGrid> {
        Arc::new(LatLongGrid::uniform(n, 2 * n).unwrap())
    }

    #[test]
    fn weights_sum_to_sphere_area() {
        for g in [
            LatLongGrid::uniform(64, 128).unwrap(),
            LatLongGrid::graded(1e-4, 0.5, 20, 40, 64).unwrap(),
        ] {
            let total: f64 = (0..g.n_phi()).map(|i| g.weight(i) * g.n_lambda() as f64).sum();
            assert!((total - 4.0 * PI).abs() < 1e-8, "{total}");
        }
    }

    #[test]
    fn fornberg_reproduces_central_difference() {
        let w = fornberg_first(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0]);
        let expect = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_has_degree_one_and_energy_8pi() {
        let f = stereographic_power(1, grid(64)).unwrap();
        let d = degree_kronecker_s2(&f);
        assert!((d.raw - 1.0).abs() < 1e-6, "{}", d.raw);
        assert!((dirichlet_energy(&f) - 8.0 * PI).abs() < 1e-4);
    }

    #[test]
    fn rotated_frame_keeps_degree() {
        let g = LatLongGrid::uniform(64, 128).unwrap().with_frame(Frame::at([0.3, -0.5, 0.2]));
        let f = stereographic_power(2, Arc::new(g)).unwrap();
        assert!((degree_kronecker_s2(&f).raw - 2.0).abs() < 1e-3);
    }

    #[test]
    fn antipodal_map_flips_degree() {
        let f = stereographic_power(2, grid(64)).unwrap();
        assert!((degree_kronecker_s2(&f.negate()).raw + 2.0).abs() < 1e-3);
    }

    #[test]
    fn homogeneous_round_trip() {
        for x in [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], normalize([0.3, -0.2, 0.9])] {
            let y = Homogeneous::of_point(x).to_point();
            for k in 0..3 {
                assert!((x[k] - y[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn suspension_rejects_bad_profile() {
        let mut spec = SuspensionSpec::smooth(1, 1, NORTH, 0.8);
        spec.k = 2;
        assert!(matches!(spec.validate(), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn frame_is_right_handed() {
        let f = Frame::at([0.2, 0.7, -0.4]);
        let c = cross(f.e1, f.e2);
        for (a, b) in c.iter().zip(f.pole) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use super::profiles::CapacityProfiles;
use crate::error::{Error, Result};
use crate::sphere2::{suspension, LatLongGrid, Sphere2Map, SuspensionSpec, NORTH};

/// Geodesic radius of the ball carrying the two-dimensional bump pair.
pub const BUMP_RADIUS_S2: f64 = 0.5;

/// Two-dimensional bump pair around the grid pole: suspensions with
/// profiles `F_ε` (degree 1) and `G_ε` (degree 0).
pub fn bump_pair_s2(eps: f64, grid: Arc<LatLongGrid>) -> Result<(Sphere2Map, Sphere2Map)> {
    let c = CapacityProfiles::new(eps)?;
    let center = grid.frame().pole;
    let f = SuspensionSpec {
        profile: Arc::new(move |r| c.f(r)),
        k: 1,
        h_degree: 1,
        center,
        radius: BUMP_RADIUS_S2,
    };
    let g = SuspensionSpec {
        profile: Arc::new(move |r| c.g(r)),
        k: 0,
        ..f.clone()
    };
    Ok((suspension(&f, grid.clone())?, suspension(&g, grid)?))
}

/// Grid suited to [`bump_pair_s2`]: rows graded from `ε/8` up to the bump
/// radius.
pub fn bump_grid_s2(eps: f64, per_decade: usize, n_lambda: usize) -> Result<LatLongGrid> {
    LatLongGrid::graded(eps / 8.0, BUMP_RADIUS_S2, per_decade, 24, n_lambda)
}

/// Cap radius of the suspension and `vo1` gallery entries.
pub const CAP_RADIUS: f64 = 0.9;

/// Grid for the suspension gallery entries: 96 rows on the cap, 32 outside.
pub fn suspension_grid() -> Result<LatLongGrid> {
    LatLongGrid::cap(CAP_RADIUS, 96, 32, 256)
}

/// Grid for [`crate::sphere2::vo1_pair`]: the steep radial transitions of
/// the profile need 256 rows on the cap.
pub fn vo1_grid() -> Result<LatLongGrid> {
    LatLongGrid::cap(CAP_RADIUS, 256, 32, 256)
}

/// `|d|` bumps of geodesic radius `1/n`, centred on the equator, each of
/// degree `sign d` and equal to the north pole on its boundary; the north
/// pole everywhere else.
pub fn multi_bump_s2(d: i64, n: i64, grid: Arc<LatLongGrid>) -> Result<Sphere2Map> {
    if d == 0 {
        return Err(Error::Degenerate("multi_bump needs d ≠ 0".into()));
    }
    let count = d.unsigned_abs() as usize;
    let radius = 1.0 / n as f64;
    if n <= 0 || radius >= PI / 2.0 || (count > 1 && 2.0 * radius >= TAU / count as f64) {
        return Err(Error::Overcrowded { count, radius });
    }
    let bumps: Vec<SuspensionSpec> = (0..count)
        .map(|j| {
            let a = TAU * (j as f64 + 0.5) / count as f64;
            // negated suspension: outside value N, degree -deg h
            SuspensionSpec::smooth(1, -d.signum(), [a.cos(), a.sin(), 0.0], radius)
        })
        .collect();
    Sphere2Map::from_fn(grid, |x| {
        for b in &bumps {
            let v = b.eval(x);
            if v != [0.0, 0.0, -1.0] {
                return [-v[0], -v[1], -v[2]];
            }
        }
        NORTH
    })
}

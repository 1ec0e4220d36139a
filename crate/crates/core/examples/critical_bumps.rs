//! The critical case `sp = N`: a degree-1 bump and a degree-0 bump whose
//! difference has vanishing critical semi-norm as `ε → 0`, and the capacity
//! profile `H_ε` behind it.
//!
//! cargo run --release --example critical_bumps

use std::sync::Arc;

use homotopy_gaps::gallery;
use homotopy_gaps::grid::degree;
use homotopy_gaps::seminorms::gagliardo_seminorm_line;
use homotopy_gaps::sphere2::{degree_kronecker_s2, h1_distance};
use homotopy_gaps::{CircleGrid, Result};

fn main() -> Result<()> {
    let grid = CircleGrid::new(4096)?;
    println!("eps     deg f deg g  |f-g|_(1/2,2) on R   deg f  deg g  |f-g|_H1 on S²");
    for eps in [1e-2, 1e-3, 1e-4] {
        let pair = gallery::bump_pair(eps, grid)?;
        let (_, _, diff) = gallery::bump_pair_line_profiles(eps, 24)?;
        let line = gagliardo_seminorm_line(&diff, 0.5, 2.0)?;
        let s2 = Arc::new(gallery::bump_grid_s2(eps, 24, 128)?);
        let (f, g) = gallery::bump_pair_s2(eps, s2)?;
        println!(
            "{eps:<7} {:>5} {:>5}  {line:<20.10} {:>6.3} {:>6.3}  {:.10}",
            degree(&pair.f.map)?,
            degree(&pair.g.map)?,
            degree_kronecker_s2(&f).raw,
            degree_kronecker_s2(&g).raw,
            h1_distance(&f, &g)?
        );
    }

    println!("\neps      |H_eps|_(1/2,2)");
    for eps in [1e-2, 1e-4, 1e-6, 1e-8] {
        let h = gallery::capacity_line_profile(eps, 24)?;
        println!("{eps:<8} {:.10}", gagliardo_seminorm_line(&h, 0.5, 2.0)?);
    }
    Ok(())
}

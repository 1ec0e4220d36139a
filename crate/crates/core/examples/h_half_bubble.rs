//! `H^{1/2}` distances between circle classes: random maps of degree `d2`
//! stay above `4π²(d2 - d1)` from `z^{d1}`, and multiplying `z^d` by a
//! Blaschke bubble of width `δ` moves it `4π²|d| + O(δ)` away.
//!
//! cargo run --release --example h_half_bubble

use homotopy_gaps::experiments::{blaschke_excess, blaschke_grid, random_ansatz};
use homotopy_gaps::gallery;
use homotopy_gaps::grid::{power_map, product};
use homotopy_gaps::seminorms::h_half_distance_sq;
use homotopy_gaps::{formulas, CircleGrid, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let grid = CircleGrid::new(4096)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (d1, d2) in [(0, 1), (1, 3)] {
        let f = power_map(d1, grid);
        let bound = formulas::h_half_power_lower_bound(d1, d2);
        let mut worst = f64::INFINITY;
        for _ in 0..200 {
            let g = random_ansatz(d2, 8, &mut rng).exponentiate(grid);
            worst = worst.min(h_half_distance_sq(&f, &g)?);
        }
        println!("d1={d1} d2={d2}: min over 200 random maps {worst:.6}, bound {bound:.6}");
    }

    let d = 2;
    let target = formulas::h_half_degree_bound(d);
    println!("\nbubble on z^{d}: excess = |f h - f|² - {target:.6}");
    println!("delta    M        measured              closed form");
    for delta in [1e-1, 1e-2, 1e-3] {
        let g = blaschke_grid(delta, 4096)?;
        let f = power_map(d, g);
        let h = gallery::blaschke_pow(d, delta, g)?;
        let e = h_half_distance_sq(&product(&f, &h)?, &f)? - target;
        println!("{delta:<8} {:<8} {e:<21.14e} {:.14e}", g.len(), blaschke_excess(d, delta).unwrap());
    }
    Ok(())
}

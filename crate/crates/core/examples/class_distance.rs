//! Numerical class distances: `inf |f - g|_{W^{1,p}}` over `g ∈ E_{d2}` for
//! a fixed `f`, and the attainment probe whose phase slopes blow up when the
//! infimum between classes is not attained.
//!
//! cargo run --release --example class_distance

use homotopy_gaps::gallery;
use homotopy_gaps::optimizer::{attainment_probe, estimate_point_to_class, OptimizeOptions};
use homotopy_gaps::{formulas, CircleGrid, Result, SobolevIndex};

fn main() -> Result<()> {
    let grid = CircleGrid::new(1024)?;
    let opts = OptimizeOptions {
        k: 16,
        restarts: 4,
        budget: 300,
        seed: 1,
    };
    // one smooth full turn on an arc of length 2
    let f = gallery::multi_bump(1, 1, grid)?;
    for p in [1.0, 2.0] {
        let r = estimate_point_to_class(&f, 0, SobolevIndex::w1p(p)?, opts)?;
        println!(
            "p={p}: |bump - E_0| ≤ {:.6}, class distance {:.6}",
            r.best,
            formulas::w1p_class_distance(p, 1, 0)
        );
    }
    let osc = gallery::oscillator(1, 6, grid)?;
    let r = estimate_point_to_class(&osc, 0, SobolevIndex::w1p(1.0)?, opts)?;
    println!("oscillator(1, 6) to E_0 in W^(1,1): ≤ {:.6} (2π = {:.6})", r.best, std::f64::consts::TAU);

    println!("\nattainment probe, E_1 to E_0 at p = 2 (target {:.6})", formulas::w1p_class_distance(2.0, 1, 0));
    for budget in [1, 2] {
        let probe = attainment_probe(1, 2.0, budget, 0)?;
        println!(
            "budget {budget}: K={:<3} value {:.6} gap {:.4} max|ψ'| {:.3}",
            probe.k, probe.value, probe.gap, probe.max_dphase
        );
    }
    Ok(())
}

//! Maps S² → S² on lat-long grids: Kronecker degree and Dirichlet energy of
//! stereographic `z^d`, the suspension parity table, and the pair whose
//! difference does not depend on the degree of `f`.
//!
//! cargo run --release --example sphere_maps

use std::sync::Arc;

use homotopy_gaps::gallery::{self, registry::default_sphere_grid};
use homotopy_gaps::sphere2::{
    degree_kronecker_s2, dirichlet_energy, h1_distance, stereographic_power, suspension, vo1_pair, SuspensionSpec,
    NORTH,
};
use homotopy_gaps::{formulas, Result};

fn main() -> Result<()> {
    let grid = default_sphere_grid();
    for d in [1, 2, 3] {
        let f = stereographic_power(d, grid.clone())?;
        println!(
            "stereographic z^{d}: degree {:.6}, energy {:.6} (8π|d| = {:.6})",
            degree_kronecker_s2(&f).raw,
            dirichlet_energy(&f),
            formulas::harmonic_energy(d)
        );
    }

    println!("\nsuspension degree, rows k = 0..3, columns deg h = 1..3");
    let cap = Arc::new(gallery::suspension_grid()?);
    for k in 0..4 {
        let row: Vec<String> = (1..4)
            .map(|h| {
                let m = suspension(&SuspensionSpec::smooth(k, h, NORTH, gallery::CAP_RADIUS), cap.clone())?;
                Ok(format!("{:>8.4}", degree_kronecker_s2(&m).raw))
            })
            .collect::<Result<_>>()?;
        println!("k={k} {}", row.join(""));
    }

    println!();
    let grid = Arc::new(gallery::vo1_grid()?);
    for d1 in [1, 3, 7] {
        let (f, g) = vo1_pair(d1, 0, gallery::CAP_RADIUS, grid.clone())?;
        println!(
            "pair d1={d1} d2=0: degrees {:.4} {:.4}, |f-g|_H1 = {:.12}",
            degree_kronecker_s2(&f).raw,
            degree_kronecker_s2(&g).raw,
            h1_distance(&f, &g)?
        );
    }
    Ok(())
}

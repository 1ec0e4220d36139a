//! Explicit pairs in different homotopy classes and their `W^{1,p}`
//! distances next to the value each construction is known to realise.
//!
//! cargo run --release --example extremal_pairs

use homotopy_gaps::gallery::{self, GalleryPair};
use homotopy_gaps::{formulas, CircleGrid, Result};

fn show(name: &str, pair: &GalleryPair, p: f64) -> Result<()> {
    let (d1, d2) = pair.degrees();
    let measured = pair.w1p_distance(p)?;
    let claim = pair.claim.map(|c| format!("{:.10} ({})", c.value, c.label)).unwrap_or_default();
    println!("{name:<28} ({d1:>2},{d2:>2}) p={p:<3} {measured:<16.10} {claim}");
    Ok(())
}

fn main() -> Result<()> {
    let grid = CircleGrid::new(4096)?;
    for (d1, d2) in [(1, 0), (3, 1), (2, -1)] {
        show("zigzag", &gallery::zigzag_pair(d1, d2, grid)?, 1.0)?;
    }
    let base = gallery::locally_constant_map(1, 0.5, grid)?;
    for lambda in [0.1, 0.01] {
        show(&format!("deflate d=2 lambda={lambda}"), &gallery::deflate_phase(&base.map, 2, lambda)?, 1.0)?;
    }
    for p in [1.25, 1.5, 1.75] {
        let pair = gallery::attainment_pair(1, p, grid)?;
        show("attainment", &pair, p)?;
        println!("{:<28} formula {:.10}", "", formulas::w1p_class_distance(p, 1, -1));
    }
    for d in [1, 2, 4] {
        show("product-shift", &gallery::product_shift(d, 0, grid)?, 1.0)?;
    }
    show("plateau", &gallery::plateau_pair(1, 3, grid)?, 1.0)?;
    Ok(())
}

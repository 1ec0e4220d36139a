//! Degree of circle maps three ways: lifted winding, Kronecker integral of
//! `f̄ ḟ`, and Fourier coefficients `Σ n|a_n|²`.
//!
//! cargo run --release --example circle_degrees

use homotopy_gaps::gallery;
use homotopy_gaps::grid::{conjugate, degree_report, power_map, product};
use homotopy_gaps::{CircleGrid, Result};

fn main() -> Result<()> {
    let grid = CircleGrid::new(4096)?;
    let maps = vec![
        ("z^3", power_map(3, grid)),
        ("conj(z^3)", conjugate(&power_map(3, grid))),
        ("z^2 · blaschke(2, 0.1)", product(&power_map(2, grid), &gallery::blaschke_pow(2, 0.1, grid)?)?),
        ("oscillator(1, 10)", gallery::oscillator(1, 10, grid)?.map),
        ("multi-bump(4, 16)", gallery::multi_bump(4, 16, grid)?.map),
        ("dense-onto(0, 6)", gallery::dense_onto(0, 6, grid)?.map),
    ];
    println!("{:<24} {:>7} {:>16} {:>16}", "map", "winding", "kronecker", "fourier");
    for (name, f) in &maps {
        let r = degree_report(f)?;
        println!("{name:<24} {:>7} {:>16.10} {:>16.10}", r.winding, r.kronecker.raw, r.fourier.raw);
        assert!(r.agrees(), "{name}: estimates disagree");
    }
    Ok(())
}

//! Semi-norms of `z^d`: the `W^{1,p}` quadrature against `(2π)^{1/p} |d|`,
//! the Fourier `H^{1/2}` value against `4π²|d|`, and the Gagliardo double
//! integral: with the chord kernel `|e^{iθ} - e^{iθ'}|` it is the same
//! quantity, with the arc kernel it is a different (equivalent) one.
//!
//! cargo run --release --example seminorms

use homotopy_gaps::grid::power_map;
use homotopy_gaps::seminorms::{gagliardo_seminorm, gagliardo_seminorm_with, h_half_seminorm_sq, w1p_seminorm, Kernel};
use homotopy_gaps::{formulas, CircleGrid, Result};

fn main() -> Result<()> {
    let grid = CircleGrid::new(4096)?;
    println!("d  p    ∫|f'|^p            2|d|^p π");
    for d in [1, 2, 3] {
        let f = power_map(d, grid);
        for p in [1.0, 1.5, 3.0] {
            let v = w1p_seminorm(&f, p, None)?.powf(p);
            println!("{d}  {p:<3}  {v:<18.12} {:.12}", formulas::class_min_w1p_pow(d, p));
        }
    }

    println!();
    println!("d  |f|²_H1/2 (Fourier)  4π²|d|            chord² (M=1024)  arc² (M=1024)");
    let coarse = CircleGrid::new(1024)?;
    for d in [1, 2, 3] {
        let fourier = h_half_seminorm_sq(power_map(d, grid).samples());
        let h = power_map(d, coarse);
        let chord = gagliardo_seminorm_with(h.samples(), 0.5, 2.0, Kernel::Chord)?.powi(2);
        let arc = gagliardo_seminorm(h.samples(), 0.5, 2.0)?.powi(2);
        println!("{d}  {fourier:<20.12} {:<17.12} {chord:<16.6} {arc:.6}", formulas::h_half_degree_bound(d));
    }
    Ok(())
}

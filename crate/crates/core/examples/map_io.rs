//! Writes a gallery map as `theta,re,im` CSV, reads it back, and checks the
//! round trip is exact.
//!
//! cargo run --release --example map_io

use homotopy_gaps::gallery;
use homotopy_gaps::grid::degree;
use homotopy_gaps::io::{read_circle_map, write_circle_map, Format};
use homotopy_gaps::{CircleGrid, Result};

fn main() -> Result<()> {
    let f = gallery::oscillator(2, 5, CircleGrid::new(256)?)?.map;
    let mut buf = Vec::new();
    write_circle_map(&mut buf, &f, Format::Csv)?;
    let text = String::from_utf8(buf).expect("CSV is UTF-8");
    for line in text.lines().take(4) {
        println!("{line}");
    }
    println!("... {} rows", text.lines().count() - 1);
    let back = read_circle_map(text.as_bytes(), Format::Csv)?;
    assert_eq!(back.samples(), f.samples());
    println!("round trip exact, degree {}", degree(&back)?);
    Ok(())
}
